#include "rmtlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace rmtlab {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

ordered_json jnum(double x) { return ordered_json(round12(x)); }

ordered_json jarray(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(round12(x));
  return a;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

ordered_json net_to_json(const EpsilonNet& net) {
  ordered_json j;
  j["m"] = net.m;
  j["epsilon"] = jnum(net.epsilon);
  j["size"] = net.points.size();
  j["bound"] = jnum(net.certified_size_bound);
  j["coverage_certified"] = net.coverage_certified;
  ordered_json points = ordered_json::array();
  for (const auto& pt : net.points) {
    ordered_json coords = ordered_json::array();
    for (Eigen::Index k = 0; k < pt.size(); ++k) coords.push_back(round12(pt[k]));
    points.push_back(coords);
  }
  j["points"] = points;
  return j;
}

ordered_json approx_ev_to_json(const ApproxEvReport& report) {
  ordered_json j;
  j["spike_index"] = report.spike_index;
  j["event_B_ok"] = report.event_b_ok;
  j["lambda0"] = jnum(report.lambda0);
  j["target"] = jnum(report.target);
  j["extreme_block_eig"] = jnum(report.extreme_block_eig);
  if (report.event_b_ok) {
    j["rayleigh"] = jnum(report.rayleigh);
    j["gap"] = jnum(report.gap);
    j["gap_expansion"] = jnum(report.gap_expansion);
    j["cross_check"] = jnum(report.cross_check);
    j["L1"] = jnum(report.l1);
    j["L2"] = jnum(report.l2);
    j["L1_pred"] = jnum(report.l1_pred);
    j["L2_pred"] = jnum(report.l2_pred);
    j["y_check"] = jnum(report.y_check);
    ordered_json x = ordered_json::array();
    for (Eigen::Index k = 0; k < report.x.size(); ++k) x.push_back(round12(report.x[k]));
    j["x"] = x;
  }
  return j;
}

ordered_json spike_estimate_to_json(const SpikeEstimate& estimate) {
  ordered_json j;
  j["lambda_obs"] = jnum(estimate.lambda_obs);
  j["c"] = jnum(estimate.c);
  j["detectable"] = estimate.detectable;
  j["side"] = bulk_side_name(estimate.side);
  if (estimate.theta_sq_hat.has_value()) {
    j["theta_sq_hat"] = jnum(*estimate.theta_sq_hat);
  } else {
    j["theta_sq_hat"] = nullptr;
  }
  return j;
}

ordered_json tail_report_to_json(const TailReport& report) {
  ordered_json j;
  j["theorem"] = theorem_name(report.theorem);
  j["center"] = jnum(report.center);
  j["threshold_shift"] = jnum(report.threshold_shift);
  j["replicates_used"] = report.replicates_used;
  j["excluded_B_failures"] = report.excluded_b_failures;
  j["median_statistic"] = jnum(report.median_statistic);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json rj;
    rj["t"] = jnum(row.t);
    rj["emp"] = jnum(row.empirical);
    rj["lo95"] = jnum(row.lo95);
    rj["hi95"] = jnum(row.hi95);
    rj["bound"] = jnum(row.bound);
    rj["dominated"] = row.dominated;
    rj["vacuous"] = row.vacuous;
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

std::string tail_report_to_csv(const TailReport& report) {
  std::ostringstream out;
  out << "t,emp,lo95,hi95,bound,dominated\n";
  for (const auto& row : report.rows) {
    out << fmt12(row.t) << ',' << fmt12(row.empirical) << ',' << fmt12(row.lo95)
        << ',' << fmt12(row.hi95) << ',' << fmt12(row.bound) << ','
        << (row.dominated ? 1 : 0) << '\n';
  }
  return out.str();
}

ordered_json sweep_report_to_json(const SweepReport& report) {
  ordered_json j;
  j["slope"] = jnum(report.slope);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json rj;
    rj["n"] = row.n;
    rj["p"] = row.p;
    rj["center"] = jnum(row.center);
    rj["median_eig"] = jnum(row.median_eig);
    rj["median_dev"] = jnum(row.median_dev);
    rj["iqr"] = jnum(row.iqr);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

std::string sweep_report_to_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "n,p,center,median_eig,median_dev,iqr\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << row.p << ',' << fmt12(row.center) << ','
        << fmt12(row.median_eig) << ',' << fmt12(row.median_dev) << ','
        << fmt12(row.iqr) << '\n';
  }
  out << "# slope=" << fmt12(report.slope) << '\n';
  return out.str();
}

ordered_json ensemble_spec_to_json(const EnsembleSpec& spec) {
  ordered_json j;
  j["model"] = model_name(spec.model);
  j["n"] = spec.n;
  if (spec.model == ModelKind::kSpikedPopulation) j["p"] = spec.p;
  if (spec.model == ModelKind::kDeformedGoe) j["sigma"] = jnum(spec.sigma);
  j["spikes"] = jarray(spec.spikes);
  j["seed"] = spec.seed;
  return j;
}

EnsembleSpec ensemble_spec_from_json(const json& j) {
  EnsembleSpec spec;
  const auto model = model_from_name(j.at("model").get<std::string>());
  if (!model.has_value()) {
    throw std::invalid_argument("plan error: unknown model '" +
                                j.at("model").get<std::string>() + "'");
  }
  spec.model = *model;
  spec.n = j.at("n").get<int>();
  spec.p = j.value("p", 0);
  spec.sigma = j.value("sigma", 1.0);
  spec.spikes = j.value("spikes", std::vector<double>{});
  spec.seed = j.value("seed", static_cast<std::uint64_t>(0));
  spec.validate();
  return spec;
}

ordered_json plan_to_json(const ExperimentPlan& plan) {
  ordered_json j = ensemble_spec_to_json(plan.spec);
  j["eigen_index"] = plan.eigen_index;
  j["theorem"] = theorem_name(plan.theorem);
  j["delta"] = jnum(plan.delta);
  j["t_grid"] = jarray(plan.t_grid);
  j["replicates"] = plan.replicates;
  if (plan.c3.has_value()) j["c3"] = jnum(*plan.c3);
  return j;
}

ExperimentPlan plan_from_json(const json& j) {
  ExperimentPlan plan;
  plan.spec = ensemble_spec_from_json(j);
  plan.eigen_index = j.value("eigen_index", 1);
  const auto theorem = theorem_from_name(j.at("theorem").get<std::string>());
  if (!theorem.has_value()) {
    throw std::invalid_argument("plan error: unknown theorem '" +
                                j.at("theorem").get<std::string>() + "'");
  }
  plan.theorem = *theorem;
  plan.delta = j.value("delta", 0.5);
  plan.t_grid = j.at("t_grid").get<std::vector<double>>();
  plan.replicates = j.at("replicates").get<int>();
  if (j.contains("c3") && !j.at("c3").is_null()) plan.c3 = j.at("c3").get<double>();
  plan.threads = j.value("threads", 1);
  plan.validate();
  return plan;
}

}  // namespace rmtlab
