// rmtlab: a spectral laboratory for deformed random matrices.
//
// Subcommands: sample, limits, net, approx-ev, estimate, verify, sweep.
// Every randomized output embeds its seed and full parameter set in a
// self-describing header; re-running the header's command reproduces the
// file byte for byte apart from the timestamp.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmtlab/approxev.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/estimator.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/limits.hpp"
#include "rmtlab/mc.hpp"
#include "rmtlab/nets.hpp"

using nlohmann::ordered_json;
using namespace rmtlab;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct OutputOptions {
  std::string out_path;  // empty: stdout
  std::string format = "json";
  int threads = 1;
};

void add_output_flags(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--out", opts->out_path, "Output file (default: stdout)");
  cmd->add_option("--format", opts->format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--threads", opts->threads, "Worker threads for replicates")
      ->check(CLI::PositiveNumber);
}

void write_output(const OutputOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + opts.out_path);
  file << text;
}

ordered_json make_header(const std::string& command, std::uint64_t seed,
                         ordered_json params) {
  ordered_json header;
  header["tool"] = "rmtlab";
  header["version"] = kVersion;
  header["command"] = command;
  header["seed"] = seed;
  header["params"] = std::move(params);
  header["timestamp"] = utc_timestamp();
  return header;
}

std::string csv_header_lines(const ordered_json& header) {
  std::ostringstream out;
  out << "# tool=rmtlab version=" << kVersion << '\n';
  out << "# command=" << header.at("command").get<std::string>() << '\n';
  out << "# seed=" << header.at("seed").get<std::uint64_t>() << '\n';
  out << "# timestamp=" << header.at("timestamp").get<std::string>() << '\n';
  return out.str();
}

std::string emit(const OutputOptions& opts, ordered_json header,
                 const ordered_json& body_json, const std::string& body_csv) {
  header["command"] =
      header["command"].get<std::string>() + " --format " + opts.format;
  if (opts.format == "csv") {
    return csv_header_lines(header) + body_csv;
  }
  header["result"] = body_json;
  return header.dump(2) + "\n";
}

std::string join_spikes(const std::vector<double>& spikes) {
  std::string out;
  for (std::size_t k = 0; k < spikes.size(); ++k) {
    if (k > 0) out += ',';
    out += fmt12(spikes[k]);
  }
  return out;
}

// Canonical command string: reconstructed from parsed values so flag order
// does not affect the emitted file.
std::string canonical_command(const std::string& sub,
                              const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out = "rmtlab " + sub;
  for (const auto& [key, value] : kv) {
    if (!value.empty()) out += " --" + key + " " + value;
  }
  return out;
}

EnsembleSpec build_spec(const std::string& model, int n, int p, double sigma,
                        const std::vector<double>& spikes, std::uint64_t seed) {
  const auto kind = model_from_name(model);
  if (!kind.has_value()) {
    throw std::invalid_argument("parameter error: unknown model '" + model + "'");
  }
  EnsembleSpec spec;
  spec.model = *kind;
  spec.n = n;
  spec.p = p;
  spec.sigma = sigma;
  spec.spikes = spikes;
  spec.seed = seed;
  spec.validate();
  return spec;
}

// ------------------------------------------------------------------ sample
struct SampleArgs {
  std::string model = "deformed_goe";
  int n = 100;
  int p = 0;
  double sigma = 1.0;
  std::vector<double> spikes;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  bool emit_matrix = false;
  OutputOptions out;
};

int run_sample(const SampleArgs& args) {
  const EnsembleSpec spec =
      build_spec(args.model, args.n, args.p, args.sigma, args.spikes, args.seed);
  const SampleDraw draw = sample(spec, args.replicate);
  const Spectrum eig = eig_sym(draw.matrix);

  ordered_json params = ensemble_spec_to_json(spec);
  params["replicate"] = args.replicate;
  const std::string command = canonical_command(
      "sample", {{"model", model_name(spec.model)},
                 {"n", std::to_string(spec.n)},
                 {"p", spec.model == ModelKind::kSpikedPopulation
                           ? std::to_string(spec.p)
                           : ""},
                 {"sigma", spec.model == ModelKind::kDeformedGoe ? fmt12(spec.sigma)
                                                                 : ""},
                 {"spikes", join_spikes(spec.spikes)},
                 {"seed", std::to_string(spec.seed)},
                 {"replicate", std::to_string(args.replicate)},
                 {"matrix", args.emit_matrix ? "true" : ""}});

  ordered_json body;
  ordered_json eigs = ordered_json::array();
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    eigs.push_back(round12(eig.eigenvalues[k]));
  }
  body["eigenvalues"] = eigs;
  std::ostringstream csv;
  csv << "eigenvalue\n";
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    csv << fmt12(eig.eigenvalues[k]) << '\n';
  }
  if (args.emit_matrix) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < draw.matrix.n(); ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < draw.matrix.n(); ++j) {
        row.push_back(round12(draw.matrix(i, j)));
      }
      rows.push_back(row);
    }
    body["matrix"] = rows;
  }
  write_output(args.out, emit(args.out, make_header(command, spec.seed, params),
                              body, csv.str()));
  return 0;
}

// ------------------------------------------------------------------ limits
struct LimitsArgs {
  std::string model = "goe";
  double theta = 0;
  double theta_sq = 0;
  double sigma = 1.0;
  double c = 0;
  std::optional<double> z;
  OutputOptions out;
};

int run_limits(const LimitsArgs& args) {
  ordered_json body;
  ordered_json params;
  std::string command;
  if (args.model == "goe") {
    const DeterministicLimit limit = lambda_theta(args.theta, args.sigma);
    params["theta"] = round12(args.theta);
    params["sigma"] = round12(args.sigma);
    body["value"] = round12(limit.value);
    body["branch"] = branch_name(limit.branch);
    const double z = args.z.value_or(limit.value);
    if (z > 2.0 * args.sigma) {
      const StieltjesValue g = semicircle_stieltjes(z, args.sigma);
      body["stieltjes"] = {{"z", round12(z)}, {"g", round12(g.g)},
                           {"gprime", round12(g.gprime)}};
    }
    command = canonical_command("limits", {{"model", "goe"},
                                           {"theta", fmt12(args.theta)},
                                           {"sigma", fmt12(args.sigma)}});
    std::printf("%s  branch=%s\n", fmt12(limit.value).c_str(),
                branch_name(limit.branch).c_str());
  } else if (args.model == "spiked") {
    const DeterministicLimit limit = lambda_theta_c(args.theta_sq, args.c);
    params["theta_sq"] = round12(args.theta_sq);
    params["c"] = round12(args.c);
    body["value"] = round12(limit.value);
    body["branch"] = branch_name(limit.branch);
    const double edge = (1.0 + std::sqrt(args.c)) * (1.0 + std::sqrt(args.c));
    const double z = args.z.value_or(limit.value);
    if (z > edge || (args.c < 1.0 && z != 0.0 &&
                     z < (1.0 - std::sqrt(args.c)) * (1.0 - std::sqrt(args.c)))) {
      const StieltjesValue g = mp_stieltjes(z, args.c);
      body["stieltjes"] = {{"z", round12(z)}, {"g", round12(g.g)},
                           {"gprime", round12(g.gprime)}};
    }
    command = canonical_command("limits", {{"model", "spiked"},
                                           {"theta-sq", fmt12(args.theta_sq)},
                                           {"c", fmt12(args.c)}});
    std::printf("%s  branch=%s\n", fmt12(limit.value).c_str(),
                branch_name(limit.branch).c_str());
  } else {
    throw std::invalid_argument("parameter error: model must be goe or spiked");
  }
  if (!args.out.out_path.empty()) {
    std::ostringstream csv;
    csv << "value,branch\n"
        << body.at("value").dump() << ',' << body.at("branch").get<std::string>()
        << '\n';
    write_output(args.out,
                 emit(args.out, make_header(command, 0, params), body, csv.str()));
  }
  return 0;
}

// -------------------------------------------------------------------- net
struct NetArgs {
  int m = 1;
  double epsilon = 1.0 / 3.0;
  std::uint64_t seed = 0;
  int coverage_samples = 100000;
  OutputOptions out;
};

int run_net(const NetArgs& args) {
  RngStream build = derive_stream(args.seed, 0);
  EpsilonNet net =
      (args.m == 1) ? net_interval(args.epsilon) : net_ball(args.m, args.epsilon, build);
  RngStream cov = derive_stream(args.seed, 1);
  certify_coverage(net, args.coverage_samples, cov);

  ordered_json params;
  params["m"] = args.m;
  params["epsilon"] = round12(args.epsilon);
  params["coverage_samples"] = args.coverage_samples;
  const std::string command =
      canonical_command("net", {{"m", std::to_string(args.m)},
                                {"epsilon", fmt12(args.epsilon)},
                                {"seed", std::to_string(args.seed)},
                                {"coverage-samples", std::to_string(args.coverage_samples)}});
  const ordered_json body = net_to_json(net);

  std::ostringstream csv;
  csv << "# m=" << args.m << " epsilon=" << fmt12(args.epsilon)
      << " size=" << net.points.size() << " bound=" << fmt12(net.certified_size_bound)
      << " coverage_certified=" << (net.coverage_certified ? 1 : 0) << '\n';
  for (const auto& pt : net.points) {
    for (Eigen::Index k = 0; k < pt.size(); ++k) {
      csv << (k > 0 ? "," : "") << fmt12(pt[k]);
    }
    csv << '\n';
  }
  write_output(args.out,
               emit(args.out, make_header(command, args.seed, params), body, csv.str()));
  std::fprintf(stderr, "net: %zu points, bound %s, coverage %s\n", net.points.size(),
               fmt12(net.certified_size_bound).c_str(),
               net.coverage_certified ? "certified" : "NOT certified");
  return net.coverage_certified ? 0 : 2;
}

// --------------------------------------------------------------- approx-ev
struct ApproxArgs {
  std::string model = "deformed_goe";
  int n = 500;
  int p = 0;
  double sigma = 1.0;
  std::vector<double> spikes;
  int index = 1;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
  OutputOptions out;
};

int run_approx(const ApproxArgs& args) {
  const EnsembleSpec spec =
      build_spec(args.model, args.n, args.p, args.sigma, args.spikes, args.seed);
  ApproxEvReport report;
  if (spec.model == ModelKind::kDeformedGoe) {
    report = goe_approx_ev(sample_deformed(spec, args.replicate), args.index);
  } else {
    report = spm_approx_ev(sample_spiked(spec, args.replicate, true), args.index);
  }
  ordered_json params = ensemble_spec_to_json(spec);
  params["replicate"] = args.replicate;
  params["i"] = args.index;
  const std::string command = canonical_command(
      "approx-ev", {{"model", model_name(spec.model)},
                    {"n", std::to_string(spec.n)},
                    {"p", spec.model == ModelKind::kSpikedPopulation
                              ? std::to_string(spec.p)
                              : ""},
                    {"sigma", spec.model == ModelKind::kDeformedGoe
                                  ? fmt12(spec.sigma)
                                  : ""},
                    {"spikes", join_spikes(spec.spikes)},
                    {"i", std::to_string(args.index)},
                    {"seed", std::to_string(spec.seed)},
                    {"replicate", std::to_string(args.replicate)}});
  const ordered_json body = approx_ev_to_json(report);
  std::ostringstream csv;
  csv << "field,value\n";
  for (const auto& [key, value] : body.items()) {
    if (key == "x") continue;
    csv << key << ',' << value.dump() << '\n';
  }
  write_output(args.out,
               emit(args.out, make_header(command, spec.seed, params), body, csv.str()));
  return 0;
}

// ---------------------------------------------------------------- estimate
struct EstimateArgs {
  double lambda = -1;
  double c = -1;
  std::string in_path;
  int n = 0;
  int r_max = 3;
  OutputOptions out;
};

int run_estimate(const EstimateArgs& args) {
  ordered_json params;
  ordered_json body;
  std::string command;
  std::ostringstream csv;
  csv << "lambda_obs,c,detectable,side,theta_sq_hat\n";

  auto emit_row = [&csv](const SpikeEstimate& est) {
    csv << fmt12(est.lambda_obs) << ',' << fmt12(est.c) << ','
        << (est.detectable ? 1 : 0) << ',' << bulk_side_name(est.side) << ','
        << (est.theta_sq_hat ? fmt12(*est.theta_sq_hat) : "") << '\n';
  };

  if (!args.in_path.empty()) {
    if (args.n < 1) {
      throw std::invalid_argument("parameter error: --n (sample count) is required");
    }
    std::ifstream file(args.in_path);
    if (!file) throw std::runtime_error("cannot open input file " + args.in_path);
    std::vector<double> values;
    std::string line;
    while (std::getline(file, line)) {
      if (line.empty() || line[0] == '#') continue;
      values.push_back(std::stod(line));
    }
    std::sort(values.begin(), values.end(), std::greater<double>());
    Spectrum spectrum;
    spectrum.eigenvalues =
        Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    const auto estimates = estimate_all(spectrum, args.n, args.r_max);
    body = ordered_json::array();
    for (const auto& est : estimates) {
      body.push_back(spike_estimate_to_json(est));
      emit_row(est);
    }
    params["in"] = args.in_path;
    params["n"] = args.n;
    params["r_max"] = args.r_max;
    command = canonical_command("estimate", {{"in", args.in_path},
                                             {"n", std::to_string(args.n)},
                                             {"r-max", std::to_string(args.r_max)}});
  } else {
    if (args.lambda < 0 || args.c < 0) {
      throw std::invalid_argument(
          "parameter error: provide --lambda and --c, or --in with --n");
    }
    const SpikeEstimate est = invert_spike(args.lambda, args.c);
    body = spike_estimate_to_json(est);
    emit_row(est);
    params["lambda"] = round12(args.lambda);
    params["c"] = round12(args.c);
    command = canonical_command(
        "estimate", {{"lambda", fmt12(args.lambda)}, {"c", fmt12(args.c)}});
    if (est.theta_sq_hat.has_value()) {
      std::printf("theta_sq_hat=%s  side=%s\n", fmt12(*est.theta_sq_hat).c_str(),
                  bulk_side_name(est.side).c_str());
    } else {
      std::printf("not estimable (in bulk)\n");
    }
  }
  if (!args.out.out_path.empty() || !args.in_path.empty()) {
    write_output(args.out,
                 emit(args.out, make_header(command, 0, params), body, csv.str()));
  }
  return 0;
}

// ------------------------------------------------------------------ verify
struct VerifyArgs {
  std::string plan_path;
  OutputOptions out;
};

int run_verify(const VerifyArgs& args) {
  std::ifstream file(args.plan_path);
  if (!file) throw std::runtime_error("cannot open plan file " + args.plan_path);
  nlohmann::json plan_json = nlohmann::json::parse(file);
  const std::string kind = plan_json.value("kind", "tail");

  ordered_json params;
  params["plan"] = args.plan_path;
  const std::string command = canonical_command("verify", {{"plan", args.plan_path}});

  if (kind == "tail") {
    ExperimentPlan plan = plan_from_json(plan_json);
    plan.threads = args.out.threads;
    const TailReport report = run_tail(plan);
    params["plan_contents"] = plan_to_json(plan);
    bool all_ok = true;
    for (const auto& row : report.rows) all_ok = all_ok && row.dominated;
    write_output(args.out,
                 emit(args.out, make_header(command, plan.spec.seed, params),
                      tail_report_to_json(report), tail_report_to_csv(report)));
    return all_ok ? 0 : 1;
  }
  if (kind == "chi_square") {
    const auto weights = plan_json.at("weights").get<std::vector<double>>();
    const auto t_grid = plan_json.at("t_grid").get<std::vector<double>>();
    const int replicates = plan_json.at("replicates").get<int>();
    const std::uint64_t seed = plan_json.value("seed", 0ULL);
    RngStream stream = derive_stream(seed, 0);
    const auto rows = chi_square_tail_check(weights, t_grid, replicates, stream);
    ordered_json body = ordered_json::array();
    std::ostringstream csv;
    csv << "t,emp_upper,emp_lower,bound,dominated\n";
    bool all_ok = true;
    for (const auto& row : rows) {
      ordered_json rj;
      rj["t"] = round12(row.t);
      rj["emp_upper"] = round12(row.emp_upper);
      rj["emp_lower"] = round12(row.emp_lower);
      rj["bound"] = round12(row.bound);
      rj["dominated"] = row.dominated;
      body.push_back(rj);
      csv << fmt12(row.t) << ',' << fmt12(row.emp_upper) << ',' << fmt12(row.emp_lower)
          << ',' << fmt12(row.bound) << ',' << (row.dominated ? 1 : 0) << '\n';
      all_ok = all_ok && row.dominated;
    }
    write_output(args.out,
                 emit(args.out, make_header(command, seed, params), body, csv.str()));
    return all_ok ? 0 : 1;
  }
  if (kind == "interlacing") {
    const int replicates = plan_json.at("replicates").get<int>();
    const int n = plan_json.at("n").get<int>();
    const std::uint64_t seed = plan_json.value("seed", 0ULL);
    RngStream stream = derive_stream(seed, 0);
    const int failures = interlacing_audit(replicates, n, stream);
    ordered_json body;
    body["replicates"] = replicates;
    body["n"] = n;
    body["failures"] = failures;
    std::ostringstream csv;
    csv << "replicates,n,failures\n" << replicates << ',' << n << ',' << failures << '\n';
    write_output(args.out,
                 emit(args.out, make_header(command, seed, params), body, csv.str()));
    return failures == 0 ? 0 : 1;
  }
  throw std::invalid_argument("parameter error: unknown plan kind '" + kind + "'");
}

// ------------------------------------------------------------------- sweep
struct SweepArgs {
  std::string model = "deformed_goe";
  std::vector<int> n_list;
  double ratio = 0;
  double sigma = 1.0;
  std::vector<double> spikes;
  bool smallest = false;
  int replicates = 100;
  std::uint64_t seed = 0;
  OutputOptions out;
};

int run_sweep(const SweepArgs& args) {
  SweepConfig config;
  const auto kind = model_from_name(args.model);
  if (!kind.has_value()) {
    throw std::invalid_argument("parameter error: unknown model '" + args.model + "'");
  }
  config.base.model = *kind;
  config.base.sigma = args.sigma;
  config.base.spikes = args.spikes;
  config.base.seed = args.seed;
  config.base.n = args.n_list.empty() ? 0 : args.n_list.front();
  if (config.base.model == ModelKind::kSpikedPopulation) {
    if (args.ratio <= 0) {
      throw std::invalid_argument("parameter error: spiked sweeps need --ratio p/n");
    }
    config.base.p = std::max(1, static_cast<int>(std::lround(args.ratio *
                                                              config.base.n)));
  }
  config.ratio = args.ratio;
  config.smallest = args.smallest;
  config.n_list = args.n_list;
  config.replicates = args.replicates;
  config.threads = args.out.threads;
  const SweepReport report = convergence_sweep(config);

  ordered_json params;
  params["model"] = model_name(config.base.model);
  params["n_list"] = args.n_list;
  params["ratio"] = round12(args.ratio);
  params["sigma"] = round12(args.sigma);
  ordered_json spikes = ordered_json::array();
  for (double s : args.spikes) spikes.push_back(round12(s));
  params["spikes"] = spikes;
  params["smallest"] = args.smallest;
  params["replicates"] = args.replicates;

  std::string n_list_str;
  for (std::size_t k = 0; k < args.n_list.size(); ++k) {
    if (k > 0) n_list_str += ',';
    n_list_str += std::to_string(args.n_list[k]);
  }
  const std::string command = canonical_command(
      "sweep", {{"model", model_name(config.base.model)},
                {"n-list", n_list_str},
                {"ratio", args.ratio > 0 ? fmt12(args.ratio) : ""},
                {"sigma", config.base.model == ModelKind::kDeformedGoe
                              ? fmt12(args.sigma)
                              : ""},
                {"spikes", join_spikes(args.spikes)},
                {"smallest", args.smallest ? "true" : ""},
                {"replicates", std::to_string(args.replicates)},
                {"seed", std::to_string(args.seed)}});
  write_output(args.out, emit(args.out, make_header(command, args.seed, params),
                              sweep_report_to_json(report),
                              sweep_report_to_csv(report)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmtlab: spectral laboratory for deformed random matrices"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw one seeded matrix sample");
  sample_cmd->add_option("--model", sample_args.model, "deformed_goe or spiked");
  sample_cmd->add_option("--n", sample_args.n, "Sample dimension")->required();
  sample_cmd->add_option("--p", sample_args.p, "Row dimension (spiked)");
  sample_cmd->add_option("--sigma", sample_args.sigma, "Noise scale (GOE)");
  sample_cmd->add_option("--spikes", sample_args.spikes,
                         "Spike values, largest first")->delimiter(',');
  sample_cmd->add_option("--seed", sample_args.seed, "Master seed");
  sample_cmd->add_option("--replicate", sample_args.replicate, "Replicate index");
  sample_cmd->add_flag("--matrix", sample_args.emit_matrix, "Emit matrix entries too");
  add_output_flags(sample_cmd, &sample_args.out);

  LimitsArgs limits_args;
  CLI::App* limits_cmd =
      app.add_subcommand("limits", "Evaluate a deterministic eigenvalue limit");
  limits_cmd->add_option("--model", limits_args.model, "goe or spiked");
  limits_cmd->add_option("--theta", limits_args.theta, "Spike strength (GOE)");
  limits_cmd->add_option("--sigma", limits_args.sigma, "Noise scale (GOE)");
  limits_cmd->add_option("--theta-sq", limits_args.theta_sq,
                         "Population spike eigenvalue (spiked)");
  limits_cmd->add_option("--c", limits_args.c, "Aspect ratio p/n (spiked)");
  double z_value = 0;
  CLI::Option* z_opt =
      limits_cmd->add_option("--z", z_value, "Evaluate the Stieltjes transform at z");
  add_output_flags(limits_cmd, &limits_args.out);

  NetArgs net_args;
  CLI::App* net_cmd = app.add_subcommand("net", "Construct a certified epsilon-net");
  net_cmd->add_option("--m", net_args.m, "Dimension")->required();
  net_cmd->add_option("--epsilon", net_args.epsilon, "Net radius in (0, 1/3]")
      ->required();
  net_cmd->add_option("--seed", net_args.seed, "Master seed");
  net_cmd->add_option("--coverage-samples", net_args.coverage_samples,
                      "Randomized coverage oracle sample count");
  add_output_flags(net_cmd, &net_args.out);

  ApproxArgs approx_args;
  CLI::App* approx_cmd =
      app.add_subcommand("approx-ev", "Build an approximate eigenvector report");
  approx_cmd->add_option("--model", approx_args.model, "deformed_goe or spiked");
  approx_cmd->add_option("--n", approx_args.n, "Sample dimension")->required();
  approx_cmd->add_option("--p", approx_args.p, "Row dimension (spiked)");
  approx_cmd->add_option("--sigma", approx_args.sigma, "Noise scale (GOE)");
  approx_cmd->add_option("--spikes", approx_args.spikes, "Spike values")
      ->delimiter(',')->required();
  approx_cmd->add_option("--i", approx_args.index, "Spike index (1-based)");
  approx_cmd->add_option("--seed", approx_args.seed, "Master seed");
  approx_cmd->add_option("--replicate", approx_args.replicate, "Replicate index");
  add_output_flags(approx_cmd, &approx_args.out);

  EstimateArgs estimate_args;
  CLI::App* estimate_cmd =
      app.add_subcommand("estimate", "Invert observed eigenvalues to spike estimates");
  estimate_cmd->add_option("--lambda", estimate_args.lambda, "Observed eigenvalue");
  estimate_cmd->add_option("--c", estimate_args.c, "Aspect ratio p/n");
  estimate_cmd->add_option("--in", estimate_args.in_path,
                           "CSV of eigenvalues, one per line");
  estimate_cmd->add_option("--n", estimate_args.n, "Sample count for --in mode");
  estimate_cmd->add_option("--r-max", estimate_args.r_max, "Spike cap for --in mode");
  add_output_flags(estimate_cmd, &estimate_args.out);

  VerifyArgs verify_args;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run a Monte Carlo verification plan");
  verify_cmd->add_option("--plan", verify_args.plan_path, "Plan JSON file")->required();
  add_output_flags(verify_cmd, &verify_args.out);

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Median-deviation convergence sweep over n");
  sweep_cmd->add_option("--model", sweep_args.model, "deformed_goe or spiked");
  sweep_cmd->add_option("--n-list", sweep_args.n_list, "Ascending dimensions")
      ->delimiter(',')->required();
  sweep_cmd->add_option("--ratio", sweep_args.ratio, "p/n ratio (spiked)");
  sweep_cmd->add_option("--sigma", sweep_args.sigma, "Noise scale (GOE)");
  sweep_cmd->add_option("--spikes", sweep_args.spikes, "Spike values")->delimiter(',');
  sweep_cmd->add_flag("--smallest", sweep_args.smallest, "Track lambda_p");
  sweep_cmd->add_option("--replicates", sweep_args.replicates, "Replicates per n");
  sweep_cmd->add_option("--seed", sweep_args.seed, "Master seed");
  add_output_flags(sweep_cmd, &sweep_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*sample_cmd) return run_sample(sample_args);
    if (*limits_cmd) {
      if (z_opt->count() > 0) limits_args.z = z_value;
      return run_limits(limits_args);
    }
    if (*net_cmd) return run_net(net_args);
    if (*approx_cmd) return run_approx(approx_args);
    if (*estimate_cmd) return run_estimate(estimate_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*sweep_cmd) return run_sweep(sweep_args);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 1;
}
