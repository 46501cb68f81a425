#include "rmtlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace rmtlab {
namespace {

void plan_error(const char* what) {
  throw std::invalid_argument(std::string("plan error: ") + what);
}

// Deterministic parallel map over replicate indices: each worker owns a
// contiguous chunk and results land in preallocated per-replicate slots.
void parallel_replicates(int replicates, int threads,
                         const std::function<void(int)>& work) {
  threads = std::max(1, std::min(threads, replicates));
  if (threads == 1) {
    for (int rep = 0; rep < replicates; ++rep) work(rep);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (replicates + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(replicates, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &work] {
      for (int rep = lo; rep < hi; ++rep) work(rep);
    });
  }
  for (auto& th : pool) th.join();
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  const double pos = q * (v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - lo;
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

struct EventSpec {
  double center = 0;       // eigenvalue-scale limit entering the report
  double shift = 0;        // deterministic threshold shift
  bool sqrt_scale = false; // event compares sqrt(statistic)
  bool upper_tail = false; // event is {stat >= threshold(t)}
  bool needs_b = false;
  double lambda0 = 0;
  bool b_is_min = false;   // event B bounds the block minimum from below
};

}  // namespace

void ExperimentPlan::validate() const {
  spec.validate();
  if (replicates < 1) plan_error("replicates must be at least 1");
  if (t_grid.empty()) plan_error("t_grid must be non-empty");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (t_grid[k] < t_grid[k - 1]) plan_error("t_grid must be ascending");
  }
  const bool goe_theorem = theorem == Theorem::kT1i || theorem == Theorem::kT1ii;
  if (goe_theorem && spec.model != ModelKind::kDeformedGoe) {
    plan_error("T1 theorems require a deformed GOE ensemble");
  }
  if (!goe_theorem && spec.model != ModelKind::kSpikedPopulation) {
    plan_error("T2/T3 theorems require a spiked population ensemble");
  }
}

WilsonInterval wilson95(long long successes, long long trials) {
  if (trials < 1) throw std::invalid_argument("wilson95: trials must be positive");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson95: successes out of range");
  }
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2.0 * n)) / denom;
  const double hw =
      z / denom * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
  WilsonInterval w;
  w.halfwidth = hw;
  w.lo = (successes == 0) ? 0.0 : std::max(0.0, center - hw);
  w.hi = (successes == trials) ? 1.0 : std::min(1.0, center + hw);
  return w;
}

TailReport run_tail(const ExperimentPlan& plan) {
  plan.validate();
  const EnsembleSpec& spec = plan.spec;
  const int n = spec.n;
  const int p = spec.p;
  const int r = spec.r();
  const int s = spec.s();
  const int i = plan.eigen_index;

  BoundParams bp;
  bp.theorem = plan.theorem;
  bp.n = n;
  bp.p = p;
  bp.r = r;
  bp.s = s;
  bp.i = i;
  bp.sigma = spec.sigma;
  bp.delta = plan.delta;
  bp.spikes = spec.spikes;
  bp.c3 = plan.c3;

  EventSpec ev;
  switch (plan.theorem) {
    case Theorem::kT1i: {
      if (r > 0 && i > r) plan_error("eigen_index exceeds the deformation rank");
      ev.center = (r > 0) ? lambda_theta(spec.spikes[i - 1], spec.sigma).value
                          : 2.0 * spec.sigma;
      ev.upper_tail = true;
      break;
    }
    case Theorem::kT1ii: {
      if (r < 1 || i > r) plan_error("T1ii needs 1 <= i <= r");
      const double theta = spec.spikes[i - 1];
      if (!(theta > spec.sigma)) plan_error("T1ii requires theta_i > sigma");
      ev.center = lambda_theta(theta, spec.sigma).value;
      ev.shift = bp.c1 * spec.sigma * r / n;
      ev.needs_b = true;
      ev.lambda0 = 0.5 * (2.0 * spec.sigma + ev.center);
      break;
    }
    case Theorem::kT2i: {
      if (r > 0 && i > r) plan_error("eigen_index exceeds the spike count r");
      const double c = static_cast<double>(p - r) / n;
      ev.center = (r > 0) ? lambda_theta_c(spec.spikes[i - 1], c).value
                          : (1.0 + std::sqrt(static_cast<double>(p) / n)) *
                                (1.0 + std::sqrt(static_cast<double>(p) / n));
      ev.sqrt_scale = true;
      ev.upper_tail = true;
      break;
    }
    case Theorem::kT2ii: {
      if (r < 1 || i > r) plan_error("T2ii needs 1 <= i <= r");
      const double c = static_cast<double>(p - r) / n;
      const double theta_sq = spec.spikes[i - 1];
      if (!(theta_sq > 1.0 + std::sqrt(c))) {
        plan_error("T2ii requires theta_i^2 > 1 + sqrt(c)");
      }
      ev.center = lambda_theta_c(theta_sq, c).value;
      ev.shift = bp.c1 * std::sqrt(spec.spikes[0]) * r / n;
      ev.sqrt_scale = true;
      ev.needs_b = true;
      const double edge = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
      ev.lambda0 = 0.5 * (edge + ev.center);
      break;
    }
    case Theorem::kT3i: {
      if (!(n > p)) plan_error("T3i requires n > p");
      const double cprime = static_cast<double>(p - r - s) / n;
      const double theta1_or_1 =
          (r + s > 0) ? std::max(std::sqrt(spec.spikes[0]), 1.0) : 1.0;
      if (s > 0) {
        if (i > s) plan_error("T3i needs i <= s");
        ev.center = lambda_theta_c(spec.spikes[r + s - i], cprime).value;
        ev.shift = theta1_or_1 / (2.0 * n);
      } else if (r > 0) {
        if (i != 1) plan_error("T3i with s = 0 tracks lambda_p only");
        const double e = 1.0 - std::sqrt(cprime);
        ev.center = e * e;
        ev.shift = std::sqrt(spec.spikes[0]) / (2.0 * n);
      } else {
        if (i != 1) plan_error("T3i with r = s = 0 tracks lambda_p only");
        const double e = 1.0 - std::sqrt(static_cast<double>(p) / n);
        ev.center = e * e;
      }
      ev.sqrt_scale = true;
      break;
    }
    case Theorem::kT3ii: {
      if (s < 1 || i > s) plan_error("T3ii needs 1 <= i <= s");
      if (!(n > p)) plan_error("T3ii requires n > p");
      const double cprime = static_cast<double>(p - r - s) / n;
      const double theta_hat_sq = spec.spikes[r + s - i];
      if (!(theta_hat_sq < 1.0 - std::sqrt(cprime))) {
        plan_error("T3ii requires theta_i^2 < 1 - sqrt(c')");
      }
      ev.center = lambda_theta_c(theta_hat_sq, cprime).value;
      ev.shift = bp.c1 * std::sqrt(spec.spikes[0]) * (r + s) / n;
      ev.sqrt_scale = true;
      ev.upper_tail = true;
      ev.needs_b = true;
      ev.b_is_min = true;
      const double edge = 1.0 - std::sqrt(cprime);
      ev.lambda0 = 0.5 * (ev.center + edge * edge);
      break;
    }
  }

  // Evaluate every bound first so invalid (t, delta) fail before sampling.
  std::vector<double> bounds(plan.t_grid.size());
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    bp.t = plan.t_grid[k];
    bounds[k] = bound_rhs(bp);
  }

  const bool track_smallest =
      plan.theorem == Theorem::kT3i || plan.theorem == Theorem::kT3ii;
  const int rs = r + s;
  std::vector<double> stat(plan.replicates);
  std::vector<double> block_extreme(plan.replicates, 0.0);

  parallel_replicates(plan.replicates, plan.threads, [&](int rep) {
    const SampleDraw draw = sample(spec, static_cast<std::uint64_t>(rep));
    const Spectrum eig = eig_sym(draw.matrix);
    const int dim = draw.matrix.n();
    stat[rep] = track_smallest ? eig.eigenvalues[dim - i] : eig.eigenvalues[i - 1];
    if (ev.needs_b) {
      if (spec.model == ModelKind::kDeformedGoe) {
        const int m = n - r;
        const double scale = std::sqrt(static_cast<double>(n) / m);
        const Spectrum beig = eig_sym(draw.matrix.lower_right(m, scale));
        block_extreme[rep] = beig.eigenvalues[0];
      } else {
        const int mtil = p - rs;
        const Spectrum beig = eig_sym(draw.matrix.lower_right(mtil));
        block_extreme[rep] =
            ev.b_is_min ? beig.eigenvalues[mtil - 1] : beig.eigenvalues[0];
      }
    }
  });

  TailReport report;
  report.theorem = plan.theorem;
  report.center = ev.center;
  report.threshold_shift = ev.shift;

  std::vector<double> used;
  used.reserve(plan.replicates);
  for (int rep = 0; rep < plan.replicates; ++rep) {
    if (ev.needs_b) {
      const bool b_ok = ev.b_is_min ? (block_extreme[rep] >= ev.lambda0)
                                    : (block_extreme[rep] <= ev.lambda0);
      if (!b_ok) {
        ++report.excluded_b_failures;
        continue;
      }
    }
    used.push_back(stat[rep]);
  }
  report.replicates_used = static_cast<int>(used.size());
  if (used.empty()) plan_error("all replicates excluded by event B");
  report.median_statistic = quantile(used, 0.5);

  const double base = ev.sqrt_scale ? std::sqrt(ev.center) : ev.center;
  for (std::size_t k = 0; k < plan.t_grid.size(); ++k) {
    const double t = plan.t_grid[k];
    const double threshold =
        ev.upper_tail ? base + t + ev.shift : base - t - ev.shift;
    long long hits = 0;
    for (double value : used) {
      const double obs = ev.sqrt_scale ? std::sqrt(std::max(0.0, value)) : value;
      hits += ev.upper_tail ? (obs >= threshold) : (obs <= threshold);
    }
    const WilsonInterval w = wilson95(hits, report.replicates_used);
    TailRow row;
    row.t = t;
    row.empirical = static_cast<double>(hits) / report.replicates_used;
    row.lo95 = w.lo;
    row.hi95 = w.hi;
    row.bound = bounds[k];
    row.vacuous = bounds[k] >= 1.0;
    row.dominated = w.lo <= bounds[k];
    report.rows.push_back(row);
  }
  return report;
}

SweepReport convergence_sweep(const SweepConfig& config) {
  if (config.n_list.empty()) {
    throw std::invalid_argument("convergence_sweep: n_list must be non-empty");
  }
  for (std::size_t k = 1; k < config.n_list.size(); ++k) {
    if (config.n_list[k] <= config.n_list[k - 1]) {
      throw std::invalid_argument("convergence_sweep: n_list must be ascending");
    }
  }
  if (config.replicates < 1) {
    throw std::invalid_argument("convergence_sweep: replicates must be positive");
  }

  SweepReport report;
  for (int n : config.n_list) {
    EnsembleSpec spec = config.base;
    spec.n = n;
    if (spec.model == ModelKind::kSpikedPopulation && config.ratio > 0) {
      spec.p = std::max(1, static_cast<int>(std::lround(config.ratio * n)));
    }
    spec.validate();

    SweepRow row;
    row.n = n;
    row.p = spec.p;
    const int r = spec.r();
    const int s = spec.s();
    if (spec.model == ModelKind::kDeformedGoe) {
      row.center = spec.spikes.empty()
                       ? 2.0 * spec.sigma
                       : lambda_theta(spec.spikes[0], spec.sigma).value;
    } else if (config.smallest) {
      const double cprime = static_cast<double>(spec.p - r - s) / n;
      if (s > 0) {
        row.center = lambda_theta_c(spec.spikes[r + s - 1], cprime).value;
      } else {
        const double e = 1.0 - std::sqrt(cprime);
        row.center = e * e;
      }
    } else {
      const double c = static_cast<double>(spec.p - r) / n;
      if (r > 0) {
        // spikes[0] > 1 here, so this lands on the supercritical value or
        // the upper bulk edge.
        row.center = lambda_theta_c(spec.spikes[0], c).value;
      } else {
        const double e = 1.0 + std::sqrt(static_cast<double>(spec.p) / n);
        row.center = e * e;
      }
    }

    std::vector<double> devs(config.replicates);
    std::vector<double> eigs(config.replicates);
    parallel_replicates(config.replicates, config.threads, [&](int rep) {
      const SampleDraw draw = sample(spec, static_cast<std::uint64_t>(rep));
      const Spectrum eig = eig_sym(draw.matrix);
      const double value = config.smallest
                               ? eig.eigenvalues[draw.matrix.n() - 1]
                               : eig.eigenvalues[0];
      eigs[rep] = value;
      devs[rep] = std::fabs(value - row.center);
    });
    row.median_dev = quantile(devs, 0.5);
    row.iqr = quantile(devs, 0.75) - quantile(devs, 0.25);
    row.median_eig = quantile(eigs, 0.5);
    report.rows.push_back(row);
  }

  // Least-squares slope of log(median deviation) against log(n).
  if (report.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : report.rows) {
      const double x = std::log(static_cast<double>(row.n));
      const double y = std::log(std::max(row.median_dev, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double k = static_cast<double>(report.rows.size());
    report.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return report;
}

std::vector<ChiSquareRow> chi_square_tail_check(const std::vector<double>& weights,
                                                const std::vector<double>& t_grid,
                                                int replicates, RngStream& stream) {
  if (weights.empty()) {
    throw std::invalid_argument("chi_square_tail_check: weights must be non-empty");
  }
  for (double a : weights) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("chi_square_tail_check: weights must be positive");
    }
  }
  if (replicates < 1) {
    throw std::invalid_argument("chi_square_tail_check: replicates must be positive");
  }
  double norm2 = 0, amax = 0, asum = 0;
  for (double a : weights) {
    norm2 += a * a;
    amax = std::max(amax, a);
    asum += a;
  }
  const double anorm = std::sqrt(norm2);

  std::vector<long long> upper_hits(t_grid.size(), 0);
  std::vector<long long> lower_hits(t_grid.size(), 0);
  for (int rep = 0; rep < replicates; ++rep) {
    double sum = -asum;
    for (double a : weights) {
      const double x = stream.next_gaussian();
      sum += a * x * x;
    }
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const double t = t_grid[k];
      upper_hits[k] += (sum >= anorm * t + 0.5 * amax * t * t);
      lower_hits[k] += (sum <= -anorm * t);
    }
  }

  std::vector<ChiSquareRow> rows;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    ChiSquareRow row;
    row.t = t_grid[k];
    row.bound = std::exp(-t_grid[k] * t_grid[k] / 4.0);
    row.emp_upper = static_cast<double>(upper_hits[k]) / replicates;
    row.emp_lower = static_cast<double>(lower_hits[k]) / replicates;
    row.upper_lo95 = wilson95(upper_hits[k], replicates).lo;
    row.lower_lo95 = wilson95(lower_hits[k], replicates).lo;
    row.dominated = row.upper_lo95 <= row.bound && row.lower_lo95 <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

int interlacing_audit(int replicates, int n, RngStream& stream) {
  if (n < 2) throw std::invalid_argument("interlacing_audit: n must be at least 2");
  if (replicates < 1) {
    throw std::invalid_argument("interlacing_audit: replicates must be positive");
  }
  int failures = 0;
  for (int rep = 0; rep < replicates; ++rep) {
    const SymMatrix a = sample_goe(n, 1.0, stream);
    const int index = static_cast<int>(stream.next_u64() % static_cast<std::uint64_t>(n));
    const Spectrum full = eig_sym(a);
    const Spectrum del = eig_sym(a.deleted(index));
    bool ok = true;
    for (int k = 0; k < n - 1; ++k) {
      if (!(full.eigenvalues[k] >= del.eigenvalues[k] - 1e-8) ||
          !(del.eigenvalues[k] >= full.eigenvalues[k + 1] - 1e-8)) {
        ok = false;
        break;
      }
    }
    failures += ok ? 0 : 1;
  }
  return failures;
}

}  // namespace rmtlab
