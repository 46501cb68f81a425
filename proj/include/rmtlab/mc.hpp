#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/limits.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

// One tail experiment: measure the empirical frequency of a theorem's
// eigenvalue event over seeded replicates and compare against the bound.
struct ExperimentPlan {
  EnsembleSpec spec;
  int eigen_index = 1;  // i: the i-th largest, or lambda_{p-i+1} for T3
  Theorem theorem = Theorem::kT1i;
  double delta = 0.5;
  std::vector<double> t_grid;
  int replicates = 1;
  std::optional<double> c3;
  int threads = 1;

  void validate() const;
};

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
  double halfwidth = 0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(long long successes, long long trials);

struct TailRow {
  double t = 0;
  double empirical = 0;
  double lo95 = 0;
  double hi95 = 0;
  double bound = 0;
  bool dominated = false;  // Wilson lower limit <= bound
  bool vacuous = false;    // bound >= 1
};

struct TailReport {
  std::vector<TailRow> rows;
  double center = 0;          // lambda_theta or lambda_{theta,c} of the event
  double threshold_shift = 0; // deterministic shift in the event threshold
  int replicates_used = 0;
  int excluded_b_failures = 0;
  double median_statistic = 0;  // median of the raw eigenvalue statistic
  Theorem theorem = Theorem::kT1i;
};

TailReport run_tail(const ExperimentPlan& plan);

// Median absolute deviation of the tracked eigenvalue from its limit, per
// dimension, with a log-log slope fit across dimensions.
struct SweepConfig {
  EnsembleSpec base;            // n is overridden per sweep point
  double ratio = 0;             // spiked: p = round(ratio * n)
  bool smallest = false;        // track lambda_p instead of lambda_1
  std::vector<int> n_list;
  int replicates = 100;
  int threads = 1;
};

struct SweepRow {
  int n = 0;
  int p = 0;
  double center = 0;
  double median_dev = 0;
  double iqr = 0;
  double median_eig = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double slope = 0;  // least-squares slope of log(median_dev) vs log(n)
};

SweepReport convergence_sweep(const SweepConfig& config);

// Weighted chi-square tail audit: empirical frequencies of
//   sum a_i (X_i^2 - 1) >= |a| t + 0.5 |a|_inf t^2   and   <= -|a| t
// against the bound exp(-t^2/4).
struct ChiSquareRow {
  double t = 0;
  double emp_upper = 0;
  double upper_lo95 = 0;
  double emp_lower = 0;
  double lower_lo95 = 0;
  double bound = 0;
  bool dominated = false;
};

std::vector<ChiSquareRow> chi_square_tail_check(const std::vector<double>& weights,
                                                const std::vector<double>& t_grid,
                                                int replicates, RngStream& stream);

// Samples GOE matrices, deletes a random index and checks the interlacing
// of the two spectra within 1e-8. Returns the number of failures.
int interlacing_audit(int replicates, int n, RngStream& stream);

}  // namespace rmtlab
