#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmtlab/linalg.hpp"

namespace rmtlab {

enum class BulkSide { kAboveBulk, kBelowBulk, kInBulk };

std::string bulk_side_name(BulkSide s);

struct SpikeEstimate {
  double lambda_obs = 0;
  double c = 0;
  std::optional<double> theta_sq_hat;
  bool detectable = false;
  BulkSide side = BulkSide::kInBulk;
};

// Inverse of the spiked eigenvalue map: solve
//   theta^4 - (lambda + 1 - c) theta^2 + lambda = 0.
// Observations inside [(1-sqrt(c))^2, (1+sqrt(c))^2] (or [0, (1+sqrt(c))^2]
// when c >= 1) are not estimable; above the bulk the larger root applies,
// below it (c < 1 only) the smaller one.
SpikeEstimate invert_spike(double lambda_obs, double c);

struct NormalizeResult {
  double sigma_hat_sq = 0;
  std::vector<double> rescaled_spikes;
};

// Heteroscedastic normalization: estimate the noise level as the mean of
// the non-spike sample eigenvalues (indices r+1..p) and rescale the
// presumed spikes by it.
NormalizeResult heteroscedastic_normalize(const Eigen::VectorXd& sample_eigs_desc,
                                          int r);

// Batch spike estimation with c = p/n: classify and invert the top r_max
// and bottom r_max sample eigenvalues (deduplicated when they overlap).
std::vector<SpikeEstimate> estimate_all(const Spectrum& spectrum, int n_samples,
                                        int r_max);

}  // namespace rmtlab
