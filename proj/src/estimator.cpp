#include "rmtlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rmtlab {

std::string bulk_side_name(BulkSide s) {
  switch (s) {
    case BulkSide::kAboveBulk: return "above-bulk";
    case BulkSide::kBelowBulk: return "below-bulk";
    case BulkSide::kInBulk: return "in-bulk";
  }
  return "unknown";
}

SpikeEstimate invert_spike(double lambda_obs, double c) {
  if (!(lambda_obs >= 0.0)) {
    throw std::domain_error("invert_spike: lambda must be non-negative");
  }
  if (!(c >= 0.0)) {
    throw std::domain_error("invert_spike: c must be non-negative");
  }
  SpikeEstimate out;
  out.lambda_obs = lambda_obs;
  out.c = c;

  const double rc = std::sqrt(c);
  const double upper = (1.0 + rc) * (1.0 + rc);
  const double lower = (c < 1.0) ? (1.0 - rc) * (1.0 - rc) : 0.0;

  // Bulk edges belong to the bulk: no detached estimate there.
  if (lambda_obs >= lower && lambda_obs <= upper) {
    out.detectable = false;
    out.side = BulkSide::kInBulk;
    return out;
  }

  const double b = lambda_obs + 1.0 - c;
  double disc = b * b - 4.0 * lambda_obs;
  if (disc < 0.0) {
    if (disc > -1e-12) {
      disc = 0.0;  // rounding at the bulk edge
    } else {
      throw std::logic_error("invert_spike: negative discriminant off the bulk");
    }
  }
  const double root = std::sqrt(disc);
  if (lambda_obs > upper) {
    out.detectable = true;
    out.side = BulkSide::kAboveBulk;
    out.theta_sq_hat = (b + root) / 2.0;
  } else {
    out.detectable = true;
    out.side = BulkSide::kBelowBulk;
    out.theta_sq_hat = (b - root) / 2.0;
  }
  return out;
}

NormalizeResult heteroscedastic_normalize(const Eigen::VectorXd& sample_eigs_desc,
                                          int r) {
  const int p = static_cast<int>(sample_eigs_desc.size());
  if (r < 0 || r >= p) {
    throw std::invalid_argument(
        "heteroscedastic_normalize: r must satisfy 0 <= r < p");
  }
  NormalizeResult out;
  out.sigma_hat_sq = sample_eigs_desc.tail(p - r).mean();
  if (!(out.sigma_hat_sq > 0.0)) {
    throw std::domain_error(
        "heteroscedastic_normalize: non-spike eigenvalues must average positive");
  }
  out.rescaled_spikes.reserve(r);
  for (int k = 0; k < r; ++k) {
    out.rescaled_spikes.push_back(sample_eigs_desc[k] / out.sigma_hat_sq);
  }
  return out;
}

std::vector<SpikeEstimate> estimate_all(const Spectrum& spectrum, int n_samples,
                                        int r_max) {
  if (n_samples < 1) throw std::invalid_argument("estimate_all: n must be at least 1");
  if (r_max < 0) throw std::invalid_argument("estimate_all: r_max must be non-negative");
  const int p = static_cast<int>(spectrum.eigenvalues.size());
  const double c = static_cast<double>(p) / n_samples;

  std::set<int> indices;
  for (int k = 0; k < std::min(r_max, p); ++k) indices.insert(k);
  for (int k = std::max(0, p - r_max); k < p; ++k) indices.insert(k);

  std::vector<SpikeEstimate> out;
  out.reserve(indices.size());
  for (int k : indices) {
    out.push_back(invert_spike(std::max(0.0, spectrum.eigenvalues[k]), c));
  }
  return out;
}

}  // namespace rmtlab
