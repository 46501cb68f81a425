#include "rmtlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmtlab {
namespace {

void check(bool ok, const char* constraint) {
  if (!ok) throw std::domain_error(std::string("parameter error: ") + constraint);
}

// log of the net-size constant C_{m,theta}(n) given C_1 = c1n:
//   C_0 = 1,  C_1 = c1n,  C_m = 2m C_1 (1 + C_1/(m-1))^{m-1}  for m >= 2.
// Kept in log space so vacuous bounds stay finite after the exponential.
double log_cm(double c1n, int m) {
  if (m <= 0) return 0.0;
  if (c1n <= 0.0) return -std::numeric_limits<double>::infinity();
  if (m == 1) return std::log(c1n);
  return std::log(2.0 * m) + std::log(c1n) + (m - 1) * std::log1p(c1n / (m - 1));
}

void validate_spiked_spikes(const BoundParams& b) {
  check(static_cast<int>(b.spikes.size()) == b.r + b.s,
        "spikes must list exactly r+s population eigenvalues");
  for (std::size_t k = 0; k < b.spikes.size(); ++k) {
    check(b.spikes[k] > 0.0, "spiked population eigenvalues must be positive");
    check(b.spikes[k] != 1.0, "spiked population eigenvalues must differ from 1");
    if (k > 0) check(b.spikes[k] <= b.spikes[k - 1], "spikes must be non-increasing");
  }
  for (int k = 0; k < b.r; ++k) check(b.spikes[k] > 1.0, "the first r spikes must exceed 1");
  for (int k = b.r; k < b.r + b.s; ++k) check(b.spikes[k] < 1.0, "the last s spikes must be below 1");
}

}  // namespace

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::kSupercritical: return "supercritical";
    case Branch::kBulkEdgeTop: return "bulk-edge-top";
    case Branch::kBulkEdgeBottom: return "bulk-edge-bottom";
    case Branch::kSubcriticalLow: return "subcritical-low";
  }
  return "unknown";
}

DeterministicLimit lambda_theta(double theta, double sigma) {
  check(theta > 0.0, "theta must be positive");
  check(sigma > 0.0, "sigma must be positive");
  DeterministicLimit out;
  out.model = LimitModel::kGoe;
  if (theta > sigma) {
    out.value = theta + sigma * sigma / theta;
    out.branch = Branch::kSupercritical;
  } else {
    out.value = 2.0 * sigma;
    out.branch = Branch::kBulkEdgeTop;
  }
  return out;
}

DeterministicLimit lambda_theta_c(double theta_sq, double c) {
  check(theta_sq > 0.0, "theta^2 must be positive");
  check(theta_sq != 1.0, "theta^2 must differ from 1");
  check(c >= 0.0, "aspect ratio c must be non-negative");
  const double rc = std::sqrt(c);
  DeterministicLimit out;
  out.model = LimitModel::kSpiked;
  if (theta_sq > 1.0 + rc) {
    out.value = theta_sq + c * theta_sq / (theta_sq - 1.0);
    out.branch = Branch::kSupercritical;
  } else if (theta_sq > 1.0) {
    out.value = (1.0 + rc) * (1.0 + rc);
    out.branch = Branch::kBulkEdgeTop;
  } else if (c < 1.0 && theta_sq < 1.0 - rc) {
    out.value = theta_sq + c * theta_sq / (theta_sq - 1.0);
    out.branch = Branch::kSubcriticalLow;
  } else if (c < 1.0) {
    out.value = (1.0 - rc) * (1.0 - rc);
    out.branch = Branch::kBulkEdgeBottom;
  } else {
    throw std::domain_error(
        "parameter error: theta^2 < 1 with c >= 1 has no detached branch");
  }
  return out;
}

StieltjesValue semicircle_stieltjes(double z, double sigma) {
  check(sigma > 0.0, "sigma must be positive");
  check(z > 2.0 * sigma, "z must lie right of the bulk (z > 2 sigma)");
  const double s2 = sigma * sigma;
  const double root = std::sqrt(z * z - 4.0 * s2);
  StieltjesValue out;
  out.g = (-z + root) / (2.0 * s2);
  out.gprime = (-1.0 + z / root) / (2.0 * s2);
  return out;
}

StieltjesValue mp_stieltjes(double z, double c) {
  check(c >= 0.0, "aspect ratio c must be non-negative");
  check(z != 0.0, "z must be nonzero");
  const double rc = std::sqrt(c);
  const double lo = (1.0 - rc) * (1.0 - rc);
  const double hi = (1.0 + rc) * (1.0 + rc);
  check(z < lo || z > hi, "z must lie outside the bulk interval");
  const double sign = (z > hi) ? 1.0 : -1.0;
  const double disc = std::max((z - 1.0 - c) * (z - 1.0 - c) - 4.0 * c, 0.0);
  const double q = std::sqrt(disc);
  const double s = sign * q;
  const double sprime = (q > 0.0) ? sign * (z - 1.0 - c) / q : 0.0;
  StieltjesValue out;
  out.g = (c - 1.0 - z + s) / (2.0 * z);
  out.gprime = (z * sprime - s + (1.0 - c)) / (2.0 * z * z);
  return out;
}

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::kT1i: return "T1i";
    case Theorem::kT1ii: return "T1ii";
    case Theorem::kT2i: return "T2i";
    case Theorem::kT2ii: return "T2ii";
    case Theorem::kT3i: return "T3i";
    case Theorem::kT3ii: return "T3ii";
  }
  return "unknown";
}

std::optional<Theorem> theorem_from_name(const std::string& name) {
  if (name == "T1i") return Theorem::kT1i;
  if (name == "T1ii") return Theorem::kT1ii;
  if (name == "T2i") return Theorem::kT2i;
  if (name == "T2ii") return Theorem::kT2ii;
  if (name == "T3i") return Theorem::kT3i;
  if (name == "T3ii") return Theorem::kT3ii;
  return std::nullopt;
}

double default_c3(double theta1_sq, double c2) {
  return c2 / std::max(theta1_sq, 1.0);
}

double bound_t_floor(const BoundParams& b) {
  switch (b.theorem) {
    case Theorem::kT1i:
      if (b.r == 0) return 0.0;
      return std::sqrt(2.0 * (b.r - b.i + 1)) * b.sigma /
             std::sqrt(b.delta * (1.0 - b.delta) * b.n);
    case Theorem::kT2i: {
      if (b.r == 0) return 0.0;
      const double theta_i = std::sqrt(b.spikes.at(b.i - 1));
      return std::sqrt(static_cast<double>(b.r - b.i + 1)) * theta_i /
             std::sqrt(b.delta * (1.0 - b.delta) * b.n);
    }
    case Theorem::kT3i: {
      if (b.s == 0 && b.r == 0) return 0.0;
      const double tv = (b.r + b.s > 0) ? std::max(std::sqrt(b.spikes.at(0)), 1.0) : 1.0;
      const int m = (b.s > 0) ? (b.r + b.s - b.i + 1) : b.r;
      return std::sqrt(static_cast<double>(m)) * tv /
             std::sqrt(b.delta * (1.0 - b.delta) * b.n);
    }
    default:
      return 0.0;
  }
}

double bound_rhs(const BoundParams& b) {
  check(b.n >= 1, "n must be at least 1");
  check(b.i >= 1, "eigenvalue index i must be at least 1");
  check(b.t >= 0.0, "t must be non-negative");

  switch (b.theorem) {
    case Theorem::kT1i: {
      check(b.sigma > 0.0, "sigma must be positive");
      if (b.r == 0) {
        check(b.i == 1, "null case bounds lambda_1 only");
        return std::exp(-b.n * b.t * b.t / (4.0 * b.sigma * b.sigma));
      }
      check(static_cast<int>(b.spikes.size()) == b.r, "spikes must list exactly r values");
      check(b.i <= b.r, "i must not exceed r");
      check(b.delta > 0.0 && b.delta <= 0.5, "delta must lie in (0, 1/2]");
      check(b.t >= bound_t_floor(b) - 1e-15, "t below the theorem's validity floor");
      const double theta_i = b.spikes.at(b.i - 1);
      check(theta_i > 0.0, "theta_i must be positive");
      const double lam = lambda_theta(theta_i, b.sigma).value;
      const double c1n = 2.0 * b.t * (lam + b.t) * b.n / (b.sigma * b.sigma);
      const double rate = (1.0 - b.delta) * (1.0 - b.delta) * b.n * b.t * b.t /
                          (4.0 * b.sigma * b.sigma);
      return std::exp(std::log(2.0) + log_cm(c1n, b.r - b.i + 1) - rate);
    }
    case Theorem::kT1ii: {
      check(b.sigma > 0.0, "sigma must be positive");
      check(b.r >= 1, "T1ii requires r >= 1");
      check(static_cast<int>(b.spikes.size()) == b.r, "spikes must list exactly r values");
      check(b.i <= b.r, "i must not exceed r");
      const double theta_i = b.spikes.at(b.i - 1);
      check(theta_i > b.sigma, "T1ii requires theta_i > sigma (supercritical spike)");
      const int m = b.n - b.r;
      check(m >= 1, "n must exceed r");
      const double d = theta_i - b.sigma;
      const double term1 =
          std::exp(-m * d * d * d * d / (16.0 * b.sigma * b.sigma * theta_i * theta_i));
      const double rate = b.c2 * m * d * d * d * d * d * b.t * b.t /
                          (std::pow(b.sigma, 4) * std::pow(theta_i + b.sigma, 3));
      return term1 + 8.0 * b.i * std::exp(-rate);
    }
    case Theorem::kT2i: {
      check(b.p >= 1, "p must be at least 1");
      if (b.r == 0) {
        check(b.i == 1, "null case bounds lambda_1 only");
        return std::exp(-b.n * b.t * b.t / 2.0);
      }
      validate_spiked_spikes(b);
      check(b.i <= b.r, "i must not exceed r");
      check(b.delta > 0.0 && b.delta <= 1.0 / 3.0, "delta must lie in (0, 1/3]");
      check(b.t >= bound_t_floor(b) - 1e-15, "t below the theorem's validity floor");
      check(b.p >= b.r, "p must be at least r");
      const double c = static_cast<double>(b.p - b.r) / b.n;
      const double theta_sq = b.spikes.at(b.i - 1);
      const double lam = lambda_theta_c(theta_sq, c).value;
      const double c1n = 2.0 * b.t * (std::sqrt(lam) + b.t) * b.n / theta_sq;
      const double rate =
          (1.0 - b.delta) * (1.0 - b.delta) * b.n * b.t * b.t / (2.0 * theta_sq);
      return std::exp(log_cm(c1n, b.r - b.i + 1) - rate);
    }
    case Theorem::kT2ii: {
      check(b.r >= 1, "T2ii requires r >= 1");
      validate_spiked_spikes(b);
      check(b.i <= b.r, "i must not exceed r");
      check(b.p >= b.r, "p must be at least r");
      const double c = static_cast<double>(b.p - b.r) / b.n;
      const double theta_sq = b.spikes.at(b.i - 1);
      check(theta_sq > 1.0 + std::sqrt(c), "T2ii requires theta_i^2 > 1 + sqrt(c)");
      const double c3 = b.c3.value_or(default_c3(b.spikes.at(0), b.c2));
      check(c3 > 0.0, "C3 must be positive");
      return b.c2 * b.i * std::exp(-c3 * b.n * b.t * b.t);
    }
    case Theorem::kT3i: {
      check(b.p >= 1, "p must be at least 1");
      check(b.n > b.p, "T3i requires n > p");
      check(b.p >= b.r + b.s, "p must be at least r + s");
      if (b.s == 0 && b.r == 0) {
        check(b.i == 1, "null case bounds lambda_p only");
        return std::exp(-b.n * b.t * b.t / 2.0);
      }
      validate_spiked_spikes(b);
      check(b.delta > 0.0 && b.delta <= 1.0 / 3.0, "delta must lie in (0, 1/3]");
      check(b.t >= bound_t_floor(b) - 1e-15, "t below the theorem's validity floor");
      const double c = static_cast<double>(b.p - b.r) / b.n;
      const double theta1_sq = b.spikes.at(0);
      const double tv = std::max(std::sqrt(theta1_sq), 1.0);
      // sqrt of the top-eigenvalue center entering the net-size constants.
      const double top = (b.r > 0) ? std::sqrt(lambda_theta_c(theta1_sq, c).value)
                                   : 1.0 + std::sqrt(c);
      if (b.s == 0) {
        // r > 0 here
        const double c1n = 2.0 * b.t * (top + b.t) * b.n / (tv * tv);
        const double rate =
            (1.0 - b.delta) * (1.0 - b.delta) * b.n * b.t * b.t / (2.0 * tv * tv);
        return std::exp(std::log(2.0) + log_cm(c1n, b.r) - rate);
      }
      check(b.i <= b.s, "i must not exceed s");
      const double c1n = 2.0 * b.t * (top + b.t) * b.n / (tv * tv);
      const double rate =
          (1.0 - b.delta) * (1.0 - b.delta) * b.n * b.t * b.t / (2.0 * tv * tv);
      return std::exp(log_cm(c1n, b.r + b.s - b.i + 1) - rate) +
             std::exp(log_cm(c1n, b.r) - rate);
    }
    case Theorem::kT3ii: {
      check(b.s >= 1, "T3ii requires s >= 1");
      validate_spiked_spikes(b);
      check(b.i <= b.s, "i must not exceed s");
      check(b.n > b.p, "T3ii requires n > p");
      check(b.p >= b.r + b.s, "p must be at least r + s");
      const double cprime = static_cast<double>(b.p - b.r - b.s) / b.n;
      const double theta_hat_sq = b.spikes.at(b.r + b.s - b.i);
      check(theta_hat_sq < 1.0 - std::sqrt(cprime),
            "T3ii requires theta_i^2 < 1 - sqrt(c')");
      const double c3 = b.c3.value_or(default_c3(std::max(b.spikes.at(0), 1.0), b.c2));
      check(c3 > 0.0, "C3 must be positive");
      return b.c2 * b.i * std::exp(-c3 * b.n * b.t * b.t);
    }
  }
  throw std::logic_error("bound_rhs: unhandled theorem");
}

}  // namespace rmtlab
