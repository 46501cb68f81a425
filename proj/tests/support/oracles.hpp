// Test-only oracles, independent of the library's solver paths.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Number of eigenvalues of A strictly below `shift`, by counting negative
// pivots of the LDL^T factorization of A - shift I (Sylvester inertia).
inline int count_below(const Eigen::MatrixXd& a, double shift) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd m = a - shift * Eigen::MatrixXd::Identity(n, n);
  int negatives = 0;
  for (int k = 0; k < n; ++k) {
    double pivot = m(k, k);
    if (pivot == 0.0) pivot = 1e-300;  // nudge exact zero pivots
    if (pivot < 0.0) ++negatives;
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / pivot;
      for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      m(i, k) = 0.0;
    }
  }
  return negatives;
}

// All eigenvalues of a symmetric matrix (descending) by inertia bisection
// of the characteristic polynomial's sign changes. Robust for the small
// random matrices used in tests.
inline std::vector<double> bisection_eigenvalues(const Eigen::MatrixXd& a,
                                                 double tol = 1e-12) {
  const int n = static_cast<int>(a.rows());
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::fabs(a(i, j));
    radius = std::max(radius, row);
  }
  radius += 1.0;
  std::vector<double> values(n);
  for (int k = 1; k <= n; ++k) {
    // k-th smallest eigenvalue: smallest x with count_below(x) >= k.
    double lo = -radius, hi = radius;
    for (int iter = 0; iter < 200 && hi - lo > tol * radius; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(a, mid) >= k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    values[n - k] = 0.5 * (lo + hi);
  }
  return values;  // descending
}

// Composite Simpson integration on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) {
    sum += f(a + k * h) * ((k % 2 == 1) ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// Stieltjes transform of the semicircle law on [-2s, 2s] by quadrature,
// with the edge singularities removed via x = 2s sin(u).
inline double semicircle_stieltjes_quad(double z, double s) {
  const double pi = 3.14159265358979323846;
  auto integrand = [&](double u) {
    const double x = 2.0 * s * std::sin(u);
    const double cu = std::cos(u);
    return (2.0 / pi) * cu * cu / (x - z);
  };
  return simpson(integrand, -pi / 2.0, pi / 2.0, 4000);
}

// Stieltjes transform of the limit of the n x n Gram spectrum at aspect
// ratio c: c times the transform of the bulk density
//   p_c(x) = sqrt((b-x)(x-a)) / (2 pi c x),  a = (1-sqrt(c))^2, b = (1+sqrt(c))^2,
// plus the atom (1-c) delta_0 when c < 1.
inline double mp_stieltjes_quad(double z, double c) {
  const double pi = 3.14159265358979323846;
  const double center = 1.0 + c;
  const double radius = 2.0 * std::sqrt(c);
  auto integrand = [&](double u) {
    const double x = center + radius * std::sin(u);
    const double cu = std::cos(u);
    return radius * radius * cu * cu / (2.0 * pi * c * x * (x - z));
  };
  double g = c * simpson(integrand, -pi / 2.0, pi / 2.0, 6000);
  if (c < 1.0) g += (1.0 - c) * (-1.0 / z);
  return g;
}

// Five-point central difference of a scalar function.
inline double derivative5(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Exact binomial tail P(X >= k) for X ~ Bin(n, prob), via log factorials.
inline double binomial_upper_tail(int n, int k, double prob) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  double total = 0.0;
  for (int j = k; j <= n; ++j) {
    const double logterm = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                           std::lgamma(n - j + 1.0) + j * std::log(prob) +
                           (n - j) * std::log1p(-prob);
    total += std::exp(logterm);
  }
  return total;
}

}  // namespace oracles
