#include "rmtlab/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmtlab {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0 / 3.0)) {
    throw std::invalid_argument("parameter error: epsilon must lie in (0, 1/3]");
  }
}

double height(const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, 1.0 - x.squaredNorm()));
}

double rho_scalar(double u, double v) {
  const double hu = std::sqrt(std::max(0.0, 1.0 - u * u));
  const double hv = std::sqrt(std::max(0.0, 1.0 - v * v));
  return std::sqrt((u - v) * (u - v) + (hu - hv) * (hu - hv));
}

Eigen::VectorXd scalar_point(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

// Uniform direction on S^{m-1}.
Eigen::VectorXd sample_direction(int m, RngStream& stream) {
  Eigen::VectorXd d(m);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < m; ++i) d[i] = stream.next_gaussian();
    norm2 = d.squaredNorm();
  } while (norm2 == 0.0);
  return d / std::sqrt(norm2);
}

}  // namespace

double rho(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("rho: dimension mismatch");
  }
  const double dh = height(x) - height(y);
  return std::sqrt((x - y).squaredNorm() + dh * dh);
}

std::vector<double> interval_net_recursion(double epsilon) {
  check_epsilon(epsilon);
  std::vector<double> xs;
  double x = 0.5;
  while (x * epsilon * epsilon < 1.0) {
    xs.push_back(x);
    x = x + 2.0 * std::sqrt(x);
  }
  xs.push_back(x);  // first index with x_k eps^2 >= 1
  return xs;
}

EpsilonNet net_interval(double epsilon) {
  const std::vector<double> xs = interval_net_recursion(epsilon);
  EpsilonNet net;
  net.m = 1;
  net.epsilon = epsilon;
  net.certified_size_bound = 2.0 / epsilon;
  // eta_i = 1 - x_i eps^2 for the positive prefix, closed with 0.
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    net.points.push_back(scalar_point(1.0 - xs[i] * epsilon * epsilon));
  }
  net.points.push_back(scalar_point(0.0));
  if (static_cast<double>(net.points.size()) > net.certified_size_bound) {
    throw std::runtime_error("net_interval: size bound violated");
  }
  return net;
}

EpsilonNet net_ball(int m, double epsilon, RngStream& stream) {
  if (m < 2) throw std::invalid_argument("net_ball: m must be at least 2");
  check_epsilon(epsilon);

  const double a = 1.0 - 1.0 / m;
  const double sep = a * epsilon;  // direction separation (Euclidean on S^{m-1})
  const double dir_bound = 2.0 * m * std::pow(1.0 + 2.0 / sep, m - 1);

  // Greedy maximal separated subset over a seeded candidate stream; stop
  // after 10x(bound) consecutive rejections.
  std::vector<Eigen::VectorXd> dirs;
  const long long max_rejects = static_cast<long long>(std::ceil(10.0 * dir_bound));
  long long rejects = 0;
  while (rejects < max_rejects) {
    Eigen::VectorXd cand = sample_direction(m, stream);
    bool separated = true;
    for (const auto& d : dirs) {
      if ((cand - d).squaredNorm() < sep * sep) {
        separated = false;
        break;
      }
    }
    if (separated) {
      dirs.push_back(std::move(cand));
      rejects = 0;
    } else {
      ++rejects;
    }
  }

  EpsilonNet radial = net_interval((1.0 - a) * epsilon);

  EpsilonNet net;
  net.m = m;
  net.epsilon = epsilon;
  net.construction_seed = stream.key();
  net.certified_size_bound =
      4.0 * m * m / epsilon * std::pow(1.0 + 2.0 * m / ((m - 1) * epsilon), m - 1);
  net.sphere_dirs = std::move(dirs);
  for (const auto& pt : radial.points) net.radii.push_back(pt[0]);

  bool origin_added = false;
  for (double eta : net.radii) {
    if (eta == 0.0) {
      if (!origin_added) {
        net.points.push_back(Eigen::VectorXd::Zero(m));
        origin_added = true;
      }
      continue;
    }
    for (const auto& d : net.sphere_dirs) net.points.push_back(eta * d);
  }
  if (static_cast<double>(net.points.size()) > net.certified_size_bound) {
    throw std::runtime_error("net_ball: size bound violated");
  }
  return net;
}

double min_rho(const EpsilonNet& net, const Eigen::VectorXd& x, int* argmin) {
  if (x.size() != net.m) throw std::invalid_argument("min_rho: dimension mismatch");
  if (net.points.empty()) throw std::invalid_argument("min_rho: empty net");

  if (net.m >= 2 && !net.sphere_dirs.empty()) {
    // Product structure: for a fixed radial level eta, |x - eta d|^2 is
    // minimized over directions d by the largest dot product with x.
    const double rnorm = x.norm();
    double best_dot = -1.0;
    if (rnorm > 0.0) {
      const Eigen::VectorXd xhat = x / rnorm;
      for (const auto& d : net.sphere_dirs) best_dot = std::max(best_dot, xhat.dot(d));
    } else {
      best_dot = 1.0;  // any direction; the point eta*d is at radius eta
    }
    const double hx = height(x);
    double best = std::numeric_limits<double>::infinity();
    for (double eta : net.radii) {
      const double heta = std::sqrt(std::max(0.0, 1.0 - eta * eta));
      const double d2 = rnorm * rnorm + eta * eta - 2.0 * eta * rnorm * best_dot +
                        (hx - heta) * (hx - heta);
      best = std::min(best, d2);
    }
    // Fast path gives the distance; recover the index only when asked.
    if (argmin != nullptr) {
      double b2 = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < net.points.size(); ++k) {
        const double dh = hx - height(net.points[k]);
        const double d2 = (x - net.points[k]).squaredNorm() + dh * dh;
        if (d2 < b2) {
          b2 = d2;
          *argmin = static_cast<int>(k);
        }
      }
      return std::sqrt(b2);
    }
    return std::sqrt(std::max(0.0, best));
  }

  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  const double hx = height(x);
  for (std::size_t k = 0; k < net.points.size(); ++k) {
    const double dh = hx - height(net.points[k]);
    const double d2 = (x - net.points[k]).squaredNorm() + dh * dh;
    if (d2 < best) {
      best = d2;
      best_k = static_cast<int>(k);
    }
  }
  if (argmin != nullptr) *argmin = best_k;
  return std::sqrt(best);
}

Eigen::VectorXd sample_domain_point(int m, RngStream& stream) {
  if (m == 1) return scalar_point(stream.next_uniform());
  Eigen::VectorXd d = sample_direction(m, stream);
  const double radius = std::pow(stream.next_uniform(), 1.0 / m);
  return radius * d;
}

double coverage_shortfall(const EpsilonNet& net, int samples, RngStream& stream) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    worst = std::max(worst, min_rho(net, sample_domain_point(net.m, stream)));
  }
  return worst;
}

bool certify_coverage(EpsilonNet& net, int samples, RngStream& stream) {
  net.coverage_certified = coverage_shortfall(net, samples, stream) <= net.epsilon;
  return net.coverage_certified;
}

LiftResult lift_to_sphere(const Eigen::VectorXd& x, const EpsilonNet& net) {
  const int n = static_cast<int>(x.size());
  if (net.m >= n) {
    throw std::invalid_argument("lift_to_sphere: net dimension m must be below n");
  }
  if (std::fabs(x.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("lift_to_sphere: x must be a unit vector");
  }
  const Eigen::VectorXd head = x.head(net.m);
  int idx = 0;
  const double dist = min_rho(net, head, &idx);
  if (dist > net.epsilon + 1e-12) {
    throw std::runtime_error(
        "lift_to_sphere: certification failure, no net point within epsilon");
  }
  const Eigen::VectorXd& u = net.points[idx];
  const Eigen::VectorXd tail = x.tail(n - net.m);
  Eigen::VectorXd y(n);
  y.head(net.m) = u;
  const double tail_norm = tail.norm();
  if (tail_norm == 0.0) {
    y.tail(n - net.m).setZero();
  } else {
    y.tail(n - net.m) = (height(u) / tail_norm) * tail;
  }
  return LiftResult{std::move(y), u, (x - y).norm()};
}

}  // namespace rmtlab
