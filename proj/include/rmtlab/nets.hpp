#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rmtlab/rng.hpp"

namespace rmtlab {

// Hemispheric metric on the unit ball B^m_2:
//   rho_m(x, y) = sqrt(|x-y|^2 + (sqrt(1-|x|^2) - sqrt(1-|y|^2))^2)
// It equals the Euclidean distance between the lifts (x, sqrt(1-|x|^2))
// and (y, sqrt(1-|y|^2)) on the upper hemisphere of S^m.
double rho(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Finite epsilon-net on [0,1] (m = 1) or B^m_2 (m >= 2) under rho_m.
struct EpsilonNet {
  int m = 1;
  double epsilon = 0;
  std::vector<Eigen::VectorXd> points;
  double certified_size_bound = 0;
  bool coverage_certified = false;  // set by certify_coverage
  std::uint64_t construction_seed = 0;

  // Product structure of the ball net (directions on S^{m-1} and radial
  // levels), retained to accelerate nearest-point queries. Empty for m = 1.
  std::vector<Eigen::VectorXd> sphere_dirs;
  std::vector<double> radii;
};

// Radial recursion of the interval net: x_1 = 1/2, x_{i+1} = x_i + 2 sqrt(x_i),
// generated until x_k * eps^2 >= 1. Exposed so the sequence growth
// (x_i >= i^2/3 + i/6) can be audited directly.
std::vector<double> interval_net_recursion(double epsilon);

// Net for ([0,1], rho_1): points {1 - x_i eps^2} for the recursion above,
// closed with 0. Size certified <= 2/eps. Requires 0 < eps <= 1/3.
EpsilonNet net_interval(double epsilon);

// Net for (B^m_2, rho_m), m >= 2: product of a greedy maximal
// (1-1/m) eps-separated direction set on S^{m-1} with an eps/m interval
// net of radii. Size certified <= 4m^2/eps (1 + 2m/((m-1) eps))^{m-1}.
// The greedy stage stops after 10x(direction bound) consecutive
// rejections; the result is heuristic until certified by coverage.
EpsilonNet net_ball(int m, double epsilon, RngStream& stream);

// Minimum rho_m distance from x in B^m_2 to the net; `argmin` optionally
// receives the index of the closest point.
double min_rho(const EpsilonNet& net, const Eigen::VectorXd& x, int* argmin = nullptr);

// Randomized coverage oracle: the largest min-distance over `samples`
// uniform draws from the net's domain. Certification passes when the
// shortfall is at most epsilon.
double coverage_shortfall(const EpsilonNet& net, int samples, RngStream& stream);
bool certify_coverage(EpsilonNet& net, int samples, RngStream& stream);

struct LiftResult {
  Eigen::VectorXd y;  // point of S^{n-1} sharing its first m coordinates with u
  Eigen::VectorXd u;  // the net point used
  double dist = 0;    // |x - y| == rho_m(x', u)
};

// Lift a net over B^m_2 to approximate x in S^{n-1} (m < n): with x = (x', x''),
// pick the closest net point u and set y = (u, sqrt(1-|u|^2)/sqrt(1-|x'|^2) x'')
// (y = (u, 0) when x'' = 0). Fails if no net point lies within epsilon.
LiftResult lift_to_sphere(const Eigen::VectorXd& x, const EpsilonNet& net);

// Uniform draw from the net's domain ([0,1] for m = 1, B^m_2 otherwise).
Eigen::VectorXd sample_domain_point(int m, RngStream& stream);

}  // namespace rmtlab
