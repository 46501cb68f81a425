#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmtlab/nets.hpp"

using namespace rmtlab;

namespace {

Eigen::VectorXd vec1(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

Eigen::VectorXd lift_point(const Eigen::VectorXd& x) {
  Eigen::VectorXd out(x.size() + 1);
  out.head(x.size()) = x;
  out[x.size()] = std::sqrt(std::max(0.0, 1.0 - x.squaredNorm()));
  return out;
}

}  // namespace

TEST_CASE("rho basics") {
  CHECK(rho(vec1(0.3), vec1(0.3)) == doctest::Approx(0.0));
  CHECK(rho(vec1(0.0), vec1(1.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  Eigen::VectorXd a(2), b(3);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(rho(a, b), std::invalid_argument);
}

TEST_CASE("rho equals the Euclidean distance between hemisphere lifts") {
  RngStream stream = derive_stream(51, 0);
  for (int k = 0; k < 200; ++k) {
    const int m = 1 + static_cast<int>(stream.next_u64() % 4);
    const Eigen::VectorXd x = sample_domain_point(m, stream);
    const Eigen::VectorXd y = sample_domain_point(m, stream);
    CHECK(rho(x, y) ==
          doctest::Approx((lift_point(x) - lift_point(y)).norm()).epsilon(1e-12));
  }
}

TEST_CASE("rho metric axioms on random triples") {
  RngStream stream = derive_stream(52, 0);
  for (int k = 0; k < 500; ++k) {
    const int m = 1 + static_cast<int>(stream.next_u64() % 3);
    const Eigen::VectorXd x = sample_domain_point(m, stream);
    const Eigen::VectorXd y = sample_domain_point(m, stream);
    const Eigen::VectorXd z = sample_domain_point(m, stream);
    CHECK(rho(x, y) == rho(y, x));  // symmetric exactly
    CHECK(rho(x, z) <= rho(x, y) + rho(y, z) + 1e-12);
    if ((x - y).norm() > 0) CHECK(rho(x, y) > 0);
  }
}

TEST_CASE("interval net at epsilon = 1/3") {
  const EpsilonNet net = net_interval(1.0 / 3.0);
  CHECK(net.certified_size_bound == doctest::Approx(6.0));
  CHECK(net.points.size() <= 6);
  CHECK(net.points.front()[0] == doctest::Approx(1.0 - 1.0 / 18.0).epsilon(1e-14));
  CHECK(net.points.back()[0] == doctest::Approx(0.0));
}

TEST_CASE("interval net recursion satisfies x_i >= i^2/3 + i/6") {
  for (double eps : {1.0 / 3.0, 0.25, 0.1, 0.05}) {
    const std::vector<double> xs = interval_net_recursion(eps);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      CHECK(xs[i] >= k * k / 3.0 + k / 6.0 - 1e-12);
    }
    const EpsilonNet net = net_interval(eps);
    CHECK(static_cast<double>(net.points.size()) <= net.certified_size_bound);
  }
}

TEST_CASE("interval net coverage oracle") {
  EpsilonNet net = net_interval(1.0 / 3.0);
  RngStream stream = derive_stream(53, 0);
  const double shortfall = coverage_shortfall(net, 100000, stream);
  CHECK(shortfall <= net.epsilon);
  RngStream stream2 = derive_stream(53, 1);
  CHECK(certify_coverage(net, 100000, stream2));
  CHECK(net.coverage_certified);
}

TEST_CASE("ball net at m=2, epsilon=1/3") {
  RngStream stream = derive_stream(54, 0);
  EpsilonNet net = net_ball(2, 1.0 / 3.0, stream);
  CHECK(net.certified_size_bound == doctest::Approx(624.0));
  CHECK(static_cast<double>(net.points.size()) <= 624.0);
  // The zero radial level collapses to a single origin point.
  int zeros = 0;
  for (const auto& pt : net.points) zeros += (pt.norm() == 0.0) ? 1 : 0;
  CHECK(zeros == 1);
  RngStream cov = derive_stream(54, 1);
  CHECK(certify_coverage(net, 100000, cov));
}

TEST_CASE("ball net coverage for m=3 at epsilon=0.25") {
  RngStream stream = derive_stream(55, 0);
  EpsilonNet net = net_ball(3, 0.25, stream);
  CHECK(static_cast<double>(net.points.size()) <= net.certified_size_bound);
  RngStream cov = derive_stream(55, 1);
  CHECK(certify_coverage(net, 100000, cov));
}

TEST_CASE("epsilon range is enforced") {
  CHECK_THROWS_AS(net_interval(0.5), std::invalid_argument);
  CHECK_THROWS_AS(net_interval(0.0), std::invalid_argument);
  RngStream stream = derive_stream(56, 0);
  CHECK_THROWS_AS(net_ball(2, 0.4, stream), std::invalid_argument);
  CHECK_THROWS_AS(net_ball(1, 0.25, stream), std::invalid_argument);
}

TEST_CASE("lift_to_sphere fixes points whose head is a net point") {
  EpsilonNet net = net_interval(1.0 / 3.0);
  const int n = 5;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double u = net.points[1][0];
  x[0] = u;
  x[2] = std::sqrt(1.0 - u * u);
  const LiftResult lift = lift_to_sphere(x, net);
  CHECK(lift.dist == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((lift.y - x).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lift_to_sphere degenerate rule when the tail vanishes") {
  EpsilonNet net = net_interval(1.0 / 3.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x[0] = 1.0;  // tail x'' = 0
  const LiftResult lift = lift_to_sphere(x, net);
  CHECK(lift.y.tail(3).norm() == doctest::Approx(0.0));
  CHECK(lift.y[0] == doctest::Approx(lift.u[0]));
  CHECK(lift.dist <= net.epsilon + 1e-12);
}

TEST_CASE("lift_to_sphere covers random unit vectors on S^19 with an m=3 net") {
  RngStream stream = derive_stream(57, 0);
  EpsilonNet net = net_ball(3, 1.0 / 3.0, stream);
  RngStream samples = derive_stream(57, 1);
  for (int k = 0; k < 10000; ++k) {
    Eigen::VectorXd x(20);
    for (int j = 0; j < 20; ++j) x[j] = samples.next_gaussian();
    x.normalize();
    const LiftResult lift = lift_to_sphere(x, net);
    CHECK(lift.dist <= 1.0 / 3.0 + 1e-12);
    CHECK((x - lift.y).norm() <= 1.0 / 3.0 + 1e-12);
    // y agrees with u on the head coordinates.
    CHECK((lift.y.head(3) - lift.u).norm() == doctest::Approx(0.0));
  }
}
