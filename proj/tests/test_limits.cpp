#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rmtlab/limits.hpp"
#include "rmtlab/rng.hpp"
#include "support/oracles.hpp"

using namespace rmtlab;

TEST_CASE("lambda_theta branches") {
  const DeterministicLimit super = lambda_theta(2.0, 1.0);
  CHECK(super.value == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(super.branch == Branch::kSupercritical);

  const DeterministicLimit sub = lambda_theta(0.5, 1.0);
  CHECK(sub.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sub.branch == Branch::kBulkEdgeTop);

  // Continuity at theta == sigma.
  for (double sigma : {0.3, 1.0, 2.7}) {
    CHECK(lambda_theta(sigma, sigma).value == doctest::Approx(2.0 * sigma));
    CHECK(lambda_theta(sigma * (1 + 1e-12), sigma).value ==
          doctest::Approx(2.0 * sigma).epsilon(1e-10));
  }
  CHECK_THROWS_AS(lambda_theta(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lambda_theta(1.0, 0.0), std::domain_error);
}

TEST_CASE("lambda_theta_c branches") {
  const DeterministicLimit super = lambda_theta_c(4.0, 1.0);
  CHECK(super.value == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
  CHECK(super.branch == Branch::kSupercritical);

  const DeterministicLimit edge = lambda_theta_c(1.5, 1.0);
  CHECK(edge.value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(edge.branch == Branch::kBulkEdgeTop);

  const DeterministicLimit noiseless = lambda_theta_c(4.0, 0.0);
  CHECK(noiseless.value == doctest::Approx(4.0).epsilon(1e-14));

  const DeterministicLimit low = lambda_theta_c(0.25, 0.25);
  CHECK(low.value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(low.branch == Branch::kSubcriticalLow);

  const DeterministicLimit bottom = lambda_theta_c(0.8, 0.25);
  CHECK(bottom.value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(bottom.branch == Branch::kBulkEdgeBottom);

  CHECK_THROWS_AS(lambda_theta_c(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(lambda_theta_c(0.5, 1.5), std::domain_error);
  CHECK_THROWS_AS(lambda_theta_c(-2.0, 0.5), std::domain_error);
}

TEST_CASE("semicircle Stieltjes point identities") {
  const StieltjesValue v = semicircle_stieltjes(2.5, 1.0);
  CHECK(v.g == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(v.gprime == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const StieltjesValue far = semicircle_stieltjes(100.0, 1.0);
  CHECK(std::fabs(far.g + 1.0 / 100.0) <= 1e-3 * std::fabs(far.g));

  CHECK_THROWS_AS(semicircle_stieltjes(1.9, 1.0), std::domain_error);
}

TEST_CASE("semicircle closed form matches quadrature right of the bulk") {
  RngStream stream = derive_stream(21, 0);
  for (int k = 0; k < 10; ++k) {
    const double sigma = 0.5 + stream.next_uniform();
    const double z = 2.0 * sigma * (1.05 + 2.0 * stream.next_uniform());
    const StieltjesValue v = semicircle_stieltjes(z, sigma);
    const double quad = oracles::semicircle_stieltjes_quad(z, sigma);
    CHECK(v.g == doctest::Approx(quad).epsilon(1e-6));
    const double dquad = oracles::derivative5(
        [&](double x) { return semicircle_stieltjes(x, sigma).g; }, z, 1e-5 * z);
    CHECK(v.gprime == doctest::Approx(dquad).epsilon(1e-6));
  }
}

TEST_CASE("Marchenko-Pastur Stieltjes point identities") {
  const StieltjesValue v = mp_stieltjes(16.0 / 3.0, 1.0);
  CHECK(v.g == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(v.gprime == doctest::Approx(9.0 / 128.0).epsilon(1e-14));

  // The c/z^2 moment correction decays one order slower than 1/z.
  const StieltjesValue far = mp_stieltjes(5000.0, 1.0);
  CHECK(std::fabs(far.g + 1.0 / 5000.0) <= 1e-3 * std::fabs(far.g));

  CHECK_THROWS_AS(mp_stieltjes(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(mp_stieltjes(0.0, 0.5), std::domain_error);
}

TEST_CASE("MP closed form matches quadrature outside the bulk") {
  RngStream stream = derive_stream(22, 0);
  for (int k = 0; k < 10; ++k) {
    const double c = 0.1 + 0.85 * stream.next_uniform();
    const double hi = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
    const double z = hi * (1.05 + 2.0 * stream.next_uniform());
    const StieltjesValue v = mp_stieltjes(z, c);
    CHECK(v.g == doctest::Approx(oracles::mp_stieltjes_quad(z, c)).epsilon(1e-6));
  }
  // Below the bulk (c < 1).
  for (int k = 0; k < 5; ++k) {
    const double c = 0.1 + 0.5 * stream.next_uniform();
    const double lo = (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
    const double z = lo * (0.2 + 0.6 * stream.next_uniform());
    const StieltjesValue v = mp_stieltjes(z, c);
    CHECK(v.g == doctest::Approx(oracles::mp_stieltjes_quad(z, c)).epsilon(1e-6));
    const double dquad = oracles::derivative5(
        [&](double x) { return mp_stieltjes(x, c).g; }, z, 1e-6);
    CHECK(v.gprime == doctest::Approx(dquad).epsilon(1e-5));
  }
}

TEST_CASE("identity chain: Stieltjes values at the limit map") {
  RngStream stream = derive_stream(23, 0);
  for (int k = 0; k < 20; ++k) {
    const double sigma = 0.5 + stream.next_uniform();
    const double theta = sigma * (1.05 + 2.0 * stream.next_uniform());
    const double lam = lambda_theta(theta, sigma).value;
    const StieltjesValue v = semicircle_stieltjes(lam, sigma);
    CHECK(v.g == doctest::Approx(-1.0 / theta).epsilon(1e-10));
    CHECK(v.gprime ==
          doctest::Approx(1.0 / (theta * theta - sigma * sigma)).epsilon(1e-10));
  }
  for (int k = 0; k < 20; ++k) {
    const double c = 0.05 + 1.5 * stream.next_uniform();
    const double theta_sq = (1.0 + std::sqrt(c)) * (1.05 + 2.0 * stream.next_uniform());
    const double lam = lambda_theta_c(theta_sq, c).value;
    const StieltjesValue v = mp_stieltjes(lam, c);
    CHECK(v.g == doctest::Approx(-1.0 / theta_sq).epsilon(1e-10));
    const double pred = (theta_sq - 1.0) * (theta_sq - 1.0) /
                        (theta_sq * theta_sq *
                         ((theta_sq - 1.0) * (theta_sq - 1.0) - c));
    CHECK(v.gprime == doctest::Approx(pred).epsilon(1e-10));
  }
}

TEST_CASE("branch monotonicity of lambda_theta") {
  RngStream stream = derive_stream(24, 0);
  const double sigma = 1.3;
  double prev = 0.0;
  for (double theta = 0.05; theta < 4.0; theta += 0.05) {
    const double value = lambda_theta(theta, sigma).value;
    CHECK(value >= prev - 1e-13);
    CHECK(value >= 2.0 * sigma - 1e-13);
    if (theta > sigma + 0.05) CHECK(value > prev);
    prev = value;
  }
  (void)stream;
}

TEST_CASE("bound_rhs examples") {
  BoundParams b;
  b.theorem = Theorem::kT1i;
  b.n = 200;
  b.r = 0;
  b.i = 1;
  b.sigma = 1.0;
  b.t = 0.0;
  CHECK(bound_rhs(b) == doctest::Approx(1.0).epsilon(1e-14));

  BoundParams b2;
  b2.theorem = Theorem::kT2i;
  b2.n = 100;
  b2.p = 25;
  b2.r = 0;
  b2.i = 1;
  b2.t = 0.3;
  CHECK(bound_rhs(b2) == doctest::Approx(std::exp(-4.5)).epsilon(1e-12));
  CHECK(bound_rhs(b2) == doctest::Approx(0.011109).epsilon(1e-4));

  BoundParams b3;
  b3.theorem = Theorem::kT1ii;
  b3.n = 200;
  b3.r = 1;
  b3.i = 1;
  b3.sigma = 1.0;
  b3.spikes = {2.0};
  b3.t = 0.0;
  const double first = std::exp(-199.0 * 1.0 / (16.0 * 4.0));
  CHECK(bound_rhs(b3) == doctest::Approx(first + 8.0).epsilon(1e-12));
}

TEST_CASE("bound_rhs is non-increasing in t over the valid range") {
  BoundParams b;
  b.theorem = Theorem::kT1i;
  b.n = 300;
  b.r = 2;
  b.i = 1;
  b.sigma = 1.0;
  b.spikes = {2.0, 1.5};
  b.delta = 0.5;
  const double floor = bound_t_floor(b);
  double prev = std::numeric_limits<double>::infinity();
  for (double t = floor; t < floor + 3.0; t += 0.05) {
    b.t = t;
    const double value = bound_rhs(b);
    CHECK(value <= prev * (1.0 + 1e-12));
    prev = value;
  }

  BoundParams b2;
  b2.theorem = Theorem::kT2ii;
  b2.n = 500;
  b2.p = 250;
  b2.r = 1;
  b2.s = 0;
  b2.i = 1;
  b2.spikes = {4.0};
  prev = std::numeric_limits<double>::infinity();
  for (double t = 0.0; t < 1.0; t += 0.05) {
    b2.t = t;
    const double value = bound_rhs(b2);
    CHECK(value <= prev);
    prev = value;
  }
}

TEST_CASE("bound_rhs names the violated constraint") {
  BoundParams b;
  b.theorem = Theorem::kT1i;
  b.n = 200;
  b.r = 1;
  b.i = 1;
  b.sigma = 1.0;
  b.spikes = {2.0};
  b.delta = 0.7;  // above 1/2
  b.t = 1.0;
  CHECK_THROWS_WITH_AS(bound_rhs(b), doctest::Contains("delta"), std::domain_error);

  b.delta = 0.5;
  b.t = 0.01;  // below the validity floor
  CHECK_THROWS_WITH_AS(bound_rhs(b), doctest::Contains("floor"), std::domain_error);
}

TEST_CASE("T3i null and mixed cases") {
  BoundParams b;
  b.theorem = Theorem::kT3i;
  b.n = 400;
  b.p = 100;
  b.r = 0;
  b.s = 0;
  b.i = 1;
  b.t = 0.3;
  CHECK(bound_rhs(b) == doctest::Approx(std::exp(-400.0 * 0.09 / 2.0)).epsilon(1e-12));

  // s > 0: the C' constant is a sum of two prefactors (C_0 = 1 when r = 0).
  BoundParams b2;
  b2.theorem = Theorem::kT3i;
  b2.n = 400;
  b2.p = 200;
  b2.r = 0;
  b2.s = 1;
  b2.i = 1;
  b2.spikes = {0.25};
  b2.delta = 1.0 / 3.0;
  b2.t = 0.3;
  const double c = 200.0 / 400.0;
  const double c1n = 2.0 * 0.3 * (1.0 + std::sqrt(c) + 0.3) * 400.0;
  const double rate = (2.0 / 3.0) * (2.0 / 3.0) * 400.0 * 0.09 / 2.0;
  CHECK(bound_rhs(b2) ==
        doctest::Approx((c1n + 1.0) * std::exp(-rate)).epsilon(1e-10));

  // Mixed spikes (r > 0 and s > 0): both C' terms are genuine net bounds,
  // keyed to theta_1 v 1 and the top-eigenvalue center.
  BoundParams b3;
  b3.theorem = Theorem::kT3i;
  b3.n = 400;
  b3.p = 200;
  b3.r = 1;
  b3.s = 1;
  b3.i = 1;
  b3.spikes = {4.0, 0.25};
  b3.delta = 1.0 / 3.0;
  b3.t = 0.5;
  const double value = bound_rhs(b3);
  CHECK(value > 0.0);
  CHECK(std::isfinite(value));
  const double cc = (200.0 - 1.0) / 400.0;
  const double top = std::sqrt(lambda_theta_c(4.0, cc).value);
  const double c1 = 2.0 * 0.5 * (top + 0.5) * 400.0 / 4.0;
  const double rr = (2.0 / 3.0) * (2.0 / 3.0) * 400.0 * 0.25 / 8.0;
  const double expected =
      (4.0 * c1 * (1.0 + c1) + c1) * std::exp(-rr);  // C_2 + C_1 terms
  CHECK(value == doctest::Approx(expected).epsilon(1e-10));
  b3.t = 0.8;
  CHECK(bound_rhs(b3) < value);
}
