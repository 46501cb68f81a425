#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rmtlab/linalg.hpp"
#include "rmtlab/rng.hpp"
#include "support/oracles.hpp"

using namespace rmtlab;

namespace {

Eigen::MatrixXd random_symmetric(int n, RngStream& stream, double scale = 1.0) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = scale * stream.next_gaussian();
      m(j, i) = m(i, j);
    }
  }
  return m;
}

Eigen::MatrixXd random_matrix(int rows, int cols, RngStream& stream) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = stream.next_gaussian();
  }
  return m;
}

}  // namespace

TEST_CASE("eig_sym on a diagonal matrix") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const Spectrum s = eig_sym(SymMatrix(d));
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_sym on [[2,1],[1,2]]") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Spectrum s = eig_sym(SymMatrix(m), true);
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // Symmetry eigenvectors (1,1)/sqrt(2) and (1,-1)/sqrt(2).
  const Eigen::MatrixXd& v = *s.eigenvectors;
  CHECK(std::fabs(v(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(v(0, 0) * v(1, 0) > 0);
  CHECK(v(0, 1) * v(1, 1) < 0);
}

TEST_CASE("eig_sym matches the inertia-bisection oracle on random 8x8 input") {
  RngStream stream = derive_stream(11, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd m = random_symmetric(8, stream);
    const Spectrum s = eig_sym(SymMatrix(m));
    const std::vector<double> oracle = oracles::bisection_eigenvalues(m);
    for (int k = 0; k < 8; ++k) {
      CHECK(s.eigenvalues[k] == doctest::Approx(oracle[k]).epsilon(1e-8));
    }
  }
}

TEST_CASE("eig_sym rejects non-finite entries") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = std::nan("");
  CHECK_THROWS_AS(eig_sym(SymMatrix(m)), std::invalid_argument);
}

TEST_CASE("eigenvector residual and orthonormality invariants") {
  RngStream stream = derive_stream(12, 0);
  const Eigen::MatrixXd m = random_symmetric(20, stream);
  const Spectrum s = eig_sym(SymMatrix(m), true);
  const Eigen::MatrixXd& v = *s.eigenvectors;
  for (int k = 0; k < 20; ++k) {
    const double lambda = s.eigenvalues[k];
    const double residual = (m * v.col(k) - lambda * v.col(k)).norm();
    CHECK(residual <= 1e-10 * (1.0 + std::fabs(lambda)) * 20);
  }
  const Eigen::MatrixXd gram = v.transpose() * v;
  CHECK((gram - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trace preservation on random input") {
  RngStream stream = derive_stream(13, 0);
  for (int n : {5, 17, 40}) {
    const Eigen::MatrixXd m = random_symmetric(n, stream);
    const Spectrum s = eig_sym(SymMatrix(m));
    CHECK(std::fabs(s.eigenvalues.sum() - m.trace()) <= 1e-8 * n);
  }
}

TEST_CASE("repeated eigenvalues get a deterministic eigenvector order") {
  const Spectrum a = eig_sym(SymMatrix(Eigen::MatrixXd::Identity(3, 3)), true);
  const Spectrum b = eig_sym(SymMatrix(Eigen::MatrixXd::Identity(3, 3)), true);
  CHECK((a.eigenvectors->array() == b.eigenvectors->array()).all());
  for (int k = 0; k < 3; ++k) CHECK(a.eigenvalues[k] == doctest::Approx(1.0));
  const Eigen::MatrixXd gram = a.eigenvectors->transpose() * *a.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("interlacing is exact for diagonal matrices") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d(0, 0) = 4;
  d(1, 1) = 3;
  d(2, 2) = 2;
  d(3, 3) = 1;
  const SymMatrix a(d);
  const Spectrum full = eig_sym(a);
  const Spectrum del = eig_sym(a.deleted(1));  // removes the eigenvalue 3
  for (int k = 0; k < 3; ++k) {
    CHECK(full.eigenvalues[k] >= del.eigenvalues[k] - 1e-12);
    CHECK(del.eigenvalues[k] >= full.eigenvalues[k + 1] - 1e-12);
  }
}

TEST_CASE("Cauchy interlacing under row/column deletion") {
  RngStream stream = derive_stream(14, 0);
  const int n = 12;
  const SymMatrix a(random_symmetric(n, stream));
  const Spectrum full = eig_sym(a);
  for (int index : {0, 5, n - 1}) {
    const Spectrum del = eig_sym(a.deleted(index));
    for (int k = 0; k < n - 1; ++k) {
      CHECK(full.eigenvalues[k] >= del.eigenvalues[k] - 1e-8);
      CHECK(del.eigenvalues[k] >= full.eigenvalues[k + 1] - 1e-8);
    }
  }
}

TEST_CASE("singular values of a zero matrix") {
  const Eigen::VectorXd sv = singular_values(Eigen::MatrixXd::Zero(3, 5));
  REQUIRE(sv.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(sv[k] == doctest::Approx(0.0));
}

TEST_CASE("singular values of identity padded with zero columns") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 5);
  m.block(0, 0, 3, 3) = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::VectorXd sv = singular_values(m);
  for (int k = 0; k < 3; ++k) CHECK(sv[k] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("singular values match the Gram identity and an SVD oracle") {
  RngStream stream = derive_stream(15, 0);
  const Eigen::MatrixXd m = random_matrix(4, 6, stream);
  const Eigen::VectorXd sv = singular_values(m);

  const Spectrum gram = eig_sym(SymMatrix(Eigen::MatrixXd(m * m.transpose())));
  for (int k = 0; k < 4; ++k) {
    CHECK(sv[k] ==
          doctest::Approx(std::sqrt(std::max(0.0, gram.eigenvalues[k]))).epsilon(1e-10));
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  for (int k = 0; k < 4; ++k) {
    CHECK(sv[k] == doctest::Approx(svd.singularValues()[k]).epsilon(1e-10));
  }
}

TEST_CASE("singular values are invariant under row and column permutations") {
  RngStream stream = derive_stream(16, 0);
  const Eigen::MatrixXd m = random_matrix(5, 7, stream);
  Eigen::MatrixXd permuted = m;
  permuted.row(0).swap(permuted.row(3));
  permuted.col(1).swap(permuted.col(6));
  permuted.col(2).swap(permuted.col(4));
  const Eigen::VectorXd a = singular_values(m);
  const Eigen::VectorXd b = singular_values(permuted);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("resolvent quadratics for Gt = 0, lambda = -1") {
  RngStream stream = derive_stream(17, 0);
  Eigen::VectorXd v(4);
  for (int k = 0; k < 4; ++k) v[k] = stream.next_gaussian();
  const ResolventQuadratics q = resolvent_quadratics(SymMatrix::zero(4), -1.0, v);
  CHECK(q.l1 == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
  CHECK(q.l2 == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
  CHECK(q.tr_r_over_m == doctest::Approx(1.0));
  CHECK(q.tr_r2_over_m == doctest::Approx(1.0));
}

TEST_CASE("resolvent quadratics for diag(1,2) at lambda = 0") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  Eigen::VectorXd v(2);
  v << 1, 1;
  const ResolventQuadratics q = resolvent_quadratics(SymMatrix(d), 0.0, v);
  CHECK(q.l1 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(q.l2 == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("resolvent L1 matches a dense linear-solve oracle") {
  RngStream stream = derive_stream(18, 0);
  const int m = 15;
  const Eigen::MatrixXd gt = random_symmetric(m, stream, 0.5);
  Eigen::VectorXd v(m);
  for (int k = 0; k < m; ++k) v[k] = stream.next_gaussian();
  const Spectrum s = eig_sym(SymMatrix(gt));
  const double lambda = s.eigenvalues[0] + 1.5;  // safely right of the spectrum

  const ResolventQuadratics q = resolvent_quadratics(SymMatrix(gt), lambda, v);
  const Eigen::MatrixXd shifted =
      gt - lambda * Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd solve = shifted.fullPivLu().solve(v);
  CHECK(q.l1 == doctest::Approx(v.dot(solve)).epsilon(1e-8));
  CHECK(q.l2 == doctest::Approx(solve.squaredNorm()).epsilon(1e-8));
}

TEST_CASE("resolvent rejects lambda within the spectral gap") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  Eigen::VectorXd v(2);
  v << 1, 1;
  CHECK_THROWS_AS(resolvent_quadratics(SymMatrix(d), 1.0 + 5e-9, v), std::domain_error);
}
