#pragma once

#include <Eigen/Dense>
#include <optional>

namespace rmtlab {

// Dense real symmetric matrix. Construction mirrors the upper triangle
// onto the lower one, so entries(i,j) == entries(j,i) holds exactly.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd m);
  static SymMatrix zero(int n);

  int n() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }

  // Principal submatrix with row/column `index` removed.
  SymMatrix deleted(int index) const;
  // Lower-right block of size k, scaled by `scale`.
  SymMatrix lower_right(int k, double scale = 1.0) const;

 private:
  Eigen::MatrixXd m_;
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;                  // sorted descending
  std::optional<Eigen::MatrixXd> eigenvectors;  // column k pairs with eigenvalue k
};

// Eigendecomposition of a symmetric matrix (tridiagonalization + implicit
// shifts via Eigen's self-adjoint solver). Eigenvalues descending; when
// vectors are requested, exact eigenvalue ties are ordered by eigenvector
// lexicographic order and signs are canonicalized for reproducibility.
Spectrum eig_sym(const SymMatrix& a, bool want_vectors = false);

// Descending singular values of a p x n matrix, defined as the square
// roots of the eigenvalues of M M^T clamped at zero. Returns p values.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

struct ResolventQuadratics {
  double l1 = 0;            // v^T (Gt - lambda I)^-1 v
  double l2 = 0;            // v^T (Gt - lambda I)^-2 v
  double tr_r_over_m = 0;   // tr R / m
  double tr_r2_over_m = 0;  // tr R^2 / m
};

// Resolvent quadratic forms through the eigenbasis; `lambda` must stay at
// least 1e-8 away from every eigenvalue or a singular-resolvent error is
// thrown. The Spectrum overload reuses a precomputed decomposition.
ResolventQuadratics resolvent_quadratics(const SymMatrix& gt, double lambda,
                                         const Eigen::VectorXd& v);
ResolventQuadratics resolvent_quadratics(const Spectrum& eig, double lambda,
                                         const Eigen::VectorXd& v);

}  // namespace rmtlab
