#include "rmtlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rmtlab {
namespace {

void require_finite(const Eigen::MatrixXd& m, const char* who) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": non-finite entries rejected");
  }
}

// Flip column signs so the first component of non-negligible magnitude is
// positive; makes eigenvector output reproducible.
void canonicalize_sign(Eigen::Ref<Eigen::MatrixXd> vecs) {
  for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
      const double v = vecs(i, j);
      if (std::fabs(v) > 1e-12) {
        if (v < 0) vecs.col(j) = -vecs.col(j);
        break;
      }
    }
  }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) {
    throw std::invalid_argument("SymMatrix: matrix must be square with n >= 1");
  }
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
      m_(j, i) = m_(i, j);
    }
  }
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(Eigen::MatrixXd::Zero(n, n)); }

SymMatrix SymMatrix::deleted(int index) const {
  const int nn = n();
  if (index < 0 || index >= nn || nn < 2) {
    throw std::invalid_argument("SymMatrix::deleted: index out of range");
  }
  Eigen::MatrixXd out(nn - 1, nn - 1);
  for (int i = 0, oi = 0; i < nn; ++i) {
    if (i == index) continue;
    for (int j = 0, oj = 0; j < nn; ++j) {
      if (j == index) continue;
      out(oi, oj) = m_(i, j);
      ++oj;
    }
    ++oi;
  }
  return SymMatrix(std::move(out));
}

SymMatrix SymMatrix::lower_right(int k, double scale) const {
  if (k < 1 || k > n()) {
    throw std::invalid_argument("SymMatrix::lower_right: block size out of range");
  }
  return SymMatrix(scale * m_.bottomRightCorner(k, k));
}

Spectrum eig_sym(const SymMatrix& a, bool want_vectors) {
  require_finite(a.entries(), "eig_sym");
  const int n = a.n();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a.entries(), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_sym: eigensolver failed to converge");
  }

  Spectrum out;
  out.eigenvalues = solver.eigenvalues().reverse();
  if (want_vectors) {
    Eigen::MatrixXd vecs = solver.eigenvectors().rowwise().reverse();
    canonicalize_sign(vecs);
    // Order exact ties by eigenvector lexicographic order.
    for (int k = 0; k + 1 < n;) {
      int e = k + 1;
      while (e < n && out.eigenvalues[e] == out.eigenvalues[k]) ++e;
      if (e - k > 1) {
        std::vector<int> idx(e - k);
        std::iota(idx.begin(), idx.end(), k);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) {
          return lex_less(vecs.col(x), vecs.col(y));
        });
        Eigen::MatrixXd block(n, e - k);
        for (int j = 0; j < e - k; ++j) block.col(j) = vecs.col(idx[j]);
        vecs.middleCols(k, e - k) = block;
      }
      k = e;
    }
    out.eigenvectors = std::move(vecs);
  }
  return out;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  require_finite(m, "singular_values");
  const Eigen::MatrixXd gram = m * m.transpose();
  Spectrum s = eig_sym(SymMatrix(gram));
  return s.eigenvalues.cwiseMax(0.0).cwiseSqrt();
}

ResolventQuadratics resolvent_quadratics(const Spectrum& eig, double lambda,
                                         const Eigen::VectorXd& v) {
  if (!eig.eigenvectors.has_value()) {
    throw std::invalid_argument("resolvent_quadratics: spectrum must carry eigenvectors");
  }
  const Eigen::VectorXd& mu = eig.eigenvalues;
  const int m = static_cast<int>(mu.size());
  if (v.size() != m) {
    throw std::invalid_argument("resolvent_quadratics: vector dimension mismatch");
  }
  const double gap = (mu.array() - lambda).abs().minCoeff();
  if (!(gap > 1e-8)) {
    throw std::domain_error(
        "resolvent_quadratics: lambda within 1e-8 of the spectrum (singular resolvent)");
  }
  const Eigen::VectorXd w = eig.eigenvectors->transpose() * v;
  ResolventQuadratics out;
  for (int k = 0; k < m; ++k) {
    const double d = mu[k] - lambda;
    out.l1 += w[k] * w[k] / d;
    out.l2 += w[k] * w[k] / (d * d);
    out.tr_r_over_m += 1.0 / d;
    out.tr_r2_over_m += 1.0 / (d * d);
  }
  out.tr_r_over_m /= m;
  out.tr_r2_over_m /= m;
  return out;
}

ResolventQuadratics resolvent_quadratics(const SymMatrix& gt, double lambda,
                                         const Eigen::VectorXd& v) {
  require_finite(gt.entries(), "resolvent_quadratics");
  return resolvent_quadratics(eig_sym(gt, true), lambda, v);
}

}  // namespace rmtlab
