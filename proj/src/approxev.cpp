#include "rmtlab/approxev.hpp"

#include <cmath>
#include <stdexcept>

namespace rmtlab {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("approx_ev: ") + what);
}

}  // namespace

ApproxEvReport goe_approx_ev(const SampleDraw& draw, int i) {
  const EnsembleSpec& spec = draw.spec;
  require(spec.model == ModelKind::kDeformedGoe, "draw must come from the deformed GOE");
  const int r = spec.r();
  require(i >= 1 && i <= r, "spike index out of range");
  const double theta = spec.spikes[i - 1];
  const double sigma = spec.sigma;
  if (!(theta > sigma)) {
    throw std::domain_error("approx_ev: subcritical spike (theta_i <= sigma)");
  }
  const int n = spec.n;
  const int m = n - r;
  require(m >= 1, "n must exceed r");

  ApproxEvReport rep;
  rep.spike_index = i;
  const DeterministicLimit limit = lambda_theta(theta, sigma);
  rep.target = limit.value;
  rep.lambda0 = 0.5 * (2.0 * sigma + limit.value);
  const StieltjesValue pred = semicircle_stieltjes(limit.value, sigma);
  rep.l1_pred = pred.g;
  rep.l2_pred = pred.gprime;

  // G~ = sqrt(n/m) * (lower-right m x m block of G); P vanishes there.
  const double scale = std::sqrt(static_cast<double>(n) / m);
  const SymMatrix gt = draw.matrix.lower_right(m, scale);
  const Spectrum gt_eig = eig_sym(gt, true);
  rep.extreme_block_eig = gt_eig.eigenvalues[0];
  rep.event_b_ok = rep.extreme_block_eig <= rep.lambda0;
  if (!rep.event_b_ok) return rep;

  // v has i.i.d. N(0, 1/m) coordinates: (g_{i,r+1..n}) = sqrt(m/n) sigma v.
  const Eigen::VectorXd g_row =
      draw.matrix.entries().row(i - 1).tail(m).transpose();
  const Eigen::VectorXd v = (scale / sigma) * g_row;

  const ResolventQuadratics q = resolvent_quadratics(gt_eig, limit.value, v);
  rep.l1 = q.l1;
  rep.l2 = q.l2;

  const Eigen::VectorXd w = gt_eig.eigenvectors->transpose() * v;
  const Eigen::VectorXd rv =
      *gt_eig.eigenvectors *
      (w.array() / (gt_eig.eigenvalues.array() - limit.value)).matrix();

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x[i - 1] = std::sqrt(1.0 - sigma * sigma / (theta * theta));
  x.tail(m) = -(sigma / theta) / std::sqrt(q.l2) * rv;
  rep.x = x;

  rep.rayleigh = x.dot(draw.matrix.entries() * x);
  rep.gap = rep.target - rep.rayleigh;

  // Four-term expansion of lambda_theta - x^T A x.
  const double mn = std::sqrt(static_cast<double>(m) / n);
  const double g_ii = draw.matrix(i - 1, i - 1) - theta;
  const double s2 = sigma * sigma;
  const double t2 = theta * theta;
  const double term1 = (1.0 - mn) * 2.0 * s2 / theta;
  const double term2 = -g_ii * (1.0 - s2 / t2);
  const double term3 = mn * (s2 / t2) * (-q.l1 / q.l2 - (t2 - s2) / theta);
  const double term4 = mn * (2.0 * s2 / theta) * std::sqrt(1.0 - s2 / t2) *
                       (q.l1 / std::sqrt(q.l2) + std::sqrt(t2 - s2) / theta);
  rep.gap_expansion = term1 + term2 + term3 + term4;
  rep.cross_check = std::fabs(rep.gap - rep.gap_expansion);
  return rep;
}

ApproxEvReport spm_approx_ev(const SampleDraw& draw, int i) {
  const EnsembleSpec& spec = draw.spec;
  require(spec.model == ModelKind::kSpikedPopulation,
          "draw must come from the spiked population model");
  require(draw.factor.has_value(), "draw must retain its Gaussian factor");
  const int r = spec.r();
  const int s = spec.s();
  const int rs = static_cast<int>(spec.spikes.size());
  require(i >= 1 && i <= rs, "spike index out of range");
  const int n = spec.n;
  const int p = spec.p;
  const int mtil = p - rs;
  require(mtil >= 1, "p must exceed r + s");

  const double theta_sq = spec.spikes[i - 1];
  const double c = static_cast<double>(p - r) / n;
  const double cprime = static_cast<double>(p - r - s) / n;
  const bool top = theta_sq > 1.0 + std::sqrt(c);
  const bool bottom = theta_sq < 1.0 - std::sqrt(cprime);
  if (!top && !bottom) {
    throw std::domain_error(
        "approx_ev: spike neither above 1+sqrt(c) nor below 1-sqrt(c')");
  }
  const double ratio = top ? c : cprime;

  ApproxEvReport rep;
  rep.spike_index = i;
  const DeterministicLimit limit = lambda_theta_c(theta_sq, ratio);
  const double lambda = limit.value;
  rep.target = lambda;
  const double edge = top ? (1.0 + std::sqrt(ratio)) * (1.0 + std::sqrt(ratio))
                          : (1.0 - std::sqrt(ratio)) * (1.0 - std::sqrt(ratio));
  rep.lambda0 = 0.5 * (edge + lambda);
  const StieltjesValue pred = mp_stieltjes(lambda, ratio);
  rep.l1_pred = pred.g;
  rep.l2_pred = pred.gprime;

  // G~ = (1/sqrt(n)) * (rows r+s+1..p of G), of size mtil x n.
  const Eigen::MatrixXd gtil =
      draw.factor->bottomRows(mtil) / std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd gram = gtil * gtil.transpose();
  const Spectrum gram_eig = eig_sym(SymMatrix(gram), true);

  rep.extreme_block_eig =
      top ? gram_eig.eigenvalues[0] : gram_eig.eigenvalues[mtil - 1];
  rep.event_b_ok =
      top ? (rep.extreme_block_eig <= rep.lambda0) : (rep.extreme_block_eig >= rep.lambda0);
  if (!rep.event_b_ok) return rep;

  const Eigen::VectorXd v =
      draw.factor->row(i - 1).transpose() / std::sqrt(static_cast<double>(n));

  // R = (G~ G~^T - lambda I)^{-1} through the Gram eigenbasis; the
  // resolvent S = (G~^T G~ - lambda I)^{-1} acts as Sv = (G~^T R G~ v - v)/lambda.
  const Eigen::VectorXd gv = gtil * v;
  const Eigen::VectorXd wg = gram_eig.eigenvectors->transpose() * gv;
  const double gap_to_spectrum =
      (gram_eig.eigenvalues.array() - lambda).abs().minCoeff();
  if (!(gap_to_spectrum > 1e-8) || !(std::fabs(lambda) > 1e-8)) {
    throw std::domain_error("approx_ev: singular resolvent at lambda");
  }
  const Eigen::VectorXd r_gv =
      *gram_eig.eigenvectors *
      (wg.array() / (gram_eig.eigenvalues.array() - lambda)).matrix();
  const Eigen::VectorXd sv = (gtil.transpose() * r_gv - v) / lambda;
  rep.l1 = v.dot(sv);
  rep.l2 = sv.squaredNorm();

  const double xi_sq = ((theta_sq - 1.0) * (theta_sq - 1.0) - ratio) /
                       ((theta_sq - 1.0) * (theta_sq - 1.0 + ratio));
  const double xi = std::sqrt(xi_sq);
  const double denom = lambda * rep.l2 + rep.l1;
  require(denom > 0.0, "lambda L2 + L1 must be positive");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  x[i - 1] = xi;
  x.tail(mtil) = -std::sqrt(1.0 - xi_sq) / std::sqrt(denom) * r_gv;
  rep.x = x;

  rep.rayleigh = x.dot(draw.matrix.entries() * x);
  rep.gap = rep.target - rep.rayleigh;

  // y = (1/sqrt(n)) G^T Sigma^{1/2} x two ways: by definition and through
  // the identity y = (a I - lambda b S) v.
  const double theta = std::sqrt(theta_sq);
  const double b = std::sqrt(1.0 - xi_sq) / std::sqrt(denom);
  const double a = theta * xi - b;
  const Eigen::VectorXd y_def = theta * xi * v + gtil.transpose() * x.tail(mtil);
  const Eigen::VectorXd y_id = a * v - lambda * b * sv;
  rep.y_check = (y_def - y_id).norm();

  // Gap identity: lambda - x^T S_n x = lambda(1 - lambda b^2 L2) - a^2 |v|^2
  //               + 2 a b lambda L1.
  rep.gap_expansion = lambda * (1.0 - lambda * b * b * rep.l2) -
                      a * a * v.squaredNorm() + 2.0 * a * b * lambda * rep.l1;
  rep.cross_check = std::fabs(rep.gap - rep.gap_expansion);
  return rep;
}

TraceProbe trace_concentration_probe(const SymMatrix& gt, double lambda, int reps,
                                     RngStream& stream) {
  if (reps < 1) throw std::invalid_argument("trace_concentration_probe: reps >= 1");
  const int m = gt.n();
  const Spectrum eig = eig_sym(gt, true);
  const double gap = (eig.eigenvalues.array() - lambda).abs().minCoeff();
  if (!(gap > 1e-8)) {
    throw std::domain_error(
        "trace_concentration_probe: lambda within 1e-8 of the spectrum");
  }

  TraceProbe probe;
  probe.reps = reps;
  for (int k = 0; k < m; ++k) {
    const double d = eig.eigenvalues[k] - lambda;
    probe.tr_r_over_m += 1.0 / d;
    probe.tr_r2_over_m += 1.0 / (d * d);
  }
  probe.tr_r_over_m /= m;
  probe.tr_r2_over_m /= m;

  const double sd = 1.0 / std::sqrt(static_cast<double>(m));
  double sum1 = 0, sum2 = 0, sq1 = 0, sq2 = 0;
  Eigen::VectorXd v(m);
  for (int k = 0; k < reps; ++k) {
    for (int j = 0; j < m; ++j) v[j] = sd * stream.next_gaussian();
    const Eigen::VectorXd w = eig.eigenvectors->transpose() * v;
    double l1 = 0, l2 = 0;
    for (int j = 0; j < m; ++j) {
      const double d = eig.eigenvalues[j] - lambda;
      l1 += w[j] * w[j] / d;
      l2 += w[j] * w[j] / (d * d);
    }
    sum1 += l1;
    sum2 += l2;
    sq1 += l1 * l1;
    sq2 += l2 * l2;
    probe.max_dev_l1 = std::max(probe.max_dev_l1, std::fabs(l1 - probe.tr_r_over_m));
    probe.max_dev_l2 = std::max(probe.max_dev_l2, std::fabs(l2 - probe.tr_r2_over_m));
  }
  probe.mean_l1 = sum1 / reps;
  probe.mean_l2 = sum2 / reps;
  probe.std_l1 = std::sqrt(std::max(0.0, sq1 / reps - probe.mean_l1 * probe.mean_l1));
  probe.std_l2 = std::sqrt(std::max(0.0, sq2 / reps - probe.mean_l2 * probe.mean_l2));
  return probe;
}

TraceProbe trace_concentration_probe(const SampleDraw& draw, double lambda, int reps) {
  require(draw.spec.model == ModelKind::kDeformedGoe,
          "trace probe wrapper expects a deformed GOE draw");
  const int r = draw.spec.r();
  const int m = draw.spec.n - r;
  const double scale = std::sqrt(static_cast<double>(draw.spec.n) / m);
  const SymMatrix gt = draw.matrix.lower_right(m, scale);
  RngStream stream = derive_stream(draw.spec.seed, draw.replicate, /*tag=*/1);
  return trace_concentration_probe(gt, lambda, reps, stream);
}

}  // namespace rmtlab
