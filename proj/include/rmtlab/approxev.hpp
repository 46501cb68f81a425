#pragma once

#include <Eigen/Dense>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/limits.hpp"
#include "rmtlab/linalg.hpp"

namespace rmtlab {

// Diagnostics of one approximate-eigenvector construction. When the
// truncation event B fails, no vector is produced and only event_b_ok /
// lambda0 are meaningful.
struct ApproxEvReport {
  Eigen::VectorXd x;        // unit vector (empty when event B failed)
  double rayleigh = 0;      // x^T A x or x^T S_n x
  double target = 0;        // lambda_theta or lambda_{theta,c}
  double gap = 0;           // target - rayleigh
  double l1 = 0;            // resolvent quadratic form v^T R v (or v^T S v)
  double l2 = 0;
  double l1_pred = 0;       // Stieltjes prediction g(target)
  double l2_pred = 0;       // g'(target)
  bool event_b_ok = false;
  double lambda0 = 0;       // truncation level defining event B
  double gap_expansion = 0; // closed-form expansion of the gap
  double cross_check = 0;   // |gap - gap_expansion|
  double y_check = 0;       // spiked only: |y(definition) - y(identity)|
  int spike_index = 1;
  double extreme_block_eig = 0;  // block eigenvalue tested against lambda0
};

// Deformed-GOE construction for spike i with theta_i > sigma:
//   x_i = sqrt(1 - sigma^2/theta_i^2),  tail = -(sigma/theta_i) R v / sqrt(L2)
// on the event B = {lambda_max(G~) <= lambda0}, lambda0 = (2 sigma + lambda_theta)/2.
// The gap is recomputed through the four-term expansion and cross-checked.
ApproxEvReport goe_approx_ev(const SampleDraw& draw, int i);

// Spiked-population construction. For theta_i^2 > 1 + sqrt(c) it targets
// lambda_{theta_i,c} on B = {lambda_max(G~ G~^T) <= lambda0}; for
// theta_i^2 < 1 - sqrt(c') it targets the smallest-eigenvalue analogue on
// B = {lambda_min(G~ G~^T) >= lambda0}. The draw must carry its factor.
ApproxEvReport spm_approx_ev(const SampleDraw& draw, int i);

struct TraceProbe {
  double tr_r_over_m = 0;
  double tr_r2_over_m = 0;
  double mean_l1 = 0;
  double mean_l2 = 0;
  double std_l1 = 0;
  double std_l2 = 0;
  double max_dev_l1 = 0;  // max |L1 - tr R / m| across v draws
  double max_dev_l2 = 0;
  int reps = 0;
};

// Spread of the resolvent quadratic forms across independent v draws
// (v with i.i.d. N(0, 1/m) coordinates), against the trace means.
TraceProbe trace_concentration_probe(const SymMatrix& gt, double lambda, int reps,
                                     RngStream& stream);

// Deformed-GOE wrapper: probes the rescaled lower block G~ of the draw.
TraceProbe trace_concentration_probe(const SampleDraw& draw, double lambda, int reps);

}  // namespace rmtlab
