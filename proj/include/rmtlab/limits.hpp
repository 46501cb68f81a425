#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rmtlab {

// Phase of a deterministic eigenvalue limit. A spike strong enough to
// detach from the bulk is supercritical (above) or subcritical-low
// (below); otherwise the limit sticks to a bulk edge.
enum class Branch { kSupercritical, kBulkEdgeTop, kBulkEdgeBottom, kSubcriticalLow };
enum class LimitModel { kGoe, kSpiked };

struct DeterministicLimit {
  double value = 0;
  Branch branch = Branch::kBulkEdgeTop;
  LimitModel model = LimitModel::kGoe;
};

std::string branch_name(Branch b);

// Deformed-GOE limit map: theta + sigma^2/theta for theta > sigma,
// 2*sigma otherwise. Continuous at theta == sigma.
DeterministicLimit lambda_theta(double theta, double sigma);

// Spiked-population limit map (three branches):
//   theta^2 + c*theta^2/(theta^2-1)   if theta^2 > 1+sqrt(c), or c<1 and theta^2 < 1-sqrt(c)
//   (1+sqrt(c))^2                     if 1 < theta^2 <= 1+sqrt(c)
//   (1-sqrt(c))^2                     if c < 1 and 1-sqrt(c) <= theta^2 < 1
// theta^2 == 1 is rejected, as is theta^2 < 1 with c >= 1 (no branch).
DeterministicLimit lambda_theta_c(double theta_sq, double c);

struct StieltjesValue {
  double g = 0;
  double gprime = 0;
};

// Stieltjes transform of the semicircle law on [-2 sigma, 2 sigma],
// evaluated right of the bulk (z > 2 sigma):
//   g(z) = (-z + sqrt(z^2 - 4 sigma^2)) / (2 sigma^2)
// Satisfies g(lambda_theta) = -1/theta and g'(lambda_theta) = 1/(theta^2 - sigma^2).
StieltjesValue semicircle_stieltjes(double z, double sigma);

// Stieltjes transform of the Marchenko-Pastur-type limit of the n x n Gram
// spectrum at aspect ratio c (for c < 1 this law carries an atom of mass
// 1-c at zero):
//   g(z) = (c - 1 - z + sqrt((z-1-c)^2 - 4c)) / (2z)
// with the root branch chosen so g(z) -> 0 as z -> +inf. Valid for z
// outside [(1-sqrt(c))^2, (1+sqrt(c))^2], z != 0. Satisfies
// g(lambda_{theta,c}) = -1/theta^2 on both detached branches.
StieltjesValue mp_stieltjes(double z, double c);

enum class Theorem { kT1i, kT1ii, kT2i, kT2ii, kT3i, kT3ii };

std::string theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(const std::string& name);

// Parameters of one displayed deviation bound. `spikes` holds theta values
// for the GOE theorems (T1*) and theta^2 values for the spiked ones (T2*/T3*).
struct BoundParams {
  Theorem theorem = Theorem::kT1i;
  int n = 0;
  int p = 0;
  int r = 0;
  int s = 0;
  int i = 1;
  double sigma = 1.0;
  double t = 0.0;
  double delta = 0.5;
  std::vector<double> spikes;
  double c1 = 2.0;
  double c2 = 0.25;
  // Rate of the T2ii/T3ii exponential; stated only as "a positive real
  // number depending on theta_1 and c", so it stays configurable. When
  // absent, default_c3 is used.
  std::optional<double> c3;
};

// Default T2ii/T3ii rate: c2 / max(theta_1^2, 1), mirroring the
// 1/(2 theta_1^2) scaling of the upper-tail exponents.
double default_c3(double theta1_sq, double c2);

// Validity floor on t for the selected theorem (0 for the (ii) parts and
// the null cases).
double bound_t_floor(const BoundParams& params);

// Exact right-hand side of the selected displayed inequality. Values above
// 1 are returned as computed (vacuous but informative). Violated parameter
// constraints raise errors naming the constraint.
double bound_rhs(const BoundParams& params);

}  // namespace rmtlab
