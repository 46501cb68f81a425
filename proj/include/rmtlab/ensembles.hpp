#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmtlab/linalg.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

enum class ModelKind { kDeformedGoe, kSpikedPopulation };

std::string model_name(ModelKind m);
std::optional<ModelKind> model_from_name(const std::string& name);

// Full description of a random matrix model plus dimensions and seed.
// For the deformed GOE, `spikes` holds theta_1 >= ... >= theta_r > 0.
// For the spiked population model, `spikes` holds the population
// eigenvalues theta_1^2 >= ... >= theta_{r+s}^2 > 0; values equal to 1
// are permitted by the sampler (they are ordinary bulk directions) but
// rejected by the limit maps.
struct EnsembleSpec {
  ModelKind model = ModelKind::kDeformedGoe;
  int n = 0;                   // sample dimension
  int p = 0;                   // row dimension (spiked only)
  double sigma = 1.0;          // noise scale (deformed GOE only)
  std::vector<double> spikes;
  std::uint64_t seed = 0;

  void validate() const;
  int r() const;  // GOE: spike count; spiked: count of spikes > 1
  int s() const;  // spiked: count of spikes < 1 (0 for GOE)
};

struct SampleDraw {
  SymMatrix matrix;                        // A = P + G, or S_n
  std::uint64_t replicate = 0;
  EnsembleSpec spec;
  // Spiked model only: the underlying p x n standard-normal factor G,
  // retained when requested so downstream constructions can reuse it.
  std::optional<Eigen::MatrixXd> factor;
};

// One GOE draw: symmetric with independent upper-triangle Gaussians,
// diagonal variance 2 sigma^2/n and off-diagonal variance sigma^2/n.
SymMatrix sample_goe(int n, double sigma, RngStream& stream);

// A = diag(theta_1..theta_r, 0, ..) + GOE(n, sigma^2/n); the per-replicate
// stream is derived deterministically from (seed, replicate).
SampleDraw sample_deformed(const EnsembleSpec& spec, std::uint64_t replicate);

// S_n = (Sigma^{1/2} G)(Sigma^{1/2} G)^T / n with G having i.i.d. standard
// normal entries and Sigma^{1/2} = diag(theta_1, .., theta_{r+s}, 1, .., 1).
SampleDraw sample_spiked(const EnsembleSpec& spec, std::uint64_t replicate,
                         bool keep_factor = false);

SampleDraw sample(const EnsembleSpec& spec, std::uint64_t replicate,
                  bool keep_factor = false);

}  // namespace rmtlab
