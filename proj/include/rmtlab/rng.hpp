#pragma once

#include <cstdint>

namespace rmtlab {

// Counter-based random stream: the k-th output is a pure function of
// (key, k). Streams derived from the same (seed, replicate, tag) triple
// produce identical draws independent of scheduling or thread count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double next_uniform();

  // Standard normal via the inverse-CDF method (Wichura's PPND16),
  // fixed at build time so sampled values are stable across platforms.
  double next_gaussian();

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Per-replicate stream derivation: hash of (master_seed, replicate, tag).
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t replicate,
                        std::uint64_t tag = 0);

// Inverse standard-normal CDF, exposed for tests.
double inverse_normal_cdf(double p);

}  // namespace rmtlab
