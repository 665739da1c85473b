#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "logchisq/distributions.hpp"

namespace logchisq {

// splitmix64 finalizer of seed + stream. Used to derive independent child
// seeds for parallel chunks and per-test streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Single-owner random state: a 64-bit Mersenne Twister plus a cached normal
// deviate. Same seed and same call sequence give bit-identical output.
class RngState {
 public:
  explicit RngState(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Child state with seed derive_seed(seed(), stream). Does not advance *this.
  RngState split(std::uint64_t stream) const { return RngState(derive_seed(seed_, stream)); }

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal, Marsaglia polar method.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// log of a Gamma(shape, 1) variate. Marsaglia-Tsang squeeze/rejection for
// shape >= 1; below 1 the shape is boosted by one and corrected with
// log(U)/shape, which stays finite where U^(1/shape) would underflow.
double draw_log_gamma(RngState& rng, double shape);

// Poisson variate: sequential inversion for small means, PTRS
// (transformed rejection with squeeze) otherwise.
std::uint64_t draw_poisson(RngState& rng, double mean);

// log X for X ~ chi^2(df, ncp). Non-central draws use the Poisson mixture:
// J ~ Poisson(ncp/2), then a central chi^2 with df + 2J degrees of freedom.
double draw_log_chisq(RngState& rng, double df, double ncp);

std::vector<double> sample_chisq(RngState& rng, double df, double ncp, std::size_t n);
std::vector<double> sample_sumlog(RngState& rng, const WeightedSumSpec& spec, std::size_t n);
std::vector<double> sample_prod(RngState& rng, const ProductSpec& spec, std::size_t n);

// One draw of Y = offset + sum_i w_i log X_i.
double draw_sumlog(RngState& rng, const WeightedSumSpec& spec);

}  // namespace logchisq
