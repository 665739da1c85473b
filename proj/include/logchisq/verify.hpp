#pragma once

#include <cstdint>
#include <vector>

#include "logchisq/kernels.hpp"
#include "logchisq/logchisq_core.hpp"

namespace logchisq {

struct MomentCheckConfig {
  LogNcChiSqParams params;
  std::size_t n = 1'000'000;
  int order_max = 6;
  std::uint64_t seed = 1;
  double threshold = 5.0;
  // Added to every theoretical moment before comparison. Nonzero values
  // exist only to exercise the failure path.
  double theory_offset = 0.0;
  kernels::Execution execution = kernels::Execution::kParallel;
};

struct MomentRow {
  int order = 0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  bool pass = false;
};

struct VerificationReport {
  MomentCheckConfig config;
  std::vector<MomentRow> rows;  // ordered by order
  bool pass = false;            // every |z| <= threshold
};

inline constexpr std::size_t kMinVerifyDraws = 100;

// Empirical raw moments of n draws of log X against noncentral_log_moments.
// The standard error of order k is sqrt((m_2k - m_k^2) / n) from the same
// sample.
VerificationReport verify_moments(const MomentCheckConfig& config);

VerificationReport verify_moments(const LogNcChiSqParams& params, std::size_t n, int order_max,
                                  std::uint64_t seed);

struct DensityComparisonConfig {
  std::vector<double> dfs;
  std::size_t n = 1'000'000;
  std::size_t grid_size = 512;  // histogram bins; the grid is the bin centers
  int naive_order = 4;
  int logspace_order = 6;
  std::uint64_t seed = 1;
  kernels::Execution execution = kernels::Execution::kParallel;
};

inline constexpr std::size_t kMinComparisonDraws = std::size_t{1} << 14;

// Product of central chi-squares: empirical histogram against the naive
// product-scale Edgeworth density and the log-space density mapped back by
// change of variables.
struct DensityComparisonReport {
  DensityComparisonConfig config;
  double lo = 0.0;  // 0.1% empirical quantile
  double hi = 0.0;  // 99.9% empirical quantile
  double bin_width = 0.0;
  std::vector<double> grid;
  std::vector<double> empirical;        // integrates to exactly 1 over [lo, hi]
  std::vector<double> naive;            // clamped
  std::vector<double> naive_unclamped;
  std::vector<double> logspace;
  double iae_naive = 0.0;
  double iae_logspace = 0.0;
  bool naive_negative = false;  // unclamped naive series < 0 at some grid point
  double naive_min = 0.0;       // smallest unclamped naive value on the grid
};

DensityComparisonReport compare_densities(const DensityComparisonConfig& config);

}  // namespace logchisq
