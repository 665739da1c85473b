#include "logchisq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logchisq/distributions.hpp"
#include "logchisq/errors.hpp"
#include "logchisq/sampling.hpp"

namespace logchisq {

VerificationReport verify_moments(const MomentCheckConfig& config) {
  validate(config.params);
  detail::require_order(config.order_max, "verify_moments");
  if (config.n < kMinVerifyDraws) {
    throw DomainError("verify_moments: n must be >= " + std::to_string(kMinVerifyDraws));
  }
  if (!(config.threshold > 0.0)) {
    throw DomainError("verify_moments: threshold must be > 0");
  }

  const auto theory = noncentral_log_moments(config.params, config.order_max);
  const auto params = config.params;
  const auto sums = kernels::power_sums(
      config.n, 2 * config.order_max, config.seed,
      [params](RngState& rng) { return draw_log_chisq(rng, params.df, params.ncp); },
      config.execution);

  VerificationReport report;
  report.config = config;
  report.pass = true;
  const double n = static_cast<double>(config.n);
  for (int k = 1; k <= config.order_max; ++k) {
    MomentRow row;
    row.order = k;
    row.empirical = sums.mean_of_power(k);
    row.theoretical = theory.at_order(k) + config.theory_offset;
    const double var = std::max(sums.mean_of_power(2 * k) - row.empirical * row.empirical, 0.0);
    row.std_error = std::sqrt(var / n);
    const double diff = row.empirical - row.theoretical;
    row.z_score = row.std_error > 0.0 ? diff / row.std_error
                                      : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
    row.pass = std::abs(row.z_score) <= config.threshold;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

VerificationReport verify_moments(const LogNcChiSqParams& params, std::size_t n, int order_max,
                                  std::uint64_t seed) {
  MomentCheckConfig config;
  config.params = params;
  config.n = n;
  config.order_max = order_max;
  config.seed = seed;
  return verify_moments(config);
}

DensityComparisonReport compare_densities(const DensityComparisonConfig& config) {
  if (config.dfs.empty()) {
    throw DomainError("compare_densities: at least one df is required");
  }
  if (config.n < kMinComparisonDraws) {
    throw DomainError("compare_densities: n must be >= " + std::to_string(kMinComparisonDraws));
  }
  if (config.grid_size < 2) {
    throw DomainError("compare_densities: grid_size must be >= 2");
  }

  ProductSpec spec;
  for (double df : config.dfs) {
    spec.factors.push_back({1.0, df, 0.0});
  }
  validate(spec);
  const auto naive_apx = naive_prod_approximant(config.dfs, config.naive_order);
  const auto log_apx = sumlog_approximant(to_weighted_sum(spec), config.logspace_order);

  const auto sum_spec = to_weighted_sum(spec);
  auto draws = kernels::generate(
      config.n, config.seed,
      [&sum_spec](RngState& rng) { return std::exp(draw_sumlog(rng, sum_spec)); },
      config.execution);

  DensityComparisonReport report;
  report.config = config;
  {
    auto sorted = draws;
    const auto at_quantile = [&](double q) {
      const auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
      std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx),
                       sorted.end());
      return sorted[idx];
    };
    report.lo = at_quantile(0.001);
    report.hi = at_quantile(0.999);
  }

  const std::size_t bins = config.grid_size;
  const auto counts = kernels::histogram(draws, report.lo, report.hi, bins, config.execution);
  std::uint64_t in_range = 0;
  for (auto c : counts) {
    in_range += c;
  }
  report.bin_width = (report.hi - report.lo) / static_cast<double>(bins);
  report.grid.resize(bins);
  report.empirical.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    report.grid[b] = report.lo + (static_cast<double>(b) + 0.5) * report.bin_width;
    report.empirical[b] =
        static_cast<double>(counts[b]) / (static_cast<double>(in_range) * report.bin_width);
  }

  report.naive_unclamped.resize(bins);
  report.logspace.resize(bins);
  kernels::evaluate(
      report.grid, report.naive_unclamped,
      [&](double z) { return naive_apx.density(z, DensityMode::kUnclamped); }, config.execution);
  kernels::evaluate(
      report.grid, report.logspace, [&](double z) { return prod_density(log_apx, z); },
      config.execution);

  report.naive.resize(bins);
  report.naive_min = report.naive_unclamped.front();
  for (std::size_t b = 0; b < bins; ++b) {
    report.naive[b] = std::max(report.naive_unclamped[b], 0.0);
    report.naive_min = std::min(report.naive_min, report.naive_unclamped[b]);
    report.iae_naive += std::abs(report.naive[b] - report.empirical[b]) * report.bin_width;
    report.iae_logspace += std::abs(report.logspace[b] - report.empirical[b]) * report.bin_width;
  }
  report.naive_negative = report.naive_min < 0.0;
  return report;
}

}  // namespace logchisq
