#pragma once

#include <span>
#include <vector>

#include "logchisq/cumulant_algebra.hpp"
#include "logchisq/logchisq_core.hpp"
#include "logchisq/series_approx.hpp"

namespace logchisq {

struct SumTerm {
  double weight = 1.0;
  double df = 1.0;
  double ncp = 0.0;
};

// Y = offset + sum_i w_i log X_i, X_i ~ chi^2(df_i, ncp_i) independent.
struct WeightedSumSpec {
  std::vector<SumTerm> terms;
  double offset = 0.0;
};

struct ProductFactor {
  double power = 1.0;
  double df = 1.0;
  double ncp = 0.0;
};

// Z = exp(log_scale) * prod_i X_i^{p_i}, i.e. Z = exp(Y) for the matching
// weighted sum.
struct ProductSpec {
  std::vector<ProductFactor> factors;
  double log_scale = 0.0;
};

void validate(const WeightedSumSpec& spec);
void validate(const ProductSpec& spec);

WeightedSumSpec to_weighted_sum(const ProductSpec& spec);

// F = (X1/df1) / (X2/df2) as a product with powers (+1, -1) and log scale
// log(df2/df1).
ProductSpec doubly_noncentral_f(double df1, double ncp1, double df2, double ncp2);

// kappa_j(Y) = sum_i w_i^j kappa_j(log X_i), plus the offset on kappa_1.
CumulantSeq sumlog_cumulants(const WeightedSumSpec& spec, int order_max,
                             const TruncationPolicy& policy = {});

// Approximant for Y on the whole real line. order_max >= 2.
EdgeworthApproximant sumlog_approximant(const WeightedSumSpec& spec, int order_max,
                                        const TruncationPolicy& policy = {});

double sumlog_density(const WeightedSumSpec& spec, double x, int order_max,
                      DensityMode mode = DensityMode::kClamped);
double sumlog_cdf(const WeightedSumSpec& spec, double x, int order_max);
double sumlog_quantile(const WeightedSumSpec& spec, double p, int order_max);

// Density of Z from an approximant for log Z: f_Y(log z) / z. z > 0.
double prod_density(const EdgeworthApproximant& log_apx, double z,
                    DensityMode mode = DensityMode::kClamped);
double prod_log_density(const EdgeworthApproximant& log_apx, double z);
double prod_cdf(const EdgeworthApproximant& log_apx, double z);
double prod_quantile(const EdgeworthApproximant& log_apx, double p);

double prod_density(const ProductSpec& spec, double z, int order_max,
                    DensityMode mode = DensityMode::kClamped);
double prod_log_density(const ProductSpec& spec, double z, int order_max);
double prod_cdf(const ProductSpec& spec, double z, int order_max);
double prod_quantile(const ProductSpec& spec, double p, int order_max);

// E[X^k] = 2^k Gamma(k + df/2) / Gamma(df/2), k = 1..order_max. Throws
// OverflowError if a moment is not finite.
MomentSeq chisq_raw_moments(double df, int order_max);

// Raw moments of a product of independent central chi-squares.
MomentSeq prodchisq_raw_moments(std::span<const double> dfs, int order_max);

// Baseline: Edgeworth expansion of the product itself, built from its raw
// moments, on support (0, inf). Central factors only.
EdgeworthApproximant naive_prod_approximant(std::span<const double> dfs, int order_max);

double prod_density_naive(std::span<const double> dfs, double z, int order_max,
                          DensityMode mode = DensityMode::kClamped);

}  // namespace logchisq
