#include "logchisq/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "logchisq/errors.hpp"
#include "logchisq/specfun.hpp"

namespace logchisq {
namespace {

void require_positive_point(double z, const char* what) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(what) + ": evaluation point must be finite and > 0, got " +
                      std::to_string(z));
  }
}

void require_density_order(int order_max, const char* what) {
  detail::require_order(order_max, what);
  if (order_max < 2) {
    throw OrderError(std::string(what) + ": density approximants need order >= 2");
  }
}

}  // namespace

void validate(const WeightedSumSpec& spec) {
  if (spec.terms.empty()) {
    throw DomainError("WeightedSumSpec: at least one term is required");
  }
  for (const auto& t : spec.terms) {
    if (!std::isfinite(t.weight)) {
      throw DomainError("WeightedSumSpec: weights must be finite");
    }
    validate(LogNcChiSqParams{t.df, t.ncp});
  }
  if (!std::isfinite(spec.offset)) {
    throw DomainError("WeightedSumSpec: offset must be finite");
  }
}

void validate(const ProductSpec& spec) { validate(to_weighted_sum(spec)); }

WeightedSumSpec to_weighted_sum(const ProductSpec& spec) {
  WeightedSumSpec out;
  out.offset = spec.log_scale;
  out.terms.reserve(spec.factors.size());
  for (const auto& f : spec.factors) {
    out.terms.push_back({f.power, f.df, f.ncp});
  }
  return out;
}

ProductSpec doubly_noncentral_f(double df1, double ncp1, double df2, double ncp2) {
  ProductSpec spec{{{1.0, df1, ncp1}, {-1.0, df2, ncp2}}, 0.0};
  validate(spec);
  spec.log_scale = std::log(df2 / df1);
  return spec;
}

CumulantSeq sumlog_cumulants(const WeightedSumSpec& spec, int order_max,
                             const TruncationPolicy& policy) {
  validate(spec);
  detail::require_order(order_max, "sumlog_cumulants");
  CumulantSeq total(std::vector<double>(static_cast<std::size_t>(order_max), 0.0));
  for (const auto& t : spec.terms) {
    const auto kappa = noncentral_log_cumulants({t.df, t.ncp}, order_max, policy);
    total = add_cumulants(total, scale_cumulants(kappa, t.weight));
  }
  return shift_cumulants(total, spec.offset);
}

EdgeworthApproximant sumlog_approximant(const WeightedSumSpec& spec, int order_max,
                                        const TruncationPolicy& policy) {
  require_density_order(order_max, "sumlog_approximant");
  return EdgeworthApproximant(sumlog_cumulants(spec, order_max, policy), Support::real_line());
}

double sumlog_density(const WeightedSumSpec& spec, double x, int order_max, DensityMode mode) {
  return sumlog_approximant(spec, order_max).density(x, mode);
}

double sumlog_cdf(const WeightedSumSpec& spec, double x, int order_max) {
  return sumlog_approximant(spec, order_max).cdf(x);
}

double sumlog_quantile(const WeightedSumSpec& spec, double p, int order_max) {
  return sumlog_approximant(spec, order_max).quantile(p);
}

double prod_density(const EdgeworthApproximant& log_apx, double z, DensityMode mode) {
  require_positive_point(z, "prod_density");
  return log_apx.density(std::log(z), mode) / z;
}

double prod_log_density(const EdgeworthApproximant& log_apx, double z) {
  require_positive_point(z, "prod_log_density");
  const double logz = std::log(z);
  return log_apx.log_density(logz) - logz;
}

double prod_cdf(const EdgeworthApproximant& log_apx, double z) {
  require_positive_point(z, "prod_cdf");
  return log_apx.cdf(std::log(z));
}

double prod_quantile(const EdgeworthApproximant& log_apx, double p) {
  return std::exp(log_apx.quantile(p));
}

double prod_density(const ProductSpec& spec, double z, int order_max, DensityMode mode) {
  require_positive_point(z, "prod_density");
  return prod_density(sumlog_approximant(to_weighted_sum(spec), order_max), z, mode);
}

double prod_log_density(const ProductSpec& spec, double z, int order_max) {
  require_positive_point(z, "prod_log_density");
  return prod_log_density(sumlog_approximant(to_weighted_sum(spec), order_max), z);
}

double prod_cdf(const ProductSpec& spec, double z, int order_max) {
  require_positive_point(z, "prod_cdf");
  return prod_cdf(sumlog_approximant(to_weighted_sum(spec), order_max), z);
}

double prod_quantile(const ProductSpec& spec, double p, int order_max) {
  return prod_quantile(sumlog_approximant(to_weighted_sum(spec), order_max), p);
}

MomentSeq chisq_raw_moments(double df, int order_max) {
  if (!std::isfinite(df) || df <= 0.0) {
    throw DomainError("chisq_raw_moments: df must be finite and > 0");
  }
  detail::require_order(order_max, "chisq_raw_moments");
  const double half_df = 0.5 * df;
  const double base = specfun::log_gamma(half_df);
  std::vector<double> mu(static_cast<std::size_t>(order_max));
  for (int k = 1; k <= order_max; ++k) {
    mu[k - 1] = std::exp(k * std::numbers::ln2 + specfun::log_gamma(k + half_df) - base);
    if (!std::isfinite(mu[k - 1])) {
      throw OverflowError("chisq_raw_moments: moment of order " + std::to_string(k) +
                          " overflows");
    }
  }
  return MomentSeq(std::move(mu));
}

MomentSeq prodchisq_raw_moments(std::span<const double> dfs, int order_max) {
  if (dfs.empty()) {
    throw DomainError("prodchisq_raw_moments: at least one factor is required");
  }
  std::vector<double> mu(static_cast<std::size_t>(order_max), 1.0);
  for (double df : dfs) {
    const auto factor = chisq_raw_moments(df, order_max);
    for (std::size_t k = 0; k < mu.size(); ++k) {
      mu[k] *= factor.values()[k];
    }
  }
  return MomentSeq(std::move(mu));
}

EdgeworthApproximant naive_prod_approximant(std::span<const double> dfs, int order_max) {
  require_density_order(order_max, "naive_prod_approximant");
  return EdgeworthApproximant(moments_to_cumulants(prodchisq_raw_moments(dfs, order_max)),
                              Support::positive_half_line());
}

double prod_density_naive(std::span<const double> dfs, double z, int order_max,
                          DensityMode mode) {
  require_positive_point(z, "prod_density_naive");
  return naive_prod_approximant(dfs, order_max).density(z, mode);
}

}  // namespace logchisq
