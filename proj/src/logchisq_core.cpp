#include "logchisq/logchisq_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "logchisq/errors.hpp"
#include "logchisq/specfun.hpp"
#include "logchisq/summation.hpp"

namespace logchisq {
namespace {

void require_df(double df, const char* what) {
  if (!std::isfinite(df) || df <= 0.0) {
    throw DomainError(std::string(what) + ": df must be finite and > 0, got " +
                      std::to_string(df));
  }
}

// Sums sum_j Pois(j; half_ncp) * term(j) componentwise, where term(j, out)
// fills out with `width` values.
template <class TermFn>
std::vector<double> poisson_mixture(double half_ncp, std::size_t width,
                                    const TruncationPolicy& policy, TermFn&& term) {
  // Beyond 2^52 consecutive indices are no longer distinct doubles, and the
  // walk would need far more than max_terms terms anyway.
  if (half_ncp > 0x1p52) {
    throw TruncationError("Poisson mixture: ncp/2 = " + std::to_string(half_ncp) +
                          " is too large to sum term by term");
  }
  const double log_h = std::log(half_ncp);
  const auto mode = static_cast<std::int64_t>(std::floor(half_ncp));

  std::vector<CompensatedSum> sums(width);
  std::vector<double> values(width);
  int terms = 0;

  auto add_term = [&](std::int64_t j) {
    if (++terms > policy.max_terms) {
      throw TruncationError("Poisson mixture did not converge within " +
                            std::to_string(policy.max_terms) + " terms (ncp/2 = " +
                            std::to_string(half_ncp) + ")");
    }
    const double w = std::exp(-half_ncp + static_cast<double>(j) * log_h -
                              specfun::log_factorial(j));
    term(j, values);
    bool negligible = true;
    for (std::size_t k = 0; k < width; ++k) {
      const double contribution = w * values[k];
      sums[k].add(contribution);
      if (std::abs(contribution) > policy.tail_mass_tol * std::abs(sums[k].value())) {
        negligible = false;
      }
    }
    return std::pair{w, negligible};
  };

  // Upward from the mode. For j >= mode the weight ratio h/(j+1) is below 1,
  // so the remaining mass is at most w * r / (1 - r).
  const double half_tol = 0.5 * policy.tail_mass_tol;
  for (std::int64_t j = mode;; ++j) {
    const auto [w, negligible] = add_term(j);
    const double r = half_ncp / static_cast<double>(j + 1);
    if (negligible && w * r / (1.0 - r) < half_tol) {
      break;
    }
  }
  // Downward. Below the mode the ratio j/h shrinks with j.
  for (std::int64_t j = mode - 1; j >= 0; --j) {
    const auto [w, negligible] = add_term(j);
    const double r = static_cast<double>(j) / half_ncp;
    if (negligible && w * r / (1.0 - r) < half_tol) {
      break;
    }
  }

  std::vector<double> out(width);
  for (std::size_t k = 0; k < width; ++k) {
    out[k] = sums[k].value();
  }
  return out;
}

// Raw moments of log X - center for central X ~ chi^2(df).
std::vector<double> centered_log_moments(double df, int order_max, double center) {
  const auto mu =
      cumulants_to_moments(shift_cumulants(central_log_cumulants(df, order_max), -center));
  return {mu.values().begin(), mu.values().end()};
}

}  // namespace

void validate(const LogNcChiSqParams& params) {
  require_df(params.df, "LogNcChiSqParams");
  if (!std::isfinite(params.ncp) || params.ncp < 0.0) {
    throw DomainError("LogNcChiSqParams: ncp must be finite and >= 0, got " +
                      std::to_string(params.ncp));
  }
}

void validate(const TruncationPolicy& policy) {
  if (!(policy.tail_mass_tol > 0.0 && policy.tail_mass_tol < 1.0)) {
    throw DomainError("TruncationPolicy: tail_mass_tol must lie in (0, 1)");
  }
  if (policy.max_terms < 1) {
    throw DomainError("TruncationPolicy: max_terms must be >= 1");
  }
}

double log_chisq_cgf(double df, double t) {
  require_df(df, "log_chisq_cgf");
  if (!std::isfinite(t) || t <= -0.5 * df) {
    throw DomainError("log_chisq_cgf: need t > -df/2, got t=" + std::to_string(t));
  }
  if (t == 0.0) {
    return 0.0;
  }
  const double half_df = 0.5 * df;
  return t * std::numbers::ln2 + specfun::log_gamma(half_df + t) - specfun::log_gamma(half_df);
}

CumulantSeq central_log_cumulants(double df, int order_max) {
  require_df(df, "central_log_cumulants");
  detail::require_order(order_max, "central_log_cumulants");
  const double half_df = 0.5 * df;
  std::vector<double> kappa(static_cast<std::size_t>(order_max));
  for (int j = 1; j <= order_max; ++j) {
    kappa[j - 1] = specfun::polygamma(j - 1, half_df);
  }
  kappa[0] += std::numbers::ln2;
  return CumulantSeq(std::move(kappa));
}

MomentSeq central_log_moments(double df, int order_max) {
  return cumulants_to_moments(central_log_cumulants(df, order_max));
}

MomentSeq noncentral_log_moments(const LogNcChiSqParams& params, int order_max,
                                 const TruncationPolicy& policy) {
  validate(params);
  validate(policy);
  detail::require_order(order_max, "noncentral_log_moments");
  if (params.ncp == 0.0) {
    return central_log_moments(params.df, order_max);
  }
  auto sums = poisson_mixture(
      0.5 * params.ncp, static_cast<std::size_t>(order_max), policy,
      [&](std::int64_t j, std::vector<double>& out) {
        const auto mu = central_log_moments(params.df + 2.0 * static_cast<double>(j), order_max);
        std::copy(mu.values().begin(), mu.values().end(), out.begin());
      });
  return MomentSeq(std::move(sums));
}

CumulantSeq noncentral_log_cumulants(const LogNcChiSqParams& params, int order_max,
                                     const TruncationPolicy& policy) {
  validate(params);
  validate(policy);
  detail::require_order(order_max, "noncentral_log_cumulants");
  if (params.ncp == 0.0) {
    return central_log_cumulants(params.df, order_max);
  }
  // Cumulants of order >= 2 are shift invariant, so take mixture moments of
  // log X - center and add center back to kappa_1.
  const double center = std::numbers::ln2 + specfun::digamma(0.5 * (params.df + params.ncp));
  auto sums = poisson_mixture(
      0.5 * params.ncp, static_cast<std::size_t>(order_max), policy,
      [&](std::int64_t j, std::vector<double>& out) {
        out = centered_log_moments(params.df + 2.0 * static_cast<double>(j), order_max, center);
      });
  return shift_cumulants(moments_to_cumulants(MomentSeq(std::move(sums))), center);
}

double noncentral_log_mean(const LogNcChiSqParams& params, const TruncationPolicy& policy) {
  validate(params);
  validate(policy);
  const double half_df = 0.5 * params.df;
  if (params.ncp == 0.0) {
    return std::numbers::ln2 + specfun::digamma(half_df);
  }
  const auto sum = poisson_mixture(0.5 * params.ncp, 1, policy,
                                   [&](std::int64_t j, std::vector<double>& out) {
                                     out[0] = specfun::digamma(static_cast<double>(j) + half_df);
                                   });
  return std::numbers::ln2 + sum[0];
}

}  // namespace logchisq
