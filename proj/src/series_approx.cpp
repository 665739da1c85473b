#include "logchisq/series_approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

#include "logchisq/errors.hpp"
#include "logchisq/specfun.hpp"

namespace logchisq {
namespace {

constexpr int kMaxHermiteOrder = 64;

// Calls visit(k) for every k = (k_1..k_s) with sum i*k_i == s.
void for_each_partition(int s, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> k(static_cast<std::size_t>(s) + 1, 0);
  std::function<void(int, int)> rec = [&](int part, int remaining) {
    if (remaining == 0) {
      visit(k);
      return;
    }
    if (part > remaining) {
      return;
    }
    for (int count = remaining / part; count >= 0; --count) {
      k[part] = count;
      rec(part + 1, remaining - count * part);
    }
    k[part] = 0;
  };
  rec(1, s);
}

// He_0..He_max_degree at z.
void hermite_table(double z, int max_degree, std::vector<double>& he) {
  he.assign(static_cast<std::size_t>(max_degree) + 1, 0.0);
  he[0] = 1.0;
  if (max_degree >= 1) {
    he[1] = z;
  }
  for (int n = 1; n < max_degree; ++n) {
    he[n + 1] = z * he[n] - n * he[n - 1];
  }
}

}  // namespace

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double hermite_probabilist(int n, double z) {
  if (n < 0 || n > kMaxHermiteOrder) {
    throw OrderError("hermite_probabilist: order must lie in [0, 64], got " + std::to_string(n));
  }
  std::vector<double> he;
  hermite_table(z, n, he);
  return he[static_cast<std::size_t>(n)];
}

StandardizedCumulants standardize(const CumulantSeq& kappa) {
  if (kappa.max_order() < 2) {
    throw OrderError("standardize: need at least two cumulants");
  }
  const double var = kappa.at_order(2);
  if (!(var > 0.0)) {
    throw DomainError("standardize: kappa_2 must be > 0, got " + std::to_string(var));
  }
  StandardizedCumulants out;
  out.mean = kappa.at_order(1);
  out.sd = std::sqrt(var);
  out.lambda.assign(static_cast<std::size_t>(kappa.max_order()) + 1, 0.0);
  for (int j = 3; j <= kappa.max_order(); ++j) {
    out.lambda[static_cast<std::size_t>(j)] = kappa.at_order(j) / std::pow(out.sd, j);
  }
  return out;
}

EdgeworthApproximant::EdgeworthApproximant(CumulantSeq kappa, Support support)
    : kappa_(std::move(kappa)), support_(support), standard_(standardize(kappa_)) {
  if (!(support_.lo < support_.hi)) {
    throw DomainError("EdgeworthApproximant: support must satisfy lo < hi");
  }
  const int m = kappa_.max_order();
  coef_.assign(static_cast<std::size_t>(3 * (m - 2)) + 1, 0.0);

  // lambda_{i+2} / (i+2)! for i = 1..m-2.
  std::vector<double> base(static_cast<std::size_t>(m - 1), 0.0);
  for (int i = 1; i <= m - 2; ++i) {
    base[i] = standard_.lambda_at(i + 2) / specfun::factorial(i + 2);
  }
  for (int s = 1; s <= m - 2; ++s) {
    for_each_partition(s, [&](const std::vector<int>& k) {
      int r = 0;
      double c = 1.0;
      for (int i = 1; i <= s; ++i) {
        if (k[i] == 0) {
          continue;
        }
        r += k[i];
        c *= std::pow(base[i], k[i]) / specfun::factorial(k[i]);
      }
      coef_[static_cast<std::size_t>(s + 2 * r)] += c;
    });
  }
}

std::pair<double, double> EdgeworthApproximant::corrections(double z) const {
  const int max_degree = static_cast<int>(coef_.size()) - 1;
  double density_bracket = 1.0;
  double cdf_sum = 0.0;
  if (max_degree >= 3) {
    thread_local std::vector<double> he;
    hermite_table(z, max_degree, he);
    for (int d = 3; d <= max_degree; ++d) {
      const double c = coef_[static_cast<std::size_t>(d)];
      if (c == 0.0) {
        continue;
      }
      density_bracket += c * he[static_cast<std::size_t>(d)];
      cdf_sum += c * he[static_cast<std::size_t>(d - 1)];
    }
  }
  return {density_bracket, cdf_sum};
}

double EdgeworthApproximant::density(double x, DensityMode mode) const {
  if (x <= support_.lo || x >= support_.hi) {
    return 0.0;
  }
  const double z = (x - standard_.mean) / standard_.sd;
  const double phi = normal_pdf(z);
  if (phi == 0.0) {
    return 0.0;
  }
  const double value = phi / standard_.sd * corrections(z).first;
  if (mode == DensityMode::kClamped && !(value > 0.0)) {
    return 0.0;
  }
  return value;
}

double EdgeworthApproximant::log_density(double x) const {
  const double d = density(x, DensityMode::kClamped);
  return d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity();
}

double EdgeworthApproximant::cdf(double x) const {
  if (x <= support_.lo) {
    return 0.0;
  }
  if (x >= support_.hi) {
    return 1.0;
  }
  const double z = (x - standard_.mean) / standard_.sd;
  const double phi = normal_pdf(z);
  double value = normal_cdf(z);
  if (phi > 0.0) {
    value -= phi * corrections(z).second;
  }
  return std::clamp(value, 0.0, 1.0);
}

double EdgeworthApproximant::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  const double z = normal_quantile(p);
  const int m = order();
  double w = z;
  if (m >= 3) {
    const double l3 = standard_.lambda_at(3);
    w += (z * z - 1.0) * l3 / 6.0;
    if (m >= 4) {
      const double l4 = standard_.lambda_at(4);
      w += (z * z * z - 3.0 * z) * l4 / 24.0 - (2.0 * z * z * z - 5.0 * z) * l3 * l3 / 36.0;
    }
  }
  return std::clamp(standard_.mean + standard_.sd * w, support_.lo, support_.hi);
}

double edgeworth_density(const EdgeworthApproximant& apx, double x, DensityMode mode) {
  return apx.density(x, mode);
}

double edgeworth_cdf(const EdgeworthApproximant& apx, double x) { return apx.cdf(x); }

double cornish_fisher_quantile(const EdgeworthApproximant& apx, double p) {
  return apx.quantile(p);
}

}  // namespace logchisq
