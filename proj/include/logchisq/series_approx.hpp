#pragma once

#include <limits>
#include <vector>

#include "logchisq/cumulant_algebra.hpp"

namespace logchisq {

// Interval the approximated variable lives on. Endpoints may be infinite.
struct Support {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Support real_line() { return {}; }
  static Support positive_half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

// mean = kappa_1, sd = sqrt(kappa_2), lambda_j = kappa_j / kappa_2^(j/2).
struct StandardizedCumulants {
  double mean = 0.0;
  double sd = 1.0;
  std::vector<double> lambda;  // lambda[j] for j >= 3; entries 0..2 unused

  double lambda_at(int j) const {
    return j < static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(j)] : 0.0;
  }
};

StandardizedCumulants standardize(const CumulantSeq& kappa);

enum class DensityMode {
  kClamped,    // negative series values are reported as 0, no renormalization
  kUnclamped,  // raw series value, may be negative
};

// Probabilists' Hermite polynomial He_n(z), 0 <= n <= 64.
double hermite_probabilist(int n, double z);

// Edgeworth expansion built from kappa_1..kappa_m, m >= 2.
//
// The correction is grouped by powers of n^(-1/2): for s = 1..m-2 every
// tuple (k_1..k_s) with sum i*k_i = s contributes
//   He_{s+2r}(z) prod_i (lambda_{i+2}/(i+2)!)^{k_i} / k_i!,   r = sum k_i,
// to the density bracket, and He_{s+2r-1}(z) to the CDF correction. Terms
// are aggregated by Hermite degree at construction so evaluation is a
// single Hermite recurrence.
class EdgeworthApproximant {
 public:
  explicit EdgeworthApproximant(CumulantSeq kappa, Support support = Support::real_line());

  int order() const { return kappa_.max_order(); }
  const CumulantSeq& cumulants() const { return kappa_; }
  const Support& support() const { return support_; }
  const StandardizedCumulants& standardized() const { return standard_; }

  // Coefficient of He_d(z) in the density bracket; index is the degree.
  const std::vector<double>& hermite_coefficients() const { return coef_; }

  double density(double x, DensityMode mode = DensityMode::kClamped) const;
  // log of the clamped density; -inf where it is 0.
  double log_density(double x) const;
  double cdf(double x) const;
  // Cornish-Fisher quantile, p in (0, 1).
  double quantile(double p) const;

 private:
  // 1 + sum_d coef_[d] He_d(z) and sum_d coef_[d] He_{d-1}(z).
  std::pair<double, double> corrections(double z) const;

  CumulantSeq kappa_;
  Support support_;
  StandardizedCumulants standard_;
  std::vector<double> coef_;
};

double edgeworth_density(const EdgeworthApproximant& apx, double x,
                         DensityMode mode = DensityMode::kClamped);
double edgeworth_cdf(const EdgeworthApproximant& apx, double x);

// kappa_1 + sqrt(kappa_2) * w(p) with
//   w = z + (z^2-1) l3/6 + (z^3-3z) l4/24 - (2z^3-5z) l3^2/36,
// z the standard normal quantile. The l3 term needs m >= 3, the other two
// need m >= 4; cumulants above order 4 are not used. Clipped to support.
double cornish_fisher_quantile(const EdgeworthApproximant& apx, double p);

double normal_pdf(double z);
double normal_cdf(double z);
double normal_quantile(double p);

}  // namespace logchisq
