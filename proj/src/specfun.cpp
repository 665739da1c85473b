#include "logchisq/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "logchisq/errors.hpp"

namespace logchisq::specfun {
namespace {

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,         -1.0 / 30.0,  1.0 / 42.0,       -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0, 7.0 / 6.0,     -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0,
};

constexpr std::array<double, 171> make_factorials() {
  std::array<double, 171> f{};
  f[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    f[i] = f[i - 1] * static_cast<double>(i);
  }
  return f;
}

constexpr auto kFactorials = make_factorials();

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

// psi(x) for x >= 10.
double digamma_asymptotic(double x) {
  const double inv_x2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv_x2;
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    series += kBernoulliEven[k - 1] / (2.0 * static_cast<double>(k)) * power;
    power *= inv_x2;
  }
  return std::log(x) - 0.5 / x - series;
}

// |psi^(n)(x)| for n >= 1 and x >= 10 + n. The sign is (-1)^(n+1).
double polygamma_asymptotic_magnitude(int n, double x) {
  const double nd = n;
  const double inv_x2 = 1.0 / (x * x);
  // bracket = 1 + n/(2x) + sum_k B_2k C(2k+n-1, 2k) / x^(2k)
  double bracket = 1.0 + nd / (2.0 * x);
  double binom = 1.0;
  double power = 1.0;
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    const double kk = static_cast<double>(k);
    binom *= (2.0 * kk + nd - 2.0) * (2.0 * kk + nd - 1.0) / ((2.0 * kk - 1.0) * (2.0 * kk));
    power *= inv_x2;
    bracket += kBernoulliEven[k - 1] * binom * power;
  }
  return kFactorials[n - 1] * std::pow(x, -nd) * bracket;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return boost::math::lgamma(x);
}

double polygamma(int n, double x) {
  if (n < 0 || n > kMaxPolygammaOrder) {
    throw OrderError("polygamma: order must lie in [0, " + std::to_string(kMaxPolygammaOrder) +
                     "], got " + std::to_string(n));
  }
  require_positive(x, "polygamma");

  const double threshold = 10.0 + n;
  double shift_sum = 0.0;
  while (x < threshold) {
    shift_sum += std::pow(x, -static_cast<double>(n + 1));
    x += 1.0;
  }

  if (n == 0) {
    return digamma_asymptotic(x) - shift_sum;
  }
  // Every shift term has the same sign as the asymptotic part, so the
  // magnitudes add without cancellation.
  const double magnitude = polygamma_asymptotic_magnitude(n, x) + kFactorials[n] * shift_sum;
  return (n % 2 == 1) ? magnitude : -magnitude;
}

double log_factorial(std::int64_t k) {
  if (k < 0) {
    throw DomainError("log_factorial: argument must be >= 0, got " + std::to_string(k));
  }
  if (k < 2) {
    return 0.0;
  }
  return log_gamma(static_cast<double>(k) + 1.0);
}

double factorial(int n) {
  if (n < 0 || n > 170) {
    throw DomainError("factorial: argument must lie in [0, 170], got " + std::to_string(n));
  }
  return kFactorials[n];
}

}  // namespace logchisq::specfun
