#pragma once

#include <cstdint>

namespace logchisq::specfun {

inline constexpr int kMaxPolygammaOrder = 32;

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// n-th derivative of the digamma function, psi^(n)(x), for x > 0 and
/// 0 <= n <= kMaxPolygammaOrder. n = 0 is digamma itself.
///
/// Evaluated by shifting x upward with psi^(n)(x) = psi^(n)(x+1) - (-1)^n n!/x^(n+1)
/// until x >= 10 + n, then summing the Bernoulli asymptotic series through
/// B_20. Relative error is below 1e-12 on [1e-3, 1e6] away from the single
/// positive root of digamma near 1.4616.
double polygamma(int n, double x);

inline double digamma(double x) { return polygamma(0, x); }

/// log(k!) for k >= 0.
double log_factorial(std::int64_t k);

/// n! as a double for 0 <= n <= 170.
double factorial(int n);

}  // namespace logchisq::specfun
