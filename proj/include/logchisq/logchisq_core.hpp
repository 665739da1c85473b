#pragma once

#include "logchisq/cumulant_algebra.hpp"

namespace logchisq {

// Parameters of X ~ chi^2(df, ncp); the quantities below describe log X.
struct LogNcChiSqParams {
  double df = 1.0;   // degrees of freedom, > 0, need not be an integer
  double ncp = 0.0;  // non-centrality, >= 0
};

// Throws DomainError unless df > 0, ncp >= 0 and both are finite.
void validate(const LogNcChiSqParams& params);

// Stopping rule for the Poisson mixture over j = 0, 1, 2, ...
// Summation starts at the Poisson mode and walks outward in both
// directions. A direction stops once a geometric bound on its remaining
// Poisson mass is below tail_mass_tol / 2 and the last term moved every
// requested order by less than tail_mass_tol relative to the partial sum.
struct TruncationPolicy {
  double tail_mass_tol = 1e-14;
  int max_terms = 10000;
};

void validate(const TruncationPolicy& policy);

// Cumulant generating function of log X for central X ~ chi^2(df):
//   K(t) = t log 2 + log Gamma(df/2 + t) - log Gamma(df/2),  t > -df/2.
double log_chisq_cgf(double df, double t);

// kappa_1 = log 2 + psi(df/2), kappa_j = psi^(j-1)(df/2) for j > 1.
CumulantSeq central_log_cumulants(double df, int order_max);

MomentSeq central_log_moments(double df, int order_max);

// Raw moments of log X for X ~ chi^2(df, ncp), as the Poisson(ncp/2)
// mixture of central log-moments with df + 2j degrees of freedom. ncp == 0
// returns central_log_moments without summing.
MomentSeq noncentral_log_moments(const LogNcChiSqParams& params, int order_max,
                                 const TruncationPolicy& policy = {});

// Cumulants of the same mixture. The mixture is not cumulant-additive, so
// these come from mixture moments. Moments are taken about an approximate
// mean first, which keeps the high-order cumulants from cancelling away.
CumulantSeq noncentral_log_cumulants(const LogNcChiSqParams& params, int order_max,
                                     const TruncationPolicy& policy = {});

// E[log X] = log 2 + sum_j Pois(j; ncp/2) psi(j + df/2), summed directly.
//
// This is an independent route to the first entry of noncentral_log_moments.
// Some published closed forms for this mean drop the log 2 term even at
// ncp = 0; Monte Carlo agrees with the expression here.
double noncentral_log_mean(const LogNcChiSqParams& params, const TruncationPolicy& policy = {});

}  // namespace logchisq
