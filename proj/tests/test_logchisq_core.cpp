#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logchisq/errors.hpp"
#include "logchisq/logchisq_core.hpp"
#include "logchisq/sampling.hpp"
#include "logchisq/specfun.hpp"
#include "support/oracles.hpp"

using namespace logchisq;

namespace {

constexpr double kEuler = 0.57721566490153286061;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Mixture moments for (50, 1.5) evaluated in 40-digit arithmetic (mpmath).
constexpr double kDf50Ncp1_5Moments[] = {3.92146485621538, 15.4186645143517, 60.7819040534296,
                                       240.220869243419, 951.779998472921, 3780.35884697529};

}  // namespace

TEST_CASE("log_chisq_cgf") {
  for (double df : {0.5, 2.0, 50.0}) {
    CHECK(log_chisq_cgf(df, 0.0) == 0.0);
  }
  CHECK(rel_err(log_chisq_cgf(2.0, 1.0), std::numbers::ln2) < 1e-14);
  CHECK(rel_err(log_chisq_cgf(50.0, 2.0), std::log(4.0 * 26.0 * 25.0)) < 1e-13);
  CHECK_THROWS_AS(log_chisq_cgf(4.0, -2.0), DomainError);
  CHECK_THROWS_AS(log_chisq_cgf(4.0, -3.0), DomainError);
  CHECK_NOTHROW(log_chisq_cgf(4.0, -1.999));
  CHECK_THROWS_AS(log_chisq_cgf(0.0, 1.0), DomainError);
}

TEST_CASE("central_log_cumulants closed forms") {
  const auto k = central_log_cumulants(2.0, 2);
  CHECK(rel_err(k.at_order(1), std::numbers::ln2 - kEuler) < 1e-12);
  CHECK(rel_err(k.at_order(1), 0.11593151565841244881) < 1e-12);
  CHECK(rel_err(k.at_order(2), std::numbers::pi * std::numbers::pi / 6.0) < 1e-12);
  CHECK(rel_err(central_log_cumulants(1.0, 1).at_order(1), -1.27036284546147817) < 1e-12);
  CHECK_THROWS_AS(central_log_cumulants(2.0, 0), OrderError);
  CHECK_THROWS_AS(central_log_cumulants(2.0, 33), OrderError);
  CHECK_THROWS_AS(central_log_cumulants(-1.0, 3), DomainError);
}

TEST_CASE("cumulants are the derivatives of the CGF") {
  for (double df : {1.0, 5.0, 50.0, 7.3}) {
    const auto k = central_log_cumulants(df, 4);
    for (int j = 1; j <= 4; ++j) {
      CAPTURE(df);
      CAPTURE(j);
      CHECK(rel_err(k.at_order(j), oracle::fd_log_chisq_cumulant(df, j)) < 1e-5);
    }
    // The library's own double-precision CGF supports the low orders.
    const auto cgf = [df](double t) { return log_chisq_cgf(df, t); };
    for (int j = 1; j <= 2; ++j) {
      CHECK(rel_err(k.at_order(j), oracle::central_derivative<double>(cgf, j, 1e-3)) < 1e-5);
    }
  }
}

TEST_CASE("central_log_moments") {
  CHECK(rel_err(central_log_moments(2.0, 1).at_order(1), 0.11593151565841244881) < 1e-12);
  CHECK(rel_err(central_log_moments(50.0, 1).at_order(1),
                std::numbers::ln2 + specfun::digamma(25.0)) < 1e-15);
  CHECK(rel_err(central_log_moments(50.0, 1).at_order(1), 3.8918896934119193179) < 1e-13);
  // Jensen: E[log X] < log E[X] = log df.
  for (double df = 0.1; df < 1e4; df *= 1.7) {
    CHECK(central_log_moments(df, 1).at_order(1) < std::log(df));
  }
}

TEST_CASE("central log mean matches simulation") {
  RngState rng(11);
  std::vector<double> ys(1'000'000);
  for (auto& y : ys) y = draw_log_chisq(rng, 50.0, 0.0);
  const auto s = oracle::sample_moments(ys, 2);
  const auto mu = central_log_moments(50.0, 2);
  CHECK(std::abs(s.mean[0] - mu.at_order(1)) < 5.0 * s.se[0]);
  CHECK(std::abs(s.mean[1] - mu.at_order(2)) < 5.0 * s.se[1]);
}

TEST_CASE("non-central moments for df 50, ncp 1.5") {
  const auto mu = noncentral_log_moments({50.0, 1.5}, 6);
  const double rounded[] = {3.92, 15.42, 60.78, 240.22, 951.78, 3780.36};
  for (int k = 1; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(std::round(mu.at_order(k) * 100.0) / 100.0 == doctest::Approx(rounded[k - 1]).epsilon(1e-12));
    CHECK(rel_err(mu.at_order(k), kDf50Ncp1_5Moments[k - 1]) < 1e-11);
  }
}

TEST_CASE("ncp = 0 returns the central moments exactly") {
  CHECK(noncentral_log_moments({50.0, 0.0}, 6) == central_log_moments(50.0, 6));
  CHECK(noncentral_log_cumulants({50.0, 0.0}, 6) == central_log_cumulants(50.0, 6));
  CHECK(noncentral_log_mean({2.0, 0.0}) == doctest::Approx(std::numbers::ln2 - kEuler).epsilon(1e-13));
}

TEST_CASE("non-central moments match simulation") {
  RngState rng(424242);
  std::vector<double> ys(1'000'000);
  for (auto& y : ys) y = draw_log_chisq(rng, 10.0, 7.0);
  const auto s = oracle::sample_moments(ys, 3);
  const auto mu = noncentral_log_moments({10.0, 7.0}, 3);
  for (int k = 1; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(std::abs(s.mean[k - 1] - mu.at_order(k)) < 5.0 * s.se[k - 1]);
  }
}

TEST_CASE("non-central cumulants") {
  const auto k = noncentral_log_cumulants({50.0, 1.5}, 6);
  CHECK(k.at_order(2) > 0.0);
  const auto back = cumulants_to_moments(k);
  for (int j = 1; j <= 6; ++j) {
    CHECK(rel_err(back.at_order(j), kDf50Ncp1_5Moments[j - 1]) < 1e-11);
  }
  // 40-digit mixture cumulants (mpmath).
  const double reference[] = {3.9214648562153766,     0.040777895819375317,
                              -0.0016651401077899519, 0.00013588355984926338,
                              -1.6629702100067426e-5, 2.7131755898565472e-6};
  for (int j = 1; j <= 6; ++j) {
    CAPTURE(j);
    CHECK(rel_err(k.at_order(j), reference[j - 1]) < 1e-9);
  }
  // The plain route through raw moments agrees up to its cancellation error.
  const auto plain = moments_to_cumulants(noncentral_log_moments({50.0, 1.5}, 6));
  for (int j = 1; j <= 6; ++j) {
    CHECK(std::abs(plain.at_order(j) - k.at_order(j)) < 1e-8);
  }
}

TEST_CASE("noncentral_log_mean is an independent route to the first moment") {
  CHECK(noncentral_log_mean({50.0, 1.5}) == doctest::Approx(3.92).epsilon(0.002));
  for (double df : {1.0, 5.0, 50.0}) {
    for (double ncp : {0.5, 10.0, 100.0, 2500.0}) {
      const double direct = noncentral_log_mean({df, ncp});
      const double via_moments = noncentral_log_moments({df, ncp}, 1).at_order(1);
      CAPTURE(df);
      CAPTURE(ncp);
      CHECK(rel_err(direct, via_moments) < 1e-12);
    }
  }
}

TEST_CASE("E[log X] increases with ncp") {
  for (double df : {1.0, 5.0, 50.0}) {
    double prev = noncentral_log_mean({df, 0.0});
    for (double ncp = 0.05; ncp < 500.0; ncp *= 1.5) {
      const double cur = noncentral_log_mean({df, ncp});
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("truncation is stable under tolerance halving") {
  for (double df : {1.0, 5.0, 50.0}) {
    for (double ncp : {0.5, 10.0, 100.0}) {
      const auto a = noncentral_log_moments({df, ncp}, 6, {1e-14, 10000});
      const auto b = noncentral_log_moments({df, ncp}, 6, {0.5e-14, 10000});
      for (int k = 1; k <= 6; ++k) {
        CAPTURE(df);
        CAPTURE(ncp);
        CAPTURE(k);
        CHECK(std::abs(a.at_order(k) - b.at_order(k)) <= 1e-9 * std::abs(b.at_order(k)));
      }
    }
  }
}

TEST_CASE("large non-centrality beyond a fixed 100-term window") {
  // Poisson(500) mass sits around j = 500; a 0..100 loop would see none of it.
  const double mean = noncentral_log_mean({5.0, 1000.0});
  const double mode_like = std::log(5.0 + 1000.0);
  CHECK(std::abs(mean - mode_like) < 0.01);
  RngState rng(5);
  std::vector<double> ys(200'000);
  for (auto& y : ys) y = draw_log_chisq(rng, 5.0, 1000.0);
  const auto s = oracle::sample_moments(ys, 2);
  const auto mu = noncentral_log_moments({5.0, 1000.0}, 2);
  CHECK(std::abs(s.mean[0] - mu.at_order(1)) < 5.0 * s.se[0]);
  CHECK(std::abs(s.mean[1] - mu.at_order(2)) < 5.0 * s.se[1]);
}

TEST_CASE("truncation failure and parameter errors") {
  CHECK_THROWS_AS(noncentral_log_moments({5.0, 100.0}, 3, {1e-14, 5}), TruncationError);
  CHECK_THROWS_AS(noncentral_log_mean({5.0, 100.0}, {1e-14, 5}), TruncationError);
  CHECK_THROWS_AS(noncentral_log_moments({5.0, -1.0}, 3), DomainError);
  CHECK_THROWS_AS(noncentral_log_moments({0.0, 1.0}, 3), DomainError);
  CHECK_THROWS_AS(noncentral_log_moments({5.0, 1.0}, 3, {0.0, 10}), DomainError);
  CHECK_THROWS_AS(noncentral_log_moments({5.0, 1.0}, 3, {1e-14, 0}), DomainError);
  CHECK_THROWS_AS(noncentral_log_moments({5.0, 1.0}, 40), OrderError);
}

TEST_CASE("non-integer degrees of freedom") {
  const auto mu = noncentral_log_moments({3.7, 2.2}, 4);
  RngState rng(77);
  std::vector<double> ys(500'000);
  for (auto& y : ys) y = draw_log_chisq(rng, 3.7, 2.2);
  const auto s = oracle::sample_moments(ys, 4);
  for (int k = 1; k <= 4; ++k) {
    CHECK(std::abs(s.mean[k - 1] - mu.at_order(k)) < 5.0 * s.se[k - 1]);
  }
}
