#include "logchisq/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "logchisq/errors.hpp"
#include "logchisq/specfun.hpp"

namespace logchisq {
namespace {

void require_count(std::size_t n, const char* what) {
  if (n < 1) {
    throw DomainError(std::string(what) + ": n must be >= 1");
  }
}

double log_gamma_large_shape(RngState& rng, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) {
      return std::log(d) + std::log(v);
    }
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d) + std::log(v);
    }
  }
}

// Hormann (1993), PTRS. Valid for mean >= 10.
std::uint64_t poisson_ptrs(RngState& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
    const double rhs = -mean + k * loglam - specfun::log_gamma(k + 1.0);
    if (lhs <= rhs) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngState::RngState(std::uint64_t seed) : seed_(seed), engine_(derive_seed(seed, 0)) {}

double RngState::uniform() {
  for (;;) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) {
      return u;
    }
  }
}

double RngState::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u;
  double v;
  double s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double draw_log_gamma(RngState& rng, double shape) {
  if (!std::isfinite(shape) || shape <= 0.0) {
    throw DomainError("draw_log_gamma: shape must be finite and > 0");
  }
  if (shape >= 1.0) {
    return log_gamma_large_shape(rng, shape);
  }
  const double boosted = log_gamma_large_shape(rng, shape + 1.0);
  return boosted + std::log(rng.uniform()) / shape;
}

std::uint64_t draw_poisson(RngState& rng, double mean) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw DomainError("draw_poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean >= 10.0) {
    return poisson_ptrs(rng, mean);
  }
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) {
      break;
    }
    cdf = next;
  }
  return k;
}

double draw_log_chisq(RngState& rng, double df, double ncp) {
  double shape = 0.5 * df;
  if (ncp > 0.0) {
    shape += static_cast<double>(draw_poisson(rng, 0.5 * ncp));
  }
  return std::numbers::ln2 + draw_log_gamma(rng, shape);
}

double draw_sumlog(RngState& rng, const WeightedSumSpec& spec) {
  double y = spec.offset;
  for (const auto& t : spec.terms) {
    y += t.weight * draw_log_chisq(rng, t.df, t.ncp);
  }
  return y;
}

std::vector<double> sample_chisq(RngState& rng, double df, double ncp, std::size_t n) {
  validate(LogNcChiSqParams{df, ncp});
  require_count(n, "sample_chisq");
  std::vector<double> out(n);
  for (auto& x : out) {
    // Extremely small df can push a draw below the smallest normal double.
    x = std::max(std::exp(draw_log_chisq(rng, df, ncp)), std::numeric_limits<double>::min());
  }
  return out;
}

std::vector<double> sample_sumlog(RngState& rng, const WeightedSumSpec& spec, std::size_t n) {
  validate(spec);
  require_count(n, "sample_sumlog");
  std::vector<double> out(n);
  for (auto& y : out) {
    y = draw_sumlog(rng, spec);
  }
  return out;
}

std::vector<double> sample_prod(RngState& rng, const ProductSpec& spec, std::size_t n) {
  auto out = sample_sumlog(rng, to_weighted_sum(spec), n);
  for (auto& z : out) {
    z = std::exp(z);
  }
  return out;
}

}  // namespace logchisq
