#include "logchisq/cumulant_algebra.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "logchisq/errors.hpp"

namespace logchisq {
namespace {

constexpr int kMaxBinomial = 64;

using PascalTable = std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1>;

// C(64, 32) < 2^64, so every entry is exact in 64-bit integers.
constexpr PascalTable make_pascal() {
  PascalTable t{};
  for (int n = 0; n <= kMaxBinomial; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) {
      t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
  }
  return t;
}

constexpr PascalTable kPascal = make_pascal();

}  // namespace

template <class Tag>
OrderedSequence<Tag>::OrderedSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw DomainError("sequence must hold at least one order");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw OverflowError("sequence entry of order " + std::to_string(i + 1) + " is not finite");
    }
  }
}

template <class Tag>
double OrderedSequence<Tag>::at_order(int n) const {
  if (n < 1 || n > max_order()) {
    throw OrderError("order " + std::to_string(n) + " outside [1, " +
                     std::to_string(max_order()) + "]");
  }
  return values_[static_cast<std::size_t>(n - 1)];
}

template <class Tag>
OrderedSequence<Tag> OrderedSequence<Tag>::truncated(int m) const {
  if (m < 1 || m > max_order()) {
    throw OrderError("cannot truncate to order " + std::to_string(m));
  }
  return OrderedSequence(std::vector<double>(values_.begin(), values_.begin() + m));
}

template class OrderedSequence<CumulantTag>;
template class OrderedSequence<MomentTag>;

double binomial_coefficient(int n, int k) {
  if (n < 0 || n > kMaxBinomial || k < 0 || k > n) {
    throw DomainError("binomial_coefficient: need 0 <= k <= n <= 64, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  }
  return static_cast<double>(kPascal[n][k]);
}

MomentSeq cumulants_to_moments(const CumulantSeq& kappa) {
  const auto k = kappa.values();
  std::vector<double> mu(k.size());
  for (std::size_t n = 1; n <= k.size(); ++n) {
    double value = k[n - 1];
    for (std::size_t m = 1; m < n; ++m) {
      value += binomial_coefficient(static_cast<int>(n - 1), static_cast<int>(m - 1)) *
               k[m - 1] * mu[n - m - 1];
    }
    mu[n - 1] = value;
  }
  return MomentSeq(std::move(mu));
}

CumulantSeq moments_to_cumulants(const MomentSeq& mu) {
  const auto m_raw = mu.values();
  std::vector<double> kappa(m_raw.size());
  for (std::size_t n = 1; n <= m_raw.size(); ++n) {
    double value = m_raw[n - 1];
    for (std::size_t m = 1; m < n; ++m) {
      value -= binomial_coefficient(static_cast<int>(n - 1), static_cast<int>(m - 1)) *
               kappa[m - 1] * m_raw[n - m - 1];
    }
    kappa[n - 1] = value;
  }
  return CumulantSeq(std::move(kappa));
}

CumulantSeq scale_cumulants(const CumulantSeq& kappa, double w) {
  if (!std::isfinite(w)) {
    throw DomainError("scale_cumulants: weight must be finite");
  }
  std::vector<double> out(kappa.values().begin(), kappa.values().end());
  double power = 1.0;
  for (double& v : out) {
    power *= w;
    v *= power;
  }
  return CumulantSeq(std::move(out));
}

CumulantSeq shift_cumulants(const CumulantSeq& kappa, double c) {
  std::vector<double> out(kappa.values().begin(), kappa.values().end());
  out[0] += c;
  return CumulantSeq(std::move(out));
}

CumulantSeq add_cumulants(const CumulantSeq& a, const CumulantSeq& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("add_cumulants: orders differ (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.values()[i] + b.values()[i];
  }
  return CumulantSeq(std::move(out));
}

}  // namespace logchisq
