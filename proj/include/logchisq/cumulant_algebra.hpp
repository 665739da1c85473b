#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace logchisq {

struct CumulantTag {};
struct MomentTag {};

// Finite, non-empty sequence of per-order statistics. Orders are 1-based:
// at_order(1) is the first cumulant or the mean.
template <class Tag>
class OrderedSequence {
 public:
  explicit OrderedSequence(std::vector<double> values);
  OrderedSequence(std::initializer_list<double> values)
      : OrderedSequence(std::vector<double>(values)) {}

  int max_order() const { return static_cast<int>(values_.size()); }
  std::size_t size() const { return values_.size(); }

  double at_order(int n) const;
  std::span<const double> values() const { return values_; }

  // Leading orders 1..m.
  OrderedSequence truncated(int m) const;

  friend bool operator==(const OrderedSequence&, const OrderedSequence&) = default;

 private:
  std::vector<double> values_;
};

using CumulantSeq = OrderedSequence<CumulantTag>;
using MomentSeq = OrderedSequence<MomentTag>;

extern template class OrderedSequence<CumulantTag>;
extern template class OrderedSequence<MomentTag>;

// Raw moments from raw cumulants:
//   mu'_n = kappa_n + sum_{m=1}^{n-1} C(n-1, m-1) kappa_m mu'_{n-m}
MomentSeq cumulants_to_moments(const CumulantSeq& kappa);

// Exact inverse of cumulants_to_moments.
CumulantSeq moments_to_cumulants(const MomentSeq& mu);

// Cumulants of w*Y: kappa_j -> w^j kappa_j.
CumulantSeq scale_cumulants(const CumulantSeq& kappa, double w);

// Cumulants of Y + c: only kappa_1 moves.
CumulantSeq shift_cumulants(const CumulantSeq& kappa, double c);

// Cumulants of the sum of two independent variables. Throws
// LengthMismatchError when the orders differ.
CumulantSeq add_cumulants(const CumulantSeq& a, const CumulantSeq& b);

// C(n, k) for 0 <= k <= n <= 64, exact up to double rounding.
double binomial_coefficient(int n, int k);

}  // namespace logchisq
