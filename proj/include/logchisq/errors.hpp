#pragma once

#include <stdexcept>
#include <string>

namespace logchisq {

// Highest cumulant/moment order any operation accepts.
inline constexpr int kMaxOrder = 32;

// Root of every error the library throws. The CLI maps these to exit code 3
// unless they stem from argument validation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0, p not in
// (0,1), negative ncp, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested order outside the supported range.
class OrderError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// The Poisson mixture did not converge within TruncationPolicy::max_terms.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A result would not be representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_order(int order_max, const char* what) {
  if (order_max < 1 || order_max > kMaxOrder) {
    throw OrderError(std::string(what) + ": order must lie in [1, " +
                     std::to_string(kMaxOrder) + "], got " +
                     std::to_string(order_max));
  }
}

}  // namespace detail
}  // namespace logchisq
