#pragma once

// Data-parallel kernels behind the Monte Carlo harness and grid evaluation.
//
// Every kernel comes in a serial and an OpenMP flavor selected by
// Execution. Work is cut into fixed-size chunks; chunk c always draws from
// RngState(derive_seed(seed, c)) and partial results are reduced in chunk
// order, so both flavors give bit-identical results for any thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "logchisq/sampling.hpp"
#include "logchisq/summation.hpp"

namespace logchisq::kernels {

enum class Execution { kSerial, kParallel };

inline constexpr std::size_t kChunkSize = std::size_t{1} << 15;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

// sums[k-1] = sum of y^k over all draws, k = 1..max_power.
struct PowerSums {
  std::size_t count = 0;
  std::vector<double> sums;

  double mean_of_power(int k) const { return sums[static_cast<std::size_t>(k - 1)] / static_cast<double>(count); }
};

namespace detail {

template <class Draw>
std::vector<CompensatedSum> chunk_power_sums(std::uint64_t seed, std::size_t chunk, std::size_t n,
                                             int max_power, const Draw& draw) {
  RngState rng(derive_seed(seed, chunk));
  const std::size_t begin = chunk * kChunkSize;
  const std::size_t end = std::min(n, begin + kChunkSize);
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(max_power));
  for (std::size_t i = begin; i < end; ++i) {
    const double y = draw(rng);
    double p = 1.0;
    for (auto& a : acc) {
      p *= y;
      a.add(p);
    }
  }
  return acc;
}

}  // namespace detail

// Draws n values with draw(RngState&) and accumulates their powers.
template <class Draw>
PowerSums power_sums(std::size_t n, int max_power, std::uint64_t seed, const Draw& draw,
                     Execution exec) {
  if (max_power < 1) {
    throw std::invalid_argument("power_sums: max_power must be >= 1");
  }
  const std::size_t chunks = chunk_count(n);
  std::vector<std::vector<CompensatedSum>> partial(chunks);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
      partial[static_cast<std::size_t>(c)] =
          detail::chunk_power_sums(seed, static_cast<std::size_t>(c), n, max_power, draw);
    }
  } else {
    for (std::size_t c = 0; c < chunks; ++c) {
      partial[c] = detail::chunk_power_sums(seed, c, n, max_power, draw);
    }
  }
  std::vector<CompensatedSum> total(static_cast<std::size_t>(max_power));
  for (const auto& chunk : partial) {
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k].add(chunk[k]);
    }
  }
  PowerSums out;
  out.count = n;
  out.sums.reserve(total.size());
  for (const auto& t : total) {
    out.sums.push_back(t.value());
  }
  return out;
}

// n draws, chunk c filling [c*kChunkSize, ...) from its own stream.
template <class Draw>
std::vector<double> generate(std::size_t n, std::uint64_t seed, const Draw& draw, Execution exec) {
  std::vector<double> out(n);
  const std::size_t chunks = chunk_count(n);
  auto fill = [&](std::size_t c) {
    RngState rng(derive_seed(seed, c));
    const std::size_t end = std::min(n, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < end; ++i) {
      out[i] = draw(rng);
    }
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
      fill(static_cast<std::size_t>(c));
    }
  } else {
    for (std::size_t c = 0; c < chunks; ++c) {
      fill(c);
    }
  }
  return out;
}

// out[i] = f(xs[i]).
template <class F>
void evaluate(std::span<const double> xs, std::span<double> out, const F& f, Execution exec) {
  if (xs.size() != out.size()) {
    throw std::invalid_argument("evaluate: input and output sizes differ");
  }
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(xs.size()); ++i) {
      out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    }
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out[i] = f(xs[i]);
    }
  }
}

// Counts of values in `bins` equal-width bins over [lo, hi]. Values outside
// are ignored; hi itself falls in the last bin.
inline std::vector<std::uint64_t> histogram(std::span<const double> values, double lo, double hi,
                                            std::size_t bins, Execution exec) {
  if (bins == 0 || !(lo < hi)) {
    throw std::invalid_argument("histogram: need bins > 0 and lo < hi");
  }
  const double scale = static_cast<double>(bins) / (hi - lo);
  auto bin_of = [&](double v) -> std::ptrdiff_t {
    if (!(v >= lo && v <= hi)) {
      return -1;
    }
    return std::min(static_cast<std::ptrdiff_t>((v - lo) * scale),
                    static_cast<std::ptrdiff_t>(bins) - 1);
  };
  std::vector<std::uint64_t> counts(bins, 0);
  if (exec == Execution::kParallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(values.size()); ++i) {
        const auto b = bin_of(values[static_cast<std::size_t>(i)]);
        if (b >= 0) {
          ++local[static_cast<std::size_t>(b)];
        }
      }
#pragma omp critical(logchisq_histogram)
      for (std::size_t b = 0; b < bins; ++b) {
        counts[b] += local[b];
      }
    }
  } else {
    for (double v : values) {
      const auto b = bin_of(v);
      if (b >= 0) {
        ++counts[static_cast<std::size_t>(b)];
      }
    }
  }
  return counts;
}

}  // namespace logchisq::kernels
