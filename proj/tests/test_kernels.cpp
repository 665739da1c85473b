#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "logchisq/kernels.hpp"
#include "logchisq/sampling.hpp"

using namespace logchisq;
using kernels::Execution;

namespace {

const auto kDraw = [](RngState& rng) { return draw_log_chisq(rng, 5.0, 1.5); };

// Restores the OpenMP thread count on scope exit.
struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("power sums: serial and parallel agree bit for bit") {
  for (std::size_t n : {std::size_t{1}, kernels::kChunkSize - 1, kernels::kChunkSize,
                        3 * kernels::kChunkSize + 17}) {
    const auto s = kernels::power_sums(n, 6, 99, kDraw, Execution::kSerial);
    const auto p = kernels::power_sums(n, 6, 99, kDraw, Execution::kParallel);
    CAPTURE(n);
    CHECK(s.count == n);
    CHECK(s.sums == p.sums);
  }
  CHECK_THROWS_AS(kernels::power_sums(10, 0, 1, kDraw, Execution::kSerial), std::invalid_argument);
}

TEST_CASE("power sums do not depend on the thread count") {
  const std::size_t n = 5 * kernels::kChunkSize + 3;
  std::vector<double> reference;
  for (int threads : {1, 2, 3, 8}) {
    ThreadCount guard(threads);
    const auto p = kernels::power_sums(n, 4, 5, kDraw, Execution::kParallel);
    if (reference.empty()) {
      reference = p.sums;
    } else {
      CHECK(p.sums == reference);
    }
  }
}

TEST_CASE("power sums match the generated draws") {
  const std::size_t n = 2 * kernels::kChunkSize + 100;
  const auto xs = kernels::generate(n, 3, kDraw, Execution::kSerial);
  const auto s = kernels::power_sums(n, 2, 3, kDraw, Execution::kSerial);
  long double a = 0, b = 0;
  for (double x : xs) {
    a += x;
    b += static_cast<long double>(x) * x;
  }
  CHECK(s.sums[0] == doctest::Approx(static_cast<double>(a)).epsilon(1e-13));
  CHECK(s.sums[1] == doctest::Approx(static_cast<double>(b)).epsilon(1e-13));
  CHECK(s.mean_of_power(1) == doctest::Approx(static_cast<double>(a) / n).epsilon(1e-13));
}

TEST_CASE("generate: serial and parallel agree") {
  const std::size_t n = 4 * kernels::kChunkSize + 5;
  for (int threads : {1, 4}) {
    ThreadCount guard(threads);
    CHECK(kernels::generate(n, 8, kDraw, Execution::kSerial) ==
          kernels::generate(n, 8, kDraw, Execution::kParallel));
  }
  CHECK(kernels::generate(0, 8, kDraw, Execution::kParallel).empty());
  // A prefix shorter than a chunk is the start of the longer stream.
  const auto longer = kernels::generate(1000, 8, kDraw, Execution::kSerial);
  const auto shorter = kernels::generate(10, 8, kDraw, Execution::kSerial);
  CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST_CASE("evaluate") {
  std::vector<double> xs(10'000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.001 * static_cast<double>(i);
  std::vector<double> a(xs.size()), b(xs.size());
  const auto f = [](double x) { return std::sin(x) * std::exp(-x); };
  kernels::evaluate(xs, a, f, Execution::kSerial);
  ThreadCount guard(3);
  kernels::evaluate(xs, b, f, Execution::kParallel);
  CHECK(a == b);
  CHECK(a[5] == f(xs[5]));
  std::vector<double> wrong(3);
  CHECK_THROWS_AS(kernels::evaluate(xs, wrong, f, Execution::kSerial), std::invalid_argument);
}

TEST_CASE("histogram") {
  const std::vector<double> v{0.0, 0.1, 0.5, 0.99, 1.0, -0.1, 1.1, NAN};
  const auto h = kernels::histogram(v, 0.0, 1.0, 2, Execution::kSerial);
  CHECK(h == std::vector<std::uint64_t>{2, 3});
  CHECK(kernels::histogram(v, 0.0, 1.0, 2, Execution::kParallel) == h);
  CHECK_THROWS_AS(kernels::histogram(v, 1.0, 1.0, 2, Execution::kSerial), std::invalid_argument);
  CHECK_THROWS_AS(kernels::histogram(v, 0.0, 1.0, 0, Execution::kSerial), std::invalid_argument);

  const auto xs = kernels::generate(300'000, 4, kDraw, Execution::kSerial);
  for (int threads : {1, 2, 5}) {
    ThreadCount guard(threads);
    CHECK(kernels::histogram(xs, 0.0, 4.0, 97, Execution::kParallel) ==
          kernels::histogram(xs, 0.0, 4.0, 97, Execution::kSerial));
  }
}
