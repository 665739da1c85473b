// Serial vs OpenMP kernels. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include <vector>

#include "logchisq/distributions.hpp"
#include "logchisq/kernels.hpp"
#include "logchisq/sampling.hpp"

using namespace logchisq;
using kernels::Execution;

namespace {

const auto kDraw = [](RngState& rng) { return draw_log_chisq(rng, 50.0, 1.5); };

Execution mode(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

void BM_PowerSums(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::power_sums(n, 12, 1, kDraw, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Generate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::generate(n, 1, kDraw, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DensityGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  WeightedSumSpec spec;
  for (double df : {40.0, 30.0, 50.0, 20.0, 10.0}) spec.terms.push_back({1.0, df, 0.0});
  const auto apx = sumlog_approximant(spec, 6);
  const double mean = apx.standardized().mean;
  const double sd = apx.standardized().sd;
  std::vector<double> xs(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = mean - 6 * sd + 12 * sd * static_cast<double>(i) / static_cast<double>(n);
  }
  for (auto _ : state) {
    kernels::evaluate(xs, out, [&](double x) { return apx.density(x); }, mode(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Histogram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = kernels::generate(n, 2, kDraw, Execution::kParallel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::histogram(xs, 3.0, 4.5, 512, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PowerSums)->ArgsProduct({{1 << 20}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Generate)->ArgsProduct({{1 << 20}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityGrid)->ArgsProduct({{1 << 16}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Histogram)->ArgsProduct({{1 << 22}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
