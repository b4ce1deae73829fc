#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rqa/analytic.hpp"
#include "rqa/diag_histogram.hpp"
#include "rqa/fast_path.hpp"
#include "rqa/mvn.hpp"
#include "rqa/recurrence_plot.hpp"
#include "rqa/simulate.hpp"

namespace {

rqa::Series gaussian(std::size_t len) { return rqa::sample(rqa::IidGaussian{1.0}, len, 1); }

// Materialized plot, then the histogram scan.
void BM_PlotPipeline(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const rqa::Series x = gaussian(n + m - 1);
  const rqa::EmbedConfig cfg{m, 2, 1.0, rqa::Metric::Chebyshev};
  for (auto _ : state) benchmark::DoNotOptimize(rqa::diagonal_histogram(rqa::recurrence_plot(x, n, cfg)));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_PlotPipeline)->Args({1000, 1})->Args({1000, 5})->Args({2500, 5})->Unit(benchmark::kMillisecond);

void BM_FastPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const rqa::Series x = gaussian(n + m - 1);
  for (auto _ : state) benchmark::DoNotOptimize(rqa::embedded_histogram_fast(x, n, m, 1.0));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_FastPath)
    ->Args({1000, 1})
    ->Args({1000, 5})
    ->Args({2500, 5})
    ->Args({10000, 1})
    ->Unit(benchmark::kMillisecond);

void BM_FastPlot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rqa::Series x = gaussian(n + 4);
  const rqa::EmbedConfig cfg{5, 2, 1.0, rqa::Metric::Chebyshev};
  for (auto _ : state) benchmark::DoNotOptimize(rqa::recurrence_plot_fast(x, n, cfg));
}
BENCHMARK(BM_FastPlot)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_MvnBox(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  const auto gamma = rqa::ar_autocovariance(std::vector<double>{0.25, 0.4, 0.3}, 3.0, h);
  const auto cov = rqa::CovarianceMatrix::toeplitz(gamma);
  const std::vector<double> grid{std::sqrt(1.5)};
  for (auto _ : state) benchmark::DoNotOptimize(rqa::mvn_box_prefix_counts(cov, grid, 100000, 3, 1));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MvnBox)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
