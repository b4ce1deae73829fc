#include <gtest/gtest.h>

#include <random>

#include "rqa/diag_histogram.hpp"
#include "rqa/errors.hpp"
#include "rqa/fast_path.hpp"
#include "rqa/measures.hpp"
#include "rqa/recurrence_plot.hpp"
#include "test_support.hpp"

using namespace rqa;

TEST(FastPath, ParityDiscrete) {
  const auto hist = embedded_histogram_fast(support::parity_series(), 5, {1, 2, 0.0, Metric::Discrete});
  const DiagHistogram expected{5, {{1, 2}, {3, 2}, {5, 1}}};
  EXPECT_EQ(hist, expected);
}

TEST(FastPath, RejectsNonMaxMetrics) {
  const Series x({0, 1, 2, 3});
  EXPECT_THROW(embedded_histogram_fast(x, 3, {2, 1, 0.5, Metric::Euclidean}), DataError);
  EXPECT_THROW(recurrence_plot_fast(x, 3, {2, 1, 0.5, Metric::OrderPattern}), DataError);
}

TEST(FastPath, ShortSeries) {
  EXPECT_THROW(embedded_histogram_fast(Series({0, 1}), 2, 2, 0.5), DataError);
}

TEST(FastPathProperty, MatchesPlotPipeline) {
  std::mt19937_64 gen(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 128, m = 1 + gen() % 5, k = 1 + gen() % 5;
    const Series x = support::random_series(n + m - 1, gen);
    const EmbedConfig cfg{m, std::min(k, n), 0.25 * static_cast<double>(1 + gen() % 8), Metric::Chebyshev};
    const auto plot = recurrence_plot(x, n, cfg);
    const auto slow = diagonal_histogram(plot);
    ASSERT_EQ(embedded_histogram_fast(x, n, cfg), slow);
    ASSERT_EQ(recurrence_plot_fast(x, n, cfg), plot);
    ASSERT_EQ(rqa_fast(x, n, cfg), measures_from_histogram(slow, cfg.k));
  }
}

TEST(FastPathProperty, DiscreteMatchesPlotPipeline) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 100, m = 1 + gen() % 4;
    std::vector<double> v(n + m - 1);
    for (auto& s : v) s = static_cast<double>(gen() % 3);
    const Series x(std::move(v));
    const EmbedConfig cfg{m, 1, 0.0, Metric::Discrete};
    ASSERT_EQ(embedded_histogram_fast(x, n, cfg), diagonal_histogram(recurrence_plot(x, n, cfg)));
  }
}

TEST(FastPathProperty, EmbeddingLemma) {
  // The m-embedded histogram is the unembedded one with lengths shifted by m - 1,
  // and C^m_k = C^1_{k+m-1} on the common n' x n' plot.
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 100, m = 1 + gen() % 5;
    const std::size_t np = n + m - 1;
    const Series x = support::random_series(np, gen);
    const double r = 0.5 + 0.25 * static_cast<double>(gen() % 6);
    const auto unembedded = embedded_histogram_fast(x, np, 1, r);
    const auto embedded = embedded_histogram_fast(x, n, m, r);
    ASSERT_EQ(embed_histogram(unembedded, m), embedded);
    for (std::size_t k = 1; k <= n; ++k) {
      ASSERT_EQ(correlation_count(embedded, k), correlation_count(unembedded, k + m - 1));
    }
  }
}

TEST(FastPath, ThreadCountInvariant) {
  std::mt19937_64 gen(3);
  const Series x = support::random_series(3003, gen);
  const auto one = embedded_histogram_fast(x, 3000, 4, 1.0, Metric::Chebyshev, 1);
  for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(embedded_histogram_fast(x, 3000, 4, 1.0, Metric::Chebyshev, t), one);
}
