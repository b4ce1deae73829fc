#include <gtest/gtest.h>

#include <random>

#include "rqa/diag_histogram.hpp"
#include "rqa/errors.hpp"
#include "rqa/measures.hpp"
#include "rqa/recurrence_plot.hpp"
#include "test_support.hpp"

using namespace rqa;

TEST(Measures, ParityHandOracle) {
  const auto hist = diagonal_histogram(recurrence_plot(support::parity_series(), 5, {1, 2, 0.0, Metric::Discrete}));
  const RqaSummary s = measures_from_histogram(hist, 2);
  EXPECT_EQ(s.correlation_sum(), (Fraction{8, 25}));
  EXPECT_EQ(s.correlation_sum_next(), (Fraction{5, 25}));
  EXPECT_EQ(s.recurrence_rate(), (Fraction{11, 25}));
  EXPECT_EQ(s.rr_1, 13u);
  ASSERT_TRUE(s.determinism());
  EXPECT_EQ(*s.determinism(), (Fraction{11, 13}));
  ASSERT_TRUE(s.average_line_length());
  EXPECT_DOUBLE_EQ(*s.average_line_length(), 11.0 / 3.0);
  ASSERT_TRUE(s.lmax);
  EXPECT_EQ(*s.lmax, 3u);
  EXPECT_DOUBLE_EQ(*s.divergence(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*s.ratio(), (11.0 / 13.0) / (13.0 / 25.0));
}

TEST(Measures, AllTrueThreeByThree) {
  RecurrencePlot plot(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) plot.set(i, j);
  const RqaSummary s = measures_from_histogram(diagonal_histogram(plot), 2);
  EXPECT_EQ(s.rr_k, 7u);
  EXPECT_EQ(s.corr_k, 4u);
  EXPECT_EQ(s.corr_k1, 1u);
}

TEST(Measures, UndefinedQuantities) {
  RecurrencePlot plot(4);
  for (std::size_t i = 0; i < 4; ++i) plot.set(i, i);
  const RqaSummary s = measures_from_histogram(diagonal_histogram(plot), 2);
  // Only the main diagonal, so there is no line shorter than n.
  EXPECT_FALSE(s.lmax);
  EXPECT_FALSE(s.divergence());
  ASSERT_TRUE(s.determinism());
  EXPECT_EQ(s.determinism()->numerator, 4u);

  const RqaSummary top = measures_from_histogram(diagonal_histogram(plot), 4);
  // C_4 = 1/16 and C_5 = 0
  EXPECT_EQ(top.corr_k, 1u);
  EXPECT_EQ(top.corr_k1, 0u);
  ASSERT_TRUE(top.average_line_length());
  EXPECT_DOUBLE_EQ(*top.average_line_length(), 4.0);
}

TEST(Measures, KOutOfRange) {
  RecurrencePlot plot(3);
  for (std::size_t i = 0; i < 3; ++i) plot.set(i, i);
  EXPECT_THROW(measures_from_histogram(diagonal_histogram(plot), 0), DataError);
  EXPECT_THROW(measures_from_histogram(diagonal_histogram(plot), 4), DataError);
}

TEST(MeasuresProperty, IdentitiesOnRandomPlots) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto plot = support::random_plot(size(gen), density(gen), gen);
    const std::size_t n = plot.size();
    const auto hist = diagonal_histogram(plot);
    for (std::size_t k = 1; k <= n; ++k) {
      const RqaSummary s = measures_from_histogram(hist, k);
      const std::uint64_t ck = correlation_count(plot, k);
      ASSERT_EQ(s.corr_k, ck);
      ASSERT_EQ(correlation_count(hist, k), ck);
      ASSERT_EQ(s.rr_k, k * s.corr_k - (k - 1) * s.corr_k1);
      if (k > 1) ASSERT_LE(s.rr_k, measures_from_histogram(hist, k - 1).rr_k);
      if (s.lines_k > 0) {
        ASSERT_TRUE(s.average_line_length());
        const double lavg = static_cast<double>(s.rr_k) / static_cast<double>(s.lines_k);
        ASSERT_DOUBLE_EQ(*s.average_line_length(), lavg);
        const double via_c = static_cast<double>(k) + static_cast<double>(s.corr_k1) /
                                                          static_cast<double>(s.corr_k - s.corr_k1);
        ASSERT_NEAR(lavg, via_c, 1e-12 * lavg);
      }
    }
  }
}

TEST(MeasuresProperty, DirectCorrelationSumMatchesPlot) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 60, m = 1 + gen() % 4, k = 1 + gen() % 4;
    if (k > n) continue;
    const Series x = support::random_series(n + m - 1, gen);
    const EmbedConfig cfg{m, k, 0.3 + 0.5 * static_cast<double>(gen() % 4), Metric::Euclidean};
    const auto plot = recurrence_plot(x, n, cfg);
    const Fraction direct = correlation_sum_direct(x, n, cfg);
    EXPECT_EQ(direct.numerator, correlation_count(plot, k));
    EXPECT_EQ(direct.denominator, static_cast<std::uint64_t>(n) * n);
  }
}
