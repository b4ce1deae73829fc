#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "rqa/errors.hpp"
#include "rqa/mvn.hpp"
#include "rqa/rng.hpp"

using namespace rqa;

TEST(SplitMix64, ReferenceVector) {
  constexpr std::array<std::uint64_t, 8> expected{
      0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL, 0x06c45d188009454fULL, 0xf88bb8a8724c81ecULL,
      0x1b39896a51a8749bULL, 0x53cb9f0c747ea2eaULL, 0x2c829abe1f4532e1ULL, 0xc584133ac916ab3cULL};
  SplitMix64 gen(0);
  for (auto v : expected) EXPECT_EQ(gen.next(), v);
}

TEST(SplitMix64, PositionJumpsAhead) {
  SplitMix64 a(12345);
  for (int i = 0; i < 10; ++i) a.next();
  SplitMix64 b(12345, 10);
  EXPECT_EQ(a.next(), b.next());
}

TEST(SplitMix64, UniformIsOpenInterval) {
  SplitMix64 gen(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = gen.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Normal, CdfReference) {
  EXPECT_NEAR(std_normal_cdf(1.0), 0.841344746068542948, 1e-15);
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
}

TEST(Normal, QuantileRoundTrip) {
  for (double p = 1e-12; p < 1.0; p = (p < 0.01 || p > 0.99) ? p * 1.7 : p + 0.01) {
    if (p >= 1.0) break;
    const double x = std_normal_quantile(p);
    EXPECT_NEAR(std_normal_cdf(x), p, 1e-10 * std::max(p, 1e-3)) << "p=" << p;
  }
  for (double p : {1e-300, 0.3, 0.5, 0.975, 1.0 - 1e-15}) {
    EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-10 * p);
  }
  EXPECT_NEAR(std_normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_EQ(std_normal_quantile(0.5), 0.0);
  EXPECT_EQ(std_normal_quantile(0.25), -std_normal_quantile(0.75));
  EXPECT_THROW(std_normal_quantile(0.0), DataError);
  EXPECT_THROW(std_normal_quantile(1.0), DataError);
}

TEST(Covariance, Validation) {
  EXPECT_THROW(CovarianceMatrix(2, {1, 0.5, 0.4, 1}), DataError);
  EXPECT_THROW(CovarianceMatrix(2, {1, 0, 0}), DataError);
  EXPECT_THROW(CovarianceMatrix(1, {std::nan("")}), DataError);
  const auto t = CovarianceMatrix::toeplitz(std::vector<double>{3, 2, 1});
  EXPECT_EQ(t(0, 2), 1.0);
  EXPECT_EQ(t(2, 1), 2.0);
  EXPECT_EQ(t(1, 1), 3.0);
}

TEST(Cholesky, KnownFactor) {
  const auto f = factorize(CovarianceMatrix(2, {4, 2, 2, 3}));
  EXPECT_DOUBLE_EQ(f(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(f(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(f(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(f(1, 1), std::sqrt(2.0));
}

TEST(Cholesky, NotPositiveDefinite) {
  EXPECT_THROW(factorize(CovarianceMatrix(2, {1, 2, 2, 1})), NumericError);
  EXPECT_THROW(factorize(CovarianceMatrix(2, {1, 1, 1, 1})), NumericError);
}

TEST(MvnBox, IndependenceCase) {
  const double p1 = 2.0 * std_normal_cdf(1.0) - 1.0;
  const auto est = mvn_box_probability(CovarianceMatrix::identity(2), 1.0, 400000, 11);
  EXPECT_LE(std::abs(est.estimate - p1 * p1), 3.0 * est.std_error);
}

TEST(MvnBox, EdgeRadii) {
  const auto cov = CovarianceMatrix::identity(3);
  EXPECT_THROW(mvn_box_probability(cov, 0.0, 1000, 1), DataError);
  EXPECT_EQ(mvn_box_probability(cov, 1e6, 1000, 1).estimate, 1.0);
  EXPECT_THROW(mvn_box_probability(cov, -1.0, 1000, 1), DataError);
  EXPECT_THROW(mvn_box_probability(cov, 1.0, 0, 1), DataError);
}

TEST(MvnBox, ThreadCountIsByteExact) {
  const auto cov = CovarianceMatrix::toeplitz(std::vector<double>{2.0, 1.2, 0.7});
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const auto one = mvn_box_prefix_counts(cov, grid, 50000, 77, 1);
  const auto eight = mvn_box_prefix_counts(cov, grid, 50000, 77, 8);
  EXPECT_EQ(one.counts, eight.counts);
}

TEST(MvnBox, SweepIsMonotoneInR) {
  const auto cov = CovarianceMatrix::toeplitz(std::vector<double>{1.0, 0.6});
  const std::vector<double> grid{0.2, 0.5, 1.0, 1.5, 3.0};
  const auto sweep = mvn_box_probability_sweep(cov, grid, 20000, 3);
  for (std::size_t g = 1; g < sweep.size(); ++g) EXPECT_GE(sweep[g].hits, sweep[g - 1].hits);
}

TEST(MvnBox, PrefixCountsAreNested) {
  const auto cov = CovarianceMatrix::toeplitz(std::vector<double>{1.0, 0.5, 0.25, 0.125});
  const std::vector<double> grid{1.0};
  const auto pc = mvn_box_prefix_counts(cov, grid, 20000, 5);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_LE(pc.counts[0][j], pc.counts[0][j - 1]);
  // Leading prefix equals the 1-D probability estimated from the same draws.
  EXPECT_NEAR(static_cast<double>(pc.counts[0][0]) / 20000.0, 2.0 * std_normal_cdf(1.0) - 1.0, 0.015);
}
