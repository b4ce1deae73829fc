#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rqa {

double std_normal_cdf(double x);
// p strictly inside (0, 1); throws DataError otherwise.
double std_normal_quantile(double p);

// Symmetric positive-definite matrix, row-major.
class CovarianceMatrix {
 public:
  CovarianceMatrix(std::size_t dim, std::vector<double> entries);
  static CovarianceMatrix identity(std::size_t dim);
  // Symmetric Toeplitz matrix with first row gamma.
  static CovarianceMatrix toeplitz(std::span<const double> gamma);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  double max_abs() const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

// Lower-triangular L with L L^T = cov, row-major.
struct CholeskyFactor {
  std::size_t dim = 0;
  std::vector<double> lower;

  double operator()(std::size_t i, std::size_t j) const { return lower[i * dim + j]; }
};

// Throws NumericError naming the failing pivot when cov is not positive definite.
CholeskyFactor factorize(const CovarianceMatrix& cov);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / samples)
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;

  static MonteCarloEstimate from_counts(std::uint64_t hits, std::uint64_t samples);
};

// P{Y in [-r, r]^h} for Y ~ N(0, cov), by plain Monte Carlo with Y = L Z and
// Z from inverse-CDF normal draws. Sample s uses positions [s h, (s+1) h) of
// the SplitMix64 stream of `seed`, so the result does not depend on `threads`.
MonteCarloEstimate mvn_box_probability(const CovarianceMatrix& cov, double r, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 1);

// Common-random-numbers sweep: every r sees the same draws, so estimates are
// monotone in r.
std::vector<MonteCarloEstimate> mvn_box_probability_sweep(const CovarianceMatrix& cov,
                                                          std::span<const double> r_grid,
                                                          std::uint64_t samples, std::uint64_t seed,
                                                          unsigned threads = 1);

// counts[g][j] = number of draws whose leading j+1 coordinates all lie in
// [-r_g, r_g]. Leading blocks of a Toeplitz covariance are themselves the
// covariance of shorter windows, so one sweep yields every prefix dimension.
struct BoxPrefixCounts {
  std::uint64_t samples = 0;
  std::vector<std::vector<std::uint64_t>> counts;
};

BoxPrefixCounts mvn_box_prefix_counts(const CovarianceMatrix& cov, std::span<const double> r_grid,
                                      std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace rqa
