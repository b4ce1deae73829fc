#include "rqa/mvn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rqa/errors.hpp"
#include "rqa/parallel.hpp"
#include "rqa/rng.hpp"

namespace rqa {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation (relative error < 1.2e-9) on the lower half,
// followed by one Halley step against erfc.
double lower_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double t = q * q;
    x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * q /
        (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  }
  const double e = std_normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DataError("normal quantile needs p in (0, 1)");
  // 1 - p is exact for p >= 1/2.
  return p <= 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

double SplitMix64::normal() { return std_normal_quantile(uniform()); }

CovarianceMatrix::CovarianceMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw DataError("covariance matrix must have dimension >= 1");
  if (entries_.size() != dim_ * dim_) throw DataError("covariance entries do not match dimension");
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DataError("covariance entry is not finite");
  }
  const double tol = 1e-12 * std::max(1.0, max_abs());
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) throw DataError("covariance matrix is not symmetric");
    }
  }
}

CovarianceMatrix CovarianceMatrix::identity(std::size_t dim) {
  std::vector<double> e(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return CovarianceMatrix(dim, std::move(e));
}

CovarianceMatrix CovarianceMatrix::toeplitz(std::span<const double> gamma) {
  const std::size_t h = gamma.size();
  std::vector<double> e(h * h);
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) e[i * h + j] = gamma[i > j ? i - j : j - i];
  }
  return CovarianceMatrix(h, std::move(e));
}

double CovarianceMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

CholeskyFactor factorize(const CovarianceMatrix& cov) {
  const std::size_t h = cov.dim();
  CholeskyFactor f{h, std::vector<double>(h * h, 0.0)};
  for (std::size_t j = 0; j < h; ++j) {
    double diag = cov(j, j);
    for (std::size_t l = 0; l < j; ++l) diag -= f.lower[j * h + l] * f.lower[j * h + l];
    if (!(diag > 0.0)) {
      throw NumericError("covariance matrix is not positive definite (pivot " + std::to_string(j) + ")");
    }
    const double ljj = std::sqrt(diag);
    f.lower[j * h + j] = ljj;
    for (std::size_t i = j + 1; i < h; ++i) {
      double s = cov(i, j);
      for (std::size_t l = 0; l < j; ++l) s -= f.lower[i * h + l] * f.lower[j * h + l];
      f.lower[i * h + j] = s / ljj;
    }
  }
  return f;
}

MonteCarloEstimate MonteCarloEstimate::from_counts(std::uint64_t hits, std::uint64_t samples) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), hits, samples};
}

namespace {

constexpr std::uint64_t kSamplesPerBlock = 4096;

}  // namespace

BoxPrefixCounts mvn_box_prefix_counts(const CovarianceMatrix& cov, std::span<const double> r_grid,
                                      std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw DataError("Monte Carlo needs at least one sample");
  for (double r : r_grid) {
    if (!(r > 0.0)) throw DataError("box half-width must be > 0");
  }
  const CholeskyFactor factor = factorize(cov);
  const std::size_t h = cov.dim();
  const std::size_t grid = r_grid.size();
  const unsigned workers = resolve_threads(threads);

  // inside[w][g * (h + 1) + j]: draws whose longest inside prefix has length j.
  std::vector<std::vector<std::uint64_t>> inside(workers, std::vector<std::uint64_t>(grid * (h + 1), 0));
  const std::uint64_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;

  parallel_for(blocks, workers, [&](std::size_t block, unsigned worker) {
    auto& acc = inside[worker];
    std::vector<double> z(h), running_max(h);
    const std::uint64_t first = block * kSamplesPerBlock;
    const std::uint64_t last = std::min<std::uint64_t>(samples, first + kSamplesPerBlock);
    for (std::uint64_t s = first; s < last; ++s) {
      SplitMix64 rng(seed, s * h);
      for (auto& v : z) v = rng.normal();
      double worst = 0.0;
      for (std::size_t i = 0; i < h; ++i) {
        double y = 0.0;
        for (std::size_t l = 0; l <= i; ++l) y += factor.lower[i * h + l] * z[l];
        worst = std::max(worst, std::abs(y));
        running_max[i] = worst;
      }
      for (std::size_t g = 0; g < grid; ++g) {
        const auto len = static_cast<std::size_t>(
            std::upper_bound(running_max.begin(), running_max.end(), r_grid[g]) - running_max.begin());
        ++acc[g * (h + 1) + len];
      }
    }
  });

  BoxPrefixCounts out;
  out.samples = samples;
  out.counts.assign(grid, std::vector<std::uint64_t>(h, 0));
  for (std::size_t g = 0; g < grid; ++g) {
    std::uint64_t at_least = 0;
    for (std::size_t len = h; len >= 1; --len) {
      for (const auto& acc : inside) at_least += acc[g * (h + 1) + len];
      out.counts[g][len - 1] = at_least;
    }
  }
  return out;
}

std::vector<MonteCarloEstimate> mvn_box_probability_sweep(const CovarianceMatrix& cov,
                                                          std::span<const double> r_grid,
                                                          std::uint64_t samples, std::uint64_t seed,
                                                          unsigned threads) {
  const auto prefix = mvn_box_prefix_counts(cov, r_grid, samples, seed, threads);
  std::vector<MonteCarloEstimate> out;
  out.reserve(r_grid.size());
  for (const auto& counts : prefix.counts) out.push_back(MonteCarloEstimate::from_counts(counts.back(), samples));
  return out;
}

MonteCarloEstimate mvn_box_probability(const CovarianceMatrix& cov, double r, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads) {
  const double grid[] = {r};
  return mvn_box_probability_sweep(cov, grid, samples, seed, threads).front();
}

}  // namespace rqa
