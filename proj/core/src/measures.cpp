#include "rqa/measures.hpp"

#include <algorithm>
#include <string>

#include "rqa/errors.hpp"

namespace rqa {

std::optional<Fraction> RqaSummary::determinism() const {
  if (rr_1 == 0) return std::nullopt;
  return Fraction{rr_k, rr_1};
}

std::optional<double> RqaSummary::average_line_length() const {
  if (lines_k == 0) return std::nullopt;
  return static_cast<double>(rr_k) / static_cast<double>(lines_k);
}

std::optional<double> RqaSummary::ratio() const {
  if (rr_1 == 0) return std::nullopt;
  const double rr1 = static_cast<double>(rr_1);
  return static_cast<double>(rr_k) * static_cast<double>(n_squared()) / (rr1 * rr1);
}

std::optional<double> RqaSummary::divergence() const {
  if (!lmax) return std::nullopt;
  return 1.0 / static_cast<double>(*lmax);
}

std::uint64_t correlation_count(const DiagHistogram& hist, std::size_t k) {
  std::uint64_t total = 0;
  for (auto it = hist.counts.lower_bound(k); it != hist.counts.end(); ++it) {
    total += (it->first - k + 1) * it->second;
  }
  return total;
}

std::uint64_t correlation_count(const RecurrencePlot& plot, std::size_t k) {
  const std::size_t n = plot.size();
  if (k < 1 || k > n) throw DataError("horizon k must satisfy 1 <= k <= n");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i + k <= n; ++i) {
    for (std::size_t j = 0; j + k <= n; ++j) {
      bool all = true;
      for (std::size_t h = 0; h < k && all; ++h) all = plot.test(i + h, j + h);
      total += all ? 1 : 0;
    }
  }
  return total;
}

Fraction correlation_sum_direct(const Series& x, std::size_t n, const EmbedConfig& cfg) {
  cfg.validate_for(x);
  if (n < 1) throw DataError("plot side must be >= 1");
  if (cfg.k > n) throw DataError("horizon k=" + std::to_string(cfg.k) + " exceeds n=" + std::to_string(n));
  if (x.size() < n + cfg.m - 1) throw DataError("series too short for n + m - 1 samples");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + cfg.k <= n; ++i) {
    for (std::size_t j = 0; j + cfg.k <= n; ++j) {
      double d = 0.0;
      for (std::size_t h = 0; h < cfg.k; ++h) {
        d = std::max(d, embedded_distance(x, i + h, j + h, cfg.m, cfg.metric));
      }
      if (d <= cfg.r) ++count;
    }
  }
  return {count, static_cast<std::uint64_t>(n) * n};
}

RqaSummary measures_from_histogram(const DiagHistogram& hist, std::size_t k) {
  if (k < 1 || k > hist.n) {
    throw DataError("horizon k=" + std::to_string(k) + " outside [1, " + std::to_string(hist.n) + "]");
  }
  RqaSummary s;
  s.n = hist.n;
  s.k = k;
  for (const auto& [length, count] : hist.counts) {
    s.rr_1 += length * count;
    if (length >= k) {
      s.rr_k += length * count;
      s.lines_k += count;
      s.corr_k += (length - k + 1) * count;
    }
    if (length >= k + 1) s.corr_k1 += (length - k) * count;
    if (length < hist.n) s.lmax = length;
  }
  return s;
}

}  // namespace rqa
