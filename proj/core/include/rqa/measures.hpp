#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rqa/diag_histogram.hpp"
#include "rqa/embedding.hpp"
#include "rqa/recurrence_plot.hpp"
#include "rqa/series.hpp"

namespace rqa {

struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Empirical RQA measures at one (m, k, r). Everything is stored as exact
// integer counts over the n x n plot; the ratios are formed on access.
// Undefined quantities come back as std::nullopt.
struct RqaSummary {
  std::size_t n = 0;
  std::size_t k = 1;
  std::uint64_t corr_k = 0;      // n^2 C_k
  std::uint64_t corr_k1 = 0;     // n^2 C_{k+1}
  std::uint64_t rr_k = 0;        // n^2 RR_k = sum_{l>=k} l L_l
  std::uint64_t rr_1 = 0;        // n^2 RR_1
  std::uint64_t lines_k = 0;     // sum_{l>=k} L_l
  std::optional<std::size_t> lmax;  // longest line shorter than n

  std::uint64_t n_squared() const { return static_cast<std::uint64_t>(n) * n; }

  Fraction correlation_sum() const { return {corr_k, n_squared()}; }
  Fraction correlation_sum_next() const { return {corr_k1, n_squared()}; }
  Fraction recurrence_rate() const { return {rr_k, n_squared()}; }

  std::optional<Fraction> determinism() const;
  std::optional<double> average_line_length() const;
  std::optional<double> ratio() const;
  std::optional<double> divergence() const;

  friend bool operator==(const RqaSummary&, const RqaSummary&) = default;
};

// n^2 C_k read off the histogram: sum_{l>=k} (l - k + 1) L_l.
std::uint64_t correlation_count(const DiagHistogram& hist, std::size_t k);

// n^2 C_k counted pair by pair on the plot: 0 <= i, j <= n - k with
// (i+h, j+h) set for every h < k.
std::uint64_t correlation_count(const RecurrencePlot& plot, std::size_t k);

// C^m_k(x, n, r) straight from the embedded distances, without building a plot.
Fraction correlation_sum_direct(const Series& x, std::size_t n, const EmbedConfig& cfg);

// 1 <= k <= hist.n.
RqaSummary measures_from_histogram(const DiagHistogram& hist, std::size_t k);

}  // namespace rqa
