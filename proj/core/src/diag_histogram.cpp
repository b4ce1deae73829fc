#include "rqa/diag_histogram.hpp"

#include <bit>
#include <vector>

#include "rqa/errors.hpp"

namespace rqa {

std::uint64_t DiagHistogram::covered_points() const {
  std::uint64_t total = 0;
  for (const auto& [length, count] : counts) total += length * count;
  return total;
}

DiagHistogram DiagHistogram::from_dense(std::size_t n, std::span<const std::uint64_t> dense) {
  DiagHistogram h;
  h.n = n;
  for (std::size_t l = 1; l < dense.size(); ++l) {
    if (dense[l] != 0) h.counts.emplace(l, dense[l]);
  }
  return h;
}

DiagHistogram diagonal_histogram(const RecurrencePlot& plot) {
  const std::size_t n = plot.size();
  const std::size_t words = plot.words_per_row();
  std::vector<std::uint64_t> dense(n + 1, 0);
  if (n == 0) return DiagHistogram::from_dense(0, dense);

  // Row index where the currently open line on each diagonal began;
  // diagonal (i, j) has index j - i + n - 1.
  std::vector<std::size_t> line_start(2 * n - 1, 0);
  const std::vector<std::uint64_t> zero_row(words, 0);

  for (std::size_t i = 0; i < n; ++i) {
    const auto cur = plot.row(i);
    const auto prev = i > 0 ? plot.row(i - 1) : std::span<const std::uint64_t>(zero_row);
    const auto next = i + 1 < n ? plot.row(i + 1) : std::span<const std::uint64_t>(zero_row);

    // (i, j) starts a line unless (i-1, j-1) is set: compare against prev shifted up one column.
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t carry = w > 0 ? prev[w - 1] >> 63 : 0;
      std::uint64_t starts = cur[w] & ~((prev[w] << 1) | carry);
      while (starts) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(starts));
        line_start[j + n - 1 - i] = i;
        starts &= starts - 1;
      }
    }
    // (i, j) ends a line unless (i+1, j+1) is set.
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t carry = w + 1 < words ? next[w + 1] << 63 : 0;
      std::uint64_t ends = cur[w] & ~((next[w] >> 1) | carry);
      while (ends) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(ends));
        ++dense[i - line_start[j + n - 1 - i] + 1];
        ends &= ends - 1;
      }
    }
  }
  return DiagHistogram::from_dense(n, dense);
}

DiagHistogram without_main_diagonal(const DiagHistogram& hist) {
  const auto it = hist.counts.find(hist.n);
  if (it == hist.counts.end()) throw DataError("plot has no main diagonal line");
  DiagHistogram out = hist;
  if (--out.counts[hist.n] == 0) out.counts.erase(hist.n);
  return out;
}

}  // namespace rqa
