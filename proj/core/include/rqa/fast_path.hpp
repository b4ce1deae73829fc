#pragma once

#include <cstddef>

#include "rqa/diag_histogram.hpp"
#include "rqa/embedding.hpp"
#include "rqa/measures.hpp"
#include "rqa/recurrence_plot.hpp"
#include "rqa/series.hpp"

namespace rqa {

// Diagonal-line histogram of the embedded n x n plot under a max-type metric
// (Chebyshev or Discrete), computed without materializing any plot.
//
// With n' = n + m - 1, an embedded pixel (i, j) recurs iff the unembedded
// pixels (i+l, j+l), l < m, all recur. So each run of l' >= m consecutive
// unembedded recurrences along a diagonal is an embedded line of length
// l' - (m - 1), and shorter runs vanish. Each diagonal of the n' x n' plot is
// packed into 64-bit words on the fly and its runs are read with bit scans.
// Work is split over diagonals; the integer merge makes the result
// independent of `threads` (0 = all cores).
DiagHistogram embedded_histogram_fast(const Series& x, std::size_t n, std::size_t m, double r,
                                      Metric metric = Metric::Chebyshev, unsigned threads = 1);

// Same histogram as diagonal_histogram(recurrence_plot(x, n, cfg)). Throws
// DataError for metrics that are not max-type.
DiagHistogram embedded_histogram_fast(const Series& x, std::size_t n, const EmbedConfig& cfg,
                                      unsigned threads = 1);

RqaSummary rqa_chebyshev_fast(const Series& x, std::size_t n, std::size_t m, std::size_t k, double r,
                              unsigned threads = 1);
RqaSummary rqa_fast(const Series& x, std::size_t n, const EmbedConfig& cfg, unsigned threads = 1);

// The m-embedded n x n plot under a max-type metric, built diagonal by
// diagonal from sliding runs of unembedded recurrences: O(n^2) instead of
// O(n^2 m). Equal to recurrence_plot(x, n, cfg).
RecurrencePlot recurrence_plot_fast(const Series& x, std::size_t n, const EmbedConfig& cfg);

// Maps the histogram of the unembedded n' x n' plot to the m-embedded n x n
// plot: lengths l' >= m become l' - (m - 1), shorter lines are dropped.
DiagHistogram embed_histogram(const DiagHistogram& unembedded, std::size_t m);

}  // namespace rqa
