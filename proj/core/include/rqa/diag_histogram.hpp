#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "rqa/recurrence_plot.hpp"

namespace rqa {

// Counts L_l of maximal diagonal lines of exact length l in an n x n plot.
// Both triangles and the main diagonal are counted; lines cut by the plot
// border end there. Absent lengths have count zero.
struct DiagHistogram {
  std::size_t n = 0;
  std::map<std::size_t, std::uint64_t> counts;

  std::uint64_t at(std::size_t length) const {
    const auto it = counts.find(length);
    return it == counts.end() ? 0 : it->second;
  }

  // Sum of l * L_l, i.e. the number of recurrences covered by lines.
  std::uint64_t covered_points() const;

  // Builds from dense counts indexed by length (index 0 ignored).
  static DiagHistogram from_dense(std::size_t n, std::span<const std::uint64_t> dense);

  friend bool operator==(const DiagHistogram&, const DiagHistogram&) = default;
};

DiagHistogram diagonal_histogram(const RecurrencePlot& plot);

// Drops the main diagonal (the one line of length n of a reflexive plot), the
// common variant that leaves every asymptotic quantity unchanged.
DiagHistogram without_main_diagonal(const DiagHistogram& hist);

}  // namespace rqa
