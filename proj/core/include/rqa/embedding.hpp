#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "rqa/series.hpp"

namespace rqa {

enum class Metric {
  Chebyshev,     // max_j |s_j - t_j|
  Manhattan,     // sum_j |s_j - t_j|
  Euclidean,     // sqrt(sum_j (s_j - t_j)^2)
  Discrete,      // 0 iff the windows are identical, else 1; integer-valued data
  OrderPattern,  // 0 iff the windows share a rank permutation, else 1; m >= 2
};

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view name);

// Chebyshev and Discrete aggregate coordinate distances by max, which is what
// lets embedded quantities be read off the unembedded plot.
constexpr bool is_max_type(Metric metric) {
  return metric == Metric::Chebyshev || metric == Metric::Discrete;
}

struct EmbedConfig {
  std::size_t m = 1;  // embedding dimension
  std::size_t k = 1;  // prediction horizon
  double r = 0.0;     // distance threshold, inclusive
  Metric metric = Metric::Chebyshev;

  // Throws DataError on m, k < 1, r < 0 or non-finite, and OrderPattern with m < 2.
  void validate() const;
  // Additionally checks the metric against the data (Discrete needs integers).
  void validate_for(const Series& x) const;
};

// Distance between the m-windows starting at i and j.
double embedded_distance(const Series& x, std::size_t i, std::size_t j, std::size_t m, Metric metric);

}  // namespace rqa
