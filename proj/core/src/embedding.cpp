#include "rqa/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "rqa/errors.hpp"

namespace rqa {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Chebyshev: return "chebyshev";
    case Metric::Manhattan: return "manhattan";
    case Metric::Euclidean: return "euclidean";
    case Metric::Discrete: return "discrete";
    case Metric::OrderPattern: return "order-pattern";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : {Metric::Chebyshev, Metric::Manhattan, Metric::Euclidean, Metric::Discrete,
                   Metric::OrderPattern}) {
    if (name == to_string(m)) return m;
  }
  if (name == "max" || name == "linf") return Metric::Chebyshev;
  if (name == "order") return Metric::OrderPattern;
  throw DataError("unknown metric '" + std::string(name) + "'");
}

void EmbedConfig::validate() const {
  if (m < 1) throw DataError("embedding dimension must be >= 1");
  if (k < 1) throw DataError("prediction horizon must be >= 1");
  if (!(r >= 0.0) || std::isinf(r)) throw DataError("distance threshold must be finite and >= 0");
  if (metric == Metric::OrderPattern && m < 2) {
    throw DataError("order-pattern metric needs embedding dimension >= 2");
  }
}

void EmbedConfig::validate_for(const Series& x) const {
  validate();
  if (metric == Metric::Discrete && !x.is_integer_valued()) {
    throw DataError("discrete metric needs integer-valued data");
  }
}

namespace {

// Ties go to the earlier index: position p ranks below q (p < q) iff x_p <= x_q.
bool same_order_pattern(const Series& x, std::size_t i, std::size_t j, std::size_t m) {
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      if ((x[i + p] <= x[i + q]) != (x[j + p] <= x[j + q])) return false;
    }
  }
  return true;
}

}  // namespace

double embedded_distance(const Series& x, std::size_t i, std::size_t j, std::size_t m,
                         Metric metric) {
  if (m < 1) throw DataError("embedding dimension must be >= 1");
  if (i + m > x.size() || j + m > x.size()) {
    throw DataError("window index out of range");
  }
  switch (metric) {
    case Metric::Chebyshev: {
      double d = 0.0;
      for (std::size_t l = 0; l < m; ++l) d = std::max(d, std::abs(x[i + l] - x[j + l]));
      return d;
    }
    case Metric::Manhattan: {
      double d = 0.0;
      for (std::size_t l = 0; l < m; ++l) d += std::abs(x[i + l] - x[j + l]);
      return d;
    }
    case Metric::Euclidean: {
      double d = 0.0;
      for (std::size_t l = 0; l < m; ++l) {
        const double diff = x[i + l] - x[j + l];
        d += diff * diff;
      }
      return std::sqrt(d);
    }
    case Metric::Discrete:
      for (std::size_t l = 0; l < m; ++l) {
        if (x[i + l] != x[j + l]) return 1.0;
      }
      return 0.0;
    case Metric::OrderPattern:
      if (m < 2) throw DataError("order-pattern metric needs embedding dimension >= 2");
      return same_order_pattern(x, i, j, m) ? 0.0 : 1.0;
  }
  throw DataError("unknown metric");
}

}  // namespace rqa
