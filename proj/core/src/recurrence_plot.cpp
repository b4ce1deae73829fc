#include "rqa/recurrence_plot.hpp"

#include <bit>
#include <ostream>
#include <string>

#include "rqa/errors.hpp"

namespace rqa {

RecurrencePlot::RecurrencePlot(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

std::uint64_t RecurrencePlot::count() const {
  std::uint64_t total = 0;
  for (auto w : bits_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

bool RecurrencePlot::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (test(i, j) != test(j, i)) return false;
    }
  }
  return true;
}

bool RecurrencePlot::is_reflexive() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!test(i, i)) return false;
  }
  return true;
}

RecurrencePlot recurrence_plot(const Series& x, std::size_t n, const EmbedConfig& cfg) {
  cfg.validate_for(x);
  if (n < 1) throw DataError("plot side must be >= 1");
  if (x.size() < n + cfg.m - 1) {
    throw DataError("series of length " + std::to_string(x.size()) + " is too short for n=" +
                    std::to_string(n) + ", m=" + std::to_string(cfg.m));
  }
  RecurrencePlot plot(n);
  for (std::size_t i = 0; i < n; ++i) {
    plot.set(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (embedded_distance(x, i, j, cfg.m, cfg.metric) <= cfg.r) {
        plot.set(i, j);
        plot.set(j, i);
      }
    }
  }
  return plot;
}

void write_pbm(std::ostream& out, const RecurrencePlot& plot) {
  const std::size_t n = plot.size();
  out << "P4\n" << n << ' ' << n << '\n';
  const std::size_t bytes_per_row = (n + 7) / 8;
  std::string row_bytes(bytes_per_row, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    const auto words = plot.row(i);
    for (std::size_t b = 0; b < bytes_per_row; ++b) {
      const auto byte = static_cast<unsigned>((words[b / 8] >> (8 * (b % 8))) & 0xffu);
      // PBM wants the leftmost pixel in the most significant bit.
      unsigned reversed = 0;
      for (int bit = 0; bit < 8; ++bit) reversed |= ((byte >> bit) & 1u) << (7 - bit);
      row_bytes[b] = static_cast<char>(reversed);
    }
    out.write(row_bytes.data(), static_cast<std::streamsize>(bytes_per_row));
  }
}

}  // namespace rqa
