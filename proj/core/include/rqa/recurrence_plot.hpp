#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rqa/embedding.hpp"
#include "rqa/series.hpp"

namespace rqa {

// n x n boolean matrix, bit-packed by rows. Bit j of row i lives in word j / 64
// at position j % 64; padding bits past column n-1 are always zero.
class RecurrencePlot {
 public:
  RecurrencePlot() = default;
  explicit RecurrencePlot(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    auto& w = bits_[i * words_ + j / 64];
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

  std::uint64_t count() const;
  bool is_symmetric() const;
  bool is_reflexive() const;

  friend bool operator==(const RecurrencePlot&, const RecurrencePlot&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// bits(i, j) = [distance(window i, window j) <= r]. Needs n + m - 1 samples.
RecurrencePlot recurrence_plot(const Series& x, std::size_t n, const EmbedConfig& cfg);

// Binary PBM (P4): black pixel for a recurrence, row 0 at the top.
void write_pbm(std::ostream& out, const RecurrencePlot& plot);

}  // namespace rqa
