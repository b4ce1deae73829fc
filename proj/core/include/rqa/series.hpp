#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rqa {

// Finite, non-empty trajectory of real samples. Discrete-state data is stored
// as integral doubles.
class Series {
 public:
  Series() = default;
  explicit Series(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  bool is_integer_valued() const;

  // Leading `count` samples.
  Series prefix(std::size_t count) const;

 private:
  std::vector<double> values_;
};

// One sample per line, or a single-column CSV with an optional header line.
// Blank lines and lines starting with '#' are skipped.
Series read_series(std::istream& in);
Series read_series_file(const std::string& path);

// Shortest round-trip representation, one sample per line.
void write_series(std::ostream& out, const Series& x);

}  // namespace rqa
