#include "rqa/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rqa/errors.hpp"
#include "rqa/table.hpp"

namespace rqa {

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DataError("series is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("series sample " + std::to_string(i) + " is not finite");
    }
  }
}

bool Series::is_integer_valued() const {
  for (double v : values_) {
    if (v != std::floor(v)) return false;
  }
  return true;
}

Series Series::prefix(std::size_t count) const {
  if (count > values_.size()) {
    throw DataError("prefix of " + std::to_string(count) +
                    " samples requested from a series of " + std::to_string(values_.size()));
  }
  return Series(std::vector<double>(values_.begin(), values_.begin() + count));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

Series read_series(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto field = trim(line);
    if (field.empty() || field.front() == '#') continue;
    if (field.find(',') != std::string_view::npos) {
      field = trim(field.substr(0, field.find(',')));
    }
    const auto parsed = parse_double(field);
    if (!parsed) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) +
                      "' as a number");
    }
    header_allowed = false;
    values.push_back(*parsed);
  }
  return Series(std::move(values));
}

Series read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open series file '" + path + "'");
  return read_series(in);
}

void write_series(std::ostream& out, const Series& x) {
  for (double v : x.values()) out << format_shortest(v) << '\n';
}

}  // namespace rqa
