#include "rqa/table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "rqa/errors.hpp"

namespace rqa {

std::string format_sig6(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

Cell cell(std::optional<double> v) {
  if (!v) return NotAvailable{};
  return *v;
}

void ExperimentResult::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DataError("row has " + std::to_string(row.size()) + " cells, table has " +
                    std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ExperimentResult::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DataError("no column named '" + std::string(name) + "'");
}

double ExperimentResult::number_at(std::size_t row, std::string_view column) const {
  const Cell& c = rows.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::nan("");
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(NotAvailable) const { return "NA"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_sig6(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  for (const auto& [key, value] : result.config) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out << (i ? "," : "") << result.columns[i];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

}  // namespace rqa
