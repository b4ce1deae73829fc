#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rqa {

// Locale-independent number formatting and parsing.
std::string format_sig6(double v);      // 6 significant digits; "inf"/"-inf" for infinities
std::string format_shortest(double v);  // round-trip exact
std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

struct NotAvailable {};

// A CSV cell. NotAvailable prints as "NA".
using Cell = std::variant<NotAvailable, std::int64_t, double, std::string>;

Cell cell(std::optional<double> v);

// Rows of an experiment plus the configuration that produced them. Written as
// CSV with "# key: value" comment lines ahead of the header row.
struct ExperimentResult {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_config(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
  }
  void add_row(std::vector<Cell> row);

  std::size_t column_index(std::string_view name) const;
  double number_at(std::size_t row, std::string_view column) const;
};

std::string format_cell(const Cell& c);
void write_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace rqa
