#pragma once

#include <stdexcept>
#include <string>

namespace rqa {

// Bad input data: short series, malformed spec, out-of-range index or parameter.
class DataError : public std::invalid_argument {
 public:
  explicit DataError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure: non-SPD covariance, non-stationary AR, non-ergodic chain,
// failed root bracket.
class NumericError : public std::domain_error {
 public:
  explicit NumericError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rqa
