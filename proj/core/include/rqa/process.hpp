#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rqa/analytic.hpp"
#include "rqa/embedding.hpp"

namespace rqa {

struct IidGaussian {
  double sigma = 1.0;
};

using ProcessSpec = std::variant<IidGaussian, MarkovSpec, ArSpec>;

// JSON object tagged by "type":
//   {"type": "iid_gaussian", "sigma": 1}
//   {"type": "markov", "transition": [[0.6, 0.4], [0.8, 0.2]]}   (rows; a flat
//        row-major array is accepted too)
//   {"type": "ar", "theta": [0.25, 0.4, 0.3], "sigma2": 1.5}
// Throws DataError on malformed input, NumericError on invalid processes.
ProcessSpec parse_process_spec(std::string_view json_text);
std::string to_json(const ProcessSpec& spec);
std::string_view process_type(const ProcessSpec& spec);

// Metric the process is analysed with: Discrete for Markov chains, Chebyshev otherwise.
Metric natural_metric(const ProcessSpec& spec);

}  // namespace rqa
