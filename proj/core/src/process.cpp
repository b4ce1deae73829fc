#include "rqa/process.hpp"

#include <cmath>

#include "json.hpp"
#include "rqa/errors.hpp"

namespace rqa {

using nlohmann::json;

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw DataError(std::string("process spec needs numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

MarkovSpec markov_from_json(const json& j) {
  const char* key = j.contains("transition") ? "transition" : "P";
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw DataError("markov spec needs a 'transition' array");
  }
  const json& t = j.at(key);
  std::vector<double> flat;
  std::size_t q = 0;
  if (!t.empty() && t.front().is_array()) {
    q = t.size();
    for (const auto& row : t) {
      if (!row.is_array() || row.size() != q) throw DataError("transition matrix must be square");
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
  } else {
    for (const auto& v : t) flat.push_back(v.get<double>());
    q = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (j.contains("states")) q = j.at("states").get<std::size_t>();
    if (q * q != flat.size()) throw DataError("flat transition array is not q x q");
  }
  return MarkovSpec(q, std::move(flat));
}

}  // namespace

ProcessSpec parse_process_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("process spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw DataError("process spec must be an object with a string 'type'");
  }
  try {
    const auto type = j.at("type").get<std::string>();
    if (type == "iid_gaussian") {
      const double sigma = number_field(j, "sigma");
      if (!(sigma > 0.0)) throw DataError("iid_gaussian sigma must be > 0");
      return IidGaussian{sigma};
    }
    if (type == "markov") return markov_from_json(j);
    if (type == "ar") {
      if (!j.contains("theta") || !j.at("theta").is_array()) throw DataError("ar spec needs a 'theta' array");
      ArSpec ar{j.at("theta").get<std::vector<double>>(), number_field(j, "sigma2")};
      ar.validate();
      return ar;
    }
    throw DataError("unknown process type '" + type + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed process spec: ") + e.what());
  }
}

std::string to_json(const ProcessSpec& spec) {
  json j;
  if (const auto* iid = std::get_if<IidGaussian>(&spec)) {
    j = {{"type", "iid_gaussian"}, {"sigma", iid->sigma}};
  } else if (const auto* mc = std::get_if<MarkovSpec>(&spec)) {
    json rows = json::array();
    for (std::size_t s = 0; s < mc->states(); ++s) {
      json row = json::array();
      for (std::size_t t = 0; t < mc->states(); ++t) row.push_back(mc->p(s, t));
      rows.push_back(row);
    }
    j = {{"type", "markov"}, {"transition", rows}};
  } else {
    const auto& ar = std::get<ArSpec>(spec);
    j = {{"type", "ar"}, {"theta", ar.theta}, {"sigma2", ar.sigma2}};
  }
  return j.dump();
}

std::string_view process_type(const ProcessSpec& spec) {
  switch (spec.index()) {
    case 0: return "iid_gaussian";
    case 1: return "markov";
    default: return "ar";
  }
}

Metric natural_metric(const ProcessSpec& spec) {
  return std::holds_alternative<MarkovSpec>(spec) ? Metric::Discrete : Metric::Chebyshev;
}

}  // namespace rqa
