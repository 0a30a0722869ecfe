#pragma once

#include <string>

#include "pqdist/io/json_codec.hpp"
#include "pqdist/lab/fuzz.hpp"

namespace pqdist {

inline Json config_to_json(const TrialConfig& c) {
  Json j{{"property", to_string(c.property)},
         {"n", c.n},
         {"p", c.p},
         {"trials", c.trials},
         {"seed", c.seed},
         {"matrix_mode", to_string(c.matrix_mode)},
         {"tolerance", c.tolerance},
         {"function", c.function}};
  if (c.matrix) j["matrix"] = matrix_to_json(*c.matrix);
  return j;
}

/// Missing keys keep their defaults, so a config file may name only what it
/// changes. A "matrix" without an explicit mode implies user-supplied.
inline TrialConfig config_from_json(const Json& j, TrialConfig c = {}) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  try {
    if (j.contains("property")) c.property = parse_property(j.at("property").get<std::string>());
    if (j.contains("n")) c.n = detail::count_field(j, "n");
    if (j.contains("p")) c.p = detail::finite_number(j.at("p"), "p");
    if (j.contains("trials")) c.trials = detail::count_field(j, "trials");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_integer() || j.at("seed").is_number_float())
        throw InputError("seed must be an integer");
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tolerance")) c.tolerance = detail::finite_number(j.at("tolerance"), "tolerance");
    if (j.contains("function")) c.function = j.at("function").get<std::string>();
    if (j.contains("matrix")) {
      c.matrix = matrix_from_json(j.at("matrix"));
      c.matrix_mode = MatrixMode::user_supplied;
    }
    if (j.contains("matrix_mode")) c.matrix_mode = parse_matrix_mode(j.at("matrix_mode").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad config: ") + e.what());
  }
  return c;
}

inline Json report_to_json(const VerificationReport& r) {
  return Json{{"property", r.property},         {"config", config_to_json(r.config)},
              {"trials", r.trials},             {"violations", r.violations},
              {"worst_defect", r.worst_defect}, {"witness", r.witness},
              {"seed", r.seed},                 {"elapsed_ms", r.elapsed_ms},
              {"version", r.version}};
}

inline VerificationReport report_from_json(const Json& j) {
  try {
    VerificationReport r;
    r.property = j.at("property").get<std::string>();
    r.config = config_from_json(j.at("config"));
    r.trials = j.at("trials").get<std::uint64_t>();
    r.violations = j.at("violations").get<std::uint64_t>();
    r.worst_defect = j.at("worst_defect").get<double>();
    r.witness = j.at("witness");
    r.seed = j.at("seed").get<std::uint64_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    r.version = j.at("version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad report: ") + e.what());
  }
}

}  // namespace pqdist
