#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "pqdist/io/json_codec.hpp"
#include "pqdist/io/report_io.hpp"
#include "pqdist/lab/counterexample.hpp"
#include "pqdist/lab/fuzz.hpp"
#include "pqdist/metric/distances.hpp"
#include "pqdist/metric/embed.hpp"

namespace pqdist::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kInputError = 2 };

enum class Format { text, json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw std::invalid_argument("unknown format '" + s + "' (text, json, csv)");
}

/// 15 significant digits when they identify the double, else 16; always with
/// a decimal point: 3.0, 0.0, 1e-20, 1.414213562373095.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.16g", v);
  std::string s(buf);
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

inline int cmd_validate(const std::string& matrix_path, Format format, std::ostream& out, std::ostream& err) {
  ValidationResult r;
  try {
    r = validate_distance_matrix(load_matrix(matrix_path));
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (format == Format::json) {
    Json v = Json::array();
    for (const auto& w : r.violations) {
      Json idx = Json::array();
      for (auto i : w.indices) idx.push_back(i + 1);
      v.push_back(Json{{"kind", Violation::kind_name(w.kind)}, {"indices", idx}, {"detail", w.detail}});
    }
    out << Json{{"valid", r.valid()}, {"violation_count", r.violation_count}, {"violations", v}}.dump(2) << '\n';
  } else {
    if (r.valid()) {
      out << "valid\n";
    } else {
      out << "invalid: " << r.violation_count << " violation(s)\n";
      for (const auto& w : r.violations) {
        out << "  " << Violation::kind_name(w.kind) << " (";
        for (std::size_t k = 0; k < w.indices.size(); ++k) out << (k ? "," : "") << w.indices[k] + 1;
        out << "): " << w.detail << '\n';
      }
      if (r.violation_count > r.violations.size())
        out << "  ... " << r.violation_count - r.violations.size() << " more\n";
    }
  }
  return r.valid() ? kOk : kPropertyFailure;
}

inline int cmd_dist(const std::string& matrix_path, double p, const std::string& x_path, const std::string& y_path,
                    Format format, std::ostream& out, std::ostream& err) {
  try {
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("p must be > 0");
    const DistanceMatrix e = DistanceMatrix::from_rows(load_matrix(matrix_path));
    const PureState x = load_state(x_path);
    const PureState y = load_state(y_path);
    if (x.size() != e.size() || y.size() != e.size())
      throw InputError("dimension mismatch: matrix is " + std::to_string(e.size()) + "x" + std::to_string(e.size()) +
                       ", states have n = " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
    if (p < 2.0) err << "warning: p < 2, d_p is not guaranteed to be a metric\n";
    const double d = DpMetric(e, p)(x, y);
    const double hs = d_hs(x, y);
    switch (format) {
      case Format::text: out << format_number(d) << '\n'; break;
      case Format::json:
        out << Json{{"n", e.size()}, {"p", p}, {"distance", d}, {"hs_distance", hs}}.dump(2) << '\n';
        break;
      case Format::csv:
        out << "n,p,distance,hs_distance\n"
            << e.size() << ',' << format_number(p) << ',' << format_number(d) << ',' << format_number(hs) << '\n';
        break;
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

struct FuzzOptions {
  TrialConfig config;
  std::optional<std::string> out_path;
  bool expect_violation = false;
  Format format = Format::json;
};

/// Writes the report (to out_path, else to `out`). Exit 0 when the outcome
/// matches expectations: no violations, or some with expect_violation.
inline int cmd_fuzz(const FuzzOptions& opt, std::ostream& out, std::ostream& err) {
  VerificationReport r;
  try {
    r = fuzz(opt.config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  std::string body;
  if (opt.format == Format::csv) {
    body = "property,n,p,trials,violations,worst_defect,seed,elapsed_ms,version\n" + r.property + ',' +
           std::to_string(r.config.n) + ',' + format_number(r.config.p) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.violations) + ',' + format_number(r.worst_defect) + ',' + std::to_string(r.seed) + ',' +
           format_number(r.elapsed_ms) + ',' + r.version + '\n';
  } else {
    body = report_to_json(r).dump(2) + '\n';
  }
  if (opt.out_path) {
    std::ofstream f(*opt.out_path);
    if (!(f << body)) {
      err << "error: cannot write '" << *opt.out_path << "'\n";
      return kInputError;
    }
    out << r.property << ": " << r.violations << " violation(s) in " << r.trials
        << " trials, worst defect " << format_number(r.worst_defect) << '\n';
  } else {
    out << body;
  }

  const bool found = r.violations > 0;
  if (found != opt.expect_violation) {
    err << (found ? "property violated" : "expected a violation but none was found") << '\n';
    return kPropertyFailure;
  }
  return kOk;
}

inline int cmd_counterexample(double p, double e12, std::optional<double> theta, Format format, std::ostream& out,
                              std::ostream& err) {
  std::optional<Counterexample> found;
  try {
    found = counterexample_p_lt_2(p, e12, theta);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kPropertyFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const Counterexample& ce = *found;
  if (format == Format::json) {
    out << Json{{"p", ce.p},
                {"E12", ce.e12},
                {"theta", ce.theta},
                {"x", state_to_json(ce.x)},
                {"y", state_to_json(ce.y)},
                {"z", state_to_json(ce.z)},
                {"d_xy", ce.d_xy},
                {"d_xz", ce.d_xz},
                {"d_yz", ce.d_yz},
                {"margin", ce.margin}}
               .dump(2)
        << '\n';
  } else {
    auto state = [](const PureState& s) {
      std::string r = "(";
      for (std::size_t i = 0; i < s.size(); ++i) r += (i ? ", " : "") + format_number(s[i].real());
      return r + ")";
    };
    out << "theta  = " << format_number(ce.theta) << '\n'
        << "x      = " << state(ce.x) << '\n'
        << "y      = " << state(ce.y) << '\n'
        << "z      = " << state(ce.z) << '\n'
        << "d(x,y) = " << format_number(ce.d_xy) << '\n'
        << "d(x,z) = " << format_number(ce.d_xz) << '\n'
        << "d(y,z) = " << format_number(ce.d_yz) << '\n'
        << "margin = " << format_number(ce.margin) << "  (d(x,y) - d(x,z) - d(y,z))\n";
  }
  return kOk;
}

/// Writes e1.json … en.json and manifest.json into out_dir.
inline int cmd_embed(const std::string& matrix_path, double p, const std::string& out_dir, std::ostream& out,
                     std::ostream& err) {
  RawMatrix raw;
  try {
    raw = load_matrix(matrix_path);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (!(p >= 2.0) || !std::isfinite(p)) {
    err << "error: embedding needs p >= 2; for p < 2 d_p need not satisfy the triangle inequality\n";
    return kPropertyFailure;
  }
  ValidationResult v;
  try {
    v = validate_distance_matrix(raw);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (!v.valid()) {
    err << "error: not a distance matrix (" << v.violation_count << " violation(s)); run 'validate' for details\n";
    return kPropertyFailure;
  }

  const Embedding emb = embed(*v.matrix, p);
  constexpr double kRoundTripTolerance = 1e-12;
  if (emb.max_relative_error > kRoundTripTolerance) {
    err << "error: round-trip check failed, max relative error " << format_number(emb.max_relative_error) << '\n';
    return kPropertyFailure;
  }

  try {
    std::filesystem::create_directories(out_dir);
    Json files = Json::array();
    for (std::size_t i = 0; i < emb.states.size(); ++i) {
      const std::string name = "e" + std::to_string(i + 1) + ".json";
      write_json_file((std::filesystem::path(out_dir) / name).string(), state_to_json(emb.states[i]));
      files.push_back(name);
    }
    write_json_file((std::filesystem::path(out_dir) / "manifest.json").string(),
                    Json{{"n", raw.size()},
                         {"p", p},
                         {"matrix", matrix_to_json(raw)},
                         {"states", files},
                         {"max_relative_error", emb.max_relative_error},
                         {"verified", true}});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  out << "embedded " << raw.size() << " points into C^" << raw.size() << " (p = " << format_number(p)
      << "), max relative error " << format_number(emb.max_relative_error) << '\n';
  return kOk;
}

}  // namespace pqdist::cli
