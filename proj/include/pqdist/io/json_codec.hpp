#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqdist/exterior/complex_vector.hpp"
#include "pqdist/exterior/multivector.hpp"
#include "pqdist/metric/distance_matrix.hpp"

namespace pqdist {

using Json = nlohmann::ordered_json;

/// Deviation from unit norm accepted (and corrected) when loading states.
inline constexpr double kStateLoadTolerance = 1e-9;

namespace detail {

inline double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
  return v;
}

inline std::size_t count_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace detail

inline Json amplitudes_to_json(const ComplexVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(Json::array({c.real(), c.imag()}));
  return a;
}

inline ComplexVector amplitudes_from_json(const Json& a) {
  if (!a.is_array()) throw InputError("amplitudes must be an array of [re, im] pairs");
  ComplexVector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& e = a[i];
    if (!e.is_array() || e.size() != 2) throw InputError("amplitude " + std::to_string(i) + " is not a [re, im] pair");
    v[i] = Complex(detail::finite_number(e[0], "amplitude"), detail::finite_number(e[1], "amplitude"));
  }
  return v;
}

/// {"n": int, "amplitudes": [[re, im], ...]}
inline Json state_to_json(const PureState& s) {
  return Json{{"n", s.size()}, {"amplitudes", amplitudes_to_json(s.vec())}};
}

/// Accepts |‖v‖ − 1| ≤ 1e-9 and renormalizes; vectors already within 1e-12
/// are kept bit-for-bit so that save/load round-trips exactly.
inline PureState state_from_json(const Json& j) {
  const std::size_t n = detail::count_field(j, "n");
  if (!j.contains("amplitudes")) throw InputError("missing field 'amplitudes'");
  ComplexVector v = amplitudes_from_json(j.at("amplitudes"));
  if (v.size() != n)
    throw InputError("state declares n = " + std::to_string(n) + " but has " + std::to_string(v.size()) +
                     " amplitudes");
  if (n == 0) throw InputError("state must have n >= 1");
  const double r = norm(v);
  if (std::abs(r - 1.0) > kStateLoadTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "state is not normalized: norm = " << r;
    throw InputError(os.str());
  }
  if (std::abs(r - 1.0) <= PureState::kNormTolerance) return PureState(std::move(v));
  return PureState::normalize(std::move(v));
}

inline Json matrix_to_json(const RawMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(row);
  return Json{{"n", m.size()}, {"entries", rows}};
}

/// {"n": int, "entries": [[...], ...]}; shape and finiteness only, metric
/// axioms are left to validate_distance_matrix.
inline RawMatrix matrix_from_json(const Json& j) {
  const std::size_t n = detail::count_field(j, "n");
  if (!j.contains("entries") || !j.at("entries").is_array()) throw InputError("missing array field 'entries'");
  const auto& rows = j.at("entries");
  if (rows.size() != n)
    throw InputError("matrix declares n = " + std::to_string(n) + " but has " + std::to_string(rows.size()) + " rows");
  RawMatrix m;
  m.reserve(n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw InputError("matrix is not square");
    std::vector<double> r;
    r.reserve(n);
    for (const auto& e : row) r.push_back(detail::finite_number(e, "matrix entry"));
    m.push_back(std::move(r));
  }
  return m;
}

inline Json bivector_to_json(const Bivector& b) {
  Json c = Json::array();
  for (const auto& v : b.coeffs()) c.push_back(Json::array({v.real(), v.imag()}));
  return Json{{"n", b.dim()}, {"coefficients", c}};
}

inline Bivector bivector_from_json(const Json& j) {
  const std::size_t n = detail::count_field(j, "n");
  Bivector b(n);
  const ComplexVector c = amplitudes_from_json(j.at("coefficients"));
  if (c.size() != b.size()) throw InputError("bivector has the wrong number of coefficients");
  for (std::size_t i = 0; i < c.size(); ++i) b.coeff(i) = c[i];
  return b;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InputError("error while writing '" + path + "'");
}

inline RawMatrix load_matrix(const std::string& path) { return matrix_from_json(read_json_file(path)); }
inline PureState load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

}  // namespace pqdist
