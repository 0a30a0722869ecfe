#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqdist/exterior/multivector.hpp"

namespace pqdist {

/// Malformed input: wrong shape, non-finite values, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RawMatrix = std::vector<std::vector<double>>;

/// Absolute slack allowed in the triangle inequality among matrix entries.
inline constexpr double kTriangleSlack = 1e-12;
/// Witnesses retained per validation report.
inline constexpr std::size_t kMaxWitnesses = 100;

/// Symmetric table of nonnegative weights indexed by unordered pairs i<j.
class PairWeights {
 public:
  PairWeights() = default;
  explicit PairWeights(std::size_t n, double fill = 0.0) : n_(n), values_(choose2(n), fill) {}

  /// Reads the strict upper triangle. Requires a square, finite, symmetric,
  /// nonnegative matrix; the triangle inequality is not required.
  static PairWeights from_matrix(const RawMatrix& m) {
    const std::size_t n = m.size();
    PairWeights w(n);
    for (const auto& row : m)
      if (row.size() != n) throw InputError("weight matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(m[i][j])) throw InputError("weight matrix has a non-finite entry");
        if (m[i][j] != m[j][i]) throw InputError("weight matrix is not symmetric");
        if (m[i][j] < 0.0) throw InputError("weight matrix has a negative entry");
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w.at(i, j) = m[i][j];
    return w;
  }

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i < j ? values_[pair_index(n_, i, j)] : values_[pair_index(n_, j, i)];
  }
  double& at(std::size_t i, std::size_t j) { return values_[pair_index(n_, i, j)]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Entrywise power w_ij^p.
  PairWeights pow(double p) const {
    PairWeights out(*this);
    for (auto& v : out.values_) v = std::pow(v, p);
    return out;
  }

  RawMatrix to_matrix() const {
    RawMatrix m(n_, std::vector<double>(n_, 0.0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) m[i][j] = m[j][i] = (*this)(i, j);
    return m;
  }

  bool operator==(const PairWeights&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct Violation {
  enum class Kind { asymmetric, nonzero_diagonal, nonpositive, triangle };
  Kind kind;
  std::vector<std::size_t> indices;  // 0-based
  std::string detail;

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::asymmetric: return "asymmetric";
      case Kind::nonzero_diagonal: return "nonzero-diagonal";
      case Kind::nonpositive: return "nonpositive";
      case Kind::triangle: return "triangle";
    }
    return "?";
  }
};

struct ValidationResult;
inline ValidationResult validate_distance_matrix(const RawMatrix& m);

/// Validated distance matrix: symmetric, zero diagonal, strictly positive off
/// the diagonal, triangle inequality up to kTriangleSlack.
class DistanceMatrix {
 public:
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  RawMatrix to_matrix() const {
    RawMatrix m(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
    return m;
  }

  PairWeights pair_weights() const {
    PairWeights w(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) w.at(i, j) = (*this)(i, j);
    return w;
  }

  /// Validates or throws std::invalid_argument listing the first violation.
  static DistanceMatrix from_rows(const RawMatrix& m);

  /// E_ij = 1 − δ_ij, the matrix under which d_2 reduces to the
  /// Hilbert–Schmidt distance.
  static DistanceMatrix discrete(std::size_t n) {
    RawMatrix m(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
    return from_rows(m);
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  friend ValidationResult validate_distance_matrix(const RawMatrix& m);
  DistanceMatrix(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {}

  std::size_t n_ = 0;
  std::vector<double> entries_;
};

struct ValidationResult {
  std::optional<DistanceMatrix> matrix;
  std::vector<Violation> violations;  // at most kMaxWitnesses
  std::size_t violation_count = 0;

  bool valid() const noexcept { return violation_count == 0; }
};

/// Checks every metric axiom and records up to kMaxWitnesses violations.
/// Throws InputError for non-square, too small, or non-finite input.
inline ValidationResult validate_distance_matrix(const RawMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw InputError("distance matrix must be at least 2x2");
  for (const auto& row : m)
    if (row.size() != n) throw InputError("distance matrix is not square");
  for (const auto& row : m)
    for (double v : row)
      if (!std::isfinite(v)) throw InputError("distance matrix has a NaN or infinite entry");

  ValidationResult r;
  auto record = [&](Violation::Kind kind, std::vector<std::size_t> idx, std::string detail) {
    ++r.violation_count;
    if (r.violations.size() < kMaxWitnesses) r.violations.push_back({kind, std::move(idx), std::move(detail)});
  };
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };

  for (std::size_t i = 0; i < n; ++i)
    if (m[i][i] != 0.0) record(Violation::Kind::nonzero_diagonal, {i, i}, "E_ii = " + fmt(m[i][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i])
        record(Violation::Kind::asymmetric, {i, j}, fmt(m[i][j]) + " != " + fmt(m[j][i]));
      if (!(m[i][j] > 0.0) || !(m[j][i] > 0.0))
        record(Violation::Kind::nonpositive, {i, j}, "E_ij = " + fmt(m[i][j]));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = m[i][j] + m[j][k];
        if (m[i][k] > via + kTriangleSlack)
          record(Violation::Kind::triangle, {i, j, k},
                 "E_ik = " + fmt(m[i][k]) + " > E_ij + E_jk = " + fmt(via));
      }

  if (r.valid()) {
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : m) entries.insert(entries.end(), row.begin(), row.end());
    r.matrix = DistanceMatrix(n, std::move(entries));
  }
  return r;
}

inline DistanceMatrix DistanceMatrix::from_rows(const RawMatrix& m) {
  auto r = validate_distance_matrix(m);
  if (!r.valid()) {
    const auto& v = r.violations.front();
    throw std::invalid_argument(std::string("not a distance matrix: ") + Violation::kind_name(v.kind) + " (" +
                                v.detail + ")");
  }
  return *std::move(r.matrix);
}

}  // namespace pqdist
