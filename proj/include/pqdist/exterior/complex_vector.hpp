#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pqdist {

using Complex = std::complex<double>;

/// Raised when operands live in spaces of different (or unsupported) dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a family of vectors or bivectors is required to be orthonormal
/// and is not.
class NotOrthonormalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : entries_(n) {}
  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}
  explicit ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}

  static ComplexVector basis(std::size_t n, std::size_t i) {
    if (i >= n) throw DimensionError("basis index out of range");
    ComplexVector v(n);
    v.entries_[i] = 1.0;
    return v;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  Complex operator[](std::size_t i) const { return entries_[i]; }
  Complex& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexVector& operator+=(const ComplexVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  ComplexVector& operator-=(const ComplexVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  ComplexVector& operator*=(Complex c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex c, ComplexVector v) { return v *= c; }
  friend ComplexVector operator*(ComplexVector v, Complex c) { return v *= c; }

  bool operator==(const ComplexVector&) const = default;

 private:
  void require_same(const ComplexVector& o) const {
    if (o.size() != size()) throw DimensionError("vector dimension mismatch");
  }

  std::vector<Complex> entries_;
};

inline void require_same_dimension(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) {
    throw DimensionError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
}

/// Sesquilinear inner product, conjugate-linear in the first argument.
inline Complex inner(const ComplexVector& x, const ComplexVector& y) {
  require_same_dimension(x, y);
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

/// Bilinear pairing x^T y (no conjugation).
inline Complex dot(const ComplexVector& x, const ComplexVector& y) {
  require_same_dimension(x, y);
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm_squared(const ComplexVector& x) {
  double s = 0.0;
  for (const auto& e : x) s += std::norm(e);
  return s;
}

inline double norm(const ComplexVector& x) { return std::sqrt(norm_squared(x)); }

inline ComplexVector conj(ComplexVector x) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::conj(x[i]);
  return x;
}

/// Unit-norm vector of C^n. Global phase is not canonicalized.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Takes ownership of an already normalized vector; throws if the norm is
  /// off by more than kNormTolerance.
  explicit PureState(ComplexVector v) : vec_(std::move(v)) {
    if (vec_.size() == 0) throw DimensionError("pure state needs n >= 1");
    const double r = norm(vec_);
    if (!(std::abs(r - 1.0) <= kNormTolerance)) {
      throw std::invalid_argument("vector is not normalized (norm " + std::to_string(r) + ")");
    }
  }

  /// Normalizes v; throws on a zero or non-finite vector.
  static PureState normalize(ComplexVector v) {
    const double r = norm(v);
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("cannot normalize a zero vector");
    v *= 1.0 / r;
    // Dividing by r leaves at most a few ulps of error.
    return PureState(std::move(v));
  }

  static PureState basis(std::size_t n, std::size_t i) { return PureState(ComplexVector::basis(n, i)); }

  const ComplexVector& vec() const noexcept { return vec_; }
  std::size_t size() const noexcept { return vec_.size(); }
  Complex operator[](std::size_t i) const { return vec_[i]; }

  /// e^{i phi} times this state.
  PureState with_phase(double phi) const {
    return PureState(std::polar(1.0, phi) * vec_);
  }

  bool operator==(const PureState&) const = default;

 private:
  ComplexVector vec_;
};

inline Complex inner(const PureState& x, const PureState& y) { return inner(x.vec(), y.vec()); }

/// Largest entrywise deviation of the Gram matrix of `vs` from the identity.
inline double gram_deviation(std::span<const ComplexVector> vs) {
  double worst = 0.0;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a; b < vs.size(); ++b) {
      const Complex g = inner(vs[a], vs[b]);
      worst = std::max(worst, std::abs(g - (a == b ? Complex(1.0) : Complex(0.0))));
    }
  }
  return worst;
}

inline double gram_deviation(std::span<const PureState> vs) {
  std::vector<ComplexVector> raw;
  raw.reserve(vs.size());
  for (const auto& s : vs) raw.push_back(s.vec());
  return gram_deviation(std::span<const ComplexVector>(raw));
}

}  // namespace pqdist
