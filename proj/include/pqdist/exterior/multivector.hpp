#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pqdist/exterior/complex_vector.hpp"

namespace pqdist {

constexpr std::size_t choose2(std::size_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }
constexpr std::size_t choose3(std::size_t m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }

/// Lexicographic position of the pair i<j among all pairs of {0..n-1}.
constexpr std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  return choose2(n) - choose2(n - i) + (j - i - 1);
}

/// Lexicographic position of the triple i<j<k among all triples of {0..n-1}.
constexpr std::size_t triple_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  return choose3(n) - choose3(n - i) + choose2(n - 1 - i) - choose2(n - j) + (k - j - 1);
}

/// Element of Λ²C^n in the basis e_i∧e_j (i<j). Coefficients are the raw
/// 2×2 minors, so ‖x∧y‖² = Σ_{i<j} |x_i y_j − x_j y_i|² with no 1/√2 factor.
class Bivector {
 public:
  Bivector() = default;
  explicit Bivector(std::size_t n) : n_(n), coeffs_(choose2(n)) {}

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Antisymmetric accessor: B(i,j) = −B(j,i), B(i,i) = 0.
  Complex operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return i < j ? coeffs_[pair_index(n_, i, j)] : -coeffs_[pair_index(n_, j, i)];
  }
  /// Mutable access, i<j only.
  Complex& at(std::size_t i, std::size_t j) { return coeffs_[pair_index(n_, i, j)]; }
  Complex at(std::size_t i, std::size_t j) const { return coeffs_[pair_index(n_, i, j)]; }

  Complex coeff(std::size_t idx) const { return coeffs_[idx]; }
  Complex& coeff(std::size_t idx) { return coeffs_[idx]; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  Bivector& operator+=(const Bivector& o) {
    require(o);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] += o.coeffs_[a];
    return *this;
  }
  Bivector& operator-=(const Bivector& o) {
    require(o);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) coeffs_[a] -= o.coeffs_[a];
    return *this;
  }
  Bivector& operator*=(Complex c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
  }
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator*(Complex c, Bivector b) { return b *= c; }
  friend Bivector operator-(Bivector b) { return b *= -1.0; }

  bool operator==(const Bivector&) const = default;

 private:
  void require(const Bivector& o) const {
    if (o.n_ != n_) throw DimensionError("bivector dimension mismatch");
  }

  std::size_t n_ = 0;
  std::vector<Complex> coeffs_;
};

/// Element of Λ³C^n in the basis e_i∧e_j∧e_k (i<j<k); coefficients are the
/// raw 3×3 minors.
class Trivector {
 public:
  Trivector() = default;
  explicit Trivector(std::size_t n) : n_(n), coeffs_(choose3(n)) {}

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Fully alternating accessor over arbitrary index order.
  Complex operator()(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) return 0.0;
    double sign = 1.0;
    // sort with a parity count
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (j > k) { std::swap(j, k); sign = -sign; }
    if (i > j) { std::swap(i, j); sign = -sign; }
    return sign * coeffs_[triple_index(n_, i, j, k)];
  }
  Complex& at(std::size_t i, std::size_t j, std::size_t k) { return coeffs_[triple_index(n_, i, j, k)]; }
  Complex at(std::size_t i, std::size_t j, std::size_t k) const { return coeffs_[triple_index(n_, i, j, k)]; }

  Complex coeff(std::size_t idx) const { return coeffs_[idx]; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  Trivector& operator*=(Complex c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
  }
  friend Trivector operator-(Trivector t) { return t *= -1.0; }

  bool operator==(const Trivector&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> coeffs_;
};

inline double norm_squared(const Bivector& b) {
  double s = 0.0;
  for (const auto& c : b.coeffs()) s += std::norm(c);
  return s;
}
inline double norm_squared(const Trivector& t) {
  double s = 0.0;
  for (const auto& c : t.coeffs()) s += std::norm(c);
  return s;
}
inline double norm(const Bivector& b) { return std::sqrt(norm_squared(b)); }
inline double norm(const Trivector& t) { return std::sqrt(norm_squared(t)); }

/// ⟨B|C⟩ on Λ²C^n, conjugate-linear in B.
inline Complex inner(const Bivector& b, const Bivector& c) {
  if (b.dim() != c.dim()) throw DimensionError("bivector dimension mismatch");
  Complex s = 0.0;
  for (std::size_t a = 0; a < b.size(); ++a) s += std::conj(b.coeff(a)) * c.coeff(a);
  return s;
}

/// x∧y with B_ij = x_i y_j − x_j y_i.
inline Bivector wedge(const ComplexVector& x, const ComplexVector& y) {
  require_same_dimension(x, y);
  const std::size_t n = x.size();
  if (n < 2) throw DimensionError("wedge of two vectors needs n >= 2");
  Bivector b(n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.coeff(idx++) = x[i] * y[j] - x[j] * y[i];
  return b;
}

/// B∧v with T_ijk = B_ij v_k − B_ik v_j + B_jk v_i. Equals v∧B.
inline Trivector wedge(const Bivector& b, const ComplexVector& v) {
  if (b.dim() != v.size()) throw DimensionError("bivector/vector dimension mismatch");
  const std::size_t n = v.size();
  if (n < 3) throw DimensionError("trivectors need n >= 3");
  Trivector t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        t.at(i, j, k) = b(i, j) * v[k] - b(i, k) * v[j] + b(j, k) * v[i];
  return t;
}

inline Trivector wedge(const ComplexVector& v, const Bivector& b) { return wedge(b, v); }

/// x∧y∧z; T_ijk is the determinant with rows x, y, z restricted to columns i,j,k.
inline Trivector wedge(const ComplexVector& x, const ComplexVector& y, const ComplexVector& z) {
  require_same_dimension(x, y);
  require_same_dimension(y, z);
  const std::size_t n = x.size();
  if (n < 3) throw DimensionError("wedge of three vectors needs n >= 3");
  Trivector t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        t.at(i, j, k) = x[i] * (y[j] * z[k] - y[k] * z[j]) - x[j] * (y[i] * z[k] - y[k] * z[i]) +
                        x[k] * (y[i] * z[j] - y[j] * z[i]);
  return t;
}

inline Bivector wedge2(const ComplexVector& x, const ComplexVector& y) { return wedge(x, y); }
inline Bivector wedge2(const PureState& x, const PureState& y) { return wedge(x.vec(), y.vec()); }
inline Trivector wedge3(const ComplexVector& x, const ComplexVector& y, const ComplexVector& z) {
  return wedge(x, y, z);
}
inline Trivector wedge3(const PureState& x, const PureState& y, const PureState& z) {
  return wedge(x.vec(), y.vec(), z.vec());
}

/// w ⌟ v = ⟨w|v⟩ for grade one.
inline Complex interior_product(const ComplexVector& w, const ComplexVector& v) { return inner(w, v); }

/// w ⌟ B, with (w⌟B)_k = Σ_i conj(w_i) B(i,k).
inline ComplexVector interior_product(const ComplexVector& w, const Bivector& b) {
  if (b.dim() != w.size()) throw DimensionError("interior product dimension mismatch");
  const std::size_t n = w.size();
  ComplexVector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(w[i]) * b(i, k);
    out[k] = s;
  }
  return out;
}

/// w ⌟ T, with (w⌟T)_jk = Σ_i conj(w_i) T(i,j,k).
inline Bivector interior_product(const ComplexVector& w, const Trivector& t) {
  if (t.dim() != w.size()) throw DimensionError("interior product dimension mismatch");
  const std::size_t n = w.size();
  Bivector out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::conj(w[i]) * t(i, j, k);
      out.at(j, k) = s;
    }
  return out;
}

}  // namespace pqdist
