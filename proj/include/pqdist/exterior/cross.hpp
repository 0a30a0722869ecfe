#pragma once

#include <array>

#include "pqdist/exterior/complex_vector.hpp"

namespace pqdist {

/// Dense 3×3 complex matrix, row-major.
using Matrix3 = std::array<std::array<Complex, 3>, 3>;

inline Matrix3 identity3() {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
  return m;
}

inline Complex det3(const Matrix3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

/// Cofactor matrix, cof A = det(A) (A^{-1})^T.
inline Matrix3 cofactor3(const Matrix3& a) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (int j = 0; j < 3; ++j) {
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      // cyclic index choice absorbs the (−1)^{i+j} sign
      c[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
    }
  }
  return c;
}

inline Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Matrix3 adjoint(const Matrix3& a) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

inline ComplexVector matvec(const Matrix3& a, const ComplexVector& x) {
  if (x.size() != 3) throw DimensionError("3×3 matrix applied to a vector of dimension != 3");
  ComplexVector y(3);
  for (int i = 0; i < 3; ++i) y[i] = a[i][0] * x[0] + a[i][1] * x[1] + a[i][2] * x[2];
  return y;
}

/// Bilinear cross product on C^3 (no conjugation).
inline ComplexVector cross3(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != 3 || y.size() != 3) throw DimensionError("cross product needs n = 3");
  return ComplexVector{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

}  // namespace pqdist
