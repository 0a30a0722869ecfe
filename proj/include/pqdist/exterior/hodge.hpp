#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "pqdist/exterior/cross.hpp"
#include "pqdist/exterior/gram_schmidt.hpp"
#include "pqdist/exterior/multivector.hpp"

namespace pqdist {

/// Gram deviation allowed on inputs that must be orthonormal.
inline constexpr double kInputOrthonormalityTolerance = 1e-8;

/// The bivector basis {v2∧v3, v3∧v1, v1∧v2} of Λ²V for a frame {v1,v2,v3}.
inline std::array<Bivector, 3> dual_bivector_basis(const ComplexVector& v1, const ComplexVector& v2,
                                                   const ComplexVector& v3) {
  return {wedge(v2, v3), wedge(v3, v1), wedge(v1, v2)};
}

inline double bivector_gram_deviation(std::span<const Bivector> bs) {
  double worst = 0.0;
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = a; b < bs.size(); ++b)
      worst = std::max(worst, std::abs(inner(bs[a], bs[b]) - (a == b ? Complex(1.0) : Complex(0.0))));
  return worst;
}

/// Largest coefficient deviation of {f2∧f3, f3∧f1, f1∧f2} from {B1, B2, B3}.
inline double hodge_residual(const std::array<PureState, 3>& f, const std::array<Bivector, 3>& b) {
  const auto w = dual_bivector_basis(f[0].vec(), f[1].vec(), f[2].vec());
  double worst = 0.0;
  for (int l = 0; l < 3; ++l) {
    const Bivector diff = w[l] - b[l];
    for (const auto& c : diff.coeffs()) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

/// Orthonormal frame {f1,f2,f3} of V = span(v_basis) with
/// f2∧f3 = B1, f3∧f1 = B2, f1∧f2 = B3.
///
/// The frame is f_l = Σ_m conj(U_lm) v_m where U_lm = ⟨W_m|B_l⟩ expands the
/// B's in W = {v2∧v3, v3∧v1, v1∧v2}. That identity needs det U = 1, which is
/// arranged by rotating v1 by the phase √(det U / |det U|): W2 and W3 then
/// pick up that phase and det U loses its square.
inline std::array<PureState, 3> hodge_basis(const std::array<Bivector, 3>& b, std::span<const PureState> v_basis) {
  if (v_basis.size() != 3) throw DimensionError("hodge_basis needs exactly three basis vectors");
  const std::size_t n = v_basis[0].size();
  if (n < 3) throw DimensionError("hodge_basis needs n >= 3");
  for (const auto& v : v_basis)
    if (v.size() != n) throw DimensionError("hodge_basis basis dimension mismatch");
  for (const auto& bl : b)
    if (bl.dim() != n) throw DimensionError("hodge_basis bivector dimension mismatch");

  if (gram_deviation(v_basis) > kInputOrthonormalityTolerance)
    throw NotOrthonormalError("hodge_basis: basis of V is not orthonormal");
  if (bivector_gram_deviation(b) > kInputOrthonormalityTolerance)
    throw NotOrthonormalError("hodge_basis: bivectors are not orthonormal");

  auto frame = gram_schmidt(v_basis);
  if (frame.size() != 3) throw NotOrthonormalError("hodge_basis: basis of V is degenerate");
  std::array<ComplexVector, 3> v{frame[0].vec(), frame[1].vec(), frame[2].vec()};

  auto expand = [&](const std::array<Bivector, 3>& w) {
    Matrix3 u{};
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m) u[l][m] = inner(w[m], b[l]);
    return u;
  };

  auto w = dual_bivector_basis(v[0], v[1], v[2]);
  Matrix3 u = expand(w);
  for (int l = 0; l < 3; ++l) {
    Bivector rest = b[l];
    for (int m = 0; m < 3; ++m) rest -= u[l][m] * w[m];
    if (norm(rest) > kInputOrthonormalityTolerance)
      throw std::invalid_argument("hodge_basis: bivector B" + std::to_string(l + 1) + " is not in Λ²V");
  }

  const Complex d = det3(u);
  v[0] *= std::sqrt(d / std::abs(d));
  w = dual_bivector_basis(v[0], v[1], v[2]);
  u = expand(w);

  std::array<ComplexVector, 3> f{ComplexVector(n), ComplexVector(n), ComplexVector(n)};
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) f[l] += std::conj(u[l][m]) * v[m];
  return {PureState::normalize(f[0]), PureState::normalize(f[1]), PureState::normalize(f[2])};
}

}  // namespace pqdist
