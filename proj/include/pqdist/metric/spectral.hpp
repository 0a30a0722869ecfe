#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

#include "pqdist/exterior/cross.hpp"
#include "pqdist/exterior/gram_schmidt.hpp"
#include "pqdist/exterior/hodge.hpp"
#include "pqdist/exterior/multivector.hpp"
#include "pqdist/metric/distance_matrix.hpp"

namespace pqdist {

/// 2·max λ_i ≤ λ1 + λ2 + λ3 for a positive diagonal 3×3 E, i.e. the λ's
/// satisfy the triangle inequality among themselves.
inline bool spectral_condition_n3(double lambda1, double lambda2, double lambda3) {
  for (double l : {lambda1, lambda2, lambda3})
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("spectral_condition_n3: eigenvalues must be positive");
  return 2.0 * std::max({lambda1, lambda2, lambda3}) <= lambda1 + lambda2 + lambda3;
}

struct HermitianEigen3 {
  std::array<double, 3> values{};
  Matrix3 vectors{};  // eigenvectors stored as columns
  int sweeps = 0;
};

/// Cyclic Jacobi sweeps on a 3×3 Hermitian matrix until the off-diagonal
/// Frobenius norm drops below `tolerance` times the full Frobenius norm.
inline HermitianEigen3 jacobi_eigen_hermitian3(Matrix3 h, double tolerance = 1e-14, int max_sweeps = 64) {
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const Complex avg = 0.5 * (h[i][j] + std::conj(h[j][i]));
      h[i][j] = avg;
      h[j][i] = std::conj(avg);
    }

  HermitianEigen3 out;
  out.vectors = identity3();
  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) s += std::norm(h[i][j]);
    return std::sqrt(s);
  };
  double full = 0.0;
  for (const auto& row : h)
    for (const auto& e : row) full += std::norm(e);
  full = std::sqrt(full);

  constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  while (out.sweeps < max_sweeps && off_norm() > tolerance * full) {
    ++out.sweeps;
    for (const auto& pq : pairs) {
      const int p = pq[0], q = pq[1];
      const double g = std::abs(h[p][q]);
      if (g == 0.0) continue;
      const Complex phase = std::conj(h[p][q]) / g;  // e^{-i arg h_pq}
      const double tau = (h[q][q].real() - h[p][p].real()) / (2.0 * g);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      Matrix3 rot = identity3();
      rot[p][p] = c;
      rot[p][q] = s;
      rot[q][p] = -s * phase;
      rot[q][q] = c * phase;
      h = multiply(adjoint(rot), multiply(h, rot));
      h[p][q] = h[q][p] = 0.0;
      out.vectors = multiply(out.vectors, rot);
    }
  }
  for (int i = 0; i < 3; ++i) out.values[i] = h[i][i].real();
  return out;
}

/// Square roots μ_i of the eigenvalues of the restricted form h.
struct EigenTriple {
  std::array<double, 3> mu{};
};

struct RestrictedForm {
  EigenTriple eigen;
  std::array<Bivector, 3> bivectors;  // orthonormal eigenbasis B1, B2, B3 of Λ²V
  Matrix3 form{};                     // h in the basis {v2∧v3, v3∧v1, v1∧v2}
  std::array<PureState, 3> frame;     // the orthonormal frame of V actually used
};

/// Restricts (B, C) ↦ ⟨B | E^p C⟩ to Λ²V, V = span(v_basis), and diagonalizes it.
/// E acts diagonally on e_i∧e_j with weight E_ij, so E^p is applied
/// coefficientwise via the powered pair weights.
inline RestrictedForm restricted_form_eigen(const PairWeights& e, double p, std::span<const PureState> v_basis) {
  if (v_basis.size() != 3) throw DimensionError("restricted_form_eigen needs three basis vectors");
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be > 0");
  for (const auto& v : v_basis)
    if (v.size() != e.dim()) throw DimensionError("basis/matrix dimension mismatch");
  if (gram_deviation(v_basis) > kInputOrthonormalityTolerance)
    throw NotOrthonormalError("restricted_form_eigen: basis is not orthonormal");
  auto frame = gram_schmidt(v_basis);
  if (frame.size() != 3) throw NotOrthonormalError("restricted_form_eigen: basis is degenerate");

  const PairWeights powered = e.pow(p);
  const auto w = dual_bivector_basis(frame[0].vec(), frame[1].vec(), frame[2].vec());
  Matrix3 form{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Complex s = 0.0;
      for (std::size_t idx = 0; idx < w[a].size(); ++idx)
        s += std::conj(w[a].coeff(idx)) * powered.values()[idx] * w[b].coeff(idx);
      form[a][b] = s;
    }

  const auto eig = jacobi_eigen_hermitian3(form);
  RestrictedForm out{{}, {Bivector(e.dim()), Bivector(e.dim()), Bivector(e.dim())}, form,
                     {frame[0], frame[1], frame[2]}};
  for (int i = 0; i < 3; ++i) {
    out.eigen.mu[i] = std::sqrt(std::max(eig.values[i], 0.0));
    for (int j = 0; j < 3; ++j) out.bivectors[i] += eig.vectors[j][i] * w[j];
  }
  return out;
}

inline RestrictedForm restricted_form_eigen(const DistanceMatrix& e, double p, std::span<const PureState> v_basis) {
  return restricted_form_eigen(e.pair_weights(), p, v_basis);
}

}  // namespace pqdist
