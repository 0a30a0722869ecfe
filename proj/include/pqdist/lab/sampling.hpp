#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pqdist/exterior/gram_schmidt.hpp"
#include "pqdist/exterior/multivector.hpp"
#include "pqdist/metric/distance_matrix.hpp"

namespace pqdist {

/// How random distance matrices are generated.
///  - euclidean_points: pairwise distances of n uniform points in [0,1]^3
///  - repaired_random:  uniform (0,1] entries closed under shortest paths
///  - zero_one:         entries 1 + b_ij with b_ij ∈ {0,1}, i.e. {1,2}-valued
///  - user_supplied:    a fixed matrix from the caller
enum class MatrixMode { euclidean_points, repaired_random, zero_one, user_supplied };

inline std::string_view to_string(MatrixMode m) {
  switch (m) {
    case MatrixMode::euclidean_points: return "euclidean-points";
    case MatrixMode::repaired_random: return "repaired-random";
    case MatrixMode::zero_one: return "zero-one";
    case MatrixMode::user_supplied: return "user-supplied";
  }
  return "?";
}

inline MatrixMode parse_matrix_mode(std::string_view s) {
  for (auto m : {MatrixMode::euclidean_points, MatrixMode::repaired_random, MatrixMode::zero_one,
                 MatrixMode::user_supplied})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown matrix mode '" + std::string(s) + "'");
}

template <class Rng>
ComplexVector sample_gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = Complex(re, im);
  }
  return v;
}

/// Unitarily invariant (Haar) random pure state: normalized complex Gaussian.
template <class Rng>
PureState sample_pure_state(std::size_t n, Rng& rng) {
  if (n < 1) throw DimensionError("sample_pure_state needs n >= 1");
  for (;;) {
    auto v = sample_gaussian_vector(n, rng);
    if (norm(v) > 1e-150) return PureState::normalize(std::move(v));
  }
}

/// Three Gaussian vectors orthonormalized; the first three columns of a Haar
/// random unitary.
template <class Rng>
std::array<PureState, 3> sample_orthonormal_triple(std::size_t n, Rng& rng) {
  if (n < 3) throw DimensionError("orthonormal triples need n >= 3");
  for (;;) {
    std::array<ComplexVector, 3> raw{sample_gaussian_vector(n, rng), sample_gaussian_vector(n, rng),
                                     sample_gaussian_vector(n, rng)};
    auto q = gram_schmidt(std::span<const ComplexVector>(raw));
    if (q.size() == 3) return {q[0], q[1], q[2]};
  }
}

/// Gaussian element of Λ²C^n; almost surely not simple for n >= 4.
template <class Rng>
Bivector sample_bivector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  Bivector b(n);
  for (std::size_t a = 0; a < b.size(); ++a) {
    const double re = normal(rng);
    const double im = normal(rng);
    b.coeff(a) = Complex(re, im);
  }
  return b;
}

/// Symmetric weights with independent uniform [0,1) entries.
template <class Rng>
PairWeights sample_symmetric_weights(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PairWeights w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.at(i, j) = unif(rng);
  return w;
}

/// Indicator weights of a uniformly random subset of pairs.
template <class Rng>
PairWeights sample_zero_one_weights(std::size_t n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  PairWeights w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w.at(i, j) = coin(rng) ? 1.0 : 0.0;
  return w;
}

/// Shortest-path closure (Floyd–Warshall) of a symmetric matrix.
inline RawMatrix shortest_path_closure(RawMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
  // keep exact symmetry
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[j][i] = m[i][j] = std::min(m[i][j], m[j][i]);
  return m;
}

template <class Rng>
DistanceMatrix sample_distance_matrix(std::size_t n, MatrixMode mode, Rng& rng) {
  if (n < 2) throw DimensionError("distance matrices need n >= 2");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RawMatrix m(n, std::vector<double>(n, 0.0));
  switch (mode) {
    case MatrixMode::euclidean_points: {
      for (;;) {
        std::vector<std::array<double, 3>> pts(n);
        for (auto& pt : pts)
          for (auto& c : pt) c = unif(rng);
        bool distinct = true;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1], dz = pts[i][2] - pts[j][2];
            const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
            distinct = distinct && d > 1e-9;
            m[i][j] = m[j][i] = d;
          }
        if (distinct) break;
      }
      break;
    }
    case MatrixMode::repaired_random:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = 1.0 - unif(rng);
      m = shortest_path_closure(std::move(m));
      break;
    case MatrixMode::zero_one: {
      std::bernoulli_distribution coin(0.5);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = coin(rng) ? 2.0 : 1.0;
      break;
    }
    case MatrixMode::user_supplied:
      throw std::invalid_argument("user-supplied matrices cannot be sampled");
  }
  return DistanceMatrix::from_rows(m);
}

}  // namespace pqdist
