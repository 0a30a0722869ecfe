#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "pqdist/exterior/complex_vector.hpp"

namespace pqdist {

/// Residual norm (relative to the input norm) below which a vector is
/// treated as dependent on its predecessors and dropped.
inline constexpr double kDeflationThreshold = 1e-10;

namespace detail {

// Modified Gram–Schmidt step with one re-orthogonalization pass. Returns the
// normalized residual, or an empty vector if v is numerically dependent.
inline ComplexVector orthogonalize_against(ComplexVector v, std::span<const ComplexVector> basis) {
  const double original = norm(v);
  if (!(original > 0.0)) return {};
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) v -= inner(q, v) * q;
  const double r = norm(v);
  if (!(r >= kDeflationThreshold * original)) return {};
  v *= 1.0 / r;
  return v;
}

}  // namespace detail

/// Orthonormal basis of span(vectors). Dependent inputs are dropped. If
/// `complete_to` exceeds the rank, canonical basis vectors are orthogonalized
/// in index order and appended until the requested size is reached.
inline std::vector<PureState> gram_schmidt(std::span<const ComplexVector> vectors, std::size_t complete_to = 0) {
  if (vectors.empty()) throw std::invalid_argument("gram_schmidt needs at least one vector");
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionError("gram_schmidt inputs differ in dimension");
  }
  if (complete_to > n) {
    throw DimensionError("cannot complete to " + std::to_string(complete_to) + " vectors in C^" +
                         std::to_string(n));
  }

  std::vector<ComplexVector> basis;
  for (const auto& v : vectors) {
    auto q = detail::orthogonalize_against(v, basis);
    if (q.size() != 0) basis.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < n && basis.size() < complete_to; ++i) {
    auto q = detail::orthogonalize_against(ComplexVector::basis(n, i), basis);
    if (q.size() != 0) basis.push_back(std::move(q));
  }

  std::vector<PureState> out;
  out.reserve(basis.size());
  for (auto& q : basis) out.push_back(PureState::normalize(std::move(q)));
  return out;
}

inline std::vector<PureState> gram_schmidt(std::initializer_list<ComplexVector> vectors, std::size_t complete_to = 0) {
  return gram_schmidt(std::span<const ComplexVector>(vectors.begin(), vectors.size()), complete_to);
}

inline std::vector<PureState> gram_schmidt(std::span<const PureState> states, std::size_t complete_to = 0) {
  std::vector<ComplexVector> raw;
  raw.reserve(states.size());
  for (const auto& s : states) raw.push_back(s.vec());
  return gram_schmidt(std::span<const ComplexVector>(raw), complete_to);
}

}  // namespace pqdist
