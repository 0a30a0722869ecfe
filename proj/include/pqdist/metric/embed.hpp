#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pqdist/metric/distances.hpp"

namespace pqdist {

struct Embedding {
  std::vector<PureState> states;  // e_1 … e_n
  DpMetric metric;
  /// max_{i<j} |d_p(e_i, e_j) − ρ_ij| / ρ_ij
  double max_relative_error = 0.0;
};

/// Sends point i of the finite metric space ρ to the basis state e_i. For
/// p >= 2 this is an isometry onto its image under d_p.
inline Embedding embed(const DistanceMatrix& rho, double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw std::invalid_argument("embedding needs p >= 2; for p < 2 d_p is not a metric");
  const std::size_t n = rho.size();
  std::vector<PureState> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) states.push_back(PureState::basis(n, i));
  DpMetric metric(rho, p);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(metric(states[i], states[j]) - rho(i, j)) / rho(i, j));
  return {std::move(states), std::move(metric), worst};
}

}  // namespace pqdist
