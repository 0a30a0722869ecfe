#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "pqdist/metric/distances.hpp"

namespace pqdist {

struct Counterexample {
  double p = 0.0;
  double e12 = 0.0;
  double theta = 0.0;
  PureState x, y, z;
  double d_xy = 0.0, d_xz = 0.0, d_yz = 0.0;
  double margin = 0.0;  // d_xy − d_xz − d_yz
};

/// Angle with cosθ = (1 + 2^{p/2−1}) / 2, the midpoint of the interval
/// cosθ ∈ (2^{p/2−1}, 1) on which the construction violates the triangle
/// inequality.
inline double counterexample_theta(double p) { return std::acos((1.0 + std::pow(2.0, p / 2.0 - 1.0)) / 2.0); }

/// Triple in C^2 on which d_p fails the triangle inequality for 0 < p < 2:
/// x = cosθ e1 + sinθ e2, y = cosθ e1 − sinθ e2, z = e1.
inline Counterexample counterexample_p_lt_2(double p, double e12, std::optional<double> theta = std::nullopt) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be > 0");
  if (p >= 2.0)
    throw std::domain_error("no counterexample for p >= 2: d_p is a metric whenever E is a distance matrix");
  if (!(e12 > 0.0) || !std::isfinite(e12)) throw std::invalid_argument("E12 must be a positive finite number");
  const double t = theta.value_or(counterexample_theta(p));
  if (!(t > 0.0 && t < std::numbers::pi / 2)) throw std::invalid_argument("theta must lie in (0, pi/2)");

  const double c = std::cos(t), s = std::sin(t);
  Counterexample ce{p, e12, t, PureState::normalize({c, s}), PureState::normalize({c, -s}), PureState::basis(2, 0)};
  PairWeights w(2);
  w.at(0, 1) = e12;
  const PairWeightedDistance d(w, p);
  ce.d_xy = d(ce.x, ce.y);
  ce.d_xz = d(ce.x, ce.z);
  ce.d_yz = d(ce.y, ce.z);
  ce.margin = ce.d_xy - ce.d_xz - ce.d_yz;
  return ce;
}

}  // namespace pqdist
