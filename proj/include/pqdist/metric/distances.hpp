#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pqdist/exterior/complex_vector.hpp"
#include "pqdist/metric/distance_matrix.hpp"

namespace pqdist {

/// Σ_{i<j} w_ij |x_i y_j − x_j y_i|², i.e. ‖W^{1/2}(x∧y)‖² for a pair-diagonal W.
inline double weighted_minor_sum(const PairWeights& w, const ComplexVector& x, const ComplexVector& y) {
  require_same_dimension(x, y);
  const std::size_t n = x.size();
  if (w.dim() != n) throw DimensionError("weights/state dimension mismatch");
  const auto& vals = w.values();
  double s = 0.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++idx) s += vals[idx] * std::norm(x[i] * y[j] - x[j] * y[i]);
  return s;
}

/// Hilbert–Schmidt distance √(1 − |x†y|²), overlap clamped to [0, 1].
inline double d_hs(const PureState& x, const PureState& y) {
  const double overlap = std::clamp(std::norm(inner(x, y)), 0.0, 1.0);
  return std::sqrt(1.0 - overlap);
}

/// (Σ_{i<j} w_ij^p |x_i y_j − x_j y_i|²)^{1/p} for arbitrary nonnegative pair
/// weights w. The weights need not form a metric; this is the evaluator behind
/// DpMetric and the counterexample/minimizer tooling.
class PairWeightedDistance {
 public:
  PairWeightedDistance(PairWeights weights, double p) : weights_(std::move(weights)), p_(p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be finite and > 0");
    powered_ = weights_.pow(p_);
  }

  double p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return weights_.dim(); }
  const PairWeights& weights() const noexcept { return weights_; }
  const PairWeights& powered() const noexcept { return powered_; }

  /// ‖E^{p/2}(x∧y)‖², the quantity whose 1/p-th power is the distance.
  double power_sum(const ComplexVector& x, const ComplexVector& y) const {
    return weighted_minor_sum(powered_, x, y);
  }

  double operator()(const ComplexVector& x, const ComplexVector& y) const {
    return std::pow(power_sum(x, y), 1.0 / p_);
  }
  double operator()(const PureState& x, const PureState& y) const { return (*this)(x.vec(), y.vec()); }

 private:
  PairWeights weights_;
  double p_;
  PairWeights powered_;
};

/// d_p induced by a validated distance matrix. Evaluates for any p > 0; the
/// triangle inequality is only guaranteed for p >= 2.
class DpMetric {
 public:
  DpMetric(DistanceMatrix e, double p) : e_(std::move(e)), eval_(e_.pair_weights(), p) {}

  const DistanceMatrix& matrix() const noexcept { return e_; }
  double p() const noexcept { return eval_.p(); }
  bool metric_guaranteed() const noexcept { return eval_.p() >= 2.0; }
  const PairWeightedDistance& evaluator() const noexcept { return eval_; }

  double operator()(const PureState& x, const PureState& y) const {
    if (x.size() != e_.size() || y.size() != e_.size()) throw DimensionError("state/matrix dimension mismatch");
    return eval_(x, y);
  }

 private:
  DistanceMatrix e_;
  PairWeightedDistance eval_;
};

inline double d_p(const DpMetric& m, const PureState& x, const PureState& y) { return m(x, y); }

inline double d2(const DistanceMatrix& e, const PureState& x, const PureState& y) {
  return DpMetric(e, 2.0)(x, y);
}

}  // namespace pqdist
