#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "pqdist/lab/rng.hpp"
#include "pqdist/lab/sampling.hpp"
#include "pqdist/metric/distances.hpp"

namespace pqdist {

struct MinimizerOptions {
  int restarts = 64;
  int iterations = 2000;
  std::uint64_t seed = 0;
  double convergence = 1e-10;  // stop once an accepted step improves less than this
  double initial_step = 0.1;
};

struct MinimizerResult {
  double min_defect = std::numeric_limits<double>::infinity();
  Triple argmin{PureState::basis(3, 0), PureState::basis(3, 1), PureState::basis(3, 2)};
  int best_restart = -1;
};

namespace detail {

// D = S^{1/p} with S = Σ_{i<j} w_ij |a_i b_j − a_j b_i|². Fills the real
// gradients of D w.r.t. a and b, packed as complex numbers (∂/∂Re + i ∂/∂Im).
inline double distance_and_gradient(const PairWeightedDistance& d, const ComplexVector& a, const ComplexVector& b,
                                    ComplexVector& ga, ComplexVector& gb) {
  const std::size_t n = a.size();
  const auto& w = d.powered();
  const double s = d.power_sum(a, b);
  const double value = std::pow(s, 1.0 / d.p());
  if (s < 1e-300) return value;  // D is not differentiable where a ∥ b
  const double factor = 2.0 * value / (d.p() * s);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double wkj = w(k, j);
      if (wkj == 0.0) continue;
      const Complex m = a[k] * b[j] - a[j] * b[k];
      ga[k] += factor * wkj * m * std::conj(b[j]);
      gb[k] -= factor * wkj * m * std::conj(a[j]);
    }
  return value;
}

// d(x,z) + d(y,z) − d(x,y) and its gradient.
inline double defect_and_gradient(const PairWeightedDistance& d, const Triple& t, std::array<ComplexVector, 3>& g) {
  const std::size_t n = t[0].size();
  for (auto& v : g) v = ComplexVector(n);
  ComplexVector neg_x(n), neg_y(n);
  const double dxz = distance_and_gradient(d, t[0].vec(), t[2].vec(), g[0], g[2]);
  const double dyz = distance_and_gradient(d, t[1].vec(), t[2].vec(), g[1], g[2]);
  const double dxy = distance_and_gradient(d, t[0].vec(), t[1].vec(), neg_x, neg_y);
  g[0] -= neg_x;
  g[1] -= neg_y;
  return dxz + dyz - dxy;
}

inline double defect_value(const PairWeightedDistance& d, const Triple& t) {
  return d(t[0], t[2]) + d(t[1], t[2]) - d(t[0], t[1]);
}

}  // namespace detail

/// Weights of the diagonal E = diag(λ1, λ2, λ3) on Λ²C^3 in the basis
/// {e2∧e3, e3∧e1, e1∧e2}: pair (1,2) gets λ1, (0,2) gets λ2, (0,1) gets λ3.
inline PairWeights diagonal_pair_weights_n3(const std::array<double, 3>& lambda) {
  PairWeights w(3);
  w.at(1, 2) = lambda[0];
  w.at(0, 2) = lambda[1];
  w.at(0, 1) = lambda[2];
  return w;
}

/// Multi-start projected gradient descent of d_p(x,z) + d_p(y,z) − d_p(x,y)
/// over triples of unit vectors in C^3. Each iterate is renormalized after a
/// tangent step; the step halves on non-decrease and grows by 1.5 on success.
inline MinimizerResult minimize_defect_n3(const std::array<double, 3>& lambda, double p,
                                          const MinimizerOptions& opt = {}) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw std::invalid_argument("minimize_defect_n3 needs p >= 2; use counterexample_p_lt_2 for p < 2");
  for (double l : lambda)
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("lambda entries must be positive");
  if (opt.restarts < 1 || opt.iterations < 1) throw std::invalid_argument("restarts and iterations must be >= 1");

  const PairWeightedDistance d(diagonal_pair_weights_n3(lambda), p);
  MinimizerResult best;
  std::array<ComplexVector, 3> grad;

  for (int r = 0; r < opt.restarts; ++r) {
    StreamRng rng(opt.seed, static_cast<std::uint64_t>(r));
    Triple t{sample_pure_state(3, rng), sample_pure_state(3, rng), sample_pure_state(3, rng)};
    double f = detail::defect_and_gradient(d, t, grad);
    double step = opt.initial_step;
    for (int it = 0; it < opt.iterations && step >= 1e-14; ++it) {
      Triple cand = t;
      for (int v = 0; v < 3; ++v) {
        const ComplexVector& u = t[v].vec();
        // drop the radial component, then step and renormalize
        ComplexVector g = grad[v];
        g -= inner(u, g).real() * u;
        ComplexVector moved = u - step * g;
        cand[v] = PureState::normalize(std::move(moved));
      }
      const double fc = detail::defect_value(d, cand);
      if (fc < f) {
        const double gain = f - fc;
        t = std::move(cand);
        f = detail::defect_and_gradient(d, t, grad);
        step *= 1.5;
        if (gain < opt.convergence) break;
      } else {
        step *= 0.5;
      }
    }
    if (f < best.min_defect) {
      best.min_defect = f;
      best.argmin = t;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace pqdist
