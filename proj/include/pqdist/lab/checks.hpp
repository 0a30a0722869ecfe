#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqdist/exterior/gram_schmidt.hpp"
#include "pqdist/exterior/hodge.hpp"
#include "pqdist/exterior/multivector.hpp"
#include "pqdist/metric/distances.hpp"
#include "pqdist/metric/spectral.hpp"

namespace pqdist {

using Triple = std::array<PureState, 3>;

/// Rejects triples whose Gram matrix is more than 1e-8 from the identity and
/// returns the triple after one re-orthonormalization pass.
inline Triple enforce_orthonormal(const PureState& x, const PureState& y, const PureState& z) {
  if (x.size() != y.size() || x.size() != z.size()) throw DimensionError("triple members differ in dimension");
  const std::array<PureState, 3> in{x, y, z};
  const double dev = gram_deviation(std::span<const PureState>(in));
  if (dev > kInputOrthonormalityTolerance)
    throw NotOrthonormalError("triple is not orthonormal (Gram deviation " + std::to_string(dev) + ")");
  auto q = gram_schmidt(std::span<const PureState>(in));
  if (q.size() != 3) throw NotOrthonormalError("triple is degenerate");
  return {q[0], q[1], q[2]};
}

/// (s_xy, s_xz, s_yz) with s_uv = Σ_{i<j} a_ij |u_i v_j − u_j v_i|².
inline std::array<double, 3> pair_minor_sums(const PairWeights& a, const Triple& t) {
  return {weighted_minor_sum(a, t[0].vec(), t[1].vec()), weighted_minor_sum(a, t[0].vec(), t[2].vec()),
          weighted_minor_sum(a, t[1].vec(), t[2].vec())};
}

/// One index triple i<j<k: its Cauchy–Binet weight |T_ijk|² and the pair
/// weights (a_ij, a_ik, a_jk).
struct TripleTerm {
  double prob;
  std::array<double, 3> weights;
};

inline std::vector<TripleTerm> triple_terms(const PairWeights& a, const Triple& t) {
  const std::size_t n = a.dim();
  if (t[0].size() != n) throw DimensionError("weights/state dimension mismatch");
  const Trivector w = wedge(t[0].vec(), t[1].vec(), t[2].vec());
  std::vector<TripleTerm> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        out.push_back({std::norm(w.at(i, j, k)), {a(i, j), a(i, k), a(j, k)}});
  return out;
}

enum class MiddlePair { xy, xz, yz };

struct MinorialDefects {
  double lower_bound = 0.0;  // Σ min(a_t) |T_t|²
  double middle = 0.0;
  double upper_bound = 0.0;  // Σ max(a_t) |T_t|²
  double lower = 0.0;        // middle − lower_bound
  double upper = 0.0;        // upper_bound − middle
};

inline MinorialDefects check_minorial(const PairWeights& a, const PureState& x, const PureState& y,
                                      const PureState& z, MiddlePair middle = MiddlePair::xy) {
  const Triple t = enforce_orthonormal(x, y, z);
  if (a.dim() != x.size()) throw DimensionError("weights/state dimension mismatch");
  MinorialDefects d;
  for (const auto& term : triple_terms(a, t)) {
    d.lower_bound += std::ranges::min(term.weights) * term.prob;
    d.upper_bound += std::ranges::max(term.weights) * term.prob;
  }
  d.middle = pair_minor_sums(a, t)[static_cast<int>(middle)];
  d.lower = d.middle - d.lower_bound;
  d.upper = d.upper_bound - d.middle;
  return d;
}

/// Completely symmetric functions on R^3_{>=0} tested by check_convexity.
/// max and sum are convex; min, sum and powersum are concave. powersum is
/// (u1^{1/p} + u2^{1/p} + u3^{1/p})^p.
struct SymmetricFunction {
  enum class Kind { max, min, sum, powersum };
  Kind kind = Kind::max;
  double p = 2.0;

  static SymmetricFunction parse(std::string_view name, double p = 2.0) {
    if (name == "max") return {Kind::max, p};
    if (name == "min") return {Kind::min, p};
    if (name == "sum") return {Kind::sum, p};
    if (name == "powersum") return {Kind::powersum, p};
    throw std::invalid_argument("unknown function '" + std::string(name) + "' (max, min, sum, powersum)");
  }

  std::string_view name() const {
    switch (kind) {
      case Kind::max: return "max";
      case Kind::min: return "min";
      case Kind::sum: return "sum";
      case Kind::powersum: return "powersum";
    }
    return "?";
  }

  bool convex() const { return kind == Kind::max || kind == Kind::sum; }

  double operator()(const std::array<double, 3>& u) const {
    switch (kind) {
      case Kind::max: return std::ranges::max(u);
      case Kind::min: return std::ranges::min(u);
      case Kind::sum: return u[0] + u[1] + u[2];
      case Kind::powersum: {
        double s = 0.0;
        for (double v : u) s += std::pow(std::max(v, 0.0), 1.0 / p);
        return std::pow(s, p);
      }
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

struct ConvexityResult {
  double lhs = 0.0;     // f(s_xy, s_xz, s_yz)
  double rhs = 0.0;     // Σ_t |T_t|² f(a_ij, a_ik, a_jk)
  double defect = 0.0;  // rhs − lhs for convex f, lhs − rhs for concave f
};

inline ConvexityResult check_convexity(const SymmetricFunction& f, const PairWeights& a, const PureState& x,
                                       const PureState& y, const PureState& z) {
  if (f.kind == SymmetricFunction::Kind::powersum && !(f.p >= 2.0))
    throw std::invalid_argument("powersum needs p >= 2");
  const Triple t = enforce_orthonormal(x, y, z);
  if (a.dim() != x.size()) throw DimensionError("weights/state dimension mismatch");
  ConvexityResult r;
  r.lhs = f(pair_minor_sums(a, t));
  for (const auto& term : triple_terms(a, t)) r.rhs += term.prob * f(term.weights);
  r.defect = f.convex() ? r.rhs - r.lhs : r.lhs - r.rhs;
  return r;
}

struct IdentityResidual {
  double lhs = 0.0;       // s_xy + s_xz + s_yz
  double rhs = 0.0;       // Σ_t (a_ij + a_ik + a_jk) |T_t|²
  double residual = 0.0;  // |lhs − rhs| / max(1, |lhs|)
};

inline IdentityResidual check_generator_identity_w1(const PairWeights& a, const PureState& x, const PureState& y,
                                                    const PureState& z) {
  const Triple t = enforce_orthonormal(x, y, z);
  if (a.dim() != x.size()) throw DimensionError("weights/state dimension mismatch");
  IdentityResidual r;
  for (double s : pair_minor_sums(a, t)) r.lhs += s;
  for (const auto& term : triple_terms(a, t))
    r.rhs += (term.weights[0] + term.weights[1] + term.weights[2]) * term.prob;
  r.residual = std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.lhs));
  return r;
}

/// Indicator χ of a set S of unordered index pairs.
class PairMask {
 public:
  explicit PairMask(std::size_t n) : n_(n), chosen_(choose2(n), 0) {}

  static PairMask from_pairs(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    PairMask m(n);
    for (auto [i, j] : pairs) {
      if (i >= n || j >= n || i == j)
        throw std::out_of_range("pair (" + std::to_string(i) + "," + std::to_string(j) + ") invalid for n = " +
                                std::to_string(n));
      m.insert(i, j);
    }
    return m;
  }
  static PairMask all(std::size_t n) {
    PairMask m(n);
    std::fill(m.chosen_.begin(), m.chosen_.end(), 1);
    return m;
  }

  void insert(std::size_t i, std::size_t j) { chosen_[i < j ? pair_index(n_, i, j) : pair_index(n_, j, i)] = 1; }
  std::size_t dim() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    return chosen_[i < j ? pair_index(n_, i, j) : pair_index(n_, j, i)] != 0;
  }
  bool contains_index(std::size_t idx) const { return chosen_[idx] != 0; }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  std::size_t n_;
  std::vector<char> chosen_;
};

struct ProjectorDefects {
  double pb_v = 0.0;       // ‖PB‖² ‖v‖²
  double pb_wedge_v = 0.0; // ‖(PB)∧v‖²
  double q_bv = 0.0;       // ‖Q(B∧v)‖²
  double strong = 0.0;        // pb_v − q_bv
  double intermediate = 0.0;  // pb_wedge_v − q_bv
  double defect() const { return std::min(strong, intermediate); }
};

/// P keeps the pair coordinates in S, Q keeps e_i∧e_j∧e_k with all three
/// pairs in S.
inline ProjectorDefects check_projector_inequality(const PairMask& s, const Bivector& b, const ComplexVector& v) {
  const std::size_t n = b.dim();
  if (s.dim() != n || v.size() != n) throw DimensionError("projector inputs differ in dimension");
  if (n < 3) throw DimensionError("projector inequality needs n >= 3");
  Bivector pb(n);
  for (std::size_t idx = 0; idx < b.size(); ++idx)
    if (s.contains_index(idx)) pb.coeff(idx) = b.coeff(idx);

  ProjectorDefects d;
  d.pb_v = norm_squared(pb) * norm_squared(v);
  d.pb_wedge_v = norm_squared(wedge(pb, v));
  const Trivector bv = wedge(b, v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (s(i, j) && s(i, k) && s(j, k)) d.q_bv += std::norm(bv.at(i, j, k));
  d.strong = d.pb_v - d.q_bv;
  d.intermediate = d.pb_wedge_v - d.q_bv;
  return d;
}

/// Worst cyclic triangle defect of three pairwise distances, Σd − 2 max d.
inline double triangle_defect(double d_xy, double d_xz, double d_yz) {
  return d_xy + d_xz + d_yz - 2.0 * std::max({d_xy, d_xz, d_yz});
}

inline constexpr double kReductionConsistencyTolerance = 1e-10;
inline constexpr double kMuConsistencyTolerance = 1e-9;

struct ReductionReport {
  std::array<PureState, 3> frame;    // Hodge frame f1, f2, f3 spanning V
  std::array<double, 3> mu{};        // square roots of the restricted-form eigenvalues
  std::array<double, 3> frame_distances{};  // d_p(f2,f3), d_p(f3,f1), d_p(f1,f2) = μ_i^{2/p}
  double hodge_residual = 0.0;
  double frame_gram_deviation = 0.0;
  double mu_consistency = 0.0;       // max_i |‖E^{p/2} f_j∧f_k‖ − μ_i| / max(1, μ_i)
  double spectral_slack = 0.0;       // Σ μ_i^{2/p} − 2 max μ_i^{2/p}
  double triangle_defect = 0.0;      // of the input triple
  double scale = 0.0;                // largest distance involved
  bool consistent = false;           // Hodge/μ residuals within tolerance
  bool reduction_holds = false;      // spectral condition and input triangle both hold

  static constexpr double kVerdictTolerance = 1e-9;
};

/// Reduces the triangle inequality for (x, y, z) to an orthonormal frame of
/// V ⊇ span{x, y, z}: diagonalizes the restricted form, realizes its
/// eigen-bivectors as f_j∧f_k and checks the spectral condition on μ^{2/p}.
inline ReductionReport check_orthonormal_reduction(const PairWeights& e, double p, const PureState& x,
                                                   const PureState& y, const PureState& z) {
  const std::size_t n = e.dim();
  if (n < 3) throw DimensionError("orthonormal reduction needs n >= 3");
  if (x.size() != n || y.size() != n || z.size() != n) throw DimensionError("state/matrix dimension mismatch");
  const PairWeightedDistance dist(e, p);

  const std::array<PureState, 3> in{x, y, z};
  const auto frame = gram_schmidt(std::span<const PureState>(in), 3);
  const RestrictedForm rf = restricted_form_eigen(e, p, std::span<const PureState>(frame.data(), 3));
  const auto f = hodge_basis(rf.bivectors, rf.frame);

  ReductionReport r{f};
  r.mu = rf.eigen.mu;
  r.hodge_residual = hodge_residual(f, rf.bivectors);
  r.frame_gram_deviation = gram_deviation(std::span<const PureState>(f));
  for (int i = 0; i < 3; ++i) {
    const auto& a = f[(i + 1) % 3];
    const auto& b = f[(i + 2) % 3];
    const double measured = std::sqrt(dist.power_sum(a.vec(), b.vec()));
    r.mu_consistency = std::max(r.mu_consistency, std::abs(measured - r.mu[i]) / std::max(1.0, r.mu[i]));
    r.frame_distances[i] = std::pow(r.mu[i], 2.0 / p);
  }
  r.spectral_slack = triangle_defect(r.frame_distances[0], r.frame_distances[1], r.frame_distances[2]);

  const double dxy = dist(x, y), dxz = dist(x, z), dyz = dist(y, z);
  r.triangle_defect = triangle_defect(dxy, dxz, dyz);
  r.scale = std::max({dxy, dxz, dyz, r.frame_distances[0], r.frame_distances[1], r.frame_distances[2]});

  r.consistent = r.hodge_residual <= kReductionConsistencyTolerance &&
                 r.frame_gram_deviation <= kReductionConsistencyTolerance &&
                 r.mu_consistency <= kMuConsistencyTolerance;
  const double slack = ReductionReport::kVerdictTolerance * std::max(1.0, r.scale);
  r.reduction_holds = r.spectral_slack >= -slack && r.triangle_defect >= -slack;
  return r;
}

inline ReductionReport check_orthonormal_reduction(const DistanceMatrix& e, double p, const PureState& x,
                                                   const PureState& y, const PureState& z) {
  return check_orthonormal_reduction(e.pair_weights(), p, x, y, z);
}

}  // namespace pqdist
