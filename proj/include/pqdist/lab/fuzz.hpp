#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "pqdist/io/json_codec.hpp"
#include "pqdist/lab/checks.hpp"
#include "pqdist/lab/rng.hpp"
#include "pqdist/lab/sampling.hpp"
#include "pqdist/version.hpp"

namespace pqdist {

enum class Property { triangle, minorial, convexity, projector, reduction, w1 };

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::triangle: return "triangle";
    case Property::minorial: return "minorial";
    case Property::convexity: return "convexity";
    case Property::projector: return "projector";
    case Property::reduction: return "reduction";
    case Property::w1: return "w1";
  }
  return "?";
}

inline Property parse_property(std::string_view s) {
  for (auto p : {Property::triangle, Property::minorial, Property::convexity, Property::projector,
                 Property::reduction, Property::w1})
    if (s == to_string(p)) return p;
  throw std::invalid_argument("unknown property '" + std::string(s) +
                              "' (triangle, minorial, convexity, projector, reduction, w1)");
}

struct TrialConfig {
  Property property = Property::triangle;
  std::size_t n = 4;
  double p = 2.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  MatrixMode matrix_mode = MatrixMode::euclidean_points;
  double tolerance = 1e-9;       // scale-relative
  std::string function = "max";  // convexity only
  std::optional<RawMatrix> matrix;  // user-supplied mode only

  bool operator==(const TrialConfig&) const = default;
};

/// Throws std::invalid_argument (or InputError for a malformed matrix) when
/// the configuration cannot be run.
inline void validate_config(const TrialConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.n < 2) throw std::invalid_argument("n must be >= 2");
  if (c.property != Property::triangle && c.n < 3)
    throw std::invalid_argument(std::string(to_string(c.property)) + " needs n >= 3");
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) throw std::invalid_argument("tolerance must be > 0");
  if (!(c.p > 0.0) || !std::isfinite(c.p)) throw std::invalid_argument("p must be finite and > 0");
  if (c.property == Property::convexity) {
    const auto f = SymmetricFunction::parse(c.function, c.p);
    if (f.kind == SymmetricFunction::Kind::powersum && c.p < 2.0) throw std::invalid_argument("powersum needs p >= 2");
  }
  if (c.matrix_mode == MatrixMode::user_supplied) {
    if (!c.matrix) throw std::invalid_argument("user-supplied mode needs a matrix");
    if (c.matrix->size() != c.n)
      throw std::invalid_argument("matrix is " + std::to_string(c.matrix->size()) + "x" +
                                  std::to_string(c.matrix->size()) + " but n = " + std::to_string(c.n));
    PairWeights::from_matrix(*c.matrix);
  } else if (c.matrix) {
    throw std::invalid_argument("a matrix was given but the mode is " + std::string(to_string(c.matrix_mode)));
  }
}

struct VerificationReport {
  std::string property;
  TrialConfig config;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_defect = 0.0;  // raw defect of the worst trial
  Json witness;               // inputs of the worst trial, replayable
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  std::string version;

  bool operator==(const VerificationReport&) const = default;
};

/// Defect of one trial together with the magnitude it is judged against.
/// `failed` marks trials whose internal consistency checks broke down.
struct TrialOutcome {
  double defect = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  bool failed = false;

  double relative() const {
    if (failed || std::isnan(defect)) return -std::numeric_limits<double>::infinity();
    return defect / std::max(1.0, scale);
  }
  bool violates(double tolerance) const { return failed || std::isnan(defect) || relative() < -tolerance; }
};

/// PQDIST_THREADS if set to a positive integer, else hardware concurrency.
inline unsigned fuzz_thread_count() {
  if (const char* env = std::getenv("PQDIST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct TrialSummary {
  std::uint64_t violations = 0;
  std::uint64_t worst_index = 0;
  TrialOutcome worst;
};

/// Runs trial(i) for i in [0, trials) on `threads` workers. The worst trial is
/// the one with the smallest relative defect, ties going to the lowest index,
/// so the summary does not depend on the thread count.
template <class Trial>
TrialSummary run_trials(std::uint64_t trials, double tolerance, unsigned threads, Trial trial) {
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(trials, 1)));
  std::vector<TrialSummary> partial(threads);
  std::vector<std::exception_ptr> errors(threads);

  auto work = [&](unsigned t) {
    try {
      const std::uint64_t begin = trials * t / threads, end = trials * (t + 1) / threads;
      TrialSummary s;
      bool first = true;
      for (std::uint64_t i = begin; i < end; ++i) {
        const TrialOutcome o = trial(i);
        if (o.violates(tolerance)) ++s.violations;
        if (first || o.relative() < s.worst.relative()) {
          s.worst = o;
          s.worst_index = i;
          first = false;
        }
      }
      partial[t] = s;
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  TrialSummary total = partial[0];
  for (unsigned t = 1; t < threads; ++t) {
    total.violations += partial[t].violations;
    // later chunks hold higher indices, so strict < keeps the lowest index on ties
    if (partial[t].worst.relative() < total.worst.relative()) {
      total.worst = partial[t].worst;
      total.worst_index = partial[t].worst_index;
    }
  }
  return total;
}

namespace detail {

inline Json states_to_json(const Triple& t) {
  return Json::array({state_to_json(t[0]), state_to_json(t[1]), state_to_json(t[2])});
}

inline Triple states_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("witness needs three states");
  return {state_from_json(j[0]), state_from_json(j[1]), state_from_json(j[2])};
}

inline PairWeights weights_from_json(const Json& j) { return PairWeights::from_matrix(matrix_from_json(j)); }

struct FuzzContext {
  const TrialConfig& cfg;
  std::optional<PairWeights> fixed;  // user-supplied weights
  std::optional<SymmetricFunction> function;
};

// Metric weights for triangle and reduction trials.
template <class Rng>
PairWeights metric_weights(const FuzzContext& ctx, Rng& rng) {
  if (ctx.fixed) return *ctx.fixed;
  return sample_distance_matrix(ctx.cfg.n, ctx.cfg.matrix_mode, rng).pair_weights();
}

// Arbitrary nonnegative weights for the weighted-minor checks.
template <class Rng>
PairWeights inequality_weights(const FuzzContext& ctx, Rng& rng) {
  if (ctx.fixed) return *ctx.fixed;
  if (ctx.cfg.matrix_mode == MatrixMode::zero_one) return sample_zero_one_weights(ctx.cfg.n, rng);
  return sample_symmetric_weights(ctx.cfg.n, rng);
}

struct TriangleEval {
  double d_xy, d_xz, d_yz;
  TrialOutcome outcome;
};

inline TriangleEval evaluate_triangle(const PairWeightedDistance& d, const Triple& t) {
  const double dxy = d(t[0], t[1]), dxz = d(t[0], t[2]), dyz = d(t[1], t[2]);
  return {dxy, dxz, dyz, {triangle_defect(dxy, dxz, dyz), std::max({dxy, dxz, dyz}), false}};
}

inline TrialOutcome triangle_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const std::size_t n = ctx.cfg.n;
  const PairWeights w = metric_weights(ctx, rng);
  const PairWeightedDistance d(w, ctx.cfg.p);

  std::vector<std::pair<const char*, Triple>> candidates;
  candidates.emplace_back("general", Triple{sample_pure_state(n, rng), sample_pure_state(n, rng),
                                            sample_pure_state(n, rng)});
  if (n >= 3) candidates.emplace_back("orthonormal", sample_orthonormal_triple(n, rng));
  // a fixed matrix need not be a metric; its canonical triples expose that directly
  if (ctx.fixed && index == 0 && n >= 3)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          candidates.emplace_back("canonical",
                                  Triple{PureState::basis(n, i), PureState::basis(n, j), PureState::basis(n, k)});

  std::size_t best = 0;
  std::optional<TriangleEval> best_eval;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto e = evaluate_triangle(d, candidates[c].second);
    if (!best_eval || e.outcome.relative() < best_eval->outcome.relative()) {
      best_eval = e;
      best = c;
    }
  }
  if (witness) {
    *witness = Json{{"variant", candidates[best].first},
                    {"p", ctx.cfg.p},
                    {"weights", matrix_to_json(w.to_matrix())},
                    {"states", states_to_json(candidates[best].second)},
                    {"distances", Json::array({best_eval->d_xy, best_eval->d_xz, best_eval->d_yz})}};
  }
  return best_eval->outcome;
}

inline TrialOutcome minorial_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const PairWeights a = inequality_weights(ctx, rng);
  const Triple t = sample_orthonormal_triple(ctx.cfg.n, rng);
  const auto m = check_minorial(a, t[0], t[1], t[2]);
  if (witness)
    *witness = Json{{"weights", matrix_to_json(a.to_matrix())},
                    {"states", states_to_json(t)},
                    {"lower", m.lower},
                    {"upper", m.upper}};
  return {std::min(m.lower, m.upper), m.upper_bound, false};
}

inline TrialOutcome convexity_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const PairWeights a = inequality_weights(ctx, rng);
  const Triple t = sample_orthonormal_triple(ctx.cfg.n, rng);
  const auto r = check_convexity(*ctx.function, a, t[0], t[1], t[2]);
  if (witness)
    *witness = Json{{"function", ctx.function->name()},
                    {"p", ctx.function->p},
                    {"weights", matrix_to_json(a.to_matrix())},
                    {"states", states_to_json(t)},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs}};
  return {r.defect, std::max(std::abs(r.lhs), std::abs(r.rhs)), false};
}

inline TrialOutcome w1_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const PairWeights a = inequality_weights(ctx, rng);
  const Triple t = sample_orthonormal_triple(ctx.cfg.n, rng);
  const auto r = check_generator_identity_w1(a, t[0], t[1], t[2]);
  if (witness)
    *witness = Json{{"weights", matrix_to_json(a.to_matrix())},
                    {"states", states_to_json(t)},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs}};
  // an identity: any deviation counts against it
  return {-std::abs(r.lhs - r.rhs), std::abs(r.lhs), false};
}

inline TrialOutcome projector_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const std::size_t n = ctx.cfg.n;
  std::bernoulli_distribution coin(0.5);
  PairMask s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) s.insert(i, j);
  const Bivector b = sample_bivector(n, rng);
  const ComplexVector v = sample_gaussian_vector(n, rng);
  const auto d = check_projector_inequality(s, b, v);
  if (witness) {
    Json pairs = Json::array();
    for (auto [i, j] : s.pairs()) pairs.push_back(Json::array({i, j}));
    *witness = Json{{"pairs", pairs},
                    {"bivector", bivector_to_json(b)},
                    {"vector", amplitudes_to_json(v)},
                    {"strong", d.strong},
                    {"intermediate", d.intermediate}};
  }
  return {d.defect(), d.pb_v, false};
}

inline TrialOutcome reduction_outcome(const ReductionReport& r) {
  return {std::min(r.spectral_slack, r.triangle_defect), r.scale, !r.consistent};
}

inline TrialOutcome reduction_trial(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  StreamRng rng(ctx.cfg.seed, index);
  const std::size_t n = ctx.cfg.n;
  const PairWeights w = metric_weights(ctx, rng);
  const Triple t{sample_pure_state(n, rng), sample_pure_state(n, rng), sample_pure_state(n, rng)};
  const auto r = check_orthonormal_reduction(w, ctx.cfg.p, t[0], t[1], t[2]);
  if (witness)
    *witness = Json{{"p", ctx.cfg.p},
                    {"weights", matrix_to_json(w.to_matrix())},
                    {"states", states_to_json(t)},
                    {"mu", r.mu},
                    {"spectral_slack", r.spectral_slack},
                    {"triangle_defect", r.triangle_defect},
                    {"hodge_residual", r.hodge_residual},
                    {"mu_consistency", r.mu_consistency},
                    {"consistent", r.consistent}};
  return reduction_outcome(r);
}

inline TrialOutcome run_one(const FuzzContext& ctx, std::uint64_t index, Json* witness) {
  switch (ctx.cfg.property) {
    case Property::triangle: return triangle_trial(ctx, index, witness);
    case Property::minorial: return minorial_trial(ctx, index, witness);
    case Property::convexity: return convexity_trial(ctx, index, witness);
    case Property::projector: return projector_trial(ctx, index, witness);
    case Property::reduction: return reduction_trial(ctx, index, witness);
    case Property::w1: return w1_trial(ctx, index, witness);
  }
  throw std::logic_error("unhandled property");
}

}  // namespace detail

/// Runs cfg.trials independent trials of cfg.property and reports the worst.
/// Trial i draws everything from the stream (cfg.seed, i), so the report is
/// the same for every thread count.
inline VerificationReport fuzz(const TrialConfig& cfg, unsigned threads = fuzz_thread_count()) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();

  detail::FuzzContext ctx{cfg, std::nullopt, std::nullopt};
  if (cfg.matrix_mode == MatrixMode::user_supplied) ctx.fixed = PairWeights::from_matrix(*cfg.matrix);
  if (cfg.property == Property::convexity) ctx.function = SymmetricFunction::parse(cfg.function, cfg.p);

  const auto summary = run_trials(cfg.trials, cfg.tolerance, threads,
                                  [&](std::uint64_t i) { return detail::run_one(ctx, i, nullptr); });

  Json details;
  const TrialOutcome worst = detail::run_one(ctx, summary.worst_index, &details);
  Json witness{{"property", to_string(cfg.property)},
               {"trial_index", summary.worst_index},
               {"defect", worst.defect},
               {"scale", worst.scale}};
  for (auto& [k, v] : details.items()) witness[k] = v;

  VerificationReport r;
  r.property = std::string(to_string(cfg.property));
  r.config = cfg;
  r.trials = cfg.trials;
  r.violations = summary.violations;
  r.worst_defect = worst.defect;
  r.witness = std::move(witness);
  r.seed = cfg.seed;
  r.version = kVersion;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Recomputes the defect stored in a report witness from its inputs alone.
inline double replay_witness(const Json& w) {
  const Property prop = parse_property(w.at("property").get<std::string>());
  switch (prop) {
    case Property::triangle: {
      const PairWeightedDistance d(detail::weights_from_json(w.at("weights")), w.at("p").get<double>());
      return detail::evaluate_triangle(d, detail::states_from_json(w.at("states"))).outcome.defect;
    }
    case Property::minorial: {
      const Triple t = detail::states_from_json(w.at("states"));
      const auto m = check_minorial(detail::weights_from_json(w.at("weights")), t[0], t[1], t[2]);
      return std::min(m.lower, m.upper);
    }
    case Property::convexity: {
      const Triple t = detail::states_from_json(w.at("states"));
      const auto f = SymmetricFunction::parse(w.at("function").get<std::string>(), w.at("p").get<double>());
      return check_convexity(f, detail::weights_from_json(w.at("weights")), t[0], t[1], t[2]).defect;
    }
    case Property::w1: {
      const Triple t = detail::states_from_json(w.at("states"));
      const auto r = check_generator_identity_w1(detail::weights_from_json(w.at("weights")), t[0], t[1], t[2]);
      return -std::abs(r.lhs - r.rhs);
    }
    case Property::projector: {
      const Bivector b = bivector_from_json(w.at("bivector"));
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (const auto& pr : w.at("pairs")) pairs.emplace_back(pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>());
      const auto s = PairMask::from_pairs(b.dim(), pairs);
      return check_projector_inequality(s, b, amplitudes_from_json(w.at("vector"))).defect();
    }
    case Property::reduction: {
      const Triple t = detail::states_from_json(w.at("states"));
      const auto r = check_orthonormal_reduction(detail::weights_from_json(w.at("weights")), w.at("p").get<double>(),
                                                 t[0], t[1], t[2]);
      return detail::reduction_outcome(r).defect;
    }
  }
  throw std::logic_error("unhandled property");
}

}  // namespace pqdist
