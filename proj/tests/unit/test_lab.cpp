#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pqdist/lab.hpp"

using namespace pqdist;
using oracle::C;

namespace {

PureState basis(std::size_t n, std::size_t i) { return PureState::basis(n, i); }

Triple random_triple(std::size_t n, std::uint64_t seed) {
  StreamRng rng(seed);
  return sample_orthonormal_triple(n, rng);
}

TrialConfig config(Property p, std::size_t n, std::uint64_t trials, std::uint64_t seed = 1) {
  TrialConfig c;
  c.property = p;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  StreamRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    seen.insert(va);
    seen.insert(c());
    seen.insert(d());
  }
  EXPECT_EQ(seen.size(), 300u);
}

TEST(Sampling, PureStateBasics) {
  StreamRng rng(42);
  const auto s1 = sample_pure_state(1, rng);
  EXPECT_NEAR(std::abs(s1[0]), 1.0, 1e-15);
  StreamRng r1(42), r2(42);
  EXPECT_EQ(sample_pure_state(4, r1), sample_pure_state(4, r2));
  EXPECT_THROW(sample_pure_state(0, rng), DimensionError);
}

TEST(Sampling, PureStateIsUniformInMean) {
  StreamRng rng(7);
  double s = 0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) s += std::norm(sample_pure_state(4, rng)[0]);
  EXPECT_NEAR(s / samples, 0.25, 0.01);
}

TEST(Sampling, OrthonormalTriple) {
  StreamRng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto q3 = sample_orthonormal_triple(3, rng);
    EXPECT_LE(gram_deviation(std::span<const PureState>(q3)), 1e-12);
    Matrix3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = q3[i][j];
    EXPECT_NEAR(std::abs(det3(m)), 1.0, 1e-10);
    const auto q8 = sample_orthonormal_triple(8, rng);
    EXPECT_NEAR(norm_squared(wedge3(q8[0], q8[1], q8[2])), 1.0, 1e-10);
  }
  EXPECT_THROW(sample_orthonormal_triple(2, rng), DimensionError);
}

TEST(Sampling, DistanceMatrixModes) {
  StreamRng rng(9);
  for (auto mode : {MatrixMode::euclidean_points, MatrixMode::repaired_random, MatrixMode::zero_one}) {
    const auto m2 = sample_distance_matrix(2, mode, rng);
    EXPECT_GT(m2(0, 1), 0.0);
    EXPECT_EQ(m2(0, 1), m2(1, 0));
    for (int t = 0; t < 20; ++t) EXPECT_TRUE(validate_distance_matrix(sample_distance_matrix(6, mode, rng).to_matrix()).valid());
  }
  const auto rr = sample_distance_matrix(5, MatrixMode::repaired_random, rng).to_matrix();
  EXPECT_EQ(shortest_path_closure(rr), rr);
  const auto z = sample_distance_matrix(4, MatrixMode::zero_one, rng);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_TRUE(z(i, j) == 1.0 || z(i, j) == 2.0);
      }
  EXPECT_THROW(sample_distance_matrix(3, MatrixMode::user_supplied, rng), std::invalid_argument);
  EXPECT_THROW(parse_matrix_mode("gaussian"), std::invalid_argument);
  EXPECT_EQ(parse_matrix_mode("repaired-random"), MatrixMode::repaired_random);
}

TEST(Minorial, ConstantWeightsCollapse) {
  const auto t = random_triple(5, 1);
  const PairWeights a(5, 0.7);
  for (auto mid : {MiddlePair::xy, MiddlePair::xz, MiddlePair::yz}) {
    const auto d = check_minorial(a, t[0], t[1], t[2], mid);
    EXPECT_NEAR(d.middle, 0.7, 1e-12);
    EXPECT_NEAR(d.lower, 0.0, 1e-12);
    EXPECT_NEAR(d.upper, 0.0, 1e-12);
  }
}

TEST(Minorial, ExhaustiveZeroOneSubsets) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = random_triple(4, 100 + s);
    for (unsigned mask = 0; mask < 64; ++mask) {
      PairWeights a(4);
      unsigned bit = 0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) a.at(i, j) = (mask >> bit++) & 1u;
      const auto d = check_minorial(a, t[0], t[1], t[2]);
      EXPECT_GE(d.lower, -1e-10);
      EXPECT_GE(d.upper, -1e-10);
    }
  }
}

TEST(Minorial, RejectsNonOrthonormal) {
  const auto x = basis(4, 0), y = PureState::normalize({1.0, 1.0, 0.0, 0.0}), z = basis(4, 2);
  EXPECT_THROW(check_minorial(PairWeights(4, 1.0), x, y, z), NotOrthonormalError);
  // inside the 1e-8 gate: accepted after one re-orthonormalization
  const auto y2 = PureState::normalize({1e-9, 1.0, 0.0, 0.0});
  EXPECT_NO_THROW(check_minorial(PairWeights(4, 1.0), x, y2, z));
}

TEST(Projector, AllPairsReducesToInteriorProduct) {
  StreamRng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto b = sample_bivector(5, rng);
    const auto v = sample_gaussian_vector(5, rng);
    const auto d = check_projector_inequality(PairMask::all(5), b, v);
    // ‖B‖²‖v‖² − ‖B∧v‖² = ‖v⌟B‖²
    EXPECT_LE(oracle::rel_err(d.strong, norm_squared(interior_product(v, b))), 1e-12);
    EXPECT_NEAR(d.intermediate, 0.0, 1e-10 * d.pb_v);
  }
}

TEST(Projector, EmptySetAndBadPairs) {
  StreamRng rng(4);
  const auto b = sample_bivector(5, rng);
  const auto v = sample_gaussian_vector(5, rng);
  const auto d = check_projector_inequality(PairMask(5), b, v);
  EXPECT_EQ(d.q_bv, 0.0);
  EXPECT_EQ(d.pb_v, 0.0);
  const std::pair<std::size_t, std::size_t> bad[] = {{0, 5}};
  EXPECT_THROW(PairMask::from_pairs(5, bad), std::out_of_range);
  const std::pair<std::size_t, std::size_t> self[] = {{2, 2}};
  EXPECT_THROW(PairMask::from_pairs(5, self), std::out_of_range);
}

TEST(Projector, TermwiseOracleOnRandomSubsets) {
  StreamRng rng(6);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 300; ++t) {
    PairMask s(5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (coin(rng)) s.insert(i, j);
    const auto b = sample_bivector(5, rng);
    const auto v = sample_gaussian_vector(5, rng);
    const auto d = check_projector_inequality(s, b, v);
    EXPECT_GE(d.strong, -1e-10);
    EXPECT_GE(d.intermediate, -1e-10);
    EXPECT_LE(d.pb_wedge_v, d.pb_v * (1 + 1e-12) + 1e-12);
  }
}

TEST(Convexity, SumIsTheW1Identity) {
  StreamRng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto a = sample_symmetric_weights(6, rng);
    const auto t = sample_orthonormal_triple(6, rng);
    const auto r = check_convexity(SymmetricFunction::parse("sum"), a, t[0], t[1], t[2]);
    EXPECT_NEAR(r.defect, 0.0, 1e-10);
  }
}

TEST(Convexity, SinglePairWeight) {
  PairWeights a(3);
  a.at(0, 1) = 1.0;
  const auto t = random_triple(3, 12);
  const auto r = check_convexity(SymmetricFunction::parse("max"), a, t[0], t[1], t[2]);
  const auto s = pair_minor_sums(a, t);
  EXPECT_NEAR(r.lhs, std::max({s[0], s[1], s[2]}), 1e-15);
  // only the triple (0,1,2) exists for n = 3 and |T|² = 1, so RHS = max(1, 0, 0)
  EXPECT_NEAR(r.rhs, 1.0, 1e-12);
  EXPECT_GE(r.defect, 0.0);
}

TEST(Convexity, MaxMinMatchMinorialDefects) {
  StreamRng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto a = sample_symmetric_weights(5, rng);
    const auto t = sample_orthonormal_triple(5, rng);
    double upper = INFINITY, lower = INFINITY;
    for (auto mid : {MiddlePair::xy, MiddlePair::xz, MiddlePair::yz}) {
      const auto m = check_minorial(a, t[0], t[1], t[2], mid);
      upper = std::min(upper, m.upper);
      lower = std::min(lower, m.lower);
    }
    EXPECT_NEAR(check_convexity(SymmetricFunction::parse("max"), a, t[0], t[1], t[2]).defect, upper, 1e-12);
    EXPECT_NEAR(check_convexity(SymmetricFunction::parse("min"), a, t[0], t[1], t[2]).defect, lower, 1e-12);
  }
}

TEST(Convexity, PowersumIsConcave) {
  StreamRng rng(14);
  for (double p : {2.0, 3.0, 5.0})
    for (int i = 0; i < 200; ++i) {
      const auto a = sample_symmetric_weights(5, rng);
      const auto t = sample_orthonormal_triple(5, rng);
      EXPECT_GE(check_convexity(SymmetricFunction::parse("powersum", p), a, t[0], t[1], t[2]).defect, -1e-9);
    }
}

TEST(Convexity, Errors) {
  EXPECT_THROW(SymmetricFunction::parse("median"), std::invalid_argument);
  const auto t = random_triple(4, 15);
  EXPECT_THROW(check_convexity(SymmetricFunction::parse("powersum", 1.5), PairWeights(4, 1.0), t[0], t[1], t[2]),
               std::invalid_argument);
  EXPECT_THROW(check_convexity(SymmetricFunction::parse("max"), PairWeights(5, 1.0), t[0], t[1], t[2]), DimensionError);
}

TEST(W1, ConstantAndSinglePair) {
  const auto t = random_triple(6, 16);
  auto r = check_generator_identity_w1(PairWeights(6, 1.0), t[0], t[1], t[2]);
  EXPECT_NEAR(r.lhs, 3.0, 1e-12);
  EXPECT_NEAR(r.rhs, 3.0, 1e-12);
  PairWeights a(6);
  a.at(0, 1) = 1.0;
  r = check_generator_identity_w1(a, t[0], t[1], t[2]);
  EXPECT_LE(r.residual, 1e-12);
  // direct expansion: Σ over the three pairs of |minor_01|² = Σ_k |T_01k|²
  double direct = 0;
  const auto w = wedge3(t[0], t[1], t[2]);
  for (std::size_t k = 2; k < 6; ++k) direct += std::norm(w.at(0, 1, k));
  EXPECT_NEAR(r.rhs, direct, 1e-12);
}

TEST(Reduction, CanonicalTripleReducesToMatrixTriangle) {
  const auto e = DistanceMatrix::from_rows({{0, 2, 3, 4}, {2, 0, 4, 5}, {3, 4, 0, 6}, {4, 5, 6, 0}});
  const double p = 3.0;
  const auto r = check_orthonormal_reduction(e, p, basis(4, 0), basis(4, 1), basis(4, 2));
  std::vector<double> fd(r.frame_distances.begin(), r.frame_distances.end());
  std::sort(fd.begin(), fd.end());
  EXPECT_NEAR(fd[0], 2.0, 1e-12);
  EXPECT_NEAR(fd[1], 3.0, 1e-12);
  EXPECT_NEAR(fd[2], 4.0, 1e-12);
  EXPECT_NEAR(r.spectral_slack, 2 + 3 + 4 - 2 * 4.0, 1e-12);
  EXPECT_TRUE(r.consistent);
  EXPECT_TRUE(r.reduction_holds);
}

TEST(Reduction, CollinearTriple) {
  StreamRng rng(17);
  const auto e = sample_distance_matrix(5, MatrixMode::euclidean_points, rng);
  const auto x = sample_pure_state(5, rng), y = sample_pure_state(5, rng);
  const auto r = check_orthonormal_reduction(e, 2.0, x, y, x);
  EXPECT_TRUE(r.consistent);
  EXPECT_TRUE(r.reduction_holds);
  EXPECT_GE(r.triangle_defect, -1e-12);
  EXPECT_THROW(check_orthonormal_reduction(DistanceMatrix::discrete(2), 2.0, basis(2, 0), basis(2, 1), basis(2, 0)),
               DimensionError);
}

TEST(Reduction, RandomTriples) {
  StreamRng rng(18);
  for (int i = 0; i < 100; ++i) {
    const auto e = sample_distance_matrix(6, MatrixMode::repaired_random, rng);
    const auto r = check_orthonormal_reduction(e, 2.0 + (i % 3), sample_pure_state(6, rng), sample_pure_state(6, rng),
                                               sample_pure_state(6, rng));
    EXPECT_LE(r.hodge_residual, 1e-10);
    EXPECT_LE(r.mu_consistency, 1e-9);
    EXPECT_TRUE(r.reduction_holds);
  }
}

TEST(Counterexample, HandValueAtPiOverSix) {
  const auto ce = counterexample_p_lt_2(1.0, 1.0, std::numbers::pi / 6);
  EXPECT_NEAR(ce.d_xy, 0.75, 1e-15);
  EXPECT_NEAR(ce.d_xz, 0.25, 1e-15);
  EXPECT_NEAR(ce.d_yz, 0.25, 1e-15);
  EXPECT_NEAR(ce.margin, 0.25, 1e-15);
}

TEST(Counterexample, ClosedFormsAndMidpointAngle) {
  for (double p : {0.5, 1.0, 1.5, 1.9}) {
    const double e12 = 2.0;
    const auto ce = counterexample_p_lt_2(p, e12);
    EXPECT_NEAR(std::cos(ce.theta), (1 + std::pow(2.0, p / 2 - 1)) / 2, 1e-15);
    EXPECT_NEAR(ce.d_xy, e12 * std::pow(std::sin(2 * ce.theta), 2 / p), 1e-12);
    EXPECT_NEAR(ce.d_xz, e12 * std::pow(std::sin(ce.theta), 2 / p), 1e-12);
    EXPECT_GT(ce.margin, 1e-6);
  }
  EXPECT_GT(counterexample_p_lt_2(1.99999, 1.0).margin, 0.0);
  EXPECT_LT(counterexample_p_lt_2(1.99999, 1.0).margin, 1e-6);
}

TEST(Counterexample, Errors) {
  EXPECT_THROW(counterexample_p_lt_2(2.0, 1.0), std::domain_error);
  EXPECT_THROW(counterexample_p_lt_2(3.0, 1.0), std::domain_error);
  EXPECT_THROW(counterexample_p_lt_2(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(counterexample_p_lt_2(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(counterexample_p_lt_2(1.0, 1.0, 2.0), std::invalid_argument);
}

TEST(Minimizer, EquilateralAndBoundary) {
  EXPECT_GE(minimize_defect_n3({1, 1, 1}, 2.0).min_defect, -1e-7);
  const auto b = minimize_defect_n3({1, 2, 3}, 2.0);
  EXPECT_GE(b.min_defect, -1e-6);
  EXPECT_LE(b.min_defect, 1e-6);
}

TEST(Minimizer, ViolatingSpectrumFindsWitness) {
  const auto r = minimize_defect_n3({1, 1, 3}, 2.0);
  EXPECT_LT(r.min_defect, -1e-3);
  // canonical basis gives d = (λ3, λ2, λ1) on pairs (01, 02, 12); best defect is 1 + 1 − 3
  EXPECT_LE(r.min_defect, -1.0 + 1e-6);
  const PairWeightedDistance d(diagonal_pair_weights_n3({1, 1, 3}), 2.0);
  EXPECT_NEAR(d(r.argmin[0], r.argmin[2]) + d(r.argmin[1], r.argmin[2]) - d(r.argmin[0], r.argmin[1]), r.min_defect,
              1e-12);
}

TEST(Minimizer, Errors) {
  EXPECT_THROW(minimize_defect_n3({1, 1, 1}, 1.5), std::invalid_argument);
  EXPECT_THROW(minimize_defect_n3({1, 0, 1}, 2.0), std::invalid_argument);
}

TEST(RunTrials, SummaryIndependentOfThreadCount) {
  auto trial = [](std::uint64_t i) {
    StreamRng rng(99, i);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double d = std::round(U(rng) * 4) / 4;  // many ties
    return TrialOutcome{d, 1.0, false};
  };
  const auto a = run_trials(1000, 1e-9, 1, trial);
  for (unsigned t : {2u, 3u, 7u, 64u}) {
    const auto b = run_trials(1000, 1e-9, t, trial);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.worst_index, b.worst_index);
    EXPECT_EQ(a.worst.defect, b.worst.defect);
  }
  // the lowest index among the tied minima
  for (std::uint64_t i = 0; i < a.worst_index; ++i) EXPECT_GT(trial(i).defect, a.worst.defect);
}

TEST(RunTrials, FailedTrialsCountAndExceptionsPropagate) {
  const auto s = run_trials(10, 1e-9, 2, [](std::uint64_t i) { return TrialOutcome{1.0, 1.0, i == 7}; });
  EXPECT_EQ(s.violations, 1u);
  EXPECT_EQ(s.worst_index, 7u);
  EXPECT_THROW(run_trials(10, 1e-9, 3,
                          [](std::uint64_t i) -> TrialOutcome {
                            if (i == 5) throw std::runtime_error("boom");
                            return {};
                          }),
               std::runtime_error);
}

TEST(Fuzz, TriangleHoldsForPAtLeastTwo) {
  auto c = config(Property::triangle, 4, 10000, 7);
  EXPECT_EQ(fuzz(c).violations, 0u);
  c = config(Property::triangle, 2, 2000, 8);
  c.matrix_mode = MatrixMode::repaired_random;
  EXPECT_EQ(fuzz(c).violations, 0u);
}

TEST(Fuzz, TriangleFailsBelowTwoInDimensionTwo) {
  auto c = config(Property::triangle, 2, 100, 1);
  c.p = 1.0;
  const auto r = fuzz(c);
  EXPECT_GT(r.violations, 0u);
  EXPECT_LT(r.worst_defect, 0.0);
}

TEST(Fuzz, UserSuppliedNonMetricExposedByCanonicalTriple) {
  auto c = config(Property::triangle, 3, 50, 2);
  c.p = 3.0;
  c.matrix_mode = MatrixMode::user_supplied;
  c.matrix = RawMatrix{{0, 3, 1}, {3, 0, 1}, {1, 1, 0}};  // pair weights (1,1,3)
  const auto r = fuzz(c);
  EXPECT_GT(r.violations, 0u);
  EXPECT_EQ(r.witness.at("variant"), "canonical");
  EXPECT_NEAR(r.worst_defect, 1 + 1 - 3.0, 1e-12);
}

TEST(Fuzz, WitnessReplaysForEveryProperty) {
  for (auto p : {Property::triangle, Property::minorial, Property::convexity, Property::projector, Property::reduction,
                 Property::w1}) {
    auto c = config(p, 5, 300, 21);
    if (p == Property::convexity) c.function = "powersum";
    const auto r = fuzz(c);
    EXPECT_EQ(r.violations, 0u) << to_string(p);
    EXPECT_LE(std::abs(replay_witness(r.witness) - r.worst_defect), 1e-12) << to_string(p);
    // round trip through text as a report file would
    EXPECT_LE(std::abs(replay_witness(Json::parse(r.witness.dump())) - r.worst_defect), 1e-12) << to_string(p);
  }
}

TEST(Fuzz, ReportIndependentOfThreadCount) {
  auto c = config(Property::reduction, 5, 200, 5);
  auto a = fuzz(c, 1), b = fuzz(c, 4);
  a.elapsed_ms = b.elapsed_ms = 0;
  EXPECT_EQ(a, b);
}

TEST(Fuzz, ViolationInvariantHolds) {
  auto c = config(Property::triangle, 2, 200, 3);
  c.p = 1.5;
  const auto r = fuzz(c);
  const double scale = r.witness.at("scale").get<double>();
  EXPECT_EQ(r.violations == 0, r.worst_defect >= -c.tolerance * std::max(1.0, scale));
}

TEST(Fuzz, InvalidConfigs) {
  EXPECT_THROW(fuzz(config(Property::triangle, 4, 0)), std::invalid_argument);
  EXPECT_THROW(fuzz(config(Property::triangle, 1, 10)), std::invalid_argument);
  EXPECT_THROW(fuzz(config(Property::minorial, 2, 10)), std::invalid_argument);
  auto c = config(Property::triangle, 3, 10);
  c.tolerance = 0;
  EXPECT_THROW(fuzz(c), std::invalid_argument);
  c = config(Property::triangle, 3, 10);
  c.matrix_mode = MatrixMode::user_supplied;
  EXPECT_THROW(fuzz(c), std::invalid_argument);
  c.matrix = RawMatrix{{0, 1}, {1, 0}};
  EXPECT_THROW(fuzz(c), std::invalid_argument);
  c = config(Property::convexity, 4, 10);
  c.function = "median";
  EXPECT_THROW(fuzz(c), std::invalid_argument);
  EXPECT_THROW(parse_property("bogus"), std::invalid_argument);
}
