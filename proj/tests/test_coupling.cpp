#include <gtest/gtest.h>

#include <cmath>

#include "cardgame/coupling.hpp"

using namespace cardgame;

namespace {

// Case-split conditional mean written out in its unreduced form.
double long_form_mean(double p, double q, bool y) {
  const double yv = y ? 1.0 : 0.0;
  if (q >= 1.0) return p * yv / q;
  if (p >= q) return ((1 - p) * yv + p - q) / (1 - q);
  return p * yv / q;
}

CoupledTranscript hand_built(int m, int n, std::vector<Label> g, std::vector<std::uint8_t> y,
                             std::vector<std::uint8_t> z) {
  CoupledTranscript ct;
  ct.params = CouplingParams::of(m, n);
  ct.base = {{m, n}, std::move(g), std::move(y)};
  ct.z = std::move(z);
  const int mn = ct.rounds();
  ct.p.assign(mn, 0.0);
  ct.q.assign(mn, 0.0);
  ct.z_mean.assign(mn, 0.0);
  ct.w.assign(mn, 1);
  return ct;
}

}  // namespace

TEST(YCap, Examples) {
  EXPECT_EQ(y_cap(9, 10), 5);
  EXPECT_EQ(y_cap(1, 1200), 200);
  EXPECT_EQ(y_cap(2, 6), 1);  // floor(sqrt 2) = 1
  EXPECT_EQ(y_cap(2, 3), 0);
  EXPECT_EQ(y_cap(4, 2400), 800);
  EXPECT_EQ(y_cap(25, 200), 166);
}

TEST(YCap, MatchesIntegerDefinition) {
  // Y is the largest integer with 36 Y^2 <= m n^2.
  for (long long m = 1; m <= 60; ++m)
    for (long long n = 1; n <= 400; n += 7) {
      const long long Y = y_cap(static_cast<int>(m), static_cast<int>(n));
      EXPECT_LE(36 * Y * Y, m * n * n);
      EXPECT_GT(36 * (Y + 1) * (Y + 1), m * n * n);
    }
}

TEST(Penalty, Branches) {
  EXPECT_DOUBLE_EQ(f_penalty(-2, 5, 10), 4);
  EXPECT_DOUBLE_EQ(f_penalty(5.0 / 20, 5, 10), 0);
  EXPECT_DOUBLE_EQ(f_penalty(5.0 / 10 + 1, 5, 10), 1);
  EXPECT_DOUBLE_EQ(f_penalty(0, 5, 10), 0);
  EXPECT_DOUBLE_EQ(x_value(0, 0, 5, 10), 0);  // X_{k,1}
}

TEST(Penalty, LowerBound) {
  EXPECT_TRUE(f_lower_bound_check(0, 3, 7));
  // x = -3, Y/n = 2: 9 >= 9/2 - 4.
  EXPECT_TRUE(f_lower_bound_check(-3, 4, 2));
  for (auto [Y, n] : {std::pair{1, 1}, {5, 10}, {200, 1200}, {0, 3}, {7, 2}}) {
    const double edge = static_cast<double>(Y) / n;
    const double span = 10 * std::max(edge, 1.0);
    for (int i = -10000; i <= 10000; ++i) ASSERT_TRUE(f_lower_bound_check(span * i / 10000.0, Y, n));
  }
  Rng rng(99);
  for (int i = 0; i < 1000000; ++i) {
    const double x = (uniform_unit(rng) * 2 - 1) * 10 * 0.5;
    ASSERT_TRUE(f_lower_bound_check(x, 5, 10));
  }
}

TEST(CoupledMean, ReducedFormMatchesLongForm) {
  Rng rng(5);
  for (int i = 0; i < 200000; ++i) {
    const double p = uniform_unit(rng), q = uniform_unit(rng);
    for (bool y : {false, true}) EXPECT_NEAR(coupled_mean(p, q, y), long_form_mean(p, q, y), 1e-12);
  }
}

TEST(CoupledMean, Degenerate) {
  EXPECT_EQ(coupled_mean(0.0, 0.4, true), 0.0);  // c = m gives p = 0
  EXPECT_EQ(coupled_mean(0.0, 0.4, false), 0.0);
  for (double p : {0.1, 0.5, 0.9}) {
    EXPECT_EQ(coupled_mean(p, p, true), 1.0);  // p = q: z = y
    EXPECT_EQ(coupled_mean(p, p, false), 0.0);
    EXPECT_DOUBLE_EQ(coupled_mean(p, 0.0, false), p);  // q = 0
    EXPECT_DOUBLE_EQ(coupled_mean(p, 1.0, true), p);   // q = 1
  }
  EXPECT_EQ(coupled_mean(1.0, 1.0, true), 1.0);
  EXPECT_THROW(coupled_mean(1.5, 0.2, true), NumericalRange);
}

TEST(PropertyA, HoldsOnSampledTrajectoriesAndCatchesViolation) {
  PosteriorOracle oracle(2, 3);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    GreedyBound s;
    const auto ct = couple_game({2, 3, FeedbackMode::Partial, seed}, s, oracle);
    ASSERT_TRUE(check_property_a(ct));
    ASSERT_TRUE(check_property_d(ct, oracle));
    ASSERT_TRUE(compare_b_c(ct));
    for (int t = 1; t <= 6; ++t) {
      const auto c = z_counts_at(ct, t);
      if (c[ct.base.g[t - 1]] == 2) {
        EXPECT_EQ(ct.z[t - 1], 0);
      }
    }
  }
  // Three z hits on label 1 with m = 2.
  const auto bad = hand_built(2, 3, {1, 1, 1, 2, 2, 3}, {0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0});
  EXPECT_FALSE(check_property_a(bad));
}

TEST(PropertyA, FirstRoundBound) {
  // c(k,1) = 0 and m - max{mn - Y, 0} <= 0.
  const auto ct = hand_built(2, 3, {1, 2, 3, 1, 2, 3}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0});
  EXPECT_TRUE(check_property_a(ct));
}

TEST(CompareBC, VacuousAndTrivialCases) {
  // Y = 0 at (2,3): any hit makes the disjunction vacuous.
  const auto over = hand_built(2, 3, {1, 1, 1, 1, 1, 1}, {1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0});
  EXPECT_TRUE(compare_b_c(over));
  const auto zeros = hand_built(2, 3, {1, 2, 3, 1, 2, 3}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0});
  EXPECT_TRUE(compare_b_c(zeros));
  // m=1, n=12 has Y = 2: one hit with no matching z breaks it.
  auto broken = hand_built(1, 12, std::vector<Label>(12, 1), std::vector<std::uint8_t>(12, 0),
                           std::vector<std::uint8_t>(12, 0));
  broken.base.y[3] = 1;
  EXPECT_FALSE(compare_b_c(broken));
}

TEST(Tau, StoppingRounds) {
  auto ct = hand_built(1, 3, {1, 2, 3}, {0, 0, 0}, {0, 0, 0});
  EXPECT_EQ(tau_stop(ct, 1), 4);
  ct.w = {1, 0, 1};
  EXPECT_EQ(tau_stop(ct, 1), 2);
  EXPECT_EQ(tau_stop(ct, 1, TauVariant::FirstZeroWForLabel), 4);
  EXPECT_EQ(tau_stop(ct, 2, TauVariant::FirstZeroWForLabel), 2);
}

TEST(Coupling, WIndicator) {
  PosteriorOracle oracle(2, 3);
  FixedLabel s(1);
  const auto ct = couple_game({2, 3, FeedbackMode::Partial, 4}, s, oracle);
  // a(1,t) = t - 1; w_t = [2 (t - 1) <= 6].
  EXPECT_EQ(ct.w, (std::vector<std::uint8_t>{1, 1, 1, 1, 0, 0}));
  for (Label k = 1; k <= 3; ++k) EXPECT_DOUBLE_EQ(x_at(ct, k, 1), 0.0);
}

TEST(Coupling, ZeroSeedIsReproducible) {
  PosteriorOracle oracle(2, 3);
  StickyAdvance s1, s2;
  const auto a = couple_game({2, 3, FeedbackMode::Partial, 17}, s1, oracle);
  const auto b = couple_game({2, 3, FeedbackMode::Partial, 17}, s2, oracle);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.base.g, b.base.g);
}

TEST(Drift, ExactTreeIsSupermartingale) {
  for (auto [m, n] : {std::pair{1, 2}, {2, 2}, {1, 3}, {2, 3}})
    for (const char* name : {"sticky", "greedy-bound", "exact-greedy", "fixed:1"}) {
      const GameConfig config{m, n};
      PosteriorOracle oracle(m, n);
      const auto s = make_strategy(parse_strategy(name), rules_of(config));
      const auto r = drift_step_check(config, *s, oracle);
      EXPECT_TRUE(r.pass) << name << " " << m << "," << n << " drift=" << r.max_drift;
      EXPECT_LE(r.max_drift, 1e-9);
      EXPECT_EQ(r.max_unguessed_drift, 0.0);
      EXPECT_LE(r.max_z_mean_error, 1e-12);
      EXPECT_GT(r.classes, 0u);
    }
}

TEST(Drift, RejectsRandomizedAndOversized) {
  PosteriorOracle oracle(1, 2);
  UniformRandom r;
  EXPECT_THROW(drift_step_check({1, 2}, r, oracle), RandomizedStrategyUnsupported);
  PosteriorOracle big(3, 3);
  StickyAdvance s;
  EXPECT_THROW(drift_step_check({3, 3}, s, big), OracleLimitExceeded);
}

TEST(Diagnostics, SmallRunPassesAndIsWorkerCountIndependent) {
  const auto spec = parse_strategy("greedy-bound");
  const auto one = run_coupling_diagnostics(2, 3, spec, 20000, 3, 1);
  const auto many = run_coupling_diagnostics(2, 3, spec, 20000, 3, 4);
  EXPECT_EQ(to_json(one).dump(), to_json(many).dump());
  EXPECT_TRUE(one.prop_a_pass());
  EXPECT_TRUE(one.prop_d_pass());
  EXPECT_TRUE(one.b_le_c_pass());
  EXPECT_TRUE(one.prop_c_pass()) << one.prop_c_worst_z;
  EXPECT_TRUE(one.prop_b_pass()) << one.prop_b_worst_z;
  EXPECT_GT(one.prop_c_classes, 0u);
  // Optional stopping: E X_{k,tau_k} <= 0 up to 3 sigma, both readings of tau.
  EXPECT_LE(one.optional_stopping_worst_z(one.x_tau), 3.0);
  EXPECT_LE(one.optional_stopping_worst_z(one.x_tau_label), 3.0);
  EXPECT_LE(one.optional_stopping_worst_z(one.x_final), 3.0);
}

TEST(Diagnostics, RandomStrategyAlsoCouples) {
  const auto d = run_coupling_diagnostics(1, 3, parse_strategy("random"), 20000, 8, 1);
  EXPECT_TRUE(d.prop_a_pass());
  EXPECT_TRUE(d.prop_d_pass());
  EXPECT_TRUE(d.b_le_c_pass());
  EXPECT_TRUE(d.prop_c_pass());
  EXPECT_TRUE(d.prop_b_pass());
}
