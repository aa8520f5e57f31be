#include <gtest/gtest.h>

#include <cmath>

#include "monobandit/algorithms.hpp"
#include "monobandit/regret.hpp"

using namespace monobandit;

namespace {

const ObjectiveSpec kQuad = make_quadratic(1.0, 1.0, 0.0, 2.0);

std::vector<double> visited(const Trace& t) {
  std::vector<double> xs;
  for (const auto& s : t.segments()) {
    if (xs.empty() || xs.back() != s.x) xs.push_back(s.x);
  }
  return xs;
}

}  // namespace

TEST(NoiselessLgd, HandTrace) {
  const RunResult r = run_lgd_noiseless(kQuad, LgdParams{100, 0.1, 2.0});
  const auto xs = visited(r.trace);
  ASSERT_EQ(xs.size(), 4u);
  EXPECT_NEAR(xs[0], 0.0, 1e-12);
  EXPECT_NEAR(xs[1], 0.1, 1e-12);
  EXPECT_NEAR(xs[2], 0.85, 1e-12);
  EXPECT_NEAR(xs[3], 0.95, 1e-12);
  EXPECT_EQ(r.terminated_by, Termination::stabilized);
  EXPECT_NEAR(r.final_x, 0.95, 1e-12);
  ASSERT_EQ(r.jumps.size(), 1u);
  EXPECT_NEAR(r.jumps[0].estimate.g, -1.9, 1e-12);
  EXPECT_EQ(r.trace.size(), 100);
  EXPECT_EQ(r.trace.entry(3).event, Event::jump);
  EXPECT_EQ(r.trace.entry(5).event, Event::stabilize);
  EXPECT_NEAR(cumulative_regret(r.trace, kQuad).cum_regret,
              1 + 0.81 + 0.0225 + 0.0025 * 97, 1e-12);
}

TEST(NoiselessLgd, ImmediateStops) {
  const auto f = make_quadratic(0.25, 1.0, 0.0, 2.0);
  const RunResult r = run_lgd_noiseless(f, LgdParams{50, 0.1, 2.0});
  EXPECT_NEAR(r.estimates.at(0).estimate.g, -0.4, 1e-12);
  EXPECT_TRUE(r.jumps.empty());
  EXPECT_NEAR(r.final_x, 0.1, 1e-15);
  EXPECT_EQ(visited(r.trace).size(), 2u);
}

TEST(NoiselessLgd, Preconditions) {
  // (x - 0.05)^2 puts the first iterate past the optimum.
  EXPECT_THROW(run_lgd_noiseless(make_quadratic(0.05, 1.0, 0.0, 2.0), LgdParams{50, 0.1, 2.0}),
               PreconditionError);
  EXPECT_THROW(run_lgd_noiseless(kQuad, LgdParams{50, 0.1, 1.0}), PreconditionError);
  Oracle noisy(kQuad, NoiseModel::uniform(1), 50);
  EXPECT_THROW(run_lgd_noiseless(noisy, LgdParams{50, 0.1, 2.0}), PreconditionError);
}

TEST(NoiselessLgd, TinyBudget) {
  const RunResult r = run_lgd_noiseless(kQuad, LgdParams{1, 0.1, 2.0});
  EXPECT_EQ(r.trace.size(), 1);
  EXPECT_EQ(r.terminated_by, Termination::budget);
  EXPECT_EQ(r.first_estimate_samples, 1);
}

TEST(StaticLgd, ReducesToNoiseless) {
  const RunResult a = run_static_lgd(kQuad, NoiseModel::none(), StaticLgdParams{100, 1, 0.0, 0.1, 2.0});
  const RunResult b = run_lgd_noiseless(kQuad, LgdParams{100, 0.1, 2.0});
  const auto xa = visited(a.trace), xb = visited(b.trace);
  ASSERT_EQ(xa.size(), xb.size());
  for (std::size_t k = 0; k < xa.size(); ++k) EXPECT_NEAR(xa[k], xb[k], 1e-12);
  EXPECT_NEAR(a.jumps.at(0).to_x, 0.95, 1e-12);
}

TEST(StaticLgd, EpsilonPrecondition) {
  EXPECT_THROW(run_static_lgd(kQuad, NoiseModel::none(), StaticLgdParams{100, 1, 0.0051, 0.1, 2.0}),
               PreconditionError);
  EXPECT_NO_THROW(run_static_lgd(kQuad, NoiseModel::none(), StaticLgdParams{100, 1, 0.005, 0.1, 2.0}));
}

TEST(StaticLgd, MonotoneWithPaperCounts) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    AlgoConfig c;
    c.variant = Variant::static_lgd;
    c.T = 200000;
    c.delta = 0.3;
    const RunResult r = run_algorithm(kQuad, NoiseModel::uniform(seed), c, false);
    const auto v = validate_trace(r.trace, kQuad);
    ASSERT_TRUE(v.monotone) << "seed " << seed;
    ASSERT_EQ(r.guard_events, 0) << "seed " << seed;
    ASSERT_EQ(v.overshoot_count, 0) << "seed " << seed;
  }
}

TEST(AdaptiveLgd, DeterministicHandTrace) {
  const AdaptiveLgdParams p{1000, 0.2, 2.0, 0.5, 0.5, SamplingPolicy{1.0, true}, 0.0};
  const RunResult r = run_adaptive_lgd(kQuad, NoiseModel::none(), p);
  ASSERT_GE(r.jumps.size(), 2u);
  EXPECT_NEAR(r.estimates.at(0).estimate.g, -1.85, 1e-12);
  EXPECT_NEAR(r.jumps[0].estimate.g, -1.7, 1e-12);
  EXPECT_NEAR(r.jumps[0].to_x, 0.85, 1e-12);
  EXPECT_NEAR(r.jumps[1].to_x, 0.98125, 1e-12);
  EXPECT_EQ(r.jumps[1].lag_index, 4);
  EXPECT_NEAR(r.jumps[1].lag, 0.025, 1e-15);
  // Probes at x2: lags 1..4, the first three fail.
  std::vector<double> tests;
  for (const auto& e : r.estimates) {
    if (e.kind == EstimateKind::lag_probe) tests.push_back(-e.estimate.g / 2.0);
  }
  ASSERT_GE(tests.size(), 5u);
  EXPECT_NEAR(tests[1], 0.275, 1e-12);
  EXPECT_NEAR(tests[2], 0.2125, 1e-12);
  EXPECT_NEAR(tests[3], 0.18125, 1e-12);
  EXPECT_NEAR(tests[4], 0.165625, 1e-12);
  const auto v = validate_run(r, kQuad);
  EXPECT_TRUE(v.monotone);
  EXPECT_TRUE(v.bracket_clean);
  EXPECT_TRUE(v.contractions_ok);
  EXPECT_TRUE(v.phases_ok);
  ASSERT_GE(r.phases.size(), 2u);
  EXPECT_EQ(r.phases[0].lag_index, 1);
  EXPECT_EQ(r.phases[1].lag_index, 4);
}

TEST(AdaptiveLgd, Preconditions) {
  for (double q : {0.0, 1.0, 1.5}) {
    const AdaptiveLgdParams p{1000, 0.2, 2.0, q, 0.5, SamplingPolicy{}, 0.0};
    EXPECT_THROW(run_adaptive_lgd(kQuad, NoiseModel::none(), p), PreconditionError);
  }
  const AdaptiveLgdParams far{1000, 1.5, 2.0, 0.5, 0.5, SamplingPolicy{}, 0.0};
  EXPECT_THROW(run_adaptive_lgd(kQuad, NoiseModel::none(), far), PreconditionError);
}

TEST(AdaptiveLgd, BudgetAndFloor) {
  const AdaptiveLgdParams p{100, 0.2, 2.0, 0.5, 0.01, SamplingPolicy{}, 0.0};
  const RunResult r = run_adaptive_lgd(kQuad, NoiseModel::uniform(1), p);
  EXPECT_EQ(r.terminated_by, Termination::budget);
  EXPECT_EQ(r.trace.size(), 100);
  EXPECT_EQ(visited(r.trace), std::vector<double>{0.2});
  EXPECT_EQ(r.first_estimate_samples, 100);

  const AdaptiveLgdParams floor{1000, 0.2, 2.0, 0.5, 0.5, SamplingPolicy{1.0, true}, 0.03};
  const RunResult s = run_adaptive_lgd(kQuad, NoiseModel::none(), floor);
  EXPECT_EQ(s.terminated_by, Termination::budget);
  for (const auto& j : s.jumps) EXPECT_GE(j.lag, 0.03);
  EXPECT_NEAR(s.final_x, 0.85, 1e-12);
}

TEST(AdaptiveLgd, NoisyRunsStayMonotone) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AlgoConfig c;
    c.variant = Variant::adaptive_lgd;
    c.T = 200000;
    c.kappa = 0.05;
    const RunResult r = run_algorithm(kQuad, NoiseModel::uniform(seed), c, false);
    ASSERT_TRUE(validate_trace(r.trace, kQuad).monotone) << "seed " << seed;
  }
}

TEST(HybridLgd, ConstantStepHandExample) {
  Oracle o(kQuad, NoiseModel::none(), 100);
  o.query(0.9);
  const auto out = constant_step_stage(o, 0.95, 0.02, 0.0001, 1);
  ASSERT_EQ(out.steps.size(), 3u);
  EXPECT_TRUE(out.steps[0].advanced);
  EXPECT_TRUE(out.steps[1].advanced);
  EXPECT_FALSE(out.steps[2].advanced);
  EXPECT_NEAR(out.steps[2].from_x, 0.99, 1e-12);
  EXPECT_NEAR(out.final_x, 1.01, 1e-12);
  EXPECT_EQ(out.terminated_by, Termination::stabilized);
  EXPECT_EQ(o.remaining(), 0);
  EXPECT_TRUE(validate_trace(o.trace(), kQuad).monotone);
}

TEST(HybridLgd, LargeIotaHaltsAtFirstComparison) {
  Oracle o(kQuad, NoiseModel::none(), 20);
  const auto out = constant_step_stage(o, 0.5, 0.01, 10.0, 1);
  ASSERT_EQ(out.steps.size(), 1u);
  EXPECT_FALSE(out.steps[0].advanced);
  EXPECT_NEAR(out.final_x, 0.51, 1e-12);
}

TEST(HybridLgd, NoisyRunsStayMonotone) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    AlgoConfig c;
    c.variant = Variant::hybrid_lgd;
    c.T = 100000;
    c.kappa = 0.01;
    const RunResult r = run_algorithm(kQuad, NoiseModel::uniform(seed), c, false);
    ASSERT_TRUE(validate_trace(r.trace, kQuad).monotone) << "seed " << seed;
  }
}

TEST(HybridLgd, Preconditions) {
  const HybridLgdParams p{1000, 0.1, 0.2, 0.01, 2.0, 0.1, SamplingPolicy{}, std::nullopt, std::nullopt};
  EXPECT_THROW(run_hybrid_lgd(kQuad, NoiseModel::none(), p), PreconditionError);
}

TEST(KwBaseline, HandStep) {
  Oracle o(kQuad, NoiseModel::none(), 3, MonotonicityMode::off);
  const RunResult r = run_kw_baseline(o, KwParams{3, 0.5, 0.1, 0.5});
  EXPECT_NEAR(r.trace.entry(1).x, 0.4, 1e-15);
  EXPECT_NEAR(r.trace.entry(2).x, 0.6, 1e-15);
  EXPECT_NEAR(r.trace.entry(3).x, 1.0, 1e-12);
}

TEST(KwBaseline, StaysAtOptimum) {
  const RunResult r = run_kw_baseline(kQuad, NoiseModel::none(), KwParams{101, 0.5, 0.1, 1.0});
  EXPECT_NEAR(r.final_x, 1.0, 1e-12);
}

TEST(KwBaseline, NoisyTraceOscillates) {
  AlgoConfig c;
  c.variant = Variant::kw_baseline;
  c.T = 5000;
  const RunResult r = run_algorithm(kQuad, NoiseModel::uniform(9), c);
  const auto v = validate_trace(r.trace, kQuad);
  EXPECT_FALSE(v.monotone);
  EXPECT_GT(v.monotonicity_violations, 0);
}

TEST(Resolve, Defaults) {
  const double T = 1e6;
  AlgoConfig c;
  c.T = 1000000;
  c.variant = Variant::lgd_noiseless;
  auto r = resolve(c, kQuad);
  EXPECT_DOUBLE_EQ(r.delta, 1e-3);
  EXPECT_DOUBLE_EQ(r.gamma, 1 + 1 / std::log(T));

  c.variant = Variant::static_lgd;
  r = resolve(c, kQuad);
  EXPECT_DOUBLE_EQ(r.delta, std::pow(T, -1.0 / 6));
  EXPECT_DOUBLE_EQ(r.epsilon, 2 * r.delta * r.delta / 4);
  EXPECT_DOUBLE_EQ(r.p, 1e-12);
  EXPECT_EQ(r.n, *policy_samples(r.epsilon, r.p, {}));

  c.variant = Variant::adaptive_lgd;
  r = resolve(c, kQuad);
  EXPECT_DOUBLE_EQ(r.delta1, 1 / std::log(T));
  EXPECT_EQ(r.q, 0.5);

  c.variant = Variant::hybrid_lgd;
  r = resolve(c, kQuad);
  EXPECT_DOUBLE_EQ(r.delta, std::pow(T, -5.0 / 34));
  EXPECT_DOUBLE_EQ(r.eta, std::pow(T, -7.0 / 34));
  EXPECT_DOUBLE_EQ(r.iota, std::pow(T, -7.0 / 17));

  c.variant = Variant::kw_baseline;
  r = resolve(c, kQuad);
  EXPECT_DOUBLE_EQ(r.kw_a, 0.5);
  EXPECT_DOUBLE_EQ(r.kw_c, 0.2);
  EXPECT_DOUBLE_EQ(r.kw_x1, 0.2);
}

TEST(Resolve, Rejections) {
  AlgoConfig c;
  c.variant = Variant::static_lgd;
  c.T = 1000;
  c.kappa = 0.0;
  EXPECT_THROW(resolve(c, kQuad), PreconditionError);
  c.kappa = 1.0;
  c.T = 0;
  EXPECT_THROW(resolve(c, kQuad), PreconditionError);
  c.T = 2;
  EXPECT_THROW(resolve(c, kQuad), PreconditionError);
  c.T = 1000;
  c.epsilon = 1.0;
  EXPECT_THROW(resolve(c, kQuad), PreconditionError);
  EXPECT_EQ(variant_from_string("hybrid"), Variant::hybrid_lgd);
  EXPECT_THROW(variant_from_string("sgd"), std::invalid_argument);
}
