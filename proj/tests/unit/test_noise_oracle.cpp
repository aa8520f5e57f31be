#include <gtest/gtest.h>

#include <cmath>

#include "monobandit/noise.hpp"
#include "monobandit/oracle.hpp"

using namespace monobandit;

namespace {
const ObjectiveSpec kQuad = make_quadratic(1.0, 1.0, 0.0, 2.0);
}

TEST(Noise, UniformMomentsAndSupport) {
  NoiseSource src(NoiseModel::uniform(11));
  double sum = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const double e = src.draw();
    ASSERT_GE(e, -0.5);
    ASSERT_LE(e, 0.5);
    sum += e;
  }
  EXPECT_LE(std::abs(sum / 1e6), 3.0 / 1000);
}

TEST(Noise, RademacherTakesTwoValues) {
  NoiseSource src(NoiseModel::rademacher(5));
  int plus = 0;
  for (int i = 0; i < 100000; ++i) {
    const double e = src.draw();
    ASSERT_TRUE(e == 0.5 || e == -0.5);
    plus += e > 0;
  }
  EXPECT_NEAR(plus / 1e5, 0.5, 0.01);
}

TEST(Noise, SeedsReproduce) {
  NoiseSource a(NoiseModel::uniform(3)), b(NoiseModel::uniform(3)), c(NoiseModel::uniform(4));
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.draw();
    EXPECT_EQ(x, b.draw());
    differs |= x != c.draw();
  }
  EXPECT_TRUE(differs);
}

TEST(Noise, DrawSumMatchesDraws) {
  NoiseSource a(NoiseModel::uniform(8)), b(NoiseModel::uniform(8));
  std::vector<double> out;
  const double s = a.draw_sum(5000, &out);
  ASSERT_EQ(out.size(), 5000u);
  double t = 0.0;
  for (double e : out) t += e;
  EXPECT_NEAR(s, t, 1e-9);
  EXPECT_EQ(out[0], b.draw());
}

TEST(Noise, CustomSamplerChecked) {
  NoiseModel m{NoiseKind::custom_bounded, 0.5, 1, [](Rng&) { return 0.4; }, 0.0};
  NoiseSource ok(m);
  EXPECT_EQ(ok.draw(), 0.4);
  m.sampler = [](Rng&) { return 0.6; };
  NoiseSource bad(m);
  EXPECT_THROW(bad.draw(), std::domain_error);
  EXPECT_THROW(NoiseSource(NoiseModel::uniform(1, 1.5)), std::invalid_argument);
  EXPECT_EQ(noise_kind_from_string("rademacher"), NoiseKind::rademacher_half);
  EXPECT_THROW(noise_kind_from_string("gaussian"), std::invalid_argument);
}

TEST(Oracle, ExactWithoutNoise) {
  Oracle o(kQuad, NoiseModel::none(), 10);
  EXPECT_EQ(o.query(0.1), 0.81);
  EXPECT_EQ(o.query(1.0), 0.0);
  EXPECT_EQ(o.trace().back().inst_regret, 0.0);
  EXPECT_EQ(o.used(), 2);
  for (double x : {1.2, 1.5, 1.9}) EXPECT_EQ(o.query(x), kQuad.eval(x));
}

TEST(Oracle, StrictRejectsBackwardQuery) {
  Oracle o(kQuad, NoiseModel::none(), 10);
  o.query(0.5);
  EXPECT_THROW(o.query(0.4), MonotonicityViolation);
  EXPECT_NO_THROW(o.query(0.5));
  EXPECT_EQ(o.used(), 2);
}

TEST(Oracle, LenientClampsAndLogs) {
  Oracle o(kQuad, NoiseModel::none(), 10, MonotonicityMode::lenient);
  o.query(0.5);
  EXPECT_EQ(o.query(0.4), kQuad.eval(0.5));
  EXPECT_EQ(o.guard_clamps(), 1);
  EXPECT_EQ(o.trace().back().event, Event::guard_clamp);
  EXPECT_EQ(o.trace().back().x, 0.5);
}

TEST(Oracle, OffAllowsBacktracking) {
  Oracle o(kQuad, NoiseModel::none(), 10, MonotonicityMode::off);
  o.query(0.5);
  EXPECT_NO_THROW(o.query(0.4));
  EXPECT_EQ(o.trace().back().x, 0.4);
}

TEST(Oracle, DomainAndBudget) {
  Oracle o(kQuad, NoiseModel::none(), 2);
  EXPECT_THROW(o.query(-0.1), OutOfDomain);
  EXPECT_THROW(o.query(2.1), OutOfDomain);
  o.query(0.0);
  o.query(0.1);
  EXPECT_THROW(o.query(0.2), BudgetExhausted);
  EXPECT_THROW(Oracle(kQuad, NoiseModel::none(), 0), std::invalid_argument);
}

TEST(Oracle, SampleMeanTruncatesAtBudget) {
  Oracle o(kQuad, NoiseModel::uniform(1), 10);
  EXPECT_NO_THROW(o.sample_mean(0.2, 4));
  EXPECT_THROW(o.sample_mean(0.3, 8), BudgetExhausted);
  EXPECT_EQ(o.used(), 10);
  EXPECT_EQ(o.trace().back().event, Event::budget_exhausted);
  EXPECT_EQ(o.trace().back().x, 0.3);
}

TEST(Oracle, SampleMeanMatchesObservations) {
  Oracle o(kQuad, NoiseModel::uniform(2), 1000);
  const double m = o.sample_mean(0.7, 1000);
  double s = 0.0;
  o.trace().for_each([&](const TraceEntry& e) { s += e.y; });
  EXPECT_NEAR(m, s / 1000, 1e-12);
  EXPECT_NEAR(m, kQuad.eval(0.7), 0.05);
}

TEST(Oracle, MarkAttachesToNextEntryOnly) {
  Oracle o(kQuad, NoiseModel::none(), 10);
  o.annotate(2, 0.25);
  o.mark(Event::jump);
  o.sample_mean(0.1, 3);
  o.query(0.2);
  EXPECT_EQ(o.trace().entry(1).event, Event::jump);
  EXPECT_EQ(o.trace().entry(2).event, Event::sample);
  EXPECT_EQ(o.trace().entry(4).event, Event::sample);
  EXPECT_EQ(o.trace().entry(4).phase, 2);
  EXPECT_EQ(o.trace().entry(4).lag, 0.25);
}
