#include <gtest/gtest.h>

#include <cmath>

#include "monobandit/objective.hpp"

using namespace monobandit;

TEST(Objective, QuadraticConstants) {
  const auto s = make_quadratic(1.0, 1.0, 0.0, 2.0);
  EXPECT_EQ(s.alpha(), 2.0);
  EXPECT_EQ(s.beta(), 2.0);
  EXPECT_EQ(s.eval(0.0), 1.0);
  EXPECT_DOUBLE_EQ(s.eval(0.85), 0.0225);
  const auto t = make_quadratic(0.5, 5.0, 0.0, 1.0);
  EXPECT_EQ(t.alpha(), 10.0);
  EXPECT_EQ(t.beta(), 10.0);
  EXPECT_EQ(t.grad(0.5), 0.0);
}

TEST(Objective, QuarticBlend) {
  const auto s = make_quartic_blend(1.0, 1.0, 1.0, 0.0, 2.0);
  EXPECT_EQ(s.alpha(), 2.0);
  EXPECT_EQ(s.beta(), 14.0);
  EXPECT_DOUBLE_EQ(s.eval(0.5), 0.3125);

  const auto q = make_quartic_blend(1.0, 1.0, 0.0, 0.0, 2.0);
  const auto r = make_quadratic(1.0, 1.0, 0.0, 2.0);
  EXPECT_EQ(q.alpha(), r.alpha());
  EXPECT_EQ(q.beta(), r.beta());
  for (double x : {0.0, 0.3, 1.0, 1.7, 2.0}) {
    EXPECT_EQ(q.eval(x), r.eval(x));
    EXPECT_EQ(q.grad(x), r.grad(x));
  }
}

TEST(Objective, RejectsBadInputs) {
  EXPECT_THROW(make_quadratic(2.0, 1.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(make_quadratic(-0.1, 1.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(make_quadratic(1.0, 0.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(make_quartic_blend(1.0, 0.0, 1.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(make_quartic_blend(1.0, -1.0, 1.0, 0.0, 2.0), std::invalid_argument);
  EXPECT_THROW(make_quadratic(1.0, 1.0, 0.0, 2.0).with_constants(3.0, 2.0),
               std::invalid_argument);
}

TEST(Objective, Parse) {
  const auto s = parse_objective("quad:center=1,curv=1,lo=0,hi=2");
  EXPECT_EQ(s.x_star(), 1.0);
  EXPECT_EQ(s.alpha(), 2.0);
  const auto q = parse_objective("quartic:center=1,a=5,b=0.16666666666666666,lo=0,hi=2");
  EXPECT_EQ(q.alpha(), 10.0);
  EXPECT_NEAR(q.beta(), 12.0, 1e-12);
  const auto o = parse_objective("quad:center=1,curv=1,lo=0,hi=2,alpha=1");
  EXPECT_EQ(o.alpha(), 1.0);
  EXPECT_EQ(o.beta(), 2.0);
  EXPECT_THROW(parse_objective("cubic:center=1"), std::invalid_argument);
  EXPECT_THROW(parse_objective("quad:center=1,lo=0"), std::invalid_argument);
  EXPECT_THROW(parse_objective("quad:center=1,lo=0,hi=2,zeta=1"), std::invalid_argument);
  EXPECT_THROW(parse_objective("quad:center=x,lo=0,hi=2"), std::invalid_argument);
}

TEST(Objective, CertifyQuadraticExact) {
  const auto c = certify(make_quadratic(1.0, 1.0, 0.0, 2.0), 101);
  EXPECT_NEAR(c.alpha_hat, 2.0, 1e-9);
  EXPECT_NEAR(c.beta_hat, 2.0, 1e-9);
}

TEST(Objective, CertifyQuarticWithinGridResolution) {
  const auto c = certify(make_quartic_blend(1.0, 1.0, 1.0, 0.0, 2.0), 201);
  const double h = 2.0 / 200;
  EXPECT_NEAR(c.alpha_hat, 2.0, 1e-3);
  EXPECT_LE(c.beta_hat, 14.0);
  EXPECT_NEAR(c.beta_hat, 14.0, 12.0 * h + 1e-9);
}

TEST(Objective, CertifyThousandPoints) {
  const auto q = certify(make_quadratic(0.4, 3.0, 0.0, 1.0), 1001);
  EXPECT_NEAR(q.alpha_hat, 6.0, 1e-6);
  EXPECT_NEAR(q.beta_hat, 6.0, 1e-6);
  // The quartic's secant curvature only approaches f'' at grid resolution.
  const auto spec = make_quartic_blend(1.0, 5.0, 1.0 / 6.0, 0.0, 2.0);
  const auto c = certify(spec, 1001);
  EXPECT_NEAR(c.alpha_hat, 10.0, 1e-5);
  EXPECT_NEAR(c.beta_hat, 12.0, 12.0 / 6.0 * 1.0 * 0.002 + 1e-9);
}

TEST(Objective, CertifyRejectsOverstatedAlpha) {
  const auto bad = make_quadratic(1.0, 1.0, 0.0, 2.0).with_constants(3.0, 3.0);
  EXPECT_THROW(certify(bad, 101), CertificationFailure);
  const auto tight = make_quadratic(1.0, 1.0, 0.0, 2.0).with_constants(2.0, 1.9 + 0.1);
  EXPECT_NO_THROW(certify(tight, 101));
  const auto low_beta = make_quartic_blend(1.0, 1.0, 1.0, 0.0, 2.0).with_constants(2.0, 10.0);
  EXPECT_THROW(certify(low_beta, 201), CertificationFailure);
  try {
    certify(bad, 11);
  } catch (const CertificationFailure& e) {
    EXPECT_NE(std::string(e.what()).find('('), std::string::npos);
  }
  EXPECT_THROW(certify(make_quadratic(1.0, 1.0, 0.0, 2.0), 2), std::invalid_argument);
}

TEST(Objective, AntiLipschitzOnGrid) {
  for (const auto& s : {make_quadratic(1.0, 1.0, 0.0, 2.0),
                        make_quartic_blend(1.0, 5.0, 1.0 / 6.0, 0.0, 2.0)}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = s.p_min() + i * (s.p_max() - s.p_min()) / 200;
      for (int k = i + 1; k <= 200; k += 7) {
        const double y = s.p_min() + k * (s.p_max() - s.p_min()) / 200;
        EXPECT_LE(y - x, std::abs(s.grad(y) - s.grad(x)) / s.alpha() + 1e-9);
      }
    }
  }
}
