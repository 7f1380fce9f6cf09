#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "bjacobi/constants.hpp"

using namespace bjacobi;

namespace {

double rel(double x, double y) { return std::fabs(x - y) / std::fabs(y); }

}  // namespace

TEST(LogValue, RoundTripAndArithmetic) {
  // exp(log|x|) carries a relative error of about |log x| * eps
  for (double x : {-3.5, -1e-200, 2e-300, 7.25, 1e300}) EXPECT_NEAR(LogValue::from(x).value() / x, 1.0, 1e-13) << x;
  EXPECT_EQ(LogValue::from(0.0).value(), 0.0);
  const LogValue p = LogValue::from(-2.0) * LogValue::from(3.0);
  EXPECT_EQ(p.sign, -1);
  EXPECT_DOUBLE_EQ(p.value(), -6.0);
  EXPECT_DOUBLE_EQ((LogValue::from(-2.0) / LogValue::from(-8.0)).value(), 0.25);
  EXPECT_DOUBLE_EQ((LogValue::from(5.0) + LogValue::from(-2.0)).value(), 3.0);
  EXPECT_TRUE((LogValue::from(5.0) - LogValue::from(5.0)).is_zero());
  EXPECT_THROW(LogValue::one() / LogValue::zero(), DomainError);
  // far outside double range
  const LogValue big = LogValue::from_log(5000.0) * LogValue::from_log(-4990.0);
  EXPECT_NEAR(big.value(), std::exp(10.0), 1e-9);
}

TEST(LogValue, GammaWithSign) {
  for (double x : {-2.5, -1.5, -0.5, -0.3, 0.2, 1.0, 4.5, 12.0}) {
    const LogValue g = log_gamma(x);
    EXPECT_LE(rel(g.value(), std::tgamma(x)), 1e-13) << x;
  }
  EXPECT_LE(rel(log_gamma(-0.5).value(), -2.0 * std::sqrt(std::numbers::pi)), 1e-14);
  EXPECT_THROW(log_gamma(-2.0), DomainError);
  EXPECT_TRUE(log_rgamma(-3.0).is_zero());
}

TEST(Selberg, SizeOneIsBeta) {
  for (double beta : {0.5, 1.0, 2.7})
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, 2.5}, {3.0, 0.25}}) {
      const double want = boost::math::beta(beta * (a + 1) / 2, beta * (b + 1) / 2);
      EXPECT_LE(rel(selberg_c(beta, a, b, 1).value(), want), 1e-13);
    }
}

TEST(Selberg, Symmetric) {
  for (int m = 1; m <= 6; ++m)
    EXPECT_NEAR(selberg_c(1.3, 0.7, 4.2, m).log_abs, selberg_c(1.3, 4.2, 0.7, m).log_abs, 1e-12);
}

TEST(Selberg, EmptyProductIsOne) { EXPECT_EQ(selberg_c(1.0, 0.0, 0.0, 0).value(), 1.0); }

TEST(Selberg, MatchesTensorQuadrature) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  // beta = 2, a = b = 0: int int (x - y)^2
  const double plain = GL::integrate(
      [](double x) { return GL::integrate([x](double y) { return (x - y) * (x - y); }, 0.0, 1.0); }, 0.0, 1.0);
  EXPECT_LE(rel(selberg_c(2.0, 0.0, 0.0, 2).value(), plain), 1e-6);
  // beta = 2, a = 1/2, b = 1: weight sqrt(x)(1 - x); x = u^2 makes it polynomial
  auto w = [](double u) { return 2.0 * u * u * (1.0 - u * u); };
  const double sub = GL::integrate(
      [&](double u) {
        return GL::integrate([&](double v) { return w(u) * w(v) * std::pow(u * u - v * v, 2); }, 0.0, 1.0);
      },
      0.0, 1.0);
  EXPECT_LE(rel(selberg_c(2.0, 0.5, 1.0, 2).value(), sub), 1e-6);
}

TEST(Selberg, RejectsOutOfRange) {
  EXPECT_THROW(selberg_c(1.0, -1.0, 0.0, 2), DomainError);
  EXPECT_THROW(selberg_c(0.0, 0.0, 0.0, 2), DomainError);
}

TEST(Norm, SizeOneIsInverseBeta) {
  const JacobiParams p{1.4, 0.6, 2.2, 1};
  EXPECT_LE(rel(norm_min(p).value(), 1.0 / boost::math::beta(1.4 * 1.6 / 2, 1.4 * 3.2 / 2)), 1e-13);
}

TEST(Norm, Duality) {
  const JacobiParams p{1.75, 2.3, 2.5, 4};
  EXPECT_EQ(norm_max(p).log_abs, norm_min({1.75, 2.5, 2.3, 4}).log_abs);
}

TEST(Norm, ValidationNamesTheBound) {
  try {
    norm_min({1.0, -1.5, 1.0, 2});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("a must exceed -1"), std::string::npos);
  }
}

TEST(Case1, ClosedFormOfCTilde) {
  for (double beta : {0.3, 0.7, 1.0, 1.5, 1.9})
    for (double b : {-0.5, 0.0, 3.0, 40.0})
      for (int m : {1, 2, 5, 12}) {
        const Case1Constants k = case1_constants(beta, b, m);
        const LogValue closed = case1_c_tilde_closed(beta, b, m);
        EXPECT_EQ(k.C_tilde.sign, closed.sign);
        EXPECT_NEAR(k.C_tilde.log_abs, closed.log_abs, 1e-12);
      }
}

TEST(Case1, ReflectionFactor) {
  const double beta = 0.7, h = beta / 2;
  const LogValue v = LogValue::from(std::numbers::pi) / (log_gamma(-h) * log_gamma(1.0 + h));
  EXPECT_LE(rel(v.value(), -std::sin(beta * std::numbers::pi / 2)), 1e-14);
}

TEST(Case1, GammaSigns) {
  for (double beta : {0.2, 1.0, 1.8}) {
    EXPECT_EQ(log_gamma(-beta / 2).sign, -1);
    EXPECT_EQ(log_gamma(-1.0 - beta / 2).sign, 1);
  }
}

TEST(Case1, RejectsBetaTwoAndAbove) {
  for (double beta : {2.0, 3.0, 0.0}) {
    try {
      case1_constants(beta, 1.0, 2);
      FAIL();
    } catch (const DomainError& e) {
      EXPECT_NE(std::string(e.what()).find("case 1 requires beta in (0,2)"), std::string::npos);
    }
  }
}

TEST(Case2, BetaTwoKOne) {
  for (int m : {1, 3, 15})
    for (double b : {0.0, 2.5, 50.0}) {
      const Case2Constants c = case2_constants(2.0, 1, b, m);
      EXPECT_LE(rel(c.W.value(), m * (b + m)), 1e-13);
      EXPECT_EQ(c.A_mbbk.value(), 1.0);
    }
}

TEST(Case2, KOneGivesUnitA) {
  for (double beta : {0.5, 1.0, 4.0}) EXPECT_EQ(case2_constants(beta, 1, 3.0, 5).A_mbbk.value(), 1.0);
}

TEST(Case2, CancelledFormMatchesSelbergRatio) {
  for (double beta : {0.5, 1.0, 2.0, 4.0})
    for (int k = 1; k <= 4; ++k)
      for (int m : {1, 2, 4, 7})
        for (double b : {-0.5, 1.0, 12.0}) {
          const Case2Constants c = case2_constants(beta, k, b, m);
          const LogValue raw = norm_min({beta, case2_a(beta, k), b, m}) / c.A_mbbk;
          EXPECT_EQ(raw.sign, 1);
          EXPECT_NEAR(c.W.log_abs, raw.log_abs, 1e-10) << beta << " " << k << " " << m << " " << b;
        }
}

TEST(Constants, FiniteAndPositiveOnRandomSweep) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> ub(0.1, 8.0), uab(-0.99, 30.0), u1(0.05, 1.95);
  std::uniform_int_distribution<int> um(1, 60), uk(1, 6);
  for (int i = 0; i < 500; ++i) {
    const JacobiParams p{ub(g), uab(g), uab(g), um(g)};
    const LogValue n = norm_min(p);
    EXPECT_EQ(n.sign, 1);
    EXPECT_TRUE(std::isfinite(n.log_abs));
    const Case2Constants c2 = case2_constants(p.beta, uk(g), p.b, p.m);
    EXPECT_EQ(c2.W.sign, 1);
    EXPECT_EQ(c2.A_mbbk.sign, 1);
    EXPECT_TRUE(std::isfinite(c2.W.log_abs) && std::isfinite(c2.A_mbbk.log_abs));
    const Case1Constants c1 = case1_constants(u1(g), p.b, p.m);
    EXPECT_NE(c1.C_tilde.sign, 0);
    EXPECT_TRUE(std::isfinite(c1.C_tilde.log_abs));
  }
}

TEST(Constants, LogSpaceSurvivesOverflow) {
  const LogValue c = selberg_c(1.0, 0.5, 200.0, 50);
  EXPECT_NE(c.sign, 0);
  EXPECT_TRUE(std::isfinite(c.log_abs));
  EXPECT_LT(c.log_abs, -700.0);  // far below the smallest double
  EXPECT_TRUE(std::isfinite(norm_min({1.0, 0.5, 200.0, 50}).log_abs));
}
