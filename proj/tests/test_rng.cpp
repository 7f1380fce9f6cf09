#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "bjacobi/rng.hpp"

using namespace bjacobi;

namespace {

std::vector<double> beta_draws(double s, double t, int n, std::uint64_t seed) {
  Engine g = substream(seed, 0);
  std::vector<double> x(n);
  for (double& v : x) v = beta_variate(s, t, g);
  return x;
}

double ks_vs_beta(std::vector<double> x, double s, double t) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = boost::math::ibeta(s, t, x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

const double kCritical1pct = 1.6276;  // sqrt(-ln(0.005)/2)

}  // namespace

TEST(Rng, SubstreamsAreDeterministicAndDistinct) {
  Engine a = substream(7, 3), b = substream(7, 3), c = substream(7, 4), d = substream(8, 3);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  Engine hi = substream(7ull << 32, 3);
  EXPECT_NE(x, hi());
}

TEST(Rng, UniformIsOpen) {
  Engine g = substream(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform_open(g);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Engine g = substream(2, 0);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(g);
    s += z, s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Rng, GammaMeanIncludingSmallShapes) {
  for (double shape : {0.05, 0.3, 1.0, 2.5, 40.0}) {
    Engine g = substream(3, 0);
    const int n = 100000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += std::exp(log_gamma_variate(shape, g));
    // standard error sqrt(shape / n)
    EXPECT_NEAR(s / n, shape, 5 * std::sqrt(shape / n)) << shape;
  }
}

TEST(Rng, BetaMean) {
  const auto x = beta_draws(2.0, 3.0, 100000, 4);
  double s = 0;
  for (double v : x) s += v;
  EXPECT_NEAR(s / x.size(), 0.4, 0.01);
}

TEST(Rng, BetaPassesKs) {
  for (auto [s, t] : {std::pair{2.0, 3.0}, {0.3, 0.3}, {0.15, 4.0}, {7.5, 0.6}, {30.0, 45.0}}) {
    const int n = 10000;
    EXPECT_LT(ks_vs_beta(beta_draws(s, t, n, 5), s, t), kCritical1pct / std::sqrt(n)) << s << " " << t;
  }
}

TEST(Rng, BetaUShape) {
  const auto x = beta_draws(0.3, 0.3, 20000, 6);
  int tails = 0, middle = 0;
  for (double v : x) {
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    if (v < 0.1 || v > 0.9) ++tails;
    if (v > 0.4 && v < 0.6) ++middle;
  }
  EXPECT_GT(tails, 2 * middle);
}

TEST(Rng, BetaPairComplementsAccurately) {
  Engine g = substream(7, 0);
  for (int i = 0; i < 1000; ++i) {
    const BetaPair p = beta_variate_pair(0.2, 50.0, g);
    EXPECT_LE(std::fabs(p.x + p.one_minus_x - 1.0), 2.3e-16);  // one ulp
    EXPECT_GT(p.x, 0.0);
  }
}

TEST(Rng, RejectsBadShapes) {
  Engine g = substream(0, 0);
  EXPECT_THROW(beta_variate(0.0, 1.0, g), DomainError);
  EXPECT_THROW(log_gamma_variate(-1.0, g), DomainError);
}
