#include <cmath>

#include <gtest/gtest.h>

#include "bjacobi/jack.hpp"

using bjacobi::enumerate_partitions;
using bjacobi::jack_at_identity;
using bjacobi::jack_at_scaled_identity;
using bjacobi::Partition;

TEST(Jack, DegreeOneIsDimension) {
  for (double beta : {0.5, 2.0, 5.0})
    for (int m = 1; m <= 6; ++m) EXPECT_DOUBLE_EQ(jack_at_identity(Partition{1}, beta, m), m);
}

TEST(Jack, TwoByTwoAtBetaTwo) {
  EXPECT_NEAR(jack_at_identity(Partition{2}, 2.0, 2), 3.0, 1e-14);
  EXPECT_NEAR(jack_at_identity(Partition{1, 1}, 2.0, 2), 1.0, 1e-14);
}

TEST(Jack, TooManyPartsVanish) {
  for (double beta : {0.5, 1.0, 4.0}) EXPECT_EQ(jack_at_identity(Partition{1, 1, 1}, beta, 2), 0.0);
}

TEST(Jack, EmptyPartitionIsOne) { EXPECT_EQ(jack_at_identity(Partition{}, 1.0, 3), 1.0); }

TEST(Jack, LevelSumsArePowersOfDimension) {
  for (double beta : {0.5, 1.0, 1.75, 2.0, 4.0})
    for (int m = 1; m <= 6; ++m)
      for (int k = 0; k <= 10; ++k) {
        double s = 0.0;
        for (const Partition& p : enumerate_partitions(k)) s += jack_at_identity(p, beta, m);
        const double want = std::pow(m, k);
        EXPECT_NEAR(s, want, 1e-12 * want) << beta << " " << m << " " << k;
      }
}

TEST(Jack, NonNegative) {
  for (double beta : {0.3, 1.0, 7.0})
    for (int m = 1; m <= 5; ++m)
      for (const Partition& p : enumerate_partitions(7)) EXPECT_GE(jack_at_identity(p, beta, m), 0.0);
}

TEST(Jack, Homogeneity) {
  const Partition kappa{3, 1};
  EXPECT_EQ(jack_at_scaled_identity(kappa, 1.5, 3, 1.0), jack_at_identity(kappa, 1.5, 3));
  EXPECT_EQ(jack_at_scaled_identity(kappa, 1.5, 3, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(jack_at_scaled_identity(Partition{1}, 0.8, 4, -2.5), -10.0);
  EXPECT_NEAR(jack_at_scaled_identity(kappa, 1.5, 3, -0.5), std::pow(-0.5, 4) * jack_at_identity(kappa, 1.5, 3),
              1e-15);
  EXPECT_LT(jack_at_scaled_identity(Partition{2, 1}, 1.5, 3, -1.0), 0.0);
}
