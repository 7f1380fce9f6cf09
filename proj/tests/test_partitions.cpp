#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bjacobi/partitions.hpp"

using bjacobi::enumerate_partitions;
using bjacobi::gen_pochhammer;
using bjacobi::j_kappa;
using bjacobi::Partition;

namespace {

// p(k) by the coin-change recurrence over part sizes.
std::vector<long> partition_counts(int n) {
  std::vector<long> p(n + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) p[k] += p[k - part];
  return p;
}

double rising(double a, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= a + j;
  return r;
}

}  // namespace

TEST(Partitions, EnumeratesFourInReverseLexOrder) {
  const std::vector<Partition> want{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  EXPECT_EQ(enumerate_partitions(4), want);
}

TEST(Partitions, ZeroGivesTheEmptyPartition) {
  const auto ps = enumerate_partitions(0, 3);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_TRUE(ps[0].empty());
  EXPECT_EQ(ps[0].weight(), 0);
}

TEST(Partitions, AtMostTwoParts) {
  const std::vector<Partition> want{{6}, {5, 1}, {4, 2}, {3, 3}};
  EXPECT_EQ(enumerate_partitions(6, 2), want);
}

TEST(Partitions, CountMatchesPartitionFunction) {
  const auto p = partition_counts(20);
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(static_cast<long>(enumerate_partitions(k).size()), p[k]) << k;
}

TEST(Partitions, EveryPartitionIsValidAndDistinct) {
  for (int k = 1; k <= 12; ++k) {
    const auto ps = enumerate_partitions(k, 4);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_EQ(ps[i].weight(), k);
      EXPECT_LE(ps[i].length(), 4u);
      for (std::size_t r = 1; r < ps[i].length(); ++r) EXPECT_GE(ps[i][r - 1], ps[i][r]);
      // strictly decreasing in lexicographic order
      if (i > 0) {
        EXPECT_TRUE(ps[i - 1].parts() > ps[i].parts());
      }
    }
  }
}

TEST(Partitions, ArmAndLegAreBounded) {
  for (const Partition& p : enumerate_partitions(9)) {
    for (std::size_t i = 0; i < p.length(); ++i)
      for (int j = 0; j < p[i]; ++j) {
        EXPECT_GE(p.arm(i, j), 0);
        EXPECT_GE(p.leg(i, j), 0);
        EXPECT_LE(p.arm(i, j) + p.leg(i, j), p.weight());
      }
  }
}

TEST(Partitions, RejectsMalformedParts) {
  EXPECT_THROW(Partition({1, 2}), bjacobi::DomainError);
  EXPECT_THROW(Partition({2, 0}), bjacobi::DomainError);
  EXPECT_THROW(enumerate_partitions(-1), bjacobi::DomainError);
}

TEST(GenPochhammer, Examples) {
  EXPECT_EQ(gen_pochhammer(3.0, Partition{2}, 0.7), 12.0);
  EXPECT_EQ(gen_pochhammer(2.0, Partition{1, 1}, 2.0), 2.0);
  EXPECT_EQ(gen_pochhammer(-1.0, Partition{2}, 1.0), 0.0);
}

TEST(GenPochhammer, EmptyAndSinglePart) {
  EXPECT_EQ(gen_pochhammer(0.3, Partition{}, 1.5), 1.0);
  for (double a : {-2.5, -0.3, 0.7, 4.25})
    for (int k = 0; k <= 10; ++k) {
      const Partition kappa = k == 0 ? Partition{} : Partition{k};
      EXPECT_DOUBLE_EQ(gen_pochhammer(a, kappa, 1.3), rising(a, k));
    }
}

TEST(GenPochhammer, VanishesAtHalfBetaForSeveralParts) {
  for (double beta : {0.5, 1.0, 1.75, 4.0})
    for (int k = 2; k <= 7; ++k)
      for (const Partition& p : enumerate_partitions(k))
        if (p.length() > 1) {
          EXPECT_EQ(gen_pochhammer(beta / 2, p, beta), 0.0);
        }
}

TEST(JKappa, Examples) {
  EXPECT_EQ(j_kappa(Partition{}, 1.3), 1.0);
  for (double beta : {0.5, 1.0, 2.0, 3.5}) EXPECT_DOUBLE_EQ(j_kappa(Partition{1}, beta), 2.0 / beta);
  EXPECT_DOUBLE_EQ(j_kappa(Partition{1, 1}, 2.0), 4.0);
}

TEST(JKappa, SinglePartClosedForm) {
  // (2/beta)^{2k} k! (beta/2)_k
  for (double beta : {0.5, 1.0, 1.75, 2.0, 4.0})
    for (int k = 1; k <= 8; ++k) {
      const double want = std::pow(2.0 / beta, 2 * k) * std::tgamma(k + 1.0) * rising(beta / 2, k);
      EXPECT_NEAR(j_kappa(Partition{k}, beta), want, 1e-13 * want) << beta << " " << k;
    }
}

TEST(JKappa, PositiveForAllPartitions) {
  for (double beta : {0.3, 1.0, 6.0})
    for (const Partition& p : enumerate_partitions(8)) EXPECT_GT(j_kappa(p, beta), 0.0);
}
