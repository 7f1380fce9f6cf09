#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "bjacobi/experiments.hpp"

using namespace bjacobi;

namespace {

auto identity_cdf = [](const std::vector<double>& xs) { return xs; };

}  // namespace

TEST(Ks, SinglePointAgainstUniform) {
  EXPECT_DOUBLE_EQ(ks_statistic_with({0.5}, identity_cdf), 0.5);
  EXPECT_DOUBLE_EQ(ks_statistic_with({0.25, 0.75}, identity_cdf), 0.25);
}

TEST(Ks, RejectsUnsortedAndEmpty) {
  EXPECT_THROW(ks_statistic_with({0.7, 0.2}, identity_cdf), DomainError);
  EXPECT_THROW(ks_statistic_with({}, identity_cdf), DomainError);
}

TEST(Ks, CriticalValue) {
  EXPECT_NEAR(ks_critical(10000), 0.016276, 1e-6);
  EXPECT_NEAR(ks_critical(100, 0.05), 0.13581, 1e-5);
  EXPECT_THROW(ks_critical(0), DomainError);
  EXPECT_THROW(ks_critical(10, 1.5), DomainError);
}

TEST(Ks, DetectsAShiftedLaw) {
  // uniform samples on the 2000-point midpoint grid, tested against U(0,1) and U(0.05,1.05)
  std::vector<double> xs(2000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = (i + 0.5) / xs.size();
  EXPECT_LT(ks_statistic_with(xs, identity_cdf), ks_critical(xs.size()));
  auto shifted = [](const std::vector<double>& v) {
    std::vector<double> f;
    for (double x : v) f.push_back(std::clamp(x - 0.05, 0.0, 1.0));
    return f;
  };
  EXPECT_GT(ks_statistic_with(xs, shifted), ks_critical(xs.size()));
}

TEST(Histogram, HasUnitMass) {
  std::vector<double> xs;
  for (int i = 0; i < 997; ++i) xs.push_back(std::fmod(i * 0.618034, 1.0) * 3.0);
  const Histogram h = normalized_histogram(xs, 17, 0.0, 3.0);
  ASSERT_EQ(h.edges.size(), 18u);
  double mass = 0;
  for (std::size_t i = 0; i < h.heights.size(); ++i) mass += h.heights[i] * (h.edges[i + 1] - h.edges[i]);
  EXPECT_NEAR(mass, 1.0, 1e-14);
  // values at the upper edge land in the last bin
  const Histogram e = normalized_histogram({0.0, 1.0}, 2, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(e.heights[0], 1.0);
  EXPECT_DOUBLE_EQ(e.heights[1], 1.0);
  EXPECT_THROW(normalized_histogram(xs, 0, 0.0, 1.0), DomainError);
  EXPECT_THROW(normalized_histogram(xs, 4, 1.0, 1.0), DomainError);
}

TEST(Presets, EncodeTheirParameters) {
  const ExperimentSpec g = preset("fig-gen");
  EXPECT_EQ(g.params.beta, 1.75);
  EXPECT_EQ(g.params.a, 2.3);
  EXPECT_EQ(g.params.b, 2.5);
  EXPECT_EQ(g.params.m, 4);
  EXPECT_EQ(g.law, LawKind::exact_min);
  EXPECT_EQ(g.n_samples, 10000u);
  EXPECT_EQ(g.threshold_factor, 1.0);

  const ExperimentSpec a1 = preset("f_a1"), a2 = preset("f-a2"), b1 = preset("f-b1"), b2 = preset("f-b2");
  EXPECT_EQ(a1.params.a, 0.0);
  EXPECT_EQ(a1.params.b, 10.0);
  EXPECT_EQ(a1.law, LawKind::case1_regime1);
  EXPECT_EQ(a2.params.b, 5.0);
  EXPECT_EQ(a2.params.m, 5);
  EXPECT_EQ(a2.n_samples, 5000u);
  EXPECT_EQ(a2.law, LawKind::case1_regime2);
  EXPECT_EQ(b1.params.b, 50.0);
  EXPECT_EQ(b1.params.m, 3);
  EXPECT_EQ(b1.law, LawKind::case2_regime1);
  EXPECT_EQ(b2.params.m, 15);
  EXPECT_EQ(b2.law, LawKind::case2_regime2);
  for (const auto* s : {&a1, &a2, &b1, &b2}) EXPECT_EQ(s->threshold_factor, 2.0);
  EXPECT_EQ(preset("fig-gen", 9).seed, 9u);
  EXPECT_THROW(preset("fig-x"), DomainError);
  EXPECT_EQ(preset_names().size(), 5u);
}

TEST(Experiment, LawMustMatchTheParameters) {
  ExperimentSpec s;
  s.params = {1.75, 2.3, 2.5, 4};
  s.law = LawKind::case1_regime1;
  EXPECT_THROW(experiment_law(s), DomainError);
  s.law = LawKind::case2_exact;
  EXPECT_THROW(experiment_law(s), DomainError);
}

TEST(Experiment, ReproducibleAndSelfConsistent) {
  ExperimentSpec s = preset("f-b2");
  s.n_samples = 2000;
  const ExperimentReport r1 = run_experiment(s), r2 = run_experiment(s);
  EXPECT_EQ(r1.ks_statistic, r2.ks_statistic);
  EXPECT_EQ(r1.histogram.heights, r2.histogram.heights);
  EXPECT_DOUBLE_EQ(r1.ks_critical_1pct, ks_critical(2000));
  EXPECT_DOUBLE_EQ(r1.ks_threshold, 2.0 * r1.ks_critical_1pct);
  EXPECT_EQ(r1.pass, r1.ks_statistic < r1.ks_threshold);
  EXPECT_EQ(r1.curve_x.size(), static_cast<std::size_t>(kCurvePoints));
  EXPECT_GT(r1.first_bin_theory_mass, 0.0);
  EXPECT_LT(r1.first_bin_theory_mass, 1.0);
  s.threads = 3;
  EXPECT_EQ(run_experiment(s).ks_statistic, r1.ks_statistic);
}

TEST(Experiment, SmallGeneralRunPasses) {
  ExperimentSpec s = preset("fig-gen");
  s.n_samples = 3000;
  const ExperimentReport r = run_experiment(s);
  EXPECT_TRUE(r.pass) << r.ks_statistic;
  EXPECT_LE(r.histogram.edges.back(), 1.0);
  EXPECT_FALSE(r.singular_at_zero);
}
