#pragma once

// Monte Carlo experiments: histogram, theory curve and a Kolmogorov-Smirnov
// check of sampled smallest eigenvalues against a density law.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bjacobi/constants.hpp"
#include "bjacobi/densities.hpp"
#include "bjacobi/errors.hpp"
#include "bjacobi/sampler.hpp"

namespace bjacobi {

// sup_x |F_N(x) - F(x)| for ascending samples.
template <class Cdf>
double ks_statistic_with(const std::vector<double>& sorted, Cdf&& cdf_values) {
  if (sorted.empty()) throw DomainError("ks statistic: no samples");
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw DomainError("ks statistic: samples must be sorted");
  const std::vector<double> f = cdf_values(sorted);
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    d = std::max({d, (i + 1) / n - f[i], f[i] - i / n});
  return d;
}

inline double ks_statistic(const std::vector<double>& sorted, const DensityLaw& law) {
  return ks_statistic_with(sorted, [&](const std::vector<double>& xs) { return cdf_at_sorted(law, xs); });
}

// Asymptotic one-sample critical value sqrt(-log(alpha/2)/2)/sqrt(N).
inline double ks_critical(std::size_t n, double alpha = 0.01) {
  if (n == 0) throw DomainError("ks critical value: N must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ks critical value: alpha must lie in (0,1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

struct ExperimentSpec {
  std::string id = "custom";
  JacobiParams params;
  LawKind law = LawKind::exact_min;
  Scaling scaling = Scaling::raw;
  std::size_t n_samples = 10000;
  int bins = 50;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  double threshold_factor = 1.0;  // multiple of the 1% critical value that passes
};

// Presets for the figures.  Parameters the captions leave open are fixed
// here: f_a1 and f_a2 use beta = 1 (so a = 0), f_a1 has m = 3, and f_b1,
// f_b2 use beta = 2, k = 1 (so a = 0), f_b1 with m = 3.
inline ExperimentSpec preset(const std::string& name, std::uint64_t seed = 42) {
  ExperimentSpec s;
  s.seed = seed;
  if (name == "fig-gen" || name == "fig_gen") {
    s.id = "fig_gen";
    s.params = {1.75, 2.3, 2.5, 4};
  } else if (name == "f-a1" || name == "f_a1") {
    s.id = "f_a1";
    s.params = {1.0, case1_a(1.0), 10.0, 3};
    s.law = LawKind::case1_regime1;
    s.scaling = Scaling::regime1;
    s.threshold_factor = 2.0;
  } else if (name == "f-a2" || name == "f_a2") {
    s.id = "f_a2";
    s.params = {1.0, case1_a(1.0), 5.0, 5};
    s.law = LawKind::case1_regime2;
    s.scaling = Scaling::regime2;
    s.n_samples = 5000;
    s.threshold_factor = 2.0;
  } else if (name == "f-b1" || name == "f_b1") {
    s.id = "f_b1";
    s.params = {2.0, case2_a(2.0, 1), 50.0, 3};
    s.law = LawKind::case2_regime1;
    s.scaling = Scaling::regime1;
    s.threshold_factor = 2.0;
  } else if (name == "f-b2" || name == "f_b2") {
    s.id = "f_b2";
    s.params = {2.0, case2_a(2.0, 1), 50.0, 15};
    s.law = LawKind::case2_regime2;
    s.scaling = Scaling::regime2;
    s.threshold_factor = 2.0;
  } else {
    throw DomainError("unknown preset '" + name + "'");
  }
  return s;
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig-gen", "f-a1", "f-a2", "f-b1", "f-b2"};
  return names;
}

// The law a spec's samples are compared with.
inline DensityLaw experiment_law(const ExperimentSpec& s) {
  const JacobiParams& p = s.params;
  p.validate();
  auto need_case1 = [&] {
    if (!is_case1(p)) throw DomainError("case 1 laws need a = 2/beta - 2");
  };
  auto need_case2 = [&] {
    const int k = case2_k(p);
    if (k == 0) throw DomainError("case 2 laws need beta(a+1)/2 to be a positive integer");
    return k;
  };
  switch (s.law) {
    case LawKind::exact_min: return DensityLaw::exact_min(p);
    case LawKind::exact_max: return DensityLaw::exact_max(p);
    case LawKind::case1_exact: need_case1(); return DensityLaw::case1_exact(p.beta, p.b, p.m);
    case LawKind::case2_exact: return DensityLaw::case2_exact(p.beta, need_case2(), p.b, p.m);
    case LawKind::case1_regime1: need_case1(); return DensityLaw::case1_regime1(p.beta, p.m);
    case LawKind::case1_regime2: need_case1(); return DensityLaw::case1_regime2(p.beta);
    case LawKind::case2_regime1: return DensityLaw::case2_regime1(p.beta, need_case2(), p.m);
    case LawKind::case2_regime2: return DensityLaw::case2_regime2(p.beta, need_case2());
  }
  throw DomainError("unknown law");
}

struct Histogram {
  std::vector<double> edges;    // bins + 1 edges
  std::vector<double> heights;  // density scale: sum heights * widths = 1
};

inline Histogram normalized_histogram(const std::vector<double>& values, int bins, double lo, double hi) {
  if (bins < 1) throw DomainError("histogram: at least one bin");
  if (values.empty()) throw DomainError("histogram: no values");
  if (!(hi > lo)) throw DomainError("histogram: empty range");
  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    int j = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    counts[std::clamp(j, 0, bins - 1)] += 1.0;
  }
  h.heights.resize(bins);
  const double n = static_cast<double>(values.size());
  for (int i = 0; i < bins; ++i) h.heights[i] = counts[i] / (n * (h.edges[i + 1] - h.edges[i]));
  return h;
}

struct ExperimentReport {
  ExperimentSpec spec;
  std::string law_name;
  std::string law_scaling;
  double scale = 1.0;  // factor applied to lambda_min
  Histogram histogram;
  std::vector<double> curve_x, curve_pdf;
  bool singular_at_zero = false;
  double first_bin_theory_mass = 0.0;  // law probability of the first bin
  double ks_statistic = 0.0;
  double ks_critical_1pct = 0.0;
  double ks_threshold = 0.0;  // threshold_factor * ks_critical_1pct
  bool pass = false;
  double runtime_seconds = 0.0;
};

inline constexpr int kCurvePoints = 200;

inline ExperimentReport run_experiment(const ExperimentSpec& s) {
  const auto t0 = std::chrono::steady_clock::now();
  if (s.bins < 1) throw DomainError("experiment: at least one bin");
  if (!(s.threshold_factor > 0.0)) throw DomainError("experiment: threshold factor must be positive");
  ExperimentReport r;
  r.spec = s;
  const DensityLaw law = experiment_law(s);
  r.law_name = law.name();
  r.law_scaling = law.scaling();
  const SampleBatch batch = sample_batch(s.params, s.scaling, s.n_samples, s.seed, s.threads);
  r.scale = batch.scale;
  std::vector<double> xs = batch.values;
  std::sort(xs.begin(), xs.end());
  r.ks_statistic = ks_statistic(xs, law);
  r.ks_critical_1pct = ks_critical(xs.size());
  r.ks_threshold = s.threshold_factor * r.ks_critical_1pct;
  r.pass = r.ks_statistic < r.ks_threshold;

  const double hi = is_exact(s.law) ? std::min(1.0, xs.back() * (1.0 + 1e-12)) : xs.back() * (1.0 + 1e-12);
  r.histogram = normalized_histogram(xs, s.bins, 0.0, hi);
  r.singular_at_zero = law.singular_at_lower();
  r.first_bin_theory_mass = cdf(law, r.histogram.edges[1]);
  // Curve on (0, hi]; the first point sits one grid step from 0, which caps
  // the plotted value of a singular density there.
  r.curve_x.resize(kCurvePoints);
  r.curve_pdf.resize(kCurvePoints);
  for (int i = 0; i < kCurvePoints; ++i) {
    r.curve_x[i] = hi * (i + 1) / kCurvePoints;
    r.curve_pdf[i] = law.pdf(std::min(r.curve_x[i], is_exact(s.law) ? 1.0 : INFINITY));
  }
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace bjacobi
