#pragma once

// JSON and CSV records for the command-line tool.  Needs nlohmann/json
// (vendor/json.hpp).  CSV numbers use 17 significant digits; JSON numbers
// use the shortest text that reads back to the same double.  Non-finite
// values become null in JSON.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bjacobi/densities.hpp"
#include "bjacobi/experiments.hpp"
#include "bjacobi/sampler.hpp"

namespace bjacobi::io {

using nlohmann::json;

inline constexpr const char* kSchema = "beta-jacobi/v1";

inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json params_json(const JacobiParams& p) {
  return {{"beta", number(p.beta)}, {"a", number(p.a)}, {"b", number(p.b)}, {"m", p.m}};
}

// Parameters a law was built from; absent fields are omitted.
inline json law_params_json(const LawSpec& s) {
  json j{{"beta", number(s.beta)}, {"a", number(s.a)}};
  switch (s.kind) {
    case LawKind::exact_min:
    case LawKind::exact_max:
    case LawKind::case1_exact:
      j["b"] = number(s.b);
      j["m"] = s.m;
      break;
    case LawKind::case2_exact:
      j["b"] = number(s.b);
      j["m"] = s.m;
      j["k"] = s.k;
      break;
    case LawKind::case1_regime1: j["m"] = s.m; break;
    case LawKind::case1_regime2: break;
    case LawKind::case2_regime1:
      j["m"] = s.m;
      j["k"] = s.k;
      break;
    case LawKind::case2_regime2: j["k"] = s.k; break;
  }
  return j;
}

struct PdfTable {
  std::vector<double> grid, values, log_values, rel_errors;
};

inline PdfTable evaluate_grid(const DensityLaw& law, const std::vector<double>& grid) {
  PdfTable t;
  t.grid = grid;
  for (double x : grid) {
    const PdfValue v = law.evaluate(x);
    t.log_values.push_back(v.log_pdf);
    t.values.push_back(std::exp(v.log_pdf));
    t.rel_errors.push_back(v.rel_error);
  }
  return t;
}

inline json pdf_json(const DensityLaw& law, const PdfTable& t) {
  return {{"schema", kSchema},
          {"command", "pdf"},
          {"law", law.name()},
          {"params", law_params_json(law.spec())},
          {"scaling", law.scaling()},
          {"grid", numbers(t.grid)},
          {"values", numbers(t.values)},
          {"log_values", numbers(t.log_values)},
          {"rel_errors", numbers(t.rel_errors)}};
}

inline void pdf_csv(std::ostream& os, const PdfTable& t) {
  os << "x,pdf,log_pdf,rel_error\n";
  for (std::size_t i = 0; i < t.grid.size(); ++i)
    os << csv_number(t.grid[i]) << ',' << csv_number(t.values[i]) << ',' << csv_number(t.log_values[i])
       << ',' << csv_number(t.rel_errors[i]) << '\n';
}

struct HaarInfo {
  int n = 0;
  int r = 0;
  Field field = Field::real;
  bool divide_by_beta = false;
};

inline json sample_json(const SampleBatch& b, const HaarInfo* haar = nullptr) {
  json j{{"schema", kSchema},
         {"command", "sample"},
         {"model", b.model},
         {"params", params_json(b.params)},
         {"scaling", b.model == "haar" ? (haar && haar->divide_by_beta ? "x/beta" : "x")
                                       : scaling_name(b.scaling)},
         {"scale", number(b.scale)},
         {"seed", b.seed},
         {"replicate_count", b.replicate_count},
         {"values", numbers(b.values)}};
  if (haar) j["haar"] = {{"n", haar->n}, {"r", haar->r}, {"field", field_name(haar->field)}};
  return j;
}

inline void sample_csv(std::ostream& os, const SampleBatch& b) {
  os << "index,value\n";
  for (std::size_t i = 0; i < b.values.size(); ++i) os << i << ',' << csv_number(b.values[i]) << '\n';
}

inline json report_json(const ExperimentReport& r) {
  const ExperimentSpec& s = r.spec;
  return {{"schema", kSchema},
          {"command", "experiment"},
          {"id", s.id},
          {"params", params_json(s.params)},
          {"law", r.law_name},
          {"law_scaling", r.law_scaling},
          {"scaling", scaling_name(s.scaling)},
          {"scale", number(r.scale)},
          {"n_samples", s.n_samples},
          {"bins", s.bins},
          {"seed", s.seed},
          {"histogram", {{"edges", numbers(r.histogram.edges)}, {"heights", numbers(r.histogram.heights)}}},
          {"theory", {{"grid", numbers(r.curve_x)}, {"pdf", numbers(r.curve_pdf)}}},
          {"singular_at_zero", r.singular_at_zero},
          {"first_bin_theory_mass", number(r.first_bin_theory_mass)},
          {"ks_statistic", number(r.ks_statistic)},
          {"ks_critical_1pct", number(r.ks_critical_1pct)},
          {"threshold_factor", number(s.threshold_factor)},
          {"ks_threshold", number(r.ks_threshold)},
          {"pass", r.pass},
          {"runtime_seconds", number(r.runtime_seconds)}};
}

inline void histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_lo,bin_hi,height\n";
  for (std::size_t i = 0; i < h.heights.size(); ++i)
    os << csv_number(h.edges[i]) << ',' << csv_number(h.edges[i + 1]) << ',' << csv_number(h.heights[i]) << '\n';
}

inline void curve_csv(std::ostream& os, const ExperimentReport& r) {
  os << "x,pdf\n";
  for (std::size_t i = 0; i < r.curve_x.size(); ++i)
    os << csv_number(r.curve_x[i]) << ',' << csv_number(r.curve_pdf[i]) << '\n';
}

}  // namespace bjacobi::io
