// bjacobi: densities, samples and Monte Carlo experiments for the extreme
// eigenvalues of beta-Jacobi ensembles.
//
// Exit status: 0 success, 1 experiment failed its KS check, 2 usage error,
// 3 parameter outside the domain, 4 numerical failure (series or quadrature).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bjacobi.hpp"
#include "bjacobi/io.hpp"

namespace {

using namespace bjacobi;

enum Exit { kOk = 0, kKsFail = 1, kUsage = 2, kDomain = 3, kNumeric = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& g) {
  std::vector<std::string> f;
  std::stringstream ss(g);
  for (std::string item; std::getline(ss, item, ':');) f.push_back(item);
  if (f.size() != 3) throw UsageError("--grid expects start:stop:count");
  double start, stop;
  long count;
  try {
    std::size_t p1, p2, p3;
    start = std::stod(f[0], &p1);
    stop = std::stod(f[1], &p2);
    count = std::stol(f[2], &p3);
    if (p1 != f[0].size() || p2 != f[1].size() || p3 != f[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError("--grid expects start:stop:count with numeric fields");
  }
  if (count < 1) throw UsageError("--grid count must be at least 1");
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    xs[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  return xs;
}

const std::map<std::string, LawKind> kLaws{
    {"exact-min", LawKind::exact_min},     {"exact-max", LawKind::exact_max},
    {"case1", LawKind::case1_exact},       {"case2", LawKind::case2_exact},
    {"case1-r1", LawKind::case1_regime1},  {"case1-r2", LawKind::case1_regime2},
    {"case2-r1", LawKind::case2_regime1},  {"case2-r2", LawKind::case2_regime2},
};

const std::map<std::string, Scaling> kScalings{
    {"raw", Scaling::raw}, {"r1", Scaling::regime1}, {"r2", Scaling::regime2}};

struct LawFlags {
  std::string law;
  std::optional<double> beta, a, b;
  std::optional<int> m, k;
};

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& law) {
  if (!v) throw UsageError(std::string("--law ") + law + " needs " + flag);
  return *v;
}

DensityLaw build_law(const LawFlags& f) {
  const LawKind kind = kLaws.at(f.law);
  const double beta = need(f.beta, "--beta", f.law);
  switch (kind) {
    case LawKind::exact_min:
    case LawKind::exact_max: {
      const JacobiParams p{beta, need(f.a, "--a", f.law), need(f.b, "--b", f.law), need(f.m, "--m", f.law)};
      return kind == LawKind::exact_min ? DensityLaw::exact_min(p) : DensityLaw::exact_max(p);
    }
    case LawKind::case1_exact: return DensityLaw::case1_exact(beta, need(f.b, "--b", f.law), need(f.m, "--m", f.law));
    case LawKind::case2_exact:
      return DensityLaw::case2_exact(beta, need(f.k, "--k", f.law), need(f.b, "--b", f.law), need(f.m, "--m", f.law));
    case LawKind::case1_regime1: return DensityLaw::case1_regime1(beta, need(f.m, "--m", f.law));
    case LawKind::case1_regime2: return DensityLaw::case1_regime2(beta);
    case LawKind::case2_regime1:
      return DensityLaw::case2_regime1(beta, need(f.k, "--k", f.law), need(f.m, "--m", f.law));
    case LawKind::case2_regime2: return DensityLaw::case2_regime2(beta, need(f.k, "--k", f.law));
  }
  throw UsageError("unknown law");
}

// Writes to --output if given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(std::ostream& os, const io::json& j) { os << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme eigenvalues of beta-Jacobi ensembles"};
  app.require_subcommand(1);
  std::string format = "csv", output;

  // pdf
  LawFlags lf;
  std::string grid;
  auto* pdf = app.add_subcommand("pdf", "Evaluate a density on a grid");
  pdf->add_option("--law", lf.law, "Density law")->required()->check(CLI::IsMember(
      std::vector<std::string>{"exact-min", "exact-max", "case1", "case2", "case1-r1", "case1-r2", "case2-r1", "case2-r2"}));
  pdf->add_option("--beta", lf.beta, "Ensemble parameter beta");
  pdf->add_option("--a", lf.a, "Parameter a");
  pdf->add_option("--k", lf.k, "Case 2 integer k = beta(a+1)/2");
  pdf->add_option("--b", lf.b, "Parameter b");
  pdf->add_option("--m", lf.m, "Matrix size m");
  pdf->add_option("--grid", grid, "start:stop:count (inclusive, evenly spaced)")->required();
  pdf->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  pdf->add_option("--output", output, "Output file (default stdout)");

  // sample
  std::string model = "sutton", field = "real", scaling = "raw";
  double s_beta = 1.0, s_a = 0.0, s_b = 0.0;
  int s_m = 1, h_n = 0, h_r = 0;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  bool divide_by_beta = false;
  auto* sample = app.add_subcommand("sample", "Draw smallest-eigenvalue samples");
  sample->add_option("--model", model, "sutton or haar")->check(CLI::IsMember({"sutton", "haar"}));
  sample->add_option("--beta", s_beta, "Ensemble parameter beta (sutton)");
  sample->add_option("--a", s_a, "Parameter a (sutton)");
  sample->add_option("--b", s_b, "Parameter b (sutton)");
  sample->add_option("--m", s_m, "Matrix size m (sutton)");
  sample->add_option("--field", field, "real or complex (haar)")->check(CLI::IsMember({"real", "complex"}));
  sample->add_option("--n", h_n, "Haar matrix size n (haar)");
  sample->add_option("--r", h_r, "Corner size r <= n/2 (haar)");
  sample->add_flag("--divide-by-beta", divide_by_beta, "Report x/beta instead of x (haar)");
  sample->add_option("--scaling", scaling, "raw, r1 or r2 (sutton)")->check(CLI::IsMember({"raw", "r1", "r2"}));
  sample->add_option("--n-samples", n_samples, "Number of draws");
  sample->add_option("--seed", seed, "Seed");
  sample->add_option("--threads", threads, "Worker threads (output does not depend on it)");
  sample->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sample->add_option("--output", output, "Output file (default stdout)");

  // experiment
  std::optional<std::string> preset_name;
  std::string e_law = "exact-min", e_scaling = "raw", csv_prefix;
  std::optional<double> e_beta, e_a, e_b, e_factor;
  std::optional<int> e_m, e_bins;
  std::optional<std::size_t> e_n;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment with a KS check");
  experiment->add_option("--preset", preset_name, "fig-gen, f-a1, f-a2, f-b1 or f-b2");
  experiment->add_option("--law", e_law, "Law for a custom experiment")
      ->check(CLI::IsMember(std::vector<std::string>{"exact-min", "case1", "case2", "case1-r1", "case1-r2",
                                                     "case2-r1", "case2-r2"}));
  experiment->add_option("--beta", e_beta, "Ensemble parameter beta");
  experiment->add_option("--a", e_a, "Parameter a");
  experiment->add_option("--b", e_b, "Parameter b");
  experiment->add_option("--m", e_m, "Matrix size m");
  experiment->add_option("--scaling", e_scaling, "raw, r1 or r2")->check(CLI::IsMember({"raw", "r1", "r2"}));
  experiment->add_option("--n-samples", e_n, "Number of draws");
  experiment->add_option("--bins", e_bins, "Histogram bins");
  experiment->add_option("--threshold-factor", e_factor, "Multiple of the 1% KS critical value that passes");
  experiment->add_option("--seed", seed, "Seed");
  experiment->add_option("--threads", threads, "Worker threads (output does not depend on it)");
  experiment->add_option("--output", output, "Report file (default stdout)");
  experiment->add_option("--csv-prefix", csv_prefix, "Also write <prefix>_histogram.csv and <prefix>_curve.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    Sink sink(output);
    if (*pdf) {
      const std::vector<double> xs = parse_grid(grid);
      const DensityLaw law = build_law(lf);
      const io::PdfTable t = io::evaluate_grid(law, xs);
      if (format == "json") write_json(sink.os(), io::pdf_json(law, t));
      else io::pdf_csv(sink.os(), t);
    } else if (*sample) {
      if (threads < 1) throw UsageError("--threads must be at least 1");
      if (n_samples < 1) throw UsageError("--n-samples must be at least 1");
      if (model == "sutton") {
        if (divide_by_beta) throw UsageError("--divide-by-beta applies to --model haar");
        const SampleBatch b = sample_batch({s_beta, s_a, s_b, s_m}, kScalings.at(scaling), n_samples, seed, threads);
        if (format == "json") write_json(sink.os(), io::sample_json(b));
        else io::sample_csv(sink.os(), b);
      } else {
        if (h_n < 1 || h_r < 1) throw UsageError("--model haar needs --n and --r");
        if (scaling != "raw") throw UsageError("--scaling applies to --model sutton");
        io::HaarInfo info{h_n, h_r, field == "real" ? Field::real : Field::complex, divide_by_beta};
        const double beta = info.field == Field::real ? 1.0 : 2.0;
        const SampleBatch b =
            haar_batch(h_n, h_r, info.field, divide_by_beta ? beta : 1.0, n_samples, seed, threads);
        if (format == "json") write_json(sink.os(), io::sample_json(b, &info));
        else io::sample_csv(sink.os(), b);
      }
    } else if (*experiment) {
      if (threads < 1) throw UsageError("--threads must be at least 1");
      ExperimentSpec spec;
      if (preset_name) {
        const auto& names = preset_names();
        if (std::find(names.begin(), names.end(), *preset_name) == names.end())
          throw UsageError("unknown preset '" + *preset_name + "'");
        spec = preset(*preset_name, seed);
      } else {
        if (!e_beta || !e_a || !e_b || !e_m)
          throw UsageError("experiment needs --preset or all of --beta --a --b --m");
        spec.params = {*e_beta, *e_a, *e_b, *e_m};
        spec.law = kLaws.at(e_law);
        spec.scaling = kScalings.at(e_scaling);
        spec.seed = seed;
      }
      if (e_n) spec.n_samples = *e_n;
      if (e_bins) spec.bins = *e_bins;
      if (e_factor) spec.threshold_factor = *e_factor;
      spec.threads = threads;
      if (spec.n_samples < 1) throw UsageError("--n-samples must be at least 1");
      const ExperimentReport r = run_experiment(spec);
      write_json(sink.os(), io::report_json(r));
      if (!csv_prefix.empty()) {
        std::ofstream h(csv_prefix + "_histogram.csv", std::ios::binary), c(csv_prefix + "_curve.csv", std::ios::binary);
        if (!h || !c) throw UsageError("cannot write CSV sidecars with prefix " + csv_prefix);
        io::histogram_csv(h, r.histogram);
        io::curve_csv(c, r);
      }
      return r.pass ? kOk : kKsFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const bjacobi::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
