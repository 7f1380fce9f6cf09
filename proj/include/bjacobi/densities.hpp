#pragma once

// Exact and limiting densities of the extreme eigenvalues, with CDF and
// quantile by quadrature.
//
// Variables of the limit laws (lambda is the smallest eigenvalue):
//   case1_regime1  y = beta (b+m) lambda / 2
//   case1_regime2  y = beta m (b+m) lambda / 2
//   case2_regime1  y = (b+m) lambda
//   case2_regime2  y = m (b+m) lambda

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bjacobi/constants.hpp"
#include "bjacobi/errors.hpp"
#include "bjacobi/hyperg.hpp"
#include "bjacobi/log_value.hpp"
#include "bjacobi/quadrature.hpp"

namespace bjacobi {

enum class LawKind {
  exact_min,
  exact_max,
  case1_exact,
  case2_exact,
  case1_regime1,
  case1_regime2,
  case2_regime1,
  case2_regime2,
};

inline const char* law_name(LawKind k) {
  switch (k) {
    case LawKind::exact_min: return "exact-min";
    case LawKind::exact_max: return "exact-max";
    case LawKind::case1_exact: return "case1";
    case LawKind::case2_exact: return "case2";
    case LawKind::case1_regime1: return "case1-r1";
    case LawKind::case1_regime2: return "case1-r2";
    case LawKind::case2_regime1: return "case2-r1";
    case LawKind::case2_regime2: return "case2-r2";
  }
  return "?";
}

inline const char* law_scaling(LawKind k) {
  switch (k) {
    case LawKind::exact_min:
    case LawKind::case1_exact:
    case LawKind::case2_exact: return "lambda_min";
    case LawKind::exact_max: return "lambda_max";
    case LawKind::case1_regime1: return "y = beta(b+m)lambda_min/2";
    case LawKind::case1_regime2: return "y = beta m(b+m)lambda_min/2";
    case LawKind::case2_regime1: return "y = (b+m)lambda_min";
    case LawKind::case2_regime2: return "y = m(b+m)lambda_min";
  }
  return "?";
}

inline bool is_exact(LawKind k) {
  return k == LawKind::exact_min || k == LawKind::exact_max || k == LawKind::case1_exact ||
         k == LawKind::case2_exact;
}

// Factor taking lambda_min to the variable of a limit law.
inline double limit_scale(LawKind k, double beta, double b, int m) {
  switch (k) {
    case LawKind::case1_regime1: return beta * (b + m) / 2.0;
    case LawKind::case1_regime2: return beta * m * (b + m) / 2.0;
    case LawKind::case2_regime1: return b + m;
    case LawKind::case2_regime2: return static_cast<double>(m) * (b + m);
    default: return 1.0;
  }
}

// The parameters a law was built from.  Unused fields stay at their defaults
// (m = 0 and k = 0 mean "not a parameter of this law").
struct LawSpec {
  LawKind kind = LawKind::exact_min;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  int m = 0;
  int k = 0;
};

// Log-density with the relative error estimate of the hypergeometric factor.
struct PdfValue {
  double log_pdf = -INFINITY;
  double rel_error = 0.0;
};

namespace detail {

class LawImpl {
 public:
  virtual ~LawImpl() = default;
  // x strictly inside the support.
  virtual PdfValue eval(double x) const = 0;
  // Exact laws: density at 1 - d, with d passed exactly.
  virtual PdfValue eval_top(double d) const { return eval(1.0 - d); }
  virtual double upper() const { return 1.0; }  // finite support end, or cut-off
  // p with f(x) ~ x^p as x -> 0, and q with f(x) ~ (1-x)^q as x -> 1
  // (NaN for the limit laws).
  virtual double lower_exponent() const = 0;
  virtual double upper_exponent() const { return NAN; }
  bool singular_at_lower() const { return lower_exponent() < 0.0; }

  struct Table {
    std::vector<double> x;    // breakpoints, x[0] = 0
    std::vector<double> cum;  // integral from 0 to x[i]
    double abs_floor = 0.0;   // absolute error below which segments are not refined
  };

  const Table& table() const {
    std::call_once(once_, [this] { build_table(); });
    return table_;
  }

  double density(double x) const { return std::exp(eval(x).log_pdf); }

  // Integral of the density over [lo, hi] inside segment j of the table.
  // The end segments are integrated in u = (x/hi)^{p+1} (and the same in
  // 1 - x), which removes the power-law endpoint behaviour.
  double segment_integral(std::size_t j, double lo, double hi) const {
    if (hi <= lo) return 0.0;
    const bool top = lo >= 0.5 && !std::isnan(upper_exponent());
    const double tol = segment_tolerance(lo, hi, top);
    if (j == 0)
      return power_substituted([this](double x) { return eval(x); }, lower_exponent(), lo, hi, tol);
    if (j + 2 == table_.x.size() && !std::isnan(upper_exponent()))
      return power_substituted([this](double d) { return eval_top(d); }, upper_exponent(), 1.0 - hi,
                               1.0 - lo, tol);
    // Near 1 the abscissae are coarse in x; integrate in d = 1 - x instead.
    if (top)
      return quad::gauss_kronrod([this](double d) { return std::exp(eval_top(d).log_pdf); }, 1.0 - hi,
                                 1.0 - lo, tol, 12, table_.abs_floor)
          .value;
    return quad::gauss_kronrod([this](double t) { return density(t); }, lo, hi, tol, 12, table_.abs_floor)
        .value;
  }

  // Relative tolerance for one segment: 1e-12, or four times the largest
  // error the evaluator reports at a few points inside it, whichever is
  // larger.  Refining below the integrand's own accuracy only costs time.
  double segment_tolerance(double lo, double hi, bool top) const {
    double noise = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double f = (i + 0.5) / 5.0;
      const PdfValue v = top ? eval_top((1.0 - lo) - f * (hi - lo)) : eval(lo + f * (hi - lo));
      noise = std::max(noise, v.rel_error);
    }
    return std::clamp(4.0 * noise, 1e-12, 0.5);
  }

  // int_lo^hi f with f(x) ~ x^p at 0, through x = hi u^{1/(p+1)}.
  template <class Eval>
  static double power_substituted(Eval&& ev, double p, double lo, double hi, double tol) {
    const double P = p + 1.0;
    const double log_hi = std::log(hi);
    const double scale = std::log(hi / P);
    auto f = [&](double u) {
      const double lr = std::log(u) / P;  // log(x / hi)
      const double x = std::max(hi * std::exp(lr), std::numeric_limits<double>::min());
      return std::exp(ev(x).log_pdf - p * (std::log(x) - log_hi) + scale);
    };
    const double u0 = lo > 0.0 ? std::exp(P * (std::log(lo) - log_hi)) : 0.0;
    return quad::tanh_sinh(f, u0, 1.0, tol).value;
  }

  LawSpec spec;

 protected:
  void build_table() const {
    const double U = upper();
    std::vector<double> pts{0.0, U};
    constexpr int kDepth = 30;
    for (int i = 1; i <= kDepth; ++i) pts.push_back(std::ldexp(U, -i));
    for (int j = 1; j < 64; ++j) pts.push_back(U * j / 64.0);
    if (!std::isnan(upper_exponent()))
      for (int i = 7; i <= kDepth; ++i) pts.push_back(1.0 - std::ldexp(1.0, -i));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    table_.x = pts;
    table_.cum.assign(pts.size(), 0.0);
    // Where the density is many orders below its peak it may carry a large
    // relative error; those segments only need to be right in absolute terms.
    double peak = 0.0;
    for (std::size_t j = 1; j + 1 < pts.size(); ++j) peak = std::max(peak, density(pts[j]));
    table_.abs_floor = 1e-16 * peak * U;
    for (std::size_t j = 0; j + 1 < pts.size(); ++j)
      table_.cum[j + 1] = table_.cum[j] + segment_integral(j, pts[j], pts[j + 1]);
  }

 private:
  mutable std::once_flag once_;
  mutable Table table_;
};

// Point where the log-density has dropped 80 below its maximum, scanning
// powers of two; used as the integration cut-off of the limit laws.
inline double find_cutoff(const LawImpl& law) {
  double best = -INFINITY, best_y = 1.0;
  for (int e = -20; e <= 24; ++e) {
    const double y = std::ldexp(1.0, e);
    const double l = law.eval(y).log_pdf;
    if (l > best) best = l, best_y = y;
    if (y > best_y && l < best - 80.0) return y;
  }
  throw DomainError("limit law: density does not decay within 2^24");
}

// Smallest eigenvalue for general (a, b); the largest-eigenvalue law reflects it.
class ExactMinImpl final : public LawImpl {
 public:
  ExactMinImpl(const JacobiParams& p, bool reflect, std::size_t max_terms) : p_(p), reflect_(reflect) {
    p.validate();
    const double h = p.beta / 2.0;
    log_c_ = norm_min(p);
    pexp_ = h * (p.a + 1.0) - 1.0;
    qexp_ = h * p.m * (p.b + p.m) - 1.0;
    if (p.m > 1)
      g_.emplace(1.0 - h * (p.a + 1.0), h * (p.b + p.m - 1.0), h * (p.b + 2.0 * p.m - 1.0) + 1.0,
                 p.beta, p.m - 1, max_terms);
  }

  PdfValue eval(double x) const override {
    return reflect_ ? at(1.0 - x, x) : at(x, 1.0 - x);
  }
  PdfValue eval_top(double d) const override {
    return reflect_ ? at(d, 1.0 - d) : at(1.0 - d, d);
  }

  // lam and 1 - lam, each passed at full precision.
  PdfValue at(double lam, double oml) const {
    if (!(lam > 0.0 && oml > 0.0)) return edge(lam);
    PdfValue r;
    double lg = 0.0;
    if (g_) {
      Identity2F1::Result v = g_->at_one_minus(lam);
      // Deep in the tail the remainder model reduces to g(1); keep that
      // magnitude, flagged as unresolved, rather than a spurious sign.
      if (v.value.sign <= 0 && g_->edge_exponent() > 0.0 && lam < 1e-3) v = {g_->at_one(), 1.0, 0};
      if (v.value.sign <= 0)
        throw NonConvergence("exact density: hypergeometric factor lost its sign at lambda = " +
                                 std::to_string(lam),
                             static_cast<int>(v.terms), v.rel_error);
      lg = v.value.log_abs;
      r.rel_error = v.rel_error;
    }
    r.log_pdf = log_c_.log_abs + pexp_ * std::log(lam) + qexp_ * std::log(oml) + lg;
    return r;
  }

  double lower_exponent() const override { return reflect_ ? qexp_ : pexp_; }
  double upper_exponent() const override { return reflect_ ? pexp_ : qexp_; }

 private:
  // Limits at lambda = 0 and 1.
  PdfValue edge(double lam) const {
    if (lam <= 0.0) {
      if (lam < 0.0) throw DomainError("exact density: lambda must lie in [0,1]");
      if (pexp_ > 0.0) return {-INFINITY, 0.0};
      if (pexp_ < 0.0) return {INFINITY, 0.0};
      const double lg = g_ ? g_->at_one().log_abs : 0.0;
      return {log_c_.log_abs + lg, 0.0};
    }
    if (lam <= 1.0) {
      if (qexp_ > 0.0) return {-INFINITY, 0.0};
      if (qexp_ < 0.0) return {INFINITY, 0.0};
      return {log_c_.log_abs, 0.0};
    }
    throw DomainError("exact density: lambda must lie in [0,1]");
  }

  JacobiParams p_;
  bool reflect_;
  LogValue log_c_;
  double pexp_ = 0.0, qexp_ = 0.0;
  std::optional<Identity2F1> g_;
};

// a = 2/beta - 2 via classical 2F1s: the two-term form near 0, the
// single-series form in 1 - lambda elsewhere.
class Case1ExactImpl final : public LawImpl {
 public:
  Case1ExactImpl(double beta, double b, int m) : beta_(beta), b_(b), m_(m) {
    k_ = case1_constants(beta, b, m);
    const double h = beta / 2.0;
    a1_ = h * (b + m - 1);
    b1_ = h * (m - 1);
    c_ = h * (b + 2 * m - 1) + 1.0;
    q_ = h * m * (b + m) - 1.0;
    // T1 coefficient 1/(Gamma(-h) Gamma(hm+1)); T2 coefficient
    // Gamma(h(b+m)+1) / (Gamma(h+2) Gamma(b1) Gamma(a1)).
    t1_ = log_rgamma(-h) * log_rgamma(h * m + 1.0);
    t2_ = log_gamma(h * (b + m) + 1.0) * log_rgamma(h + 2.0) * log_rgamma(b1_) * log_rgamma(a1_);
    // The two terms cancel like e^y y^{b1+1+h} with y ~ (a1+b1+1) lambda;
    // switch once that reaches about 1e4.
    double y = 0.0;
    while (y < 60.0 && y + (b1_ + 1.0 + h) * std::log(std::max(y, 1.0)) < 9.2) y += 0.05;
    lambda_switch_ = std::min(0.5, std::max(y, 0.05) / (a1_ + b1_ + 1.0));
  }

  PdfValue eval(double lam) const override { return at(lam, 1.0 - lam); }
  PdfValue eval_top(double d) const override { return at(1.0 - d, d); }

  PdfValue at(double lam, double oml) const {
    if (!(lam > 0.0 && oml > 0.0)) {
      if (lam == 0.0) return {INFINITY, 0.0};
      if (oml == 0.0) return {q_ > 0 ? -INFINITY : (q_ < 0 ? INFINITY : 0.0), 0.0};
      throw DomainError("case 1 density: lambda must lie in [0,1]");
    }
    const double h = beta_ / 2.0;
    const double base = -h * std::log(lam) + q_ * std::log(oml);
    if (lam < lambda_switch_) {
      const double f1 = gauss_2f1_series(a1_, b1_, -h, lam).value;
      LogValue bracket = t1_ * LogValue::from(f1);
      if (!t2_.is_zero()) {
        const double f2 = gauss_2f1_series(h * m_ + 1.0, h * (b_ + m_) + 1.0, 2.0 + h, lam).value;
        bracket = bracket - t2_ * LogValue::from(f2) * LogValue::from_log((1.0 + h) * std::log(lam));
      }
      const LogValue v = k_.C_tilde * bracket;
      if (v.sign <= 0) throw NonConvergence("case 1 density: cancellation destroyed the value", 0, 1.0);
      return {v.log_abs + base, 0.0};
    }
    const double f = gauss_2f1_series(a1_, b1_, c_, oml).value;
    return {k_.C.log_abs + base + std::log(f), 0.0};
  }

  double lower_exponent() const override { return -beta_ / 2.0; }
  double upper_exponent() const override { return q_; }
  double switch_point() const { return lambda_switch_; }

 private:
  double beta_, b_;
  int m_;
  Case1Constants k_;
  double a1_, b1_, c_, q_;
  LogValue t1_, t2_;
  double lambda_switch_;
};

class Case2ExactImpl final : public LawImpl {
 public:
  Case2ExactImpl(double beta, int k, double b, int m) : beta_(beta), k_(k), b_(b), m_(m) {
    log_w_ = case2_constants(beta, k, b, m).W;
    q_ = beta / 2.0 * m * (b + m) - 1.0;
    p_.upper = {1.0 - m, 1.0 - m - b};
    p_.lower = {2.0 + 2.0 / beta * (k - 1)};
    p_.gamma = 4.0 / beta;
  }

  PdfValue eval(double lam) const override { return at(lam, 1.0 - lam); }
  PdfValue eval_top(double d) const override { return at(1.0 - d, d); }

  PdfValue at(double lam, double oml) const {
    if (!(lam >= 0.0 && oml >= 0.0)) throw DomainError("case 2 density: lambda must lie in [0,1]");
    double l = log_w_.log_abs + std::log(polynomial(lam));
    if (k_ > 1) l += (k_ - 1) * std::log(lam);
    if (oml == 0.0) return {q_ > 0 ? -INFINITY : (q_ < 0 ? INFINITY : l), 0.0};
    return {l + q_ * std::log(oml), 0.0};
  }

  double polynomial(double lam) const {
    return mhg(p_, lam, k_ - 1, (m_ - 1) * (k_ - 1) + 1).value;
  }

  double lower_exponent() const override { return k_ - 1.0; }
  double upper_exponent() const override { return q_; }

 private:
  double beta_;
  int k_;
  double b_;
  int m_;
  LogValue log_w_;
  double q_;
  MhgParams p_;
};

class Case1Regime1Impl final : public LawImpl {
 public:
  Case1Regime1Impl(double beta, int m) : beta_(beta), m_(m) {
    check_case1_beta(beta);
    if (m < 1) throw DomainError("case 1 regime 1: m must be at least 1");
    const double h = beta / 2.0;
    log_k_ = std::log(2.0 / (beta * std::numbers::pi)) + std::lgamma(1.0 + h) +
             std::log(std::sin(h * std::numbers::pi)) + std::log(static_cast<double>(m)) +
             std::lgamma(h * (m - 1) + 1.0);
    cutoff_ = find_cutoff(*this);
  }

  PdfValue eval(double y) const override {
    if (!(y > 0.0)) {
      if (y == 0.0) return {INFINITY, 0.0};
      throw DomainError("case 1 regime 1: y must be non-negative");
    }
    const double h = beta_ / 2.0;
    return {log_k_ - h * std::log(y) - m_ * y + log_tricomi_u(h * (m_ - 1), -h, y), 0.0};
  }

  double upper() const override { return cutoff_; }
  double lower_exponent() const override { return -beta_ / 2.0; }

 private:
  double beta_;
  int m_;
  double log_k_;
  double cutoff_ = 1.0;
};

class Case1Regime2Impl final : public LawImpl {
 public:
  explicit Case1Regime2Impl(double beta) : beta_(beta) {
    check_case1_beta(beta);
    const double h = beta / 2.0;
    log_k_ = std::log(4.0 * std::sin(h * std::numbers::pi) / (beta * std::numbers::pi)) +
             (0.5 - beta / 4.0) * std::log(h) + std::lgamma(1.0 + h);
    cutoff_ = find_cutoff(*this);
  }

  PdfValue eval(double y) const override {
    if (!(y > 0.0)) {
      if (y == 0.0) return {INFINITY, 0.0};
      throw DomainError("case 1 regime 2: y must be non-negative");
    }
    const double h = beta_ / 2.0;
    return {log_k_ + (0.5 - beta_ / 4.0) * std::log(y) - y +
                log_bessel_k(1.0 + h, std::sqrt(2.0 * beta_ * y)),
            0.0};
  }

  double upper() const override { return cutoff_; }
  double lower_exponent() const override { return -beta_ / 2.0; }

 private:
  double beta_;
  double log_k_;
  double cutoff_ = 1.0;
};

class Case2Regime1Impl final : public LawImpl {
 public:
  Case2Regime1Impl(double beta, int k, int m) : beta_(beta), k_(k), m_(m) {
    check_case2(beta, k, 0.0, m);
    const double h = beta / 2.0;
    log_k_ = k * std::log(h) + std::lgamma(1.0 + h) - std::lgamma(k) - std::lgamma(k + h) +
             std::log(static_cast<double>(m)) + std::lgamma(k + h * m) - std::lgamma(1.0 + h * m);
    p_.upper = {1.0 - m};
    p_.lower = {2.0 + 2.0 / beta * (k - 1)};
    p_.gamma = 4.0 / beta;
    cutoff_ = find_cutoff(*this);
  }

  PdfValue eval(double y) const override {
    if (!(y >= 0.0)) throw DomainError("case 2 regime 1: y must be non-negative");
    const double h = beta_ / 2.0;
    const double poly = mhg(p_, -y, k_ - 1, (m_ - 1) * (k_ - 1) + 1).value;
    double l = log_k_ - h * m_ * y + std::log(poly);
    if (k_ > 1) l += (k_ - 1) * std::log(y);
    return {l, 0.0};
  }

  double upper() const override { return cutoff_; }
  double lower_exponent() const override { return k_ - 1.0; }

 private:
  double beta_;
  int k_, m_;
  double log_k_;
  MhgParams p_;
  double cutoff_ = 1.0;
};

class Case2Regime2Impl final : public LawImpl {
 public:
  Case2Regime2Impl(double beta, int k) : beta_(beta), k_(k) {
    check_case2(beta, k, 0.0, 1);
    const double h = beta / 2.0;
    log_k_ = (2 * k - 1) * std::log(h) + std::lgamma(1.0 + h) - std::lgamma(k) - std::lgamma(k + h);
    p_.lower = {2.0 + 2.0 / beta * (k - 1)};
    p_.gamma = 4.0 / beta;
    cutoff_ = find_cutoff(*this);
  }

  PdfValue eval(double y) const override {
    if (!(y >= 0.0)) throw DomainError("case 2 regime 2: y must be non-negative");
    const double h = beta_ / 2.0;
    double l = log_k_ - h * y;
    if (k_ > 1) l += (k_ - 1) * std::log(y) + std::log(mhg(p_, y, k_ - 1, 1000, 1e-15).value);
    return {l, 0.0};
  }

  double upper() const override { return cutoff_; }
  double lower_exponent() const override { return k_ - 1.0; }

 private:
  double beta_;
  int k_;
  double log_k_;
  MhgParams p_;
  double cutoff_ = 1.0;
};

}  // namespace detail

inline constexpr std::size_t kDefaultSeriesTerms = std::size_t{1} << 17;

// Immutable handle to one density; copies share the evaluator.
class DensityLaw {
 public:
  static DensityLaw exact_min(const JacobiParams& p, std::size_t max_terms = kDefaultSeriesTerms) {
    return make(std::make_shared<detail::ExactMinImpl>(p, false, max_terms),
                {LawKind::exact_min, p.beta, p.a, p.b, p.m, 0});
  }
  static DensityLaw exact_max(const JacobiParams& p, std::size_t max_terms = kDefaultSeriesTerms) {
    return make(std::make_shared<detail::ExactMinImpl>(p.swapped(), true, max_terms),
                {LawKind::exact_max, p.beta, p.a, p.b, p.m, 0});
  }
  static DensityLaw case1_exact(double beta, double b, int m) {
    return make(std::make_shared<detail::Case1ExactImpl>(beta, b, m),
                {LawKind::case1_exact, beta, case1_a(beta), b, m, 0});
  }
  static DensityLaw case2_exact(double beta, int k, double b, int m) {
    return make(std::make_shared<detail::Case2ExactImpl>(beta, k, b, m),
                {LawKind::case2_exact, beta, case2_a(beta, k), b, m, k});
  }
  static DensityLaw case1_regime1(double beta, int m) {
    return make(std::make_shared<detail::Case1Regime1Impl>(beta, m),
                {LawKind::case1_regime1, beta, case1_a(beta), 0.0, m, 0});
  }
  static DensityLaw case1_regime2(double beta) {
    return make(std::make_shared<detail::Case1Regime2Impl>(beta),
                {LawKind::case1_regime2, beta, case1_a(beta), 0.0, 0, 0});
  }
  static DensityLaw case2_regime1(double beta, int k, int m) {
    return make(std::make_shared<detail::Case2Regime1Impl>(beta, k, m),
                {LawKind::case2_regime1, beta, case2_a(beta, k), 0.0, m, k});
  }
  static DensityLaw case2_regime2(double beta, int k) {
    return make(std::make_shared<detail::Case2Regime2Impl>(beta, k),
                {LawKind::case2_regime2, beta, case2_a(beta, k), 0.0, 0, k});
  }

  LawKind kind() const { return impl_->spec.kind; }
  const LawSpec& spec() const { return impl_->spec; }
  const char* name() const { return law_name(kind()); }
  const char* scaling() const { return law_scaling(kind()); }

  // (0, 1) for exact laws, (0, inf) for limit laws.
  std::pair<double, double> support() const {
    return {0.0, is_exact(kind()) ? 1.0 : INFINITY};
  }
  // Point beyond which the density is negligible (1 for exact laws).
  double effective_upper() const { return impl_->upper(); }
  bool singular_at_lower() const { return impl_->singular_at_lower(); }

  PdfValue evaluate(double x) const {
    check_support(x);
    if (!is_exact(kind()) && std::isinf(x)) return {-INFINITY, 0.0};
    return impl_->eval(x);
  }
  double log_pdf(double x) const { return evaluate(x).log_pdf; }
  double pdf(double x) const { return std::exp(log_pdf(x)); }

  // Integral of the density over the whole support.
  double total_mass() const { return impl_->table().cum.back(); }

  const detail::LawImpl& impl() const { return *impl_; }

 private:
  static DensityLaw make(std::shared_ptr<detail::LawImpl> p, LawSpec s) {
    p->spec = s;
    DensityLaw d;
    d.impl_ = std::move(p);
    return d;
  }

  void check_support(double x) const {
    if (std::isnan(x)) throw DomainError("density: NaN argument");
    if (x < 0.0 || (is_exact(kind()) && x > 1.0)) {
      std::ostringstream os;
      os << name() << ": argument " << x << " outside the support";
      throw DomainError(os.str());
    }
  }

  std::shared_ptr<const detail::LawImpl> impl_;
};

namespace detail {

// Series length that resolves 1 - lambda without the remainder model, capped.
inline std::size_t terms_for(const JacobiParams& p, double lam) {
  if (!(lam > 0.0)) return kDefaultSeriesTerms;
  const double h = p.beta / 2.0;
  const double e = (p.m - 1) * h * (p.a + p.m + 1.0);  // n (C - A - B)
  const double want = (100.0 + 2.0 * e) / lam;
  std::size_t k = 1024;
  while (k < kDefaultSeriesTerms && static_cast<double>(k) < want) k <<= 1;
  return k;
}

}  // namespace detail

// Single-point evaluations.  Each builds its own evaluator; construct a
// DensityLaw once to evaluate many points.
inline double pdf_min_exact(const JacobiParams& p, double lambda) {
  p.validate();
  return DensityLaw::exact_min(p, detail::terms_for(p, std::min(lambda, 1.0))).pdf(lambda);
}
inline double pdf_max_exact(const JacobiParams& p, double lambda) {
  p.validate();
  return DensityLaw::exact_max(p, detail::terms_for(p.swapped(), std::min(1.0 - lambda, 1.0)))
      .pdf(lambda);
}
inline double pdf_min_case1(double beta, double b, int m, double lambda) {
  return DensityLaw::case1_exact(beta, b, m).pdf(lambda);
}
inline double pdf_min_case2(double beta, int k, double b, int m, double lambda) {
  return DensityLaw::case2_exact(beta, k, b, m).pdf(lambda);
}
inline double pdf_case1_regime1(double beta, int m, double y) {
  return DensityLaw::case1_regime1(beta, m).pdf(y);
}
inline double pdf_case1_regime2(double beta, double y) {
  return DensityLaw::case1_regime2(beta).pdf(y);
}
inline double pdf_case2_regime1(double beta, int k, int m, double y) {
  return DensityLaw::case2_regime1(beta, k, m).pdf(y);
}
inline double pdf_case2_regime2(double beta, int k, double y) {
  return DensityLaw::case2_regime2(beta, k).pdf(y);
}

// G_beta(y) from its two 0F1 terms.
inline double g_beta_0f1(double beta, double y) {
  const double h = beta / 2.0;
  const double z = h * y;
  return of1(-h, z) / std::tgamma(-h) - std::pow(z, 1.0 + h) * of1(2.0 + h, z) / std::tgamma(2.0 + h);
}

// G_beta(y) through K_{1+beta/2}.
inline double g_beta_bessel(double beta, double y) {
  const double h = beta / 2.0;
  return -2.0 * std::sin(h * std::numbers::pi) / std::numbers::pi * std::pow(h * y, 0.5 + beta / 4.0) *
         bessel_k(1.0 + h, std::sqrt(2.0 * beta * y));
}

// Closed form of the case 1 regime 2 law at beta = 1.
inline double case1_regime2_beta1(double y) {
  const double s = std::sqrt(2.0 * y);
  return (1.0 + s) / s * std::exp(-y - s);
}

// Cumulative distribution function; not renormalized by total_mass().
inline double cdf(const DensityLaw& law, double t) {
  if (std::isnan(t)) throw DomainError("cdf: NaN argument");
  if (t <= 0.0) return 0.0;
  const auto& tab = law.impl().table();
  if (t >= tab.x.back()) return std::min(1.0, tab.cum.back());
  const std::size_t j =
      static_cast<std::size_t>(std::upper_bound(tab.x.begin(), tab.x.end(), t) - tab.x.begin()) - 1;
  const double v = tab.cum[j] + law.impl().segment_integral(j, tab.x[j], t);
  return std::clamp(v, 0.0, 1.0);
}

// CDF at ascending points, sharing work between neighbours.
inline std::vector<double> cdf_at_sorted(const DensityLaw& law, const std::vector<double>& xs) {
  const auto& tab = law.impl().table();
  std::vector<double> out(xs.size());
  double prev_x = 0.0, prev_v = 0.0;
  std::size_t prev_j = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t = xs[i];
    if (i > 0 && t < xs[i - 1]) throw DomainError("cdf_at_sorted: points must be ascending");
    if (t <= 0.0) {
      out[i] = 0.0;
      continue;
    }
    if (t >= tab.x.back()) {
      out[i] = std::min(1.0, tab.cum.back());
      continue;
    }
    const std::size_t j =
        static_cast<std::size_t>(std::upper_bound(tab.x.begin(), tab.x.end(), t) - tab.x.begin()) - 1;
    double v;
    if (i > 0 && j == prev_j && prev_x > tab.x[j])
      v = prev_v + law.impl().segment_integral(j, prev_x, t);
    else
      v = tab.cum[j] + law.impl().segment_integral(j, tab.x[j], t);
    prev_x = t, prev_v = v, prev_j = j;
    out[i] = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

// Inverse CDF by bisection to 1e-10 in probability.
inline double quantile(const DensityLaw& law, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0,1)");
  const auto& tab = law.impl().table();
  if (p >= tab.cum.back()) return tab.x.back();
  const std::size_t j =
      static_cast<std::size_t>(std::upper_bound(tab.cum.begin(), tab.cum.end(), p) - tab.cum.begin()) - 1;
  double lo = tab.x[j], hi = tab.x[j + 1];
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = tab.cum[j] + law.impl().segment_integral(j, tab.x[j], mid);
    if (std::fabs(v - p) < 1e-10) return mid;
    (v < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bjacobi
