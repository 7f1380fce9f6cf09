#pragma once

// 2F1^gamma(A, B; C; z I_n) as a power series in z.
//
// The level sums Q_k = sum_{kappa |- k} (A)_kappa (B)_kappa / ((C)_kappa k!)
// C_kappa(I_n) satisfy a banded recurrence in an auxiliary index p = 0..n,
// obtained from integration by parts in the Selberg-type integral
// representation.  With tau = gamma/2:
//
//   alpha_p = (n-p+1)(B - (p-1)tau)        v_p   = p (C - (p-1)tau)
//   u_p     = p (1 + A + B + (n+1-2p)tau)  kappa_p = (p+1)(p tau - A)
//
//   c_{0,0} = 1,  c_{p,0} = alpha_p c_{p-1,0} / v_p
//   c_{0,k} = A c_{1,k-1} / k
//   (k + v_p) c_{p,k} = (k-1+u_p) c_{p,k-1} + alpha_p c_{p-1,k}
//                       + kappa_p (c_{p+1,k-2} - c_{p+1,k-1}),   c_{n+1,.} = 0
//
// and Q_k = c_{0,k}.  Cost is O(n) per coefficient instead of a sum over
// all partitions of k.  The partition-sum engine in mhg.hpp is kept as an
// independent check.
//
// Evaluation at z = 1 - w carries two forms:
//   direct:  sum Q_k z^k.  For tiny w the part beyond the stored
//            coefficients comes from a least-squares fit of Q_k to the
//            powers k^{-s} allowed by the local exponents at z = 1, with
//            the leading amplitude corrected so the model reproduces the
//            exact value at z = 1;
//   Euler:   w^{n(C-A-B)} 2F1^gamma(C-A, C-B; C; z I_n), whose terms do not
//            cancel when A is very negative.  Its remainder is modelled by
//            the leading singular term only.
// The form with the smaller error estimate is returned.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bjacobi/errors.hpp"
#include "bjacobi/log_value.hpp"
#include "bjacobi/quadrature.hpp"

namespace bjacobi {

namespace detail {

// log|Gamma(x)| and sign in long double, reflection for x < 0.
inline long double lgamma_ld(long double x, int& sign) {
  if (x <= 0 && x == std::nearbyint(x)) throw DomainError("Gamma pole in identity 2F1");
  if (x > 0) {
    sign = 1;
    return std::lgamma(x);
  }
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double s = std::sin(pi * x);
  sign = s > 0 ? 1 : -1;
  return std::log(pi) - std::log(std::fabs(s)) - std::lgamma(1 - x);
}

// Numbers mantissa * 2^exponent with a long double mantissa.
struct Scaled {
  long double mant = 0;
  long exponent = 0;

  static Scaled make(long double m, long e) {
    if (m == 0) return {0, 0};
    int ex = 0;
    const long double f = std::frexp(m, &ex);
    return {f, e + ex};
  }
  // log2|x|, -inf for zero
  long double log2abs() const {
    if (mant == 0) return -std::numeric_limits<long double>::infinity();
    return std::log2(std::fabs(mant)) + static_cast<long double>(exponent);
  }
};

// Streaming sum of terms given as (mantissa, log2 scale) with a running
// reference exponent; also tracks the sum of absolute values.
class ScaledAccumulator {
 public:
  void add(long double mant, long double log2scale) {
    if (mant == 0) return;
    if (!started_) {
      ref_ = log2scale;
      started_ = true;
    } else if (log2scale > ref_ + 64) {
      const long double f = std::exp2(ref_ - log2scale);
      sum_ *= f;
      abs_ *= f;
      ref_ = log2scale;
    }
    const long double t = mant * std::exp2(log2scale - ref_);
    sum_ += t;
    abs_ += std::fabs(t);
  }
  // Same with an integer scale; returns the term on the current reference
  // scale (the previous return value is rescaled through *prev).
  long double add_exact(long double mant, long e, long double* prev) {
    if (mant == 0) return 0;
    if (!started_) {
      ref_ = static_cast<long double>(e);
      started_ = true;
    } else if (static_cast<long double>(e) > ref_ + 64) {
      const int shift = static_cast<int>(ref_ - static_cast<long double>(e));
      sum_ = std::ldexp(sum_, shift);
      abs_ = std::ldexp(abs_, shift);
      *prev = std::ldexp(*prev, shift);
      ref_ = static_cast<long double>(e);
    }
    const long double d = static_cast<long double>(e) - ref_;
    const long double t = d < -20000 ? 0.0L : std::ldexp(mant, static_cast<int>(d));
    sum_ += t;
    abs_ += std::fabs(t);
    return t;
  }
  bool started() const { return started_; }
  // log2 of |sum|, sign, log2 of the absolute sum
  long double log2_sum() const { return started_ && sum_ != 0 ? std::log2(std::fabs(sum_)) + ref_ : -INFINITY; }
  long double log2_abs() const { return started_ && abs_ != 0 ? std::log2(abs_) + ref_ : -INFINITY; }
  int sign() const { return sum_ > 0 ? 1 : (sum_ < 0 ? -1 : 0); }
  long double ref() const { return ref_; }
  long double raw_sum() const { return sum_; }
  long double raw_abs() const { return abs_; }
  void assign(long double sum, long double abs, long double ref) {
    sum_ = sum, abs_ = abs, ref_ = ref, started_ = true;
  }

 private:
  long double sum_ = 0;
  long double abs_ = 0;
  long double ref_ = 0;
  bool started_ = false;
};

inline std::vector<Scaled> identity_2f1_coefficients(long double A, long double B, long double C,
                                                     long double tau, int n, std::size_t K) {
  std::vector<Scaled> q(K + 1);
  if (n == 0) {
    q[0] = Scaled::make(1, 0);
    return q;
  }
  const std::size_t P = static_cast<std::size_t>(n) + 2;
  std::vector<long double> alpha(P), u(P), v(P), kap(P);
  for (int p = 0; p <= n; ++p) {
    alpha[p] = (n - p + 1) * (B - (p - 1) * tau);
    u[p] = p * (1 + A + B + (n + 1 - 2 * p) * tau);
    v[p] = p * (C - (p - 1) * tau);
    kap[p] = (p + 1) * (p * tau - A);
  }
  std::vector<long double> prev2(P, 0), prev(P, 0), cur(P, 0), p2(P, 0);
  long e_prev2 = 0, e_prev = 0;

  auto renormalize = [&](std::vector<long double>& row, long& e) {
    long double mx = 0;
    for (long double x : row) mx = std::max(mx, std::fabs(x));
    if (mx == 0) return;
    const int lg = std::ilogb(mx);
    if (lg > 1000 || lg < -1000) {
      for (long double& x : row) x = std::ldexp(x, -lg);
      e += lg;
    }
  };

  cur[0] = 1;
  for (int p = 1; p <= n; ++p) {
    if (v[p] == 0) throw IllConditioned("identity 2F1: C - (p-1) gamma/2 vanishes");
    cur[p] = alpha[p] * cur[p - 1] / v[p];
  }
  long e_cur = 0;
  renormalize(cur, e_cur);
  q[0] = Scaled::make(cur[0], e_cur);

  for (std::size_t k = 1; k <= K; ++k) {
    prev2.swap(prev);
    e_prev2 = e_prev;
    prev.swap(cur);
    e_prev = e_cur;
    // bring row k-2 onto the scale of row k-1
    const long shift = e_prev2 - e_prev;
    std::fill(p2.begin(), p2.end(), 0.0L);
    if (k >= 2 && shift > -16000)
      for (std::size_t p = 0; p < P; ++p) p2[p] = std::ldexp(prev2[p], static_cast<int>(shift));
    const long double kk = static_cast<long double>(k);
    cur.assign(P, 0);
    cur[0] = A * prev[1] / kk;
    for (int p = 1; p <= n; ++p) {
      const long double den = kk + v[p];
      if (den == 0) throw IllConditioned("identity 2F1: vanishing recurrence denominator");
      cur[p] = ((kk - 1 + u[p]) * prev[p] + alpha[p] * cur[p - 1] +
                kap[p] * (p2[p + 1] - prev[p + 1])) /
               den;
    }
    e_cur = e_prev;
    renormalize(cur, e_cur);
    q[k] = Scaled::make(cur[0], e_cur);
  }
  return q;
}

// E_s(x) = int_1^inf exp(-x u) u^{-s} du, s > 1, x >= 0.
inline double generalized_expint(double s, double x) {
  if (x == 0) return 1.0 / (s - 1.0);
  if (x > 1.0) {
    // continued fraction, modified Lentz
    const double tiny = 1e-300;
    double b = x + s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
      const double an = -i * (s - 1.0 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const double del = c * d;
      h *= del;
      if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
  }
  const double r = std::nearbyint(s);
  if (std::fabs(s - r) < 1e-12 && r >= 0 && r < 1000)
    return boost::math::expint(static_cast<unsigned>(r), x);
  if (std::fabs(s - r) > 1e-3) {
    // x^{s-1} Gamma(1-s) - sum_k (-x)^k / (k! (1-s+k))
    double sum = 0.0, t = 1.0;
    for (int k = 0; k < 200; ++k) {
      if (k > 0) t *= -x / k;
      const double term = t / (1.0 - s + k);
      sum += term;
      if (k > s && std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return std::pow(x, s - 1.0) * boost::math::tgamma(1.0 - s) - sum;
  }
  return quad::exp_sinh([&](double u) { return std::exp(-x * u - s * std::log(u)); }, 1.0, 1e-12)
      .value;
}

}  // namespace detail

class Identity2F1 {
 public:
  enum class Method { exact_one, direct, near_one, euler };

  struct Result {
    LogValue value;
    double rel_error = 0.0;  // estimated relative error
    std::size_t terms = 0;
    Method method = Method::direct;
  };

  Identity2F1(double a, double b, double c, double gamma, int n,
              std::size_t max_terms = std::size_t{1} << 17)
      : a_(a), b_(b), c_(c), tau_(gamma / 2), n_(n), K_(std::max<std::size_t>(max_terms, 16)) {
    if (n < 0) throw DomainError("identity 2F1: negative dimension");
    if (!(gamma > 0)) throw DomainError("identity 2F1: gamma must be positive");
    direct_ = detail::identity_2f1_coefficients(a, b, c, tau_, n, K_);
    if (n_ > 0) {
      euler_ = detail::identity_2f1_coefficients(static_cast<long double>(c) - a,
                                                 static_cast<long double>(c) - b, c, tau_, n, K_);
      euler_power_ = static_cast<long double>(n) * (static_cast<long double>(c) - a - b);
    }
    direct_flat_ = flatten(direct_, direct_base_);
    euler_flat_ = flatten(euler_, euler_base_);
    direct_degree_ = terminating_degree(direct_);
    euler_degree_ = terminating_degree(euler_);
    e1_ = static_cast<long double>(c) - a - b - (n - 1) * static_cast<long double>(tau_);
    if (n_ > 0 && e1_ > 0) prepare_near_one();
  }

  int dimension() const { return n_; }
  std::size_t stored_terms() const { return K_ + 1; }
  // Exponent of the leading singular term (1-z)^{e1} at z = 1.
  double edge_exponent() const { return static_cast<double>(e1_); }

  // Level sum Q_k as a plain double (may overflow to inf for large k).
  double coefficient(std::size_t k) const {
    const detail::Scaled& s = direct_.at(k);
    return static_cast<double>(std::ldexp(s.mant, static_cast<int>(s.exponent)));
  }

  // Closed-form value at z = 1 (requires e1 > 0).
  LogValue at_one() const {
    if (n_ == 0) return LogValue::one();
    if (!(e1_ > 0)) throw DomainError("identity 2F1 at z = 1 diverges (C - A - B - (n-1)gamma/2 <= 0)");
    int sign = 1;
    const long double lg = log_at_one_ld(sign);
    return {sign, static_cast<double>(lg)};
  }

  // Value at z = 1 - w, w in [0, 1].
  Result at_one_minus(double w) const {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("identity 2F1: argument 1 - w needs w in [0,1]");
    if (n_ == 0 || w == 1.0) return {LogValue::one(), 0.0, 1, Method::direct};
    if (w == 0.0) return {at_one(), 1e-15, 0, Method::exact_one};

    const long double log2z = std::log1p(-static_cast<long double>(w)) / std::log(2.0L);
    const Partial d = partial_sum(direct_, direct_flat_, direct_base_, direct_degree_, log2z, w);
    Result best = direct_result(d, log2z);
    if (best.rel_error < 1e-14) return best;
    const Partial e = partial_sum(euler_, euler_flat_, euler_base_, euler_degree_, log2z, w);
    Result eu = euler_result(e, w, log2z);
    return eu.rel_error < best.rel_error ? eu : best;
  }

 private:
  struct Partial {
    detail::ScaledAccumulator acc;
    std::size_t terms = 0;
    bool converged = false;
    long double last_log2 = -INFINITY;  // log2 |last term|
  };

  static constexpr long double kEps = 1.1e-19L;
  static constexpr std::size_t kNoDegree = static_cast<std::size_t>(-1);

  // Sum coefficients * z^k until the remaining terms are below 2^-70 of the
  // running sum (tail bounded by last term / w), or the table ends.
  // Coefficients as long doubles times 2^-base, if the exponent range fits.
  static std::vector<long double> flatten(const std::vector<detail::Scaled>& q, long& base) {
    long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
    for (const detail::Scaled& x : q)
      if (x.mant != 0) lo = std::min(lo, x.exponent), hi = std::max(hi, x.exponent);
    base = hi;
    if (q.empty() || lo > hi || hi - lo > 32000) return {};
    std::vector<long double> f(q.size());
    for (std::size_t k = 0; k < q.size(); ++k)
      f[k] = std::ldexp(q[k].mant, static_cast<int>(q[k].exponent - base));
    return f;
  }

  // Degree of a series whose coefficients vanish from some point on (a
  // non-positive integer upper parameter), or npos.
  static std::size_t terminating_degree(const std::vector<detail::Scaled>& q) {
    std::size_t last = 0;
    for (std::size_t k = 0; k < q.size(); ++k)
      if (q[k].mant != 0) last = k;
    return last + 16 < q.size() ? last : kNoDegree;
  }

  Partial partial_sum(const std::vector<detail::Scaled>& q, const std::vector<long double>& flat,
                      long base, std::size_t degree, long double log2z, double w) const {
    if (!flat.empty()) return partial_sum_flat(flat, base, degree, log2z, w);
    Partial r;
    const long double z = std::exp2(log2z);
    long double zm = 1;  // z^k = zm * 2^ze
    long ze = 0;
    long double prev = INFINITY;
    int decreasing = 0;
    const long double stop = std::ldexp(static_cast<long double>(w), -70);
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k > 0) {
        zm *= z;
        if (zm < 0x1p-64L) {
          int e = 0;
          zm = std::frexp(zm, &e);
          ze += e;
        }
      }
      const long double t = std::fabs(r.acc.add_exact(q[k].mant * zm, q[k].exponent + ze, &prev));
      r.terms = k + 1;
      if (k == degree) {
        r.converged = true;
        break;
      }
      decreasing = t < prev ? decreasing + 1 : 0;
      prev = t;
      if (k >= 4 && decreasing >= 3 && r.acc.started() && t < stop * r.acc.raw_abs()) {
        r.converged = true;
        break;
      }
    }
    if (r.acc.started() && prev > 0)
      r.last_log2 = std::log2(prev) + r.acc.ref();
    return r;
  }

  Partial partial_sum_flat(const std::vector<long double>& f, long base, std::size_t degree,
                           long double log2z, double w) const {
    Partial r;
    const long double z = std::exp2(log2z);
    const long double stop = std::ldexp(static_cast<long double>(w), -70);
    long double zk = 1, sum = 0, abs = 0, prev = INFINITY;
    int decreasing = 0;
    std::size_t k = 0;
    for (; k < f.size(); ++k, zk *= z) {
      const long double t = f[k] * zk;
      sum += t;
      const long double at = std::fabs(t);
      abs += at;
      decreasing = at < prev ? decreasing + 1 : 0;
      prev = at;
      if (k == degree || (k >= 4 && decreasing >= 3 && at < stop * abs)) {
        r.converged = true;
        ++k;
        break;
      }
    }
    r.terms = k;
    r.acc.assign(sum, abs, static_cast<long double>(base));
    if (prev > 0) r.last_log2 = std::log2(prev) + static_cast<long double>(base);
    return r;
  }

  Result direct_result(const Partial& d, long double log2z) const {
    Result r;
    r.terms = d.terms;
    r.method = Method::direct;
    if (d.converged) {
      r.value = to_logvalue(d.acc.sign(), d.acc.log2_sum());
      r.rel_error = rel_from(d.acc.log2_abs(), d.acc.log2_sum(), kEps * 8);
      return r;
    }
    if (!have_near_one_) {
      r.value = to_logvalue(d.acc.sign(), d.acc.log2_sum());
      r.rel_error = std::numeric_limits<double>::infinity();
      return r;
    }
    // S_K(z) + sum_j tail_j(z) + delta * shape_1(z)
    r.method = Method::near_one;
    const long double lambda_prime = -log2z * std::log(2.0L);
    const double x = static_cast<double>(lambda_prime * (static_cast<long double>(K_) + 0.5L));
    const double Kd = static_cast<double>(K_);
    long double model = 0;
    for (std::size_t j = 0; j < tail_s_.size(); ++j) {
      const double s = tail_s_[j];
      model += tail_amp_[j] * Kd * std::pow(1.0 + 0.5 / Kd, 1.0 - s) * detail::generalized_expint(s, x);
    }
    const double shape1 = (tail_s_[0] - 1.0) * detail::generalized_expint(tail_s_[0], x);
    const long double ref = d.acc.ref();
    const long double unit = std::exp2(qk_log2_ - ref);  // |Q_K| on the accumulator scale
    const long double tail = (model + delta_ * shape1) * unit;
    const long double total = d.acc.raw_sum() + tail;
    if (total == 0) {
      r.value = LogValue::zero();
      r.rel_error = std::numeric_limits<double>::infinity();
      return r;
    }
    r.value = to_logvalue(total > 0 ? 1 : -1, std::log2(std::fabs(total)) + ref);
    const long double rounding =
        kEps * 16 * (std::exp2(d.acc.log2_abs() - ref) + shape1 * std::exp2(t1_abs_log2_ - ref));
    const long double modeling = std::fabs(delta_ * shape1 * unit) + 1e-15L * std::fabs(tail);
    r.rel_error = static_cast<double>((rounding + modeling) / std::fabs(total));
    return r;
  }

  // h = 2F1(C-A, C-B; C; z I) with g = w^E h, E = n(C-A-B).  Near z = 1,
  // h ~ g(1) w^{-E}, so its coefficients behave like g(1) k^{E-1}/Gamma(E)
  // and the remainder after K terms contributes g(1) Q(E, lambda' K).
  Result euler_result(const Partial& e, double w, long double log2z) const {
    Result r;
    r.method = Method::euler;
    r.terms = e.terms;
    const long double log2_pref = euler_power_ * std::log2(static_cast<long double>(w));
    if (e.converged) {
      r.value = to_logvalue(e.acc.sign(), e.acc.log2_sum() + log2_pref);
      r.rel_error = rel_from(e.acc.log2_abs(), e.acc.log2_sum(), kEps * 8);
      return r;
    }
    if (!(e1_ > 0) || !(euler_power_ > 0)) {
      r.value = to_logvalue(e.acc.sign(), e.acc.log2_sum() + log2_pref);
      r.rel_error = std::numeric_limits<double>::infinity();
      return r;
    }
    const double E = static_cast<double>(euler_power_);
    const long double lp = -log2z * std::log(2.0L);
    auto model = [&](const detail::ScaledAccumulator& a, std::size_t K, long double& ref) {
      const double x = static_cast<double>(lp * (static_cast<long double>(K) + 0.5L));
      ref = a.ref() + log2_pref;
      return a.raw_sum() + boost::math::gamma_q(E, x) * std::exp2(log2_g1_ - ref) * g1_sign_;
    };
    long double ref = 0;
    const long double head = e.acc.raw_sum();
    const long double total = model(e.acc, K_, ref);
    if (!(total > 0)) {
      r.value = to_logvalue(e.acc.sign(), e.acc.log2_sum() + log2_pref);
      r.rel_error = std::numeric_limits<double>::infinity();
      return r;
    }
    r.value = to_logvalue(1, std::log2(total) + ref);
    // Only the leading singular term is modelled.  Euler is chosen when e1 is
    // large, where the analytic corrections at z = 1 dominate what is left, so
    // the modelled share of the sum is itself the error bound.
    r.rel_error = static_cast<double>(
        (kEps * 8 * std::exp2(e.acc.log2_abs() - e.acc.ref()) + std::fabs(total - head)) / total);
    return r;
  }

  static double rel_from(long double log2_abs, long double log2_sum, long double eps) {
    if (!std::isfinite(static_cast<double>(log2_sum))) return std::numeric_limits<double>::infinity();
    return static_cast<double>(eps * std::exp2(log2_abs - log2_sum));
  }

  static LogValue to_logvalue(int sign, long double log2_abs) {
    if (sign == 0 || !std::isfinite(static_cast<double>(log2_abs))) return LogValue::zero();
    return {sign, static_cast<double>(log2_abs * std::log(2.0L))};
  }

  long double log_at_one_ld(int& sign) const {
    long double lg = 0;
    sign = 1;
    for (int i = 1; i <= n_; ++i) {
      const long double s = (i - 1) * static_cast<long double>(tau_);
      const long double C = c_, A = a_, B = b_;
      int s1, s2, s3, s4;
      lg += detail::lgamma_ld(C - s, s1) + detail::lgamma_ld(C - A - B - s, s2) -
            detail::lgamma_ld(C - A - s, s3) - detail::lgamma_ld(C - B - s, s4);
      sign *= s1 * s2 * s3 * s4;
    }
    return lg;
  }

  // Fit Q_k ~ sum_j c_j k^{-s_j} over the last octaves of the table, with
  // s_j = e + 1 for the non-integer local exponents e at z = 1
  // (e_j = j e1 + tau j(j-1) and integer shifts).  The exact g(1) pins
  // the remainder; the mismatch delta is carried with the leading shape.
  void prepare_near_one() {
    const long double log2_g1 = log_at_one_ld(g1_sign_) / std::log(2.0L);
    log2_g1_ = log2_g1;
    detail::ScaledAccumulator acc;
    for (const detail::Scaled& s : direct_) acc.add(s.mant, static_cast<long double>(s.exponent));
    t1_abs_log2_ = std::max(log2_g1, acc.log2_abs());

    const detail::Scaled& qK = direct_[K_];
    if (qK.mant == 0) return;
    qk_log2_ = qK.log2abs();
    const double s1 = static_cast<double>(e1_) + 1.0;
    std::vector<double> exps;
    for (int j = 1; j <= n_; ++j) {
      const double ej = j * static_cast<double>(e1_) + tau_ * j * (j - 1);
      for (int i = 0; i < 4; ++i) {
        const double s = ej + i + 1.0;
        if (s > s1 + 3.5) break;
        exps.push_back(s);
      }
    }
    std::sort(exps.begin(), exps.end());
    tail_s_.clear();
    for (double s : exps)
      if (tail_s_.empty() || s - tail_s_.back() > 0.02) tail_s_.push_back(s);

    const std::size_t J = tail_s_.size();
    const std::size_t rows = std::max<std::size_t>(4 * J, 16);
    const double Kd = static_cast<double>(K_);
    Eigen::MatrixXd M(rows, J);
    Eigen::VectorXd y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      const double xi = std::pow(64.0, -static_cast<double>(i) / static_cast<double>(rows - 1));
      const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(Kd * xi)));
      const double xk = static_cast<double>(k) / Kd;
      const detail::Scaled& q = direct_[k];
      const long double rel = q.mant == 0 ? 0.0L : q.mant * std::exp2(static_cast<long double>(q.exponent) - qk_log2_);
      y(i) = static_cast<double>(rel) * std::pow(xk, s1);
      for (std::size_t j = 0; j < J; ++j) M(i, j) = std::pow(xk, s1 - tail_s_[j]);
    }
    const Eigen::VectorXd g = M.colPivHouseholderQr().solve(y);
    tail_amp_.assign(g.data(), g.data() + J);

    // model remainder at z = 1 versus the exact one, in units of |Q_K|
    long double model1 = 0;
    for (std::size_t j = 0; j < J; ++j) {
      const double s = tail_s_[j];
      model1 += tail_amp_[j] * Kd * std::pow(1.0 + 0.5 / Kd, 1.0 - s) / (s - 1.0);
    }
    const long double ref = qk_log2_;
    const long double t1 = g1_sign_ * std::exp2(log2_g1 - ref) - acc.raw_sum() * std::exp2(acc.ref() - ref);
    delta_ = t1 - model1;
    have_near_one_ = true;
  }

  double a_, b_, c_, tau_;
  int n_;
  std::size_t K_;
  long double e1_ = 0;
  long double euler_power_ = 0;
  std::vector<detail::Scaled> direct_;
  std::vector<detail::Scaled> euler_;
  std::vector<long double> direct_flat_, euler_flat_;
  std::size_t direct_degree_ = kNoDegree, euler_degree_ = kNoDegree;
  long direct_base_ = 0, euler_base_ = 0;
  bool have_near_one_ = false;
  long double t1_abs_log2_ = 0, qk_log2_ = 0, log2_g1_ = 0, delta_ = 0;
  int g1_sign_ = 1;
  std::vector<double> tail_s_, tail_amp_;
};

}  // namespace bjacobi
