#pragma once

// One-variable special functions used by the Case 1 laws.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bjacobi/errors.hpp"
#include "bjacobi/hyperg/mhg.hpp"
#include "bjacobi/log_value.hpp"
#include "bjacobi/quadrature.hpp"

namespace bjacobi {

namespace detail {

inline constexpr double kSeriesEps = 1e-17;

// Generic pFq series in one variable with positive-ratio tail control.
// ratio(k) returns t_{k+1}/t_k.
template <class Ratio>
SeriesValue hyper_series(Ratio&& ratio, double z_abs_limit, long max_terms, const char* who) {
  double sum = 1.0, term = 1.0;
  for (long k = 0; k < max_terms; ++k) {
    const double r = ratio(k);
    term *= r;
    if (term == 0.0) return {sum, static_cast<int>(k), 0.0, true};
    sum += term;
    if (!std::isfinite(sum))
      throw NonConvergence(std::string(who) + ": overflow", static_cast<int>(k), INFINITY);
    // later ratios are bounded by max(|r|, z_abs_limit) once |r| < 1
    const double next = std::fabs(ratio(k + 1));
    const double bound = std::max(next, z_abs_limit);
    if (next < 1.0 && bound < 1.0) {
      const double tail = std::fabs(term) * bound / (1.0 - bound);
      if (tail <= kSeriesEps * std::fabs(sum)) return {sum, static_cast<int>(k + 1), tail, false};
    }
  }
  throw NonConvergence(std::string(who) + ": term limit reached", static_cast<int>(max_terms),
                       std::fabs(term));
}

}  // namespace detail

// Direct Gauss series; |z| < 1 unless it terminates.
inline SeriesValue gauss_2f1_series(double a, double b, double c, double z,
                                    long max_terms = 2'000'000) {
  if (z == 0.0 || a == 0.0 || b == 0.0) return {1.0, 0, 0.0, true};
  if (detail::is_nonpositive_integer(c) &&
      !(detail::is_nonpositive_integer(a) && a > c) && !(detail::is_nonpositive_integer(b) && b > c))
    throw DomainError("gauss_2f1: c is a non-positive integer");
  const bool terminating = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
  if (!terminating && std::fabs(z) >= 1.0) throw DomainError("gauss_2f1: |z| < 1 required");
  return detail::hyper_series(
      [&](long k) { return (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z; }, std::fabs(z), max_terms,
      "gauss_2f1");
}

namespace detail {

struct ConnectionTerms {
  double t1 = 0.0, t2 = 0.0;
};

// Abramowitz-Stegun 15.3.6: the two-term expansion around z = 1.
inline ConnectionTerms connection_terms(double a, double b, double c, double z) {
  const double s = c - a - b;
  if (s == std::nearbyint(s))
    throw LogarithmicCase("connection_2f1: c - a - b is an integer (" + std::to_string(s) + ")");
  if (is_nonpositive_integer(c)) throw DomainError("connection_2f1: c is a pole");
  if (!(z <= 1.0)) throw DomainError("connection_2f1: z <= 1 required");
  const double w = 1.0 - z;
  ConnectionTerms t;
  const LogValue g1 = log_gamma(c) * log_gamma(s) * log_rgamma(c - a) * log_rgamma(c - b);
  if (!g1.is_zero()) t.t1 = g1.value() * gauss_2f1_series(a, b, 1.0 - s, w).value;
  if (w == 0.0) {
    if (s < 0.0) throw DomainError("connection_2f1: divergent at z = 1 for c - a - b < 0");
    return t;
  }
  const LogValue g2 = log_gamma(c) * log_gamma(-s) * log_rgamma(a) * log_rgamma(b);
  if (!g2.is_zero()) {
    const LogValue pref = g2 * LogValue::from_log(s * std::log(w));
    t.t2 = pref.value() * gauss_2f1_series(c - a, c - b, 1.0 + s, w).value;
  }
  return t;
}

}  // namespace detail

inline double connection_2f1(double a, double b, double c, double z) {
  if (a == 0.0 || b == 0.0) return 1.0;
  const detail::ConnectionTerms t = detail::connection_terms(a, b, c, z);
  return t.t1 + t.t2;
}

// Classical 2F1 on [0, 1): direct series up to z = 0.9, connection formula
// above unless its two terms cancel to fewer than ~13 digits or c - a - b
// is (nearly) an integer; the direct series covers those cases.
inline double gauss_2f1(double a, double b, double c, double z) {
  if (z < -0.5 || z >= 1.0) throw DomainError("gauss_2f1: z must lie in [-1/2, 1)");
  const double s = c - a - b;
  if (z <= 0.9 || a == 0.0 || b == 0.0 || std::fabs(s - std::nearbyint(s)) < 1e-6)
    return gauss_2f1_series(a, b, c, z).value;
  const detail::ConnectionTerms t = detail::connection_terms(a, b, c, z);
  const double sum = t.t1 + t.t2;
  if (std::fabs(sum) * 1e3 >= std::fabs(t.t1) + std::fabs(t.t2)) return sum;
  return gauss_2f1_series(a, b, c, z).value;
}

// Kummer M(a, b, z); negative z goes through M(a,b,z) = e^z M(b-a,b,-z).
inline double kummer_1f1(double a, double b, double z) {
  if (detail::is_nonpositive_integer(b) && !(detail::is_nonpositive_integer(a) && a > b))
    throw DomainError("kummer_1f1: b is a non-positive integer");
  if (std::fabs(z) > 700.0) throw NonConvergence("kummer_1f1: |z| > 700 outside the series cap", 0, INFINITY);
  if (z < 0.0 && !detail::is_nonpositive_integer(a))
    return std::exp(z) * kummer_1f1(b - a, b, -z);
  if (z == 0.0 || a == 0.0) return 1.0;
  return detail::hyper_series([&](long k) { return (a + k) / ((b + k) * (k + 1.0)) * z; }, 0.0,
                              200000, "kummer_1f1")
      .value;
}

// 0F1(; c; z)
inline double of1(double c, double z) {
  if (detail::is_nonpositive_integer(c)) throw DomainError("of1: c is a non-positive integer");
  if (std::fabs(z) > 1e5) throw NonConvergence("of1: |z| > 1e5 outside the series cap", 0, INFINITY);
  if (z == 0.0) return 1.0;
  return detail::hyper_series([&](long k) { return z / ((c + k) * (k + 1.0)); }, 0.0, 200000, "of1")
      .value;
}

namespace detail {

// U via M: Gamma(1-b)/Gamma(a-b+1) M(a,b,z) + Gamma(b-1)/Gamma(a) z^{1-b} M(a-b+1,2-b,z)
inline double tricomi_u_combination(double a, double b, double z) {
  const LogValue c1 = log_gamma(1.0 - b) * log_rgamma(a - b + 1.0);
  const LogValue c2 = log_gamma(b - 1.0) * log_rgamma(a);
  double r = 0.0;
  if (!c1.is_zero()) r += c1.value() * kummer_1f1(a, b, z);
  if (!c2.is_zero()) r += c2.value() * std::pow(z, 1.0 - b) * kummer_1f1(a - b + 1.0, 2.0 - b, z);
  return r;
}

// log(U(a,b,z) z^a) for a > 0 from
// U z^a = Gamma(a)^{-1} int_0^inf e^{-s} s^{a-1} (1 + s/z)^{b-a-1} ds.
inline double log_tricomi_u_scaled_integral(double a, double b, double z) {
  auto f = [&](double s) {
    return std::exp(-s + (a - 1.0) * std::log(s) + (b - a - 1.0) * std::log1p(s / z));
  };
  const double v = quad::tanh_sinh(f, 0.0, 1.0, 1e-13).value + quad::exp_sinh(f, 1.0, 1e-13).value;
  return std::log(v) - std::lgamma(a);
}

}  // namespace detail

// log U(a, b, z) for z > 0, non-integer b; U must be positive on the route taken.
inline double log_tricomi_u(double a, double b, double z) {
  if (!(z > 0.0)) throw DomainError("tricomi_u: z > 0 required");
  if (b == std::nearbyint(b)) throw DomainError("tricomi_u: integer b (logarithmic case)");
  if (a == 0.0) return 0.0;
  if (z > 5.0) {
    if (a > 0.0) return detail::log_tricomi_u_scaled_integral(a, b, z) - a * std::log(z);
    const double a2 = a - b + 1.0;  // U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z)
    if (a2 > 0.0)
      return (1.0 - b) * std::log(z) + detail::log_tricomi_u_scaled_integral(a2, 2.0 - b, z) -
             a2 * std::log(z);
  }
  const double u = detail::tricomi_u_combination(a, b, z);
  if (!(u > 0.0)) throw DomainError("log_tricomi_u: U is not positive here");
  return std::log(u);
}

// Tricomi U(a, b, z), z > 0, non-integer b.
inline double tricomi_u(double a, double b, double z) {
  if (!(z > 0.0)) throw DomainError("tricomi_u: z > 0 required");
  if (b == std::nearbyint(b)) throw DomainError("tricomi_u: integer b (logarithmic case)");
  if (a == 0.0) return 1.0;
  if (z <= 5.0 || detail::is_nonpositive_integer(a)) return detail::tricomi_u_combination(a, b, z);
  if (a > 0.0 || a - b + 1.0 > 0.0) return std::exp(log_tricomi_u(a, b, z));
  return detail::tricomi_u_combination(a, b, z);
}

namespace detail {

// I_nu(z) by its power series.
inline double bessel_i_series(double nu, double z) {
  const double h = z / 2.0;
  const LogValue pref = LogValue::from_log(nu * std::log(h)) * log_rgamma(nu + 1.0);
  if (pref.is_zero()) throw DomainError("bessel_i_series: integer order");
  const double s = hyper_series([&](long k) { return h * h / ((nu + 1.0 + k) * (k + 1.0)); }, 0.0,
                                100000, "bessel_i")
                       .value;
  return pref.value() * s;
}

// log of int_0^inf exp(-z (cosh t - 1)) cosh(nu t) dt by the trapezoid rule,
// which converges geometrically for this entire, doubly decaying integrand.
inline double log_bessel_k_integral(double nu, double z) {
  const double h = 1.0 / 32.0;
  double sum = 0.5;  // t = 0
  double t = h;
  for (int i = 1; i < 100000; ++i, t += h) {
    const double e = -z * (std::cosh(t) - 1.0) + std::fabs(nu) * t;
    const double f = std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
    sum += f;
    if (e < -60.0 && t > 1.0) break;
  }
  return std::log(sum * h);
}

}  // namespace detail

// log K_nu(z), z > 0.
inline double log_bessel_k(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_k: z > 0 required");
  return -z + detail::log_bessel_k_integral(nu, z);
}

// Modified Bessel K_nu(z).  For z <= 1 and nu at least 1e-3 away from an
// integer: (pi/2)(I_{-nu} - I_nu)/sin(nu pi).  Otherwise (large z, or nu
// near an integer where that combination degenerates) the integral
// int_0^inf exp(-z cosh t) cosh(nu t) dt.
inline double bessel_k(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_k: z > 0 required");
  const double dist = std::fabs(nu - std::nearbyint(nu));
  if (z <= 1.0 && dist > 1e-3) {
    const double s = std::sin(nu * std::numbers::pi);
    return std::numbers::pi / 2.0 *
           (detail::bessel_i_series(-nu, z) - detail::bessel_i_series(nu, z)) / s;
  }
  return std::exp(log_bessel_k(nu, z));
}

}  // namespace bjacobi
