#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "bjacobi/errors.hpp"

namespace bjacobi {

// Signed log-magnitude number: sign * exp(log_abs).  sign == 0 encodes zero.
struct LogValue {
  int sign = 0;
  double log_abs = 0.0;

  static LogValue zero() { return {0, 0.0}; }
  static LogValue one() { return {1, 0.0}; }
  static LogValue from_log(double log_abs, int sign = 1) { return {sign, log_abs}; }
  static LogValue from(double x) {
    if (x == 0.0) return zero();
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }

  bool is_zero() const { return sign == 0; }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend LogValue operator*(LogValue x, LogValue y) {
    if (x.sign == 0 || y.sign == 0) return zero();
    return {x.sign * y.sign, x.log_abs + y.log_abs};
  }
  friend LogValue operator/(LogValue x, LogValue y) {
    if (y.sign == 0) throw DomainError("LogValue division by zero");
    if (x.sign == 0) return zero();
    return {x.sign * y.sign, x.log_abs - y.log_abs};
  }
  LogValue& operator*=(LogValue y) { return *this = *this * y; }
  LogValue& operator/=(LogValue y) { return *this = *this / y; }

  LogValue pow(double e) const {
    if (sign == 0) {
      if (e > 0) return zero();
      throw DomainError("LogValue: zero to a non-positive power");
    }
    if (sign < 0) throw DomainError("LogValue: real power of a negative value");
    return {1, e * log_abs};
  }
};

inline LogValue operator+(LogValue x, LogValue y) {
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const double hi = std::max(x.log_abs, y.log_abs);
  const double s = x.sign * std::exp(x.log_abs - hi) + y.sign * std::exp(y.log_abs - hi);
  if (s == 0.0) return LogValue::zero();
  return {s > 0 ? 1 : -1, hi + std::log(std::fabs(s))};
}

inline LogValue operator-(LogValue x) { return {-x.sign, x.log_abs}; }
inline LogValue operator-(LogValue x, LogValue y) { return x + (-y); }

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::nearbyint(x);
}

}  // namespace detail

// Gamma(x) as a LogValue.  Negative non-integer arguments go through the
// reflection formula so the sign is tracked explicitly.
inline LogValue log_gamma(double x) {
  if (std::isnan(x)) throw DomainError("log_gamma: NaN argument");
  if (detail::is_nonpositive_integer(x))
    throw DomainError("log_gamma: pole at non-positive integer argument");
  if (x > 0.0) return {1, static_cast<double>(std::lgamma(static_cast<long double>(x)))};
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double s = std::sin(std::numbers::pi * x);
  const long double lg = std::lgamma(static_cast<long double>(1.0 - x));
  return {s > 0 ? 1 : -1,
          static_cast<double>(std::log(std::numbers::pi_v<long double>) -
                              std::log(static_cast<long double>(std::fabs(s))) - lg)};
}

// 1/Gamma(x); zero at the poles.
inline LogValue log_rgamma(double x) {
  if (detail::is_nonpositive_integer(x)) return LogValue::zero();
  return LogValue::one() / log_gamma(x);
}

// Gamma(num) / Gamma(den).
inline LogValue log_gamma_ratio(double num, double den) {
  return log_gamma(num) / log_gamma(den);
}

}  // namespace bjacobi
