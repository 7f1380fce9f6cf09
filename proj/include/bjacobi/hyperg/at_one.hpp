#pragma once

#include "bjacobi/log_value.hpp"

namespace bjacobi {

// 2F1^gamma(a, b; c; I_m) in closed form:
//   prod_{i=1}^m Gamma(c - s_i) Gamma(c - a - b - s_i)
//              / (Gamma(c - a - s_i) Gamma(c - b - s_i)),   s_i = (i-1) gamma/2.
// Valid when the series converges at the identity or terminates.
inline LogValue log_mhg_at_one_2f1(double a, double b, double c, double gamma, int m) {
  LogValue r = LogValue::one();
  for (int i = 1; i <= m; ++i) {
    const double s = (i - 1) * gamma / 2.0;
    r *= log_gamma(c - s) * log_gamma(c - a - b - s) / (log_gamma(c - a - s) * log_gamma(c - b - s));
  }
  return r;
}

inline double mhg_at_one_2f1(double a, double b, double c, double gamma, int m) {
  return log_mhg_at_one_2f1(a, b, c, gamma, m).value();
}

}  // namespace bjacobi
