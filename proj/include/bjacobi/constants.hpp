#pragma once

// Normalization constants of the extreme-eigenvalue laws, in signed-log form.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bjacobi/errors.hpp"
#include "bjacobi/log_value.hpp"

namespace bjacobi {

// beta-Jacobi ensemble: m points on [0,1] with weight
// x^{beta(a+1)/2-1} (1-x)^{beta(b+1)/2-1} |Vandermonde|^beta.
struct JacobiParams {
  double beta = 1.0;
  double a = 0.0;
  double b = 0.0;
  int m = 1;

  void validate() const {
    std::ostringstream os;
    if (!(beta > 0.0) || !std::isfinite(beta)) os << "beta must be positive (got " << beta << ")";
    else if (!(a > -1.0) || !std::isfinite(a)) os << "a must exceed -1 (got " << a << ")";
    else if (!(b > -1.0) || !std::isfinite(b)) os << "b must exceed -1 (got " << b << ")";
    else if (m < 1) os << "m must be at least 1 (got " << m << ")";
    else return;
    throw DomainError(os.str());
  }

  // Swap a and b: the law of 1 - x.
  JacobiParams swapped() const { return {beta, b, a, m}; }
};

// Selberg normalizer c_{beta,a,b,m}; c_{.,.,.,0} = 1.  Only the Gamma
// arguments need to be positive, so this also serves b = 1 + 2/beta.
inline LogValue selberg_c(double beta, double a, double b, int m) {
  if (!(beta > 0.0)) throw DomainError("selberg_c: beta must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("selberg_c: a and b must exceed -1");
  if (m < 0) throw DomainError("selberg_c: negative size");
  const double h = beta / 2.0;
  LogValue r = LogValue::one();
  for (int j = 1; j <= m; ++j) {
    r *= log_gamma(h * (a + j)) * log_gamma(h * (b + j)) * log_gamma(1.0 + h * j);
    r /= log_gamma(1.0 + h) * log_gamma(h * (a + b + m + j));
  }
  return r;
}

// Prefactor of the smallest-eigenvalue density: m c_{beta,b,1+2/beta,m-1} / c_{beta,a,b,m}.
inline LogValue norm_min(const JacobiParams& p) {
  p.validate();
  return LogValue::from(p.m) * selberg_c(p.beta, p.b, 1.0 + 2.0 / p.beta, p.m - 1) /
         selberg_c(p.beta, p.a, p.b, p.m);
}

// Prefactor of the largest-eigenvalue density.
inline LogValue norm_max(const JacobiParams& p) { return norm_min(p.swapped()); }

struct Case1Constants {
  LogValue C;        // prefactor of the reduced form
  LogValue A;        // first connection coefficient
  LogValue B;        // second connection coefficient (zero when m = 1)
  LogValue F;        // factor pulled out of both connection terms
  LogValue C_tilde;  // prefactor of the two-term law, C * F
};

inline void check_case1_beta(double beta) {
  if (!(beta > 0.0 && beta < 2.0)) {
    std::ostringstream os;
    os << "case 1 requires beta in (0,2) (got " << beta << ")";
    throw DomainError(os.str());
  }
}

// Constants for a = 2/beta - 2.
inline Case1Constants case1_constants(double beta, double b, int m) {
  check_case1_beta(beta);
  if (!(b > -1.0)) throw DomainError("case 1: b must exceed -1");
  if (m < 1) throw DomainError("case 1: m must be at least 1");
  const double h = beta / 2.0;
  const double a1 = h * (b + m - 1);  // classical 2F1 parameters of the reduced form
  const double b1 = h * (m - 1);
  const double c = h * (b + 2 * m - 1) + 1.0;
  Case1Constants k;
  k.C = LogValue::from(h * m * (b + m)) * log_gamma(a1 + 1.0) * log_gamma(b1 + 1.0) /
        (log_gamma(1.0 - h) * log_gamma(c));
  k.A = log_gamma(c) * log_gamma(1.0 + h) / (log_gamma(h * m + 1.0) * log_gamma(h * (b + m) + 1.0));
  k.B = log_gamma(c) * log_gamma(-1.0 - h) * log_rgamma(b1) * log_rgamma(a1);
  k.F = log_gamma(c) * log_gamma(1.0 + h) * log_gamma(-h) / log_gamma(h * (b + m) + 1.0);
  k.C_tilde = k.C * k.F;
  return k;
}

// Closed form of C_tilde, kept separate from C * F as a consistency check.
inline LogValue case1_c_tilde_closed(double beta, double b, int m) {
  check_case1_beta(beta);
  const double h = beta / 2.0;
  return log_gamma(-h) * log_gamma(1.0 + h) / log_gamma(1.0 - h) * LogValue::from(h * m * (b + m)) *
         log_gamma(h * (b + m - 1) + 1.0) / log_gamma(h * (b + m) + 1.0) * log_gamma(h * (m - 1) + 1.0);
}

struct Case2Constants {
  LogValue A_mbbk;  // 2F1^{4/beta}(1-m, 1-m-b; 2+2(k-1)/beta; I_{k-1})
  LogValue W;       // prefactor of the terminating form
};

inline void check_case2(double beta, int k, double b, int m) {
  if (!(beta > 0.0)) throw DomainError("case 2: beta must be positive");
  if (k < 1) throw DomainError("case 2: k must be a positive integer");
  if (!(b > -1.0)) throw DomainError("case 2: b must exceed -1");
  if (m < 1) throw DomainError("case 2: m must be at least 1");
}

// Product form of A over i = 1..m-1.
inline LogValue case2_a_product(double beta, int k, double b, int m) {
  check_case2(beta, k, b, m);
  const double h = beta / 2.0;
  LogValue r = LogValue::one();
  for (int i = 1; i < m; ++i)
    r *= log_gamma(1.0 + (i + 1) * h) / log_gamma(k + (i + 1) * h) * log_gamma(k + h * (m + b + i)) /
         log_gamma(1.0 + h * (m + b + i));
  return r;
}

// Constants for beta(a+1)/2 = k.
inline Case2Constants case2_constants(double beta, int k, double b, int m) {
  check_case2(beta, k, b, m);
  const double h = beta / 2.0;
  Case2Constants c;
  c.A_mbbk = case2_a_product(beta, k, b, m);
  c.W = log_gamma(1.0 + h) / (log_gamma(k) * log_gamma(k + h)) * LogValue::from(m) *
        log_gamma(k + h * m) / log_gamma(1.0 + h * m) * log_gamma(k + h * (b + m)) /
        log_gamma(h * (b + m));
  return c;
}

// a such that beta(a+1)/2 = k.
inline double case2_a(double beta, int k) { return 2.0 * k / beta - 1.0; }
// a for case 1.
inline double case1_a(double beta) { return 2.0 / beta - 2.0; }

}  // namespace bjacobi
