#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bjacobi/errors.hpp"

namespace bjacobi::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

inline void check(const Result& r, double tol, const char* who) {
  if (!std::isfinite(r.value))
    throw QuadratureFailure(std::string(who) + ": non-finite integral", r.error);
  if (r.error > 1e3 * tol * std::max(1.0, std::fabs(r.value)))
    throw QuadratureFailure(std::string(who) + ": tolerance not reached", r.error);
}

}  // namespace detail

// Double-exponential rule on [a, b]; tolerates integrable endpoint
// singularities.  The integrand is never evaluated at the endpoints.
template <class F>
Result tanh_sinh(F&& f, double a, double b, double tol = 1e-11) {
  if (a == b) return {};
  static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  Result r;
  double l1 = 0.0;
  r.value = rule.integrate(
      [&](double x) {
        const double y = f(x);
        return std::isinf(y) ? 0.0 : y;
      },
      a, b, tol, &r.error, &l1);
  detail::check(r, tol, "tanh_sinh");
  return r;
}

// [a, inf) with a double-exponential map.
template <class F>
Result exp_sinh(F&& f, double a, double tol = 1e-11) {
  static thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  Result r;
  double l1 = 0.0;
  r.value = rule.integrate(
      [&](double x) {
        const double y = f(x);
        return std::isinf(y) ? 0.0 : y;
      },
      a, std::numeric_limits<double>::infinity(), tol, &r.error, &l1);
  detail::check(r, tol, "exp_sinh");
  return r;
}

namespace detail {

// Boost's recursive driver compares an unscaled error estimate with a scaled
// tolerance, so tiny intervals never converge.  Bisect here instead.
template <class F>
void gk_bisect(F& f, double a, double b, double abs_tol, int depth, Result& acc) {
  double err = 0.0, l1 = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err, &l1);
  err *= 0.5 * (b - a);
  if (err <= abs_tol || depth == 0) {
    acc.value += v;
    acc.error += err;
    return;
  }
  const double mid = 0.5 * (a + b);
  gk_bisect(f, a, mid, abs_tol / 2.0, depth - 1, acc);
  gk_bisect(f, mid, b, abs_tol / 2.0, depth - 1, acc);
}

}  // namespace detail

// Adaptive 31-point Gauss-Kronrod for smooth integrands.  Refinement stops
// once the error is below tol |I| or abs_floor, whichever is larger.
template <class F>
Result gauss_kronrod(F&& f, double a, double b, double tol = 1e-11, int max_depth = 12, double abs_floor = 0.0) {
  if (a == b) return {};
  Result first;
  double l1 = 0.0;
  first.value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &first.error, &l1);
  const double abs_tol = std::max(tol * std::fabs(first.value), abs_floor);
  Result r;
  detail::gk_bisect(f, a, b, abs_tol, max_depth, r);
  detail::check(r, std::max(tol, abs_floor), "gauss_kronrod");
  return r;
}

}  // namespace bjacobi::quad
