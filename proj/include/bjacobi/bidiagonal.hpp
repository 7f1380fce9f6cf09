#pragma once

// Singular values of an upper bidiagonal matrix by bisection.
//
// The Golub-Kahan form of B is the 2n x 2n symmetric tridiagonal matrix with
// zero diagonal and off-diagonal (d_1, e_1, d_2, e_2, ..., d_n).  Its
// eigenvalues are +-sigma_i, so counting its negative pivots at shift x gives
// n + #{sigma_i < x}.  The count uses only squares of the entries and is
// accurate in the relative sense, including tiny singular values.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bjacobi/errors.hpp"

namespace bjacobi {

struct Bidiagonal {
  std::vector<double> diag;   // d_1 .. d_n
  std::vector<double> super;  // e_1 .. e_{n-1}

  int size() const { return static_cast<int>(diag.size()); }
};

namespace detail {

// Number of singular values of B strictly below x > 0.
inline int count_below(const Bidiagonal& b, double x) {
  const int n = b.size();
  const double pivmin = std::numeric_limits<double>::min();
  int neg = 0;
  double q = -x;
  auto step = [&](double off) {
    if (std::fabs(q) < pivmin) q = -pivmin;
    q = -x - off * off / q;
  };
  if (q < 0.0) ++neg;
  for (int i = 0; i < n; ++i) {
    step(b.diag[i]);
    if (q < 0.0) ++neg;
    if (i + 1 < n) {
      step(b.super[i]);
      if (q < 0.0) ++neg;
    }
  }
  // the first pivot was counted before the loop, so 2n pivots in total
  return neg - n;
}

}  // namespace detail

// k-th smallest singular value (k = 0 is the smallest), to relative
// accuracy rel_tol.
inline double bidiagonal_singular_value(const Bidiagonal& b, int k, double rel_tol = 4e-16) {
  const int n = b.size();
  if (n == 0) throw DomainError("bidiagonal: empty matrix");
  if (static_cast<int>(b.super.size()) != n - 1) throw DomainError("bidiagonal: n - 1 superdiagonal entries required");
  if (k < 0 || k >= n) throw DomainError("bidiagonal: singular value index out of range");
  double hi = 0.0;  // Gershgorin bound on the Golub-Kahan form
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? std::fabs(b.super[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::fabs(b.super[i]) : 0.0;
    hi = std::max({hi, std::fabs(b.diag[i]) + std::max(left, right), left + right});
  }
  hi = hi * (1.0 + 1e-15) + std::numeric_limits<double>::min();
  double lo = 1e-300;
  if (detail::count_below(b, lo) > k) return 0.0;
  // Geometric bisection: relative accuracy at every scale.
  for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    (detail::count_below(b, mid) > k ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double bidiagonal_smallest_singular_value(const Bidiagonal& b) { return bidiagonal_singular_value(b, 0); }

}  // namespace bjacobi
