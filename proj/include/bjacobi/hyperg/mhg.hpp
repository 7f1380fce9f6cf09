#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bjacobi/errors.hpp"
#include "bjacobi/partitions.hpp"

namespace bjacobi {

// pFq parameters.  gamma is the ensemble-style superscript: the series uses
// C^gamma_kappa and (.)^gamma_kappa exactly as written, so 2F1^{4/beta}
// is built with gamma = 4/beta.  The Jack parameter alpha = 2/gamma is
// only used internally through j_kappa.
struct MhgParams {
  std::vector<double> upper;
  std::vector<double> lower;
  double gamma = 2.0;
};

struct SeriesValue {
  double value = 0.0;
  int degree_used = 0;
  double tail_estimate = 0.0;
  bool terminated = false;
};

namespace detail {

inline constexpr int kNoCap = std::numeric_limits<int>::max() / 4;

// If x is (numerically) a non-positive integer -N return N, else -1.
inline int nonpositive_integer_index(double x) {
  const double r = std::nearbyint(x);
  if (r > 0.0) return -1;
  if (std::fabs(x - r) > 1e-12 * std::max(1.0, std::fabs(x))) return -1;
  return static_cast<int>(-r);
}

// Row caps: part i can be at most caps[i] before some upper Pochhammer
// factor (a - i*gamma/2)_{k_i} vanishes.
inline std::vector<int> row_caps(const MhgParams& p, int m) {
  std::vector<int> caps(static_cast<std::size_t>(m), kNoCap);
  for (int i = 0; i < m; ++i) {
    for (double a : p.upper) {
      const int n = nonpositive_integer_index(a - p.gamma / 2 * i);
      if (n >= 0) caps[i] = std::min(caps[i], n);
    }
    if (i > 0) caps[i] = std::min(caps[i], caps[i - 1]);
  }
  return caps;
}

// Sum over kappa |- k of the series coefficient of x^k, times x^k.  Each
// term is a product of per-cell factors (one power of x per cell), so large
// x and tiny coefficients never meet as separate overflowing and
// underflowing numbers.  The 1/k! of the series cancels the k! in
// C_kappa(I_m).
inline double level_coefficient(const MhgParams& p, int m, int k, const std::vector<int>& caps,
                                double x = 1.0) {
  if (k == 0) return 1.0;
  const double alpha = 2.0 / p.gamma;
  const double half = p.gamma / 2.0;
  const double mshift = m * half;
  double sum = 0.0;
  for (const Partition& kappa : PartitionRange(k, static_cast<std::size_t>(m), caps)) {
    const std::vector<int> cols = kappa.conjugate();
    double t = 1.0;
    for (std::size_t i = 0; i < kappa.length(); ++i) {
      const double row = half * static_cast<double>(i);
      for (int j = 0; j < kappa[i]; ++j) {
        double f = x * alpha * alpha * (mshift - row + j);
        for (double a : p.upper) f *= a - row + j;
        for (double b : p.lower) {
          const double d = b - row + j;
          if (std::fabs(d) <= 1e-13 * (std::fabs(b) + row + j + 1.0))
            throw IllConditioned("mhg: lower-parameter Pochhammer vanishes at partition of " +
                                 std::to_string(k));
          f /= d;
        }
        const double arm = kappa[i] - j - 1;
        const double leg = cols[j] - static_cast<int>(i) - 1;
        f /= (leg + alpha * (1.0 + arm)) * (leg + 1.0 + alpha * arm);
        t *= f;
      }
    }
    sum += t;
  }
  return sum;
}

inline int degree_bound(const std::vector<int>& caps) {
  long total = 0;
  for (int c : caps) {
    if (c >= kNoCap) return -1;
    total += c;
  }
  return static_cast<int>(total);
}

}  // namespace detail

// Coefficients c_k with pFq(x I_m) = sum_k c_k x^k, for k = 0..max_degree
// (or up to the termination degree if smaller).
inline std::vector<double> mhg_coefficients(const MhgParams& p, int m, int max_degree) {
  if (m <= 0) return {1.0};
  const std::vector<int> caps = detail::row_caps(p, m);
  const int bound = detail::degree_bound(caps);
  const int top = bound >= 0 ? std::min(bound, max_degree) : max_degree;
  std::vector<double> c(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) c[k] = detail::level_coefficient(p, m, k, caps);
  return c;
}

// Truncated series value, stopping when two consecutive level sums fall
// below rel_tol times the partial sum.
inline SeriesValue mhg(const MhgParams& p, double x, int m, int max_degree = 200,
                       double rel_tol = 1e-10) {
  if (m <= 0 || x == 0.0) return {1.0, 0, 0.0, true};
  const std::vector<int> caps = detail::row_caps(p, m);
  const int bound = detail::degree_bound(caps);
  const bool terminating = bound >= 0;
  if (!terminating && p.upper.size() == p.lower.size() + 1 && std::fabs(x) >= 1.0)
    throw DomainError("mhg: |x| < 1 required for a non-terminating p = q+1 series");
  if (p.upper.size() > p.lower.size() + 1)
    throw DomainError("mhg: p <= q+1 required");

  double partial = 1.0;
  double prev = 1.0;
  for (int k = 1; k <= max_degree; ++k) {
    if (terminating && k > bound) return {partial, k - 1, 0.0, true};
    const double level = detail::level_coefficient(p, m, k, caps, x);
    partial += level;
    const double cur = std::fabs(level);
    if (!terminating && cur + std::fabs(prev) < rel_tol * std::fabs(partial)) {
      const double r = std::fabs(prev) > 0 ? cur / std::fabs(prev) : 0.0;
      const double tail = r < 1.0 ? cur / (1.0 - r) : cur + std::fabs(prev);
      return {partial, k, tail, false};
    }
    prev = level;
  }
  if (terminating && bound <= max_degree) return {partial, bound, 0.0, true};
  const double tail = std::fabs(prev);
  throw NonConvergence("mhg: max_degree " + std::to_string(max_degree) +
                           " reached without meeting rel_tol",
                       max_degree, tail);
}

}  // namespace bjacobi
