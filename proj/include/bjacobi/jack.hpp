#pragma once

#include <cmath>

#include "bjacobi/partitions.hpp"

namespace bjacobi {

// C_kappa(I_m) = (2/beta)^{2k} k! (m beta/2)_kappa / j_kappa, accumulated
// cell by cell so the k! and (2/beta)^{2k} factors never overflow alone.
template <class Real = double>
Real jack_at_identity(const Partition& kappa, Real beta, int m) {
  if (kappa.empty()) return 1;
  if (kappa.length() > static_cast<std::size_t>(m)) return 0;
  const Real alpha = Real(2) / beta;
  const std::vector<int> cols = kappa.conjugate();
  const Real shift0 = static_cast<Real>(m) * beta / 2;
  Real r = 1;
  int n = 0;
  for (std::size_t i = 0; i < kappa.length(); ++i) {
    const Real shift = shift0 - beta / 2 * static_cast<Real>(i);
    for (int j = 0; j < kappa[i]; ++j) {
      const Real arm = static_cast<Real>(kappa[i] - j - 1);
      const Real leg = static_cast<Real>(cols[j] - static_cast<int>(i) - 1);
      r *= alpha * alpha * static_cast<Real>(++n) * (shift + static_cast<Real>(j)) /
           ((leg + alpha * (1 + arm)) * (leg + 1 + alpha * arm));
    }
  }
  return r;
}

// C_kappa(x I_m) = x^{|kappa|} C_kappa(I_m)
template <class Real = double>
Real jack_at_scaled_identity(const Partition& kappa, Real beta, int m, Real x) {
  const Real c = jack_at_identity(kappa, beta, m);
  if (c == 0) return 0;
  return c * std::pow(x, kappa.weight());
}

}  // namespace bjacobi
