#pragma once

// Random variates for the samplers.
//
// Substreams: replicate i of a batch seeded with s draws from
// std::mt19937_64 initialised by std::seed_seq{lo(s), hi(s), lo(i), hi(i)},
// so a replicate's numbers depend only on (s, i).

#include <cmath>
#include <cstdint>
#include <random>

#include "bjacobi/errors.hpp"

namespace bjacobi {

using Engine = std::mt19937_64;

inline Engine substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

// Uniform on the open interval (0, 1), 53 random bits.
inline double uniform_open(Engine& g) {
  for (;;) {
    const double u = static_cast<double>(g() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

inline double standard_normal(Engine& g) {
  // Marsaglia polar method, one value per call.
  for (;;) {
    const double u = 2.0 * uniform_open(g) - 1.0;
    const double v = 2.0 * uniform_open(g) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

// log of a Gamma(shape, 1) draw.  Marsaglia-Tsang for shape >= 1; below 1,
// G(shape) = G(shape + 1) U^{1/shape}, kept in logs so tiny shapes cannot
// underflow to zero.
inline double log_gamma_variate(double shape, Engine& g) {
  if (!(shape > 0.0)) throw DomainError("gamma variate: shape must be positive");
  if (shape < 1.0) return log_gamma_variate(shape + 1.0, g) + std::log(uniform_open(g)) / shape;
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(g);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open(g);
    if (u < 1.0 - 0.0331 * x * x * x * x) return std::log(d * v);
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

// A Beta(s, t) draw x together with 1 - x, each to full relative precision.
struct BetaPair {
  double x;
  double one_minus_x;
};

inline BetaPair beta_variate_pair(double s, double t, Engine& g) {
  if (!(s > 0.0 && t > 0.0)) throw DomainError("beta variate: shapes must be positive");
  const double gs = log_gamma_variate(s, g);
  const double gt = log_gamma_variate(t, g);
  // x = 1 / (1 + e^{gt - gs})
  return {1.0 / (1.0 + std::exp(gt - gs)), 1.0 / (1.0 + std::exp(gs - gt))};
}

inline double beta_variate(double s, double t, Engine& g) { return beta_variate_pair(s, t, g).x; }

}  // namespace bjacobi
