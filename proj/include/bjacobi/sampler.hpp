#pragma once

// Monte Carlo draws of the smallest eigenvalue: the bidiagonal beta-Jacobi
// model and corners of Haar orthogonal/unitary matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "bjacobi/bidiagonal.hpp"
#include "bjacobi/constants.hpp"
#include "bjacobi/errors.hpp"
#include "bjacobi/rng.hpp"

namespace bjacobi {

// Variates of one bidiagonal model, 1-based as in c_1..c_n, c'_1..c'_{n-1}
// (index 0 unused).
struct BidiagonalModel {
  int n = 0;
  std::vector<double> c, s;    // c_i, s_i = sqrt(1 - c_i^2)
  std::vector<double> cp, sp;  // c'_i, s'_i

  // Row r (1-based) of the displayed matrix carries index i = n + 1 - r:
  //
  //   code row j = r - 1 | diagonal          | superdiagonal
  //   -------------------+-------------------+-----------------
  //   0                  | c_n               | -s_n c'_{n-1}
  //   j (0 < j < n - 1)  | c_{n-j} s'_{n-j}  | -s_{n-j} c'_{n-j-1}
  //   n - 1              | c_1 s'_1          | (none)
  Bidiagonal matrix() const {
    Bidiagonal b;
    b.diag.resize(n);
    b.super.resize(n - 1);
    for (int j = 0; j < n; ++j) {
      const int i = n - j;
      b.diag[j] = j == 0 ? c[i] : c[i] * sp[i];
      if (j + 1 < n) b.super[j] = -s[i] * cp[i - 1];
    }
    return b;
  }
};

inline BidiagonalModel draw_bidiagonal_model(const JacobiParams& p, Engine& g) {
  p.validate();
  const double h = p.beta / 2.0;
  BidiagonalModel mdl;
  mdl.n = p.m;
  mdl.c.assign(p.m + 1, 0.0);
  mdl.s.assign(p.m + 1, 0.0);
  mdl.cp.assign(p.m, 0.0);
  mdl.sp.assign(p.m, 0.0);
  for (int i = 1; i <= p.m; ++i) {
    const BetaPair x = beta_variate_pair(h * (p.a + i), h * (p.b + i), g);
    mdl.c[i] = std::sqrt(x.x);
    mdl.s[i] = std::sqrt(x.one_minus_x);
  }
  for (int i = 1; i < p.m; ++i) {
    const BetaPair x = beta_variate_pair(h * i, h * (p.a + p.b + 1.0 + i), g);
    mdl.cp[i] = std::sqrt(x.x);
    mdl.sp[i] = std::sqrt(x.one_minus_x);
  }
  return mdl;
}

inline constexpr int kMaxSamplerRetries = 3;

// Smallest eigenvalue of B B^T, as the squared smallest singular value of B.
// A draw whose value rounds to 0 or 1 is redrawn up to kMaxSamplerRetries times.
inline double sutton_sample(const JacobiParams& p, Engine& g) {
  for (int attempt = 0; attempt <= kMaxSamplerRetries; ++attempt) {
    const double s = bidiagonal_smallest_singular_value(draw_bidiagonal_model(p, g).matrix());
    const double lam = s * s;
    if (lam > 0.0 && lam < 1.0) return lam;
  }
  throw NonConvergence("sutton sample: degenerate draw after " + std::to_string(kMaxSamplerRetries) +
                           " retries",
                       kMaxSamplerRetries, 1.0);
}

enum class Field { real, complex };

inline const char* field_name(Field f) { return f == Field::real ? "real" : "complex"; }

// First r columns of an n x n Haar matrix: thin QR of a Gaussian n x r
// matrix, with each column multiplied by the phase of the matching R
// diagonal entry (without it the law of Q is not Haar).
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> haar_columns(int n, int r, Engine& g) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat z(n, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) {
      if constexpr (std::is_same_v<Scalar, double>) {
        z(i, j) = standard_normal(g);
      } else {
        const double re = standard_normal(g);
        const double im = standard_normal(g);
        z(i, j) = Scalar(re, im) / std::sqrt(2.0);
      }
    }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(n, r);
  const Mat& rr = qr.matrixQR();
  for (int j = 0; j < r; ++j) {
    const Scalar d = rr(j, j);
    const double ad = std::abs(d);
    q.col(j) *= ad > 0.0 ? d / ad : Scalar(1.0);
  }
  return q;
}

// Squared smallest singular value of the upper-left r x r corner of an
// n x n Haar matrix.
inline double haar_corner_smallest(int n, int r, Field field, Engine& g) {
  if (r < 1 || 2 * r > n) throw DomainError("haar corner: need 1 <= r <= n/2");
  double smin;
  if (field == Field::real) {
    const Eigen::MatrixXd q = haar_columns<double>(n, r, g);
    smin = Eigen::JacobiSVD<Eigen::MatrixXd>(q.topRows(r)).singularValues()(r - 1);
  } else {
    const Eigen::MatrixXcd q = haar_columns<std::complex<double>>(n, r, g);
    smin = Eigen::JacobiSVD<Eigen::MatrixXcd>(q.topRows(r)).singularValues()(r - 1);
  }
  return smin * smin;
}

// Which multiple of lambda_min a batch reports.
enum class Scaling { raw, regime1, regime2 };

inline const char* scaling_name(Scaling s) {
  switch (s) {
    case Scaling::raw: return "raw";
    case Scaling::regime1: return "r1";
    case Scaling::regime2: return "r2";
  }
  return "?";
}

// a = 2/beta - 2
inline bool is_case1(const JacobiParams& p) {
  return p.beta < 2.0 && std::fabs(p.a - case1_a(p.beta)) <= 1e-9 * std::max(1.0, std::fabs(p.a));
}

// beta(a+1)/2 = k, returned as k (0 if not a positive integer).
inline int case2_k(const JacobiParams& p) {
  const double k = p.beta * (p.a + 1.0) / 2.0;
  const double r = std::nearbyint(k);
  return r >= 1.0 && std::fabs(k - r) <= 1e-9 * r ? static_cast<int>(r) : 0;
}

// Factor applied to lambda_min: beta(b+m)/2 and beta m(b+m)/2 in case 1,
// (b+m) and m(b+m) in case 2.
inline double scaling_factor(const JacobiParams& p, Scaling s) {
  if (s == Scaling::raw) return 1.0;
  const double bm = p.b + p.m;
  const double extra = s == Scaling::regime2 ? p.m : 1.0;
  if (is_case1(p)) return p.beta / 2.0 * bm * extra;
  if (case2_k(p) > 0) return bm * extra;
  throw DomainError("regime scaling needs a = 2/beta - 2 or beta(a+1)/2 a positive integer");
}

struct SampleBatch {
  std::string model;  // "sutton" or "haar"
  JacobiParams params;
  Scaling scaling = Scaling::raw;
  double scale = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> values;
  std::size_t replicate_count = 0;
};

// values[i] = draw(substream(seed, i)) for i < count, on up to `threads`
// workers.  The output does not depend on the number of workers.  A failure
// is rethrown with the lowest failing replicate index in its message.
template <class Draw>
std::vector<double> parallel_draws(std::size_t count, std::uint64_t seed, unsigned threads, Draw&& draw) {
  std::vector<double> out(count);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::mutex mu;
  std::size_t bad = count;
  std::exception_ptr err;
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += threads) {
      try {
        Engine g = substream(seed, i);
        out[i] = draw(g);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < bad) bad = i, err = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (err) {
    const std::string where = "replicate " + std::to_string(bad) + ": ";
    try {
      std::rethrow_exception(err);
    } catch (const DomainError& e) {
      throw DomainError(where + e.what());
    } catch (const NonConvergence& e) {
      throw NonConvergence(where + e.what(), e.degree(), e.tail_estimate());
    } catch (const std::exception& e) {
      throw Error(where + e.what());
    }
  }
  return out;
}

// N scaled smallest-eigenvalue draws from the bidiagonal model.
inline SampleBatch sample_batch(const JacobiParams& p, Scaling s, std::size_t n, std::uint64_t seed,
                                unsigned threads = 1) {
  p.validate();
  if (n < 1) throw DomainError("sample batch: N must be at least 1");
  SampleBatch b;
  b.model = "sutton";
  b.params = p;
  b.scaling = s;
  b.scale = scaling_factor(p, s);
  b.seed = seed;
  b.values = parallel_draws(n, seed, threads, [&](Engine& g) { return b.scale * sutton_sample(p, g); });
  b.replicate_count = n;
  return b;
}

// N Haar-corner draws; params records the matching ensemble
// (beta = 1 or 2, a = 0, b = n - 2r, m = r), scale divides the raw value.
inline SampleBatch haar_batch(int n, int r, Field f, double divisor, std::size_t count, std::uint64_t seed,
                              unsigned threads = 1) {
  if (r < 1 || 2 * r > n) throw DomainError("haar corner: need 1 <= r <= n/2");
  if (count < 1) throw DomainError("sample batch: N must be at least 1");
  if (!(divisor > 0.0)) throw DomainError("haar batch: divisor must be positive");
  SampleBatch b;
  b.model = "haar";
  b.params = {f == Field::real ? 1.0 : 2.0, 0.0, static_cast<double>(n - 2 * r), r};
  b.scale = 1.0 / divisor;
  b.seed = seed;
  b.values = parallel_draws(count, seed, threads,
                            [&](Engine& g) { return haar_corner_smallest(n, r, f, g) / divisor; });
  b.replicate_count = count;
  return b;
}

}  // namespace bjacobi
