// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Runtime noise primitives in two forms: continuous samplers for execution
// and discretized finite distributions for the brute-force verifier. All
// randomness flows through an explicit seeded generator, so every run is
// reproducible from its seed.
#ifndef SOLO_MECHANISMS_HPP
#define SOLO_MECHANISMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "solo/diagnostics.hpp"

namespace solo {

// Deterministic pseudorandom stream: splitmix64, a 64-bit counter-based
// generator with a fixed algorithm across platforms. Identical seeds yield
// identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Derives an independent stream for a numbered subtask (verifier trials).
  Rng split(std::uint64_t index) const {
    Rng r(state_ ^ (0xd1342543de82ef95ULL * (index + 1)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

// A uniform discretization of [lo, hi] into bins of width step.
struct Grid {
  double lo = 0;
  double hi = 0;
  double step = 0;

  std::size_t bins() const {
    double n = (hi - lo) / step;
    auto k = static_cast<std::size_t>(std::llround(n));
    if (!(lo < hi) || !(step > 0) || k == 0 ||
        std::abs(n - static_cast<double>(k)) > 1e-6)
      throw SoloError(Code::kDomain, "grid bounds must satisfy lo < hi with (hi-lo)/step integral");
    return k;
  }
};

// Finite discrete probability distribution over reals: an ordered support
// with matching masses summing to 1 within 1e-9.
struct Dist {
  std::vector<double> support;
  std::vector<double> mass;

  double total_mass() const {
    double t = 0;
    for (double m : mass) t += m;
    return t;
  }
  double mean() const {
    double s = 0;
    for (std::size_t i = 0; i < support.size(); ++i) s += support[i] * mass[i];
    return s;
  }
};

// Inverse-CDF Laplace sample centered at `center` with the given scale.
// Scale zero returns the center exactly.
inline double laplace_sample(double center, double scale, Rng& rng) {
  if (!(scale >= 0) || !std::isfinite(scale))
    throw EvalError(Code::kInvalidScale, "laplace scale must be finite and >= 0");
  if (scale == 0) return center;
  double u = rng.uniform01() - 0.5;  // uniform in (-1/2, 1/2)
  double s = u < 0 ? -1.0 : 1.0;
  return center - scale * s * std::log(1.0 - 2.0 * std::abs(u));
}

// Noise level for the Gaussian mechanism: sigma = sqrt(2 s^2 ln(1.25/delta)) / eps.
inline double gauss_sigma(double s, double eps, double delta) {
  if (!(s > 0) || !(eps > 0) || !(delta > 0 && delta < 1))
    throw SoloError(Code::kDomain, "gauss_sigma needs s > 0, eps > 0, delta in (0,1)");
  return std::sqrt(2.0 * s * s * std::log(1.25 / delta)) / eps;
}

// Box-Muller Gaussian sample over the seeded stream; sigma zero returns the
// center exactly.
inline double gauss_sample(double center, double sigma, Rng& rng) {
  if (!(sigma >= 0) || !std::isfinite(sigma))
    throw EvalError(Code::kInvalidScale, "gauss sigma must be finite and >= 0");
  if (sigma == 0) return center;
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  double u1 = rng.uniform01();
  double u2 = rng.uniform01();
  double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  return center + sigma * z;
}

// Exponential mechanism: selects index i with probability proportional to
// exp(eps * scores[i] / (2 * sens)), computed with a max shift for numeric
// stability.
inline std::size_t exp_mech(const std::vector<double>& scores, double eps, double sens,
                            Rng& rng) {
  if (scores.empty()) throw EvalError(Code::kEmptyScores, "exponential mechanism needs scores");
  if (!(eps > 0) || !(sens > 0))
    throw SoloError(Code::kDomain, "exp_mech needs eps > 0 and sens > 0");
  double hi = -std::numeric_limits<double>::infinity();
  for (double s : scores) hi = std::max(hi, s);
  std::vector<double> w(scores.size());
  double total = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(eps * (scores[i] - hi) / (2.0 * sens));
    total += w[i];
  }
  double u = rng.uniform01() * total;
  double acc = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (u <= acc) return i;
  }
  return w.size() - 1;
}

// Probabilities of the exponential mechanism, for the exact-evaluation mode.
inline std::vector<double> exp_mech_probs(const std::vector<double>& scores, double eps,
                                          double sens) {
  if (scores.empty()) throw EvalError(Code::kEmptyScores, "exponential mechanism needs scores");
  double hi = -std::numeric_limits<double>::infinity();
  for (double s : scores) hi = std::max(hi, s);
  std::vector<double> w(scores.size());
  double total = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    w[i] = std::exp(eps * (scores[i] - hi) / (2.0 * sens));
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

namespace detail {
inline double laplace_cdf(double x, double center, double scale) {
  double z = (x - center) / scale;
  return z < 0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}
inline double gauss_cdf(double x, double center, double sigma) {
  return 0.5 * std::erfc(-(x - center) / (sigma * std::sqrt(2.0)));
}

// Bins a continuous CDF onto the grid. Tail mass below lo folds into the
// first bin and above hi into the last, keeping the total mass exactly 1.
template <typename Cdf>
Dist bin_cdf(const Grid& grid, Cdf&& cdf) {
  std::size_t k = grid.bins();
  Dist d;
  d.support.resize(k);
  d.mass.resize(k);
  double prev = 0.0;  // CDF(-infinity)
  for (std::size_t i = 0; i < k; ++i) {
    double right = grid.lo + static_cast<double>(i + 1) * grid.step;
    double c = i + 1 == k ? 1.0 : cdf(right);
    d.support[i] = grid.lo + (static_cast<double>(i) + 0.5) * grid.step;
    d.mass[i] = c - prev;
    prev = c;
  }
  return d;
}
}  // namespace detail

// Discretized Laplace PMF on the grid: bin mass is the CDF difference across
// each bin, with tails folded into the edge bins.
inline Dist laplace_pmf(double center, double scale, const Grid& grid) {
  if (!(scale > 0)) throw EvalError(Code::kInvalidScale, "laplace_pmf needs scale > 0");
  if (center < grid.lo || center > grid.hi)
    throw EvalError(Code::kGridTooNarrow, "grid does not cover the distribution center");
  return detail::bin_cdf(grid, [&](double x) { return detail::laplace_cdf(x, center, scale); });
}

// Discretized Gaussian PMF on the grid, same binning rules as laplace_pmf.
inline Dist gauss_pmf(double center, double sigma, const Grid& grid) {
  if (!(sigma > 0)) throw EvalError(Code::kInvalidScale, "gauss_pmf needs sigma > 0");
  if (center < grid.lo || center > grid.hi)
    throw EvalError(Code::kGridTooNarrow, "grid does not cover the distribution center");
  return detail::bin_cdf(grid, [&](double x) { return detail::gauss_cdf(x, center, sigma); });
}

}  // namespace solo

#endif  // SOLO_MECHANISMS_HPP
