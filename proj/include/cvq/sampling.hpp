// Copyright 2026 The cvq Authors
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

#pragma once

#include <cstdint>

#include "cvq/classify.hpp"

namespace cvq {

/// Seeded generator configuration. Identical configs reproduce identical
/// objects bit for bit; derive per-trial configs with with_seed(mix_seed(...)).
struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t n = 1;
  double scale = 1.0;
};

/// splitmix64; the generator identity recorded in audit reports.
inline constexpr const char* kRngName = "splitmix64";

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    s_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    // Box-Muller; built on the raw stream so results do not depend on any
    // library distribution implementation.
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t s_;
};

inline RealMatrix rotation2(double theta) {
  RealMatrix r(2, 2);
  r(0, 0) = std::cos(theta);
  r(0, 1) = std::sin(theta);
  r(1, 0) = -std::sin(theta);
  r(1, 1) = std::cos(theta);
  return r;
}

inline RealMatrix reflection2(double theta) {
  RealMatrix r = rotation2(theta);
  r(0, 1) = -r(0, 1);
  r(1, 1) = -r(1, 1);
  return r;
}

inline RealMatrix random_gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                                         double sigma) {
  RealMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = sigma * rng.normal();
  return g;
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(pi[i - 1], pi[rng.below(i)]);
  return pi;
}

}  // namespace detail

enum class StateKind { thermal, squeezed, displaced, generic, tmsv };
enum class ChannelKind { generic, incoherent, cb, cq, product_preserving };

/// Draws a valid Gaussian state of the requested kind. `tmsv_r` is only
/// used by the tmsv kind, which needs n = 2 and is deterministic given r.
inline GaussianState sample_state(const SamplerConfig& cfg, StateKind kind, double tmsv_r = 1.0) {
  if (cfg.n < 1) fail_arg("sample_state: mode count must be at least 1");
  if (cfg.scale <= 0.0) fail_arg("sample_state: scale must be positive");
  detail::Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(kind)));
  const std::size_t n = cfg.n;

  switch (kind) {
    case StateKind::thermal: {
      std::vector<double> r(n);
      for (double& x : r) x = 0.5 + cfg.scale * rng.uniform();
      return thermal_state(r);
    }
    case StateKind::squeezed:
    case StateKind::displaced: {
      // Thermal covariance conjugated by per-mode rotation + squeezer.
      std::vector<double> r(n);
      for (double& x : r) x = 0.5 + cfg.scale * rng.uniform();
      GaussianState s = thermal_state(r);
      RealMatrix sym(1, 1);
      for (std::size_t k = 0; k < n; ++k) {
        RealMatrix squeeze(2, 2);
        const double z = rng.uniform(-0.6, 0.6);
        squeeze(0, 0) = std::exp(z);
        squeeze(1, 1) = std::exp(-z);
        const RealMatrix one = detail::rotation2(rng.uniform(0.0, 6.283185307179586)) * squeeze;
        sym = (k == 0) ? one : RealMatrix::direct_sum(sym, one);
      }
      s.nu = SymMatrix::from(sym * s.nu.to_real() * sym.transposed());
      if (kind == StateKind::displaced)
        for (double& x : s.d) x = cfg.scale * rng.normal();
      return s;
    }
    case StateKind::generic: {
      // nu = I/2 + G G^T >= I/2 is always physical.
      const RealMatrix g = detail::random_gaussian_matrix(
          rng, 2 * n, 2 * n, cfg.scale / std::sqrt(static_cast<double>(2 * n)));
      return {n, SymMatrix::from(g * g.transposed()) + SymMatrix::scaled_identity(2 * n, 0.5),
              std::vector<double>(2 * n, 0.0)};
    }
    case StateKind::tmsv:
      if (n != 2) fail_arg("sample_state: tmsv needs n = 2");
      return tmsv_state(tmsv_r);
  }
  fail_arg("sample_state: unknown kind");
}

/// Draws a valid Gaussian channel that provably belongs to the requested
/// class. All kinds use zero displacement. Incoherent-kind noise sits
/// exactly at the complete-positivity bound with probability 0.2 to
/// exercise the boundary.
inline GaussianChannel sample_channel(const SamplerConfig& cfg, ChannelKind kind) {
  if (cfg.n < 1) fail_arg("sample_channel: mode count must be at least 1");
  if (cfg.scale <= 0.0) fail_arg("sample_channel: scale must be positive");
  detail::Rng rng(mix_seed(cfg.seed, 0x100 + static_cast<std::uint64_t>(kind)));
  const std::size_t n = cfg.n;

  switch (kind) {
    case ChannelKind::generic: {
      const RealMatrix k_mat = detail::random_gaussian_matrix(
          rng, 2 * n, 2 * n, cfg.scale / std::sqrt(static_cast<double>(2 * n)));
      const RealMatrix g = detail::random_gaussian_matrix(
          rng, 2 * n, 2 * n, 0.3 * cfg.scale / std::sqrt(static_cast<double>(2 * n)));
      const double kf = k_mat.frobenius_norm();
      // M >= (||K||_F^2 + 1)/2 I dominates (i/2)(Delta - K Delta K^T).
      const SymMatrix m = SymMatrix::from(g * g.transposed()) +
                          SymMatrix::scaled_identity(2 * n, 0.5 * (kf * kf + 1.0));
      return {n, k_mat, m, std::vector<double>(2 * n, 0.0)};
    }
    case ChannelKind::incoherent: {
      IncoherentDecomposition d;
      d.pi = detail::random_permutation(rng, n);
      d.t.resize(n);
      d.O.resize(n);
      d.lambda.resize(n);
      d.symplectic.resize(n);
      d.zero_mode.assign(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        d.t[i] = (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(0.3, 0.3 + cfg.scale);
        const double theta = rng.uniform(0.0, 6.283185307179586);
        d.symplectic[i] = rng.chance(0.5);
        d.O[i] = d.symplectic[i] ? detail::rotation2(theta) : detail::reflection2(theta);
        const double margin = rng.chance(0.2) ? 0.0 : cfg.scale * rng.uniform();
        d.lambda[i] = incoherent_noise_bound(d.t[i], d.symplectic[i]) + margin;
      }
      return synthesize_incoherent(d);
    }
    case ChannelKind::cb: {
      SymMatrix m(2 * n);
      for (std::size_t k = 0; k < n; ++k) {
        const double lam = rng.chance(0.2) ? 0.5 : 0.5 + cfg.scale * rng.uniform();
        m.set(2 * k, 2 * k, lam);
        m.set(2 * k + 1, 2 * k + 1, lam);
      }
      return {n, RealMatrix(2 * n, 2 * n), m, std::vector<double>(2 * n, 0.0)};
    }
    case ChannelKind::cq: {
      // Per-mode singular 2x2 blocks: a rank-deficient block A satisfies
      // A Delta_1 A^T = det(A) Delta_1 = 0.
      RealMatrix k_mat(2 * n, 2 * n);
      for (std::size_t k = 0; k < n; ++k) {
        RealMatrix rank1(2, 2);
        rank1(0, 0) = rng.uniform(0.3, 0.3 + cfg.scale);
        const RealMatrix blk = detail::rotation2(rng.uniform(0.0, 6.283185307179586)) * rank1 *
                               detail::rotation2(rng.uniform(0.0, 6.283185307179586));
        for (std::size_t u = 0; u < 2; ++u)
          for (std::size_t v = 0; v < 2; ++v) k_mat(2 * k + u, 2 * k + v) = blk(u, v);
      }
      const RealMatrix g = detail::random_gaussian_matrix(
          rng, 2 * n, 2 * n, 0.3 * cfg.scale / std::sqrt(static_cast<double>(2 * n)));
      const SymMatrix m = SymMatrix::from(g * g.transposed()) +
                          SymMatrix::scaled_identity(2 * n, 0.5 + 0.1 * cfg.scale);
      return {n, k_mat, m, std::vector<double>(2 * n, 0.0)};
    }
    case ChannelKind::product_preserving: {
      const auto pi = detail::random_permutation(rng, n);
      RealMatrix k_mat(2 * n, 2 * n);
      SymMatrix m(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        RealMatrix blk(2, 2);
        for (std::size_t u = 0; u < 2; ++u)
          for (std::size_t v = 0; v < 2; ++v) blk(u, v) = rng.uniform(-1.0, 1.0) * cfg.scale;
        for (std::size_t u = 0; u < 2; ++u)
          for (std::size_t v = 0; v < 2; ++v) k_mat(2 * pi[i] + u, 2 * i + v) = blk(u, v);
        // Noise block dominating (i/2)(1 - det B) Delta_1.
        const double need = 0.5 * std::abs(1.0 - detail::det2(blk));
        RealMatrix g(2, 1);
        g(0, 0) = 0.3 * cfg.scale * rng.normal();
        g(1, 0) = 0.3 * cfg.scale * rng.normal();
        const RealMatrix noise = g * g.transposed();
        const double margin = 0.05 + cfg.scale * rng.uniform();
        for (std::size_t u = 0; u < 2; ++u)
          for (std::size_t v = 0; v < 2; ++v)
            m.set(2 * pi[i] + u, 2 * pi[i] + v, noise(u, v) + (u == v ? need + margin : 0.0));
      }
      return {n, k_mat, m, std::vector<double>(2 * n, 0.0)};
    }
  }
  fail_arg("sample_channel: unknown kind");
}

}  // namespace cvq
