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

#include <cmath>
#include <span>
#include <vector>

#include "cvq/eigen.hpp"
#include "cvq/matrix.hpp"

namespace cvq {

/// An n-mode Gaussian state in (covariance matrix, displacement) form, in
/// units where the vacuum quadrature variance is 1/2. The covariance matrix
/// is 2n x 2n with quadratures ordered (x_1, p_1, ..., x_n, p_n).
struct GaussianState {
  std::size_t n = 0;
  SymMatrix nu;
  std::vector<double> d;
};

/// Symplectic form: n diagonal blocks of [[0, 1], [-1, 0]].
inline RealMatrix make_delta(std::size_t n) {
  if (n < 1) fail_arg("make_delta: mode count must be at least 1");
  RealMatrix delta(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    delta(2 * k, 2 * k + 1) = 1.0;
    delta(2 * k + 1, 2 * k) = -1.0;
  }
  return delta;
}

inline GaussianState vacuum_state(std::size_t n) {
  return {n, SymMatrix::scaled_identity(2 * n, 0.5), std::vector<double>(2 * n, 0.0)};
}

/// Product of thermal modes: nu = diag(r_1 I_2, ..., r_n I_2), zero
/// displacement. Each r_i must be >= 1/2 for the state to be physical.
inline GaussianState thermal_state(std::span<const double> r) {
  const std::size_t n = r.size();
  if (n == 0) fail_arg("thermal_state: need at least one mode");
  SymMatrix nu(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    nu.set(2 * k, 2 * k, r[k]);
    nu.set(2 * k + 1, 2 * k + 1, r[k]);
  }
  return {n, nu, std::vector<double>(2 * n, 0.0)};
}

inline GaussianState thermal_state(double r) { return thermal_state(std::span(&r, 1)); }

/// Two-mode squeezed vacuum with squeezing parameter r:
/// [[c I, s Z], [s Z, c I]], c = cosh(2r)/2, s = sinh(2r)/2, Z = diag(1, -1).
inline GaussianState tmsv_state(double r) {
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  SymMatrix nu(4);
  nu.set(0, 0, c);
  nu.set(1, 1, c);
  nu.set(2, 2, c);
  nu.set(3, 3, c);
  nu.set(0, 2, s);
  nu.set(1, 3, -s);
  return {2, nu, std::vector<double>(4, 0.0)};
}

/// Physicality test: nu + (i/2)Delta >= 0, decided through the real doubling.
inline bool validate_state(const GaussianState& s, double tol = kDefaultTol) {
  if (s.n < 1 || s.nu.dim() != 2 * s.n || s.d.size() != 2 * s.n)
    fail_arg("validate_state: inconsistent dimensions");
  return hermitian_psd(s.nu, make_delta(s.n) * 0.5, tol);
}

/// Symplectic spectrum of a PSD covariance matrix, descending, length n.
///
/// W = sqrt(nu) Delta sqrt(nu) is skew with spectrum {+-i d_k}, so W^T W is
/// symmetric PSD with each d_k^2 appearing twice; adjacent pairs of its
/// ascending spectrum are averaged before the square root.
inline std::vector<double> symplectic_eigenvalues(const SymMatrix& nu, double tol = kDefaultTol) {
  if (nu.dim() % 2 != 0) fail_arg("symplectic_eigenvalues: dimension must be even");
  if (!is_psd(nu, tol)) fail_arg("symplectic_eigenvalues: covariance matrix is not PSD");
  const std::size_t n = nu.dim() / 2;
  const SymMatrix root = sym_sqrt(nu, tol);
  const RealMatrix w = root.to_real() * make_delta(n) * root.to_real();
  const SymMatrix gram = SymMatrix::from(w.transposed() * w);
  const auto eig = detail::sym_eigen_checked(gram);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double pair = 0.5 * (eig.eigenvalues[2 * k] + eig.eigenvalues[2 * k + 1]);
    double d = std::sqrt(std::max(pair, 0.0));
    // A mode this close to the vacuum floor is pure up to roundoff; snapping
    // keeps g exactly zero there (g has unbounded slope at 1/2).
    if (std::abs(d - 0.5) <= 5e-13) d = 0.5;
    out[n - 1 - k] = d;
  }
  return out;
}

/// g(d) = (d + 1/2) ln(d + 1/2) - (d - 1/2) ln(d - 1/2), the von Neumann
/// entropy of a single mode with symplectic eigenvalue d, in nats. g(1/2) = 0
/// and the second term is dropped whenever d <= 1/2 (x ln x -> 0).
inline double entropy_g(double d) {
  const double hi = d + 0.5;
  const double lo = d - 0.5;
  double s = (hi > 0.0) ? hi * std::log(hi) : 0.0;
  if (lo > 0.0) s -= lo * std::log(lo);
  return s;
}

/// Von Neumann entropy in nats; the displacement plays no role.
inline double entropy(const GaussianState& s, double tol = kDefaultTol) {
  if (!validate_state(s, tol)) fail_arg("entropy: state is not physical");
  double total = 0.0;
  for (double d : symplectic_eigenvalues(s.nu, tol)) total += entropy_g(d);
  return total;
}

/// Incoherent Gaussian states are exactly the products of thermal modes:
/// zero displacement and nu of the form diag(r_1 I_2, ..., r_n I_2). The
/// deviation is measured entrywise against tol*(1 + ||nu||_F).
inline bool is_incoherent_state(const GaussianState& s, double tol = kDefaultTol) {
  const double thr = tol * (1.0 + s.nu.frobenius_norm());
  for (double x : s.d)
    if (std::abs(x) > thr) return false;
  const std::size_t n2 = s.nu.dim();
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      if (i / 2 != j / 2) {
        if (std::abs(s.nu(i, j)) > thr) return false;
      } else if (i != j && std::abs(s.nu(i, j)) > thr) {
        return false;
      }
    }
  for (std::size_t k = 0; k < n2 / 2; ++k)
    if (std::abs(s.nu(2 * k, 2 * k) - s.nu(2 * k + 1, 2 * k + 1)) > 2.0 * thr) return false;
  return true;
}

inline GaussianState tensor_states(const GaussianState& a, const GaussianState& b) {
  GaussianState out;
  out.n = a.n + b.n;
  out.nu = SymMatrix::direct_sum(a.nu, b.nu);
  out.d = a.d;
  out.d.insert(out.d.end(), b.d.begin(), b.d.end());
  return out;
}

/// Mode-indexed principal submatrix (the 2x2 blocks named by `modes`).
inline SymMatrix extract_modes(const SymMatrix& nu, std::span<const std::size_t> modes) {
  if (modes.empty()) fail_arg("extract_modes: mode set must be non-empty");
  const std::size_t n = nu.dim() / 2;
  std::vector<bool> seen(n, false);
  for (std::size_t m : modes) {
    if (m >= n) fail_arg("extract_modes: mode index out of range");
    if (seen[m]) fail_arg("extract_modes: duplicate mode index");
    seen[m] = true;
  }
  const std::size_t k = modes.size();
  SymMatrix out(2 * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t v = 0; v < 2; ++v)
          out.set(2 * a + u, 2 * b + v, nu(2 * modes[a] + u, 2 * modes[b] + v));
  return out;
}

/// Restriction to a subset of modes (2x2 blocks of nu, pairs of d).
inline GaussianState marginal(const GaussianState& s, std::span<const std::size_t> modes) {
  GaussianState out;
  out.nu = extract_modes(s.nu, modes);
  out.n = modes.size();
  out.d.resize(2 * out.n);
  for (std::size_t a = 0; a < out.n; ++a) {
    out.d[2 * a] = s.d[2 * modes[a]];
    out.d[2 * a + 1] = s.d[2 * modes[a] + 1];
  }
  return out;
}

/// True iff every covariance entry linking `side_a` to its complement has
/// magnitude <= tol*(1 + ||nu||_F). Entrywise on purpose, to localize
/// failures in diagnostics.
inline bool is_product_state(const GaussianState& s, std::span<const std::size_t> side_a,
                             double tol = kDefaultTol) {
  std::vector<bool> in_a(s.n, false);
  for (std::size_t m : side_a) {
    if (m >= s.n) fail_arg("is_product_state: mode index out of range");
    in_a[m] = true;
  }
  const double thr = tol * (1.0 + s.nu.frobenius_norm());
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = 0; j < s.n; ++j) {
      if (in_a[i] == in_a[j]) continue;
      for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t v = 0; v < 2; ++v)
          if (std::abs(s.nu(2 * i + u, 2 * j + v)) > thr) return false;
    }
  return true;
}

}  // namespace cvq
