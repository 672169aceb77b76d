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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "cvq/matrix.hpp"

namespace cvq {

struct SymEigenResult {
  std::vector<double> eigenvalues;  // ascending
  RealMatrix eigenvectors;          // columns, orthogonal
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. The matrices in
/// this library are at most a few dozen rows, where Jacobi's robustness and
/// simplicity beat the asymptotically faster tridiagonal route.
///
/// Satisfies m == V diag(w) V^T with Frobenius residual <= 1e-10*(1+||m||_F).
/// Returns nullopt if the off-diagonal norm has not converged after
/// `max_sweeps` full sweeps (does not happen for sane inputs).
inline std::optional<SymEigenResult> sym_eigen(const SymMatrix& m, int max_sweeps = 64) {
  const std::size_t n = m.dim();
  RealMatrix a = m.to_real();
  RealMatrix v = RealMatrix::identity(n);

  const double stop = 1e-13 * (1.0 + m.frobenius_norm());

  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= stop) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p), arq = a(r, q);
            a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
            a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!converged) {
    // One last check: the sweep loop may have exited right after converging.
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) > stop) return std::nullopt;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEigenResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = RealMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    res.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, j) = v(i, order[j]);
  }
  return res;
}

namespace detail {
inline SymEigenResult sym_eigen_checked(const SymMatrix& m) {
  auto e = sym_eigen(m);
  if (!e) throw std::runtime_error("cvq: Jacobi eigensolver did not converge");
  return *e;
}
}  // namespace detail

inline double min_eigenvalue(const SymMatrix& m) {
  return detail::sym_eigen_checked(m).eigenvalues.front();
}

/// True iff min eigenvalue >= -tol*(1 + ||m||_F).
inline bool is_psd(const SymMatrix& m, double tol = kDefaultTol) {
  if (tol < 0.0) fail_arg("is_psd: tolerance must be nonnegative");
  return min_eigenvalue(m) >= -tol * (1.0 + m.frobenius_norm());
}

/// Real doubling of the Hermitian form A + iB (A symmetric, B skew): the
/// spectrum of [[A, -B], [B, A]] is that of A + iB with doubled multiplicity.
inline SymMatrix hermitian_embedding(const SymMatrix& a, const RealMatrix& b) {
  const std::size_t n = a.dim();
  if (b.rows() != n || b.cols() != n) fail_arg("hermitian_embedding: dimension mismatch");
  if ((b + b.transposed()).max_abs() > 1e-12 * (1.0 + b.frobenius_norm()))
    fail_arg("hermitian_embedding: B is not skew-symmetric");
  RealMatrix d(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d(i, j) = a(i, j);
      d(n + i, n + j) = a(i, j);
      d(i, n + j) = -b(i, j);
      d(n + i, j) = b(i, j);
    }
  return SymMatrix::from(d);
}

/// Decides A + iB >= 0 for real symmetric A and real skew-symmetric B through
/// the real doubling above; the equivalence is exact, so no complex arithmetic
/// is needed anywhere in the library.
inline bool hermitian_psd(const SymMatrix& a, const RealMatrix& b, double tol = kDefaultTol) {
  return is_psd(hermitian_embedding(a, b), tol);
}

/// Symmetric PSD square root via eigendecomposition. Eigenvalues negative
/// within tolerance are clamped to zero; anything more negative is rejected.
inline SymMatrix sym_sqrt(const SymMatrix& m, double tol = kDefaultTol) {
  const auto e = detail::sym_eigen_checked(m);
  const double floor = -tol * (1.0 + m.frobenius_norm());
  const std::size_t n = m.dim();
  RealMatrix scaled(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = e.eigenvalues[j];
    if (w < floor) fail_arg("sym_sqrt: matrix is not positive semidefinite");
    const double s = std::sqrt(std::max(w, 0.0));
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = e.eigenvectors(i, j) * s;
  }
  return SymMatrix::from(scaled * e.eigenvectors.transposed());
}

}  // namespace cvq
