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

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cvq/channel.hpp"

namespace cvq {

/// Parameterization of an incoherent Gaussian channel as a blockwise
/// permutation of single-mode pieces:
///
///   K = (P_pi (x) I_2) (direct sum of t_i O_i),   M = direct sum of noise,
///   dbar = 0,
///
/// where input mode i feeds output mode pi[i] through the 2x2 block t_i O_i
/// (O_i orthogonal) and picks up noise lambda[i] I_2 there.
///
/// The scale carries a gauge freedom (t, O) <-> (-t, -O); decomposition
/// returns t >= 0. A 2x2 orthogonal O is symplectic iff det O = +1, which
/// selects the complete-positivity bound on the noise:
/// lambda >= |t^2 - 1|/2 when symplectic, lambda >= (t^2 + 1)/2 otherwise.
struct IncoherentDecomposition {
  std::vector<std::size_t> pi;
  std::vector<double> t;
  std::vector<RealMatrix> O;  // 2x2 each
  std::vector<double> lambda;
  std::vector<bool> symplectic;  // det O_i = +1
  std::vector<bool> zero_mode;   // t_i below tolerance; O_i defaulted to identity
};

inline double incoherent_noise_bound(double t, bool symplectic_flag) {
  return symplectic_flag ? 0.5 * std::abs(t * t - 1.0) : 0.5 * (t * t + 1.0);
}

namespace detail {

inline double det2(const RealMatrix& o) { return o(0, 0) * o(1, 1) - o(0, 1) * o(1, 0); }

inline bool is_permutation(const std::vector<std::size_t>& pi) {
  std::vector<bool> hit(pi.size(), false);
  for (std::size_t v : pi) {
    if (v >= pi.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

}  // namespace detail

/// Builds the channel described by a decomposition. Throws if the
/// decomposition violates its invariants (non-permutation pi, non-orthogonal
/// O, inconsistent symplectic flag, or noise below the CP bound).
inline GaussianChannel synthesize_incoherent(const IncoherentDecomposition& d) {
  const std::size_t n = d.pi.size();
  if (n == 0) fail_arg("synthesize_incoherent: empty decomposition");
  if (d.t.size() != n || d.O.size() != n || d.lambda.size() != n || d.symplectic.size() != n)
    fail_arg("synthesize_incoherent: field lengths disagree");
  if (!detail::is_permutation(d.pi)) fail_arg("synthesize_incoherent: pi is not a permutation");

  GaussianChannel c;
  c.n = n;
  c.K = RealMatrix(2 * n, 2 * n);
  c.M = SymMatrix(2 * n);
  c.dbar.assign(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const RealMatrix& o = d.O[i];
    if (o.rows() != 2 || o.cols() != 2) fail_arg("synthesize_incoherent: O must be 2x2");
    const RealMatrix gram = o.transposed() * o;
    if ((gram - RealMatrix::identity(2)).max_abs() > 1e-9)
      fail_arg("synthesize_incoherent: O is not orthogonal");
    const bool sympl = detail::det2(o) > 0.0;
    if (sympl != d.symplectic[i])
      fail_arg("synthesize_incoherent: symplectic flag inconsistent with det O");
    if (d.lambda[i] < incoherent_noise_bound(d.t[i], sympl) - 1e-9)
      fail_arg("synthesize_incoherent: noise below the complete-positivity bound");

    const std::size_t out = d.pi[i];
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t v = 0; v < 2; ++v) c.K(2 * out + u, 2 * i + v) = d.t[i] * o(u, v);
    c.M.set(2 * out, 2 * out, d.lambda[i]);
    c.M.set(2 * out + 1, 2 * out + 1, d.lambda[i]);
  }
  return c;
}

struct DecomposeOutcome {
  std::optional<IncoherentDecomposition> decomposition;
  std::string refusal;  // first violated condition when decomposition is empty
  bool ok() const { return decomposition.has_value(); }
};

namespace detail {

/// 2x2 block (k, j) of a 2n x 2n matrix.
inline RealMatrix block2(const RealMatrix& m, std::size_t k, std::size_t j) {
  RealMatrix b(2, 2);
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v) b(u, v) = m(2 * k + u, 2 * j + v);
  return b;
}

/// Checks that M is (tolerably) of the form "direct sum of m_k I_2" and
/// returns the m_k. thr is an absolute entrywise threshold.
inline std::optional<std::vector<double>> scalar_block_pattern(const SymMatrix& m, double thr) {
  const std::size_t n = m.dim() / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (i / 2 != j / 2 && std::abs(m(i, j)) > thr) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(m(2 * k, 2 * k + 1)) > thr) return std::nullopt;
    const double a = m(2 * k, 2 * k), b = m(2 * k + 1, 2 * k + 1);
    if (std::abs(a - b) > 2.0 * thr) return std::nullopt;
    out[k] = 0.5 * (a + b);
  }
  return out;
}

/// Block support of K as a partial matching: match[j] = output row of the
/// unique nonzero 2x2 block in input column j, or npos for an all-zero
/// column. Fails if some row or column holds more than one nonzero block.
inline bool block_support(const RealMatrix& k_mat, double thr, std::vector<std::size_t>& match,
                          std::string& why) {
  const std::size_t n = k_mat.rows() / 2;
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  match.assign(n, npos);
  std::vector<bool> row_used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (block2(k_mat, k, j).frobenius_norm() <= thr) continue;
      if (match[j] != npos) {
        why = "K has two nonzero 2x2 blocks in input column " + std::to_string(j);
        return false;
      }
      if (row_used[k]) {
        why = "K has two nonzero 2x2 blocks in output row " + std::to_string(k);
        return false;
      }
      match[j] = k;
      row_used[k] = true;
    }
  }
  // Zero columns pair up with the unused rows in increasing order.
  std::size_t next = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (match[j] != npos) continue;
    while (row_used[next]) ++next;
    match[j] = next;
    row_used[next] = true;
  }
  return true;
}

}  // namespace detail

/// Recovers the incoherent-channel parameterization, or refuses with the
/// first violated structural condition. Nonzero block detection uses the
/// threshold tol*(1 + ||K||_F); an all-zero input column is reported as
/// t = 0 with O = I and flagged in zero_mode.
inline DecomposeOutcome decompose_incoherent(const GaussianChannel& c, double tol = kDefaultTol) {
  if (!validate_channel(c)) fail_arg("decompose_incoherent: channel is not completely positive");
  DecomposeOutcome out;
  const std::size_t n = c.n;

  for (double x : c.dbar)
    if (std::abs(x) > tol) {
      out.refusal = "dbar is nonzero";
      return out;
    }

  const double thr_m = tol * (1.0 + c.M.frobenius_norm());
  const auto noise = detail::scalar_block_pattern(c.M, thr_m);
  if (!noise) {
    out.refusal = "M is not a direct sum of scalar 2x2 blocks";
    return out;
  }

  const double thr_k = tol * (1.0 + c.K.frobenius_norm());
  std::vector<std::size_t> match;
  std::string why;
  if (!detail::block_support(c.K, thr_k, match, why)) {
    out.refusal = why;
    return out;
  }

  IncoherentDecomposition d;
  d.pi = match;
  d.t.assign(n, 0.0);
  d.lambda.assign(n, 0.0);
  d.symplectic.assign(n, true);
  d.zero_mode.assign(n, false);
  d.O.assign(n, RealMatrix::identity(2));
  const double thr_orth = tol * (1.0 + c.K.frobenius_norm() * c.K.frobenius_norm());
  for (std::size_t j = 0; j < n; ++j) {
    const RealMatrix a = detail::block2(c.K, match[j], j);
    if (a.frobenius_norm() <= thr_k) {
      d.zero_mode[j] = true;  // t = 0, O = I by convention
    } else {
      const double t = std::sqrt(0.5 * a.frobenius_norm() * a.frobenius_norm());
      const RealMatrix gram = a.transposed() * a;
      RealMatrix residual = gram;
      residual(0, 0) -= t * t;
      residual(1, 1) -= t * t;
      if (residual.max_abs() > thr_orth) {
        out.refusal = "K block in input column " + std::to_string(j) +
                      " is not a scalar multiple of an orthogonal matrix";
        return out;
      }
      d.t[j] = t;
      d.O[j] = a * (1.0 / t);
      d.symplectic[j] = detail::det2(d.O[j]) > 0.0;
    }
    d.lambda[j] = (*noise)[match[j]];
    if (d.lambda[j] < incoherent_noise_bound(d.t[j], d.symplectic[j]) - tol) {
      out.refusal = "noise below the complete-positivity bound in input column " +
                    std::to_string(j);
      return out;
    }
  }
  out.decomposition = std::move(d);
  return out;
}

/// Coherence breaking means the channel erases its input into a fixed
/// thermal product: K = 0, dbar = 0 and M = direct sum of lambda_i I_2 with
/// every lambda_i >= 1/2 - tol.
inline bool is_coherence_breaking(const GaussianChannel& c, double tol = kDefaultTol) {
  if (c.K.max_abs() > tol) return false;
  for (double x : c.dbar)
    if (std::abs(x) > tol) return false;
  const auto noise = detail::scalar_block_pattern(c.M, tol * (1.0 + c.M.frobenius_norm()));
  if (!noise) return false;
  for (double lam : *noise)
    if (lam < 0.5 - tol) return false;
  return true;
}

/// Classical-quantum test: K Delta K^T = 0, measured in Frobenius norm
/// against tol*(1 + ||K||_F^2).
inline bool is_cq(const GaussianChannel& c, double tol = kDefaultTol) {
  const RealMatrix delta = make_delta(c.n);
  const double kf = c.K.frobenius_norm();
  return (c.K * delta * c.K.transposed()).frobenius_norm() <= tol * (1.0 + kf * kf);
}

/// PPT test: M >= (i/2)(Delta + K Delta K^T) and M >= (i/2)(Delta - K Delta K^T).
inline bool is_ppt(const GaussianChannel& c, double tol = kDefaultTol) {
  const RealMatrix delta = make_delta(c.n);
  RealMatrix p = c.K * delta * c.K.transposed();
  p = (p - p.transposed()) * 0.5;
  return hermitian_psd(c.M, (delta + p) * 0.5, tol) && hermitian_psd(c.M, (delta - p) * 0.5, tol);
}

enum class EbStatus { feasible, infeasible, unknown };

inline const char* to_string(EbStatus s) {
  switch (s) {
    case EbStatus::feasible: return "feasible";
    case EbStatus::infeasible: return "infeasible";
    default: return "unknown";
  }
}

struct EbResult {
  EbStatus status = EbStatus::unknown;
  std::optional<std::pair<SymMatrix, SymMatrix>> witness;  // (M1, M2)
  std::string certificate;  // which rule decided the status
  int iterations = 0;
  double residual = -1.0;  // witness violation, -1 when no witness exists
};

namespace detail {

/// Violation of X + iB >= 0, as a nonnegative number.
inline double hermitian_violation(const SymMatrix& x, const RealMatrix& b) {
  return std::max(0.0, -min_eigenvalue(hermitian_embedding(x, b)));
}

/// Clamps the Hermitian form X + iB onto the PSD cone and keeps the real
/// part: the doubled matrix is eigendecomposed, negative eigenvalues are
/// zeroed, and the two diagonal blocks of the rebuilt matrix are averaged.
inline SymMatrix clamp_real_part(const SymMatrix& x, const RealMatrix& b) {
  const SymMatrix emb = hermitian_embedding(x, b);
  const auto e = sym_eigen_checked(emb);
  const std::size_t m = emb.dim();
  RealMatrix scaled(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double w = std::max(e.eigenvalues[j], 0.0);
    for (std::size_t i = 0; i < m; ++i) scaled(i, j) = e.eigenvectors(i, j) * w;
  }
  const RealMatrix clamped = scaled * e.eigenvectors.transposed();
  const std::size_t n = x.dim();
  RealMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = 0.5 * (clamped(i, j) + clamped(n + i, n + j));
  return SymMatrix::from(out);
}

}  // namespace detail

/// Semidecision of the entanglement-breaking split M = M1 + M2 with
/// M1 >= +-(i/2) Delta and M2 >= +-(i/2) K Delta K^T.
///
/// Decision rules, in order:
///   - PPT fails            -> infeasible (EB channels are PPT)
///   - K Delta K^T = 0 (CQ) -> feasible with witness (M, 0)
///   - M = 0, K Delta K^T != 0 -> infeasible (both parts would have to vanish)
///   - closed-form candidate M2 = (||K Delta K^T||_2 / 2) I, verified
///   - alternating projections between the sum constraint and the two
///     spectrahedra, feasibility declared when both violations drop below
///     1e-7*(1 + ||M||_F)
/// Anything still open after max_iter sweeps is reported as unknown.
inline EbResult is_eb(const GaussianChannel& c, double tol = kDefaultTol, int max_iter = 5000) {
  EbResult res;
  const std::size_t n2 = 2 * c.n;
  const RealMatrix delta = make_delta(c.n);
  RealMatrix p = c.K * delta * c.K.transposed();
  p = (p - p.transposed()) * 0.5;
  const RealMatrix b1 = delta * 0.5;
  const RealMatrix b2 = p * 0.5;

  if (!is_ppt(c, tol)) {
    res.status = EbStatus::infeasible;
    res.certificate = "ppt-violation";
    return res;
  }
  if (is_cq(c, tol)) {
    res.status = EbStatus::feasible;
    res.certificate = "cq-split";
    res.witness = {c.M, SymMatrix(n2)};
    res.residual = std::max(detail::hermitian_violation(c.M, b1),
                            detail::hermitian_violation(SymMatrix(n2), b2));
    return res;
  }
  if (c.M.max_abs() <= tol) {
    // M1 + M2 = 0 with both PSD forces M1 = M2 = 0, which cannot dominate
    // (i/2) Delta.
    res.status = EbStatus::infeasible;
    res.certificate = "zero-noise";
    return res;
  }

  const double feas_thr = 1e-7 * (1.0 + c.M.frobenius_norm());
  const auto try_witness = [&](const SymMatrix& m1, const SymMatrix& m2, double thr) -> bool {
    const double v =
        std::max(detail::hermitian_violation(m1, b1), detail::hermitian_violation(m2, b2));
    if (v > thr) return false;
    res.status = EbStatus::feasible;
    res.witness = {m1, m2};
    res.residual = v;
    return true;
  };

  {
    // Spectral candidate: scalar noise (||P||_2 / 2) I always dominates
    // (i/2) P; the remainder must then cover (i/2) Delta.
    const auto gram = detail::sym_eigen_checked(SymMatrix::from(p.transposed() * p));
    const double p_norm2 = std::sqrt(std::max(gram.eigenvalues.back(), 0.0));
    const SymMatrix m2 = SymMatrix::scaled_identity(n2, 0.5 * p_norm2);
    if (try_witness(c.M - m2, m2, tol * (1.0 + c.M.frobenius_norm()))) {
      res.certificate = "spectral-split";
      return res;
    }
  }

  SymMatrix m1 = c.M * 0.5;
  SymMatrix m2 = c.M - m1;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if (try_witness(m1, m2, feas_thr)) {
      res.certificate = "alternating-projections";
      res.iterations = iter;
      return res;
    }
    const SymMatrix p1 = detail::clamp_real_part(m1, b1);
    const SymMatrix p2 = detail::clamp_real_part(m2, b2);
    const SymMatrix gap = (c.M - p1 - p2) * 0.5;
    m1 = p1 + gap;
    m2 = p2 + gap;
  }
  res.status = EbStatus::unknown;
  res.certificate = "iteration-cap";
  res.iterations = max_iter;
  res.residual =
      std::max(detail::hermitian_violation(m1, b1), detail::hermitian_violation(m2, b2));
  return res;
}

/// Product-preservation test: K must be a blockwise permutation (one nonzero
/// 2x2 block per row and column, blocks otherwise arbitrary) and M must be
/// 2x2-block diagonal. `pi` maps input modes to output modes and is only
/// meaningful when `preserving` is true.
struct ProductPreserving {
  bool preserving = false;
  std::vector<std::size_t> pi;
};

inline ProductPreserving is_product_preserving(const GaussianChannel& c,
                                               double tol = kDefaultTol) {
  ProductPreserving out;
  const double thr_m = tol * (1.0 + c.M.frobenius_norm());
  for (std::size_t i = 0; i < 2 * c.n; ++i)
    for (std::size_t j = 0; j < 2 * c.n; ++j)
      if (i / 2 != j / 2 && std::abs(c.M(i, j)) > thr_m) return out;
  std::string why;
  if (!detail::block_support(c.K, tol * (1.0 + c.K.frobenius_norm()), out.pi, why)) return out;
  out.preserving = true;
  return out;
}

/// Joint report across the channel classes, with the residual diagnostics
/// the individual predicates are based on.
struct ClassReport {
  double tol = kDefaultTol;
  bool is_incoherent = false;
  std::optional<IncoherentDecomposition> decomposition;
  bool cb = false;
  bool cq = false;
  EbStatus eb = EbStatus::unknown;
  std::string eb_certificate;
  bool ppt = false;
  bool chain_consistent = false;
  std::map<std::string, double> residuals;
};

/// Evaluates every class predicate independently (no short-circuiting
/// through the inclusion chain) and records whether the resolved values
/// respect CB => CQ => EB-feasible => PPT.
inline ClassReport classify(const GaussianChannel& c, double tol = kDefaultTol,
                            int eb_max_iter = 5000) {
  if (!validate_channel(c)) fail_arg("classify: channel is not completely positive");
  ClassReport r;
  r.tol = tol;

  auto dec = decompose_incoherent(c, tol);
  r.is_incoherent = dec.ok();
  r.decomposition = std::move(dec.decomposition);
  r.cb = is_coherence_breaking(c, tol);
  r.cq = is_cq(c, tol);
  r.ppt = is_ppt(c, tol);
  const EbResult eb = is_eb(c, tol, eb_max_iter);
  r.eb = eb.status;
  r.eb_certificate = eb.certificate;

  const RealMatrix delta = make_delta(c.n);
  RealMatrix p = c.K * delta * c.K.transposed();
  p = (p - p.transposed()) * 0.5;
  r.residuals["k_max_abs"] = c.K.max_abs();
  r.residuals["dbar_max_abs"] = [&] {
    double m = 0.0;
    for (double x : c.dbar) m = std::max(m, std::abs(x));
    return m;
  }();
  r.residuals["k_delta_kt_norm"] = p.frobenius_norm();
  r.residuals["cp_min_eig"] = min_eigenvalue(hermitian_embedding(c.M, cp_form(c)));
  r.residuals["ppt_min_eig_plus"] = min_eigenvalue(hermitian_embedding(c.M, (delta + p) * 0.5));
  r.residuals["ppt_min_eig_minus"] = min_eigenvalue(hermitian_embedding(c.M, (delta - p) * 0.5));
  r.residuals["eb_residual"] = eb.residual;

  bool ok = true;
  if (r.cb && !r.cq) ok = false;
  if (r.cq && r.eb != EbStatus::feasible) ok = false;
  if (r.eb == EbStatus::feasible && !r.ppt) ok = false;
  r.chain_consistent = ok;
  return r;
}

/// Applies (coherence-breaking channel) (x) psi to a joint state and checks
/// that the output factorizes across the cut between the two subsystems.
struct ProductOutputCheck {
  bool product = false;
  double cross_norm = 0.0;
  GaussianState output;
};

inline ProductOutputCheck verify_product_output(const GaussianChannel& cb,
                                                const GaussianChannel& psi,
                                                const GaussianState& s,
                                                double tol = kDefaultTol) {
  if (!is_coherence_breaking(cb, tol))
    fail_arg("verify_product_output: first channel is not coherence-breaking");
  if (!validate_channel(psi)) fail_arg("verify_product_output: psi is not completely positive");
  if (s.n != cb.n + psi.n) fail_arg("verify_product_output: joint state has wrong mode count");

  ProductOutputCheck out;
  out.output = apply(tensor_channels(cb, psi), s);
  std::vector<std::size_t> side_a(cb.n);
  for (std::size_t i = 0; i < cb.n; ++i) side_a[i] = i;
  out.product = is_product_state(out.output, side_a, tol);
  double cross = 0.0;
  for (std::size_t i = 0; i < 2 * cb.n; ++i)
    for (std::size_t j = 2 * cb.n; j < 2 * s.n; ++j)
      cross += out.output.nu(i, j) * out.output.nu(i, j);
  out.cross_norm = std::sqrt(2.0 * cross);
  return out;
}

}  // namespace cvq
