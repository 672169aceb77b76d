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

#include "cvq/state.hpp"

namespace cvq {

/// An n-mode Gaussian channel (K, M, dbar): covariance matrices map as
/// nu -> K nu K^T + M and displacements as d -> K d + dbar. Input and output
/// mode counts are equal throughout this library.
struct GaussianChannel {
  std::size_t n = 0;
  RealMatrix K;
  SymMatrix M;
  std::vector<double> dbar;
};

inline GaussianChannel identity_channel(std::size_t n) {
  if (n < 1) fail_arg("identity_channel: mode count must be at least 1");
  return {n, RealMatrix::identity(2 * n), SymMatrix(2 * n), std::vector<double>(2 * n, 0.0)};
}

/// The noise term of the complete-positivity condition,
/// B = (Delta - K Delta K^T)/2, skew-symmetrized to absorb rounding.
inline RealMatrix cp_form(const GaussianChannel& c) {
  const RealMatrix delta = make_delta(c.n);
  RealMatrix b = (delta - c.K * delta * c.K.transposed()) * 0.5;
  return (b - b.transposed()) * 0.5;
}

/// Complete positivity: M + i B >= 0 with B = (Delta - K Delta K^T)/2.
/// Only the +i branch is evaluated; for real M and skew B the -i condition is
/// the complex conjugate of the +i one, hence redundant.
inline bool validate_channel(const GaussianChannel& c, double tol = kDefaultTol) {
  if (c.n < 1 || c.K.rows() != 2 * c.n || c.K.cols() != 2 * c.n || c.M.dim() != 2 * c.n ||
      c.dbar.size() != 2 * c.n)
    fail_arg("validate_channel: inconsistent dimensions");
  return hermitian_psd(c.M, cp_form(c), tol);
}

/// Channel action on a state. The output covariance is resymmetrized as
/// (X + X^T)/2 before use.
inline GaussianState apply(const GaussianChannel& c, const GaussianState& s,
                           double tol = kDefaultTol) {
  if (c.n != s.n) fail_arg("apply: channel and state mode counts differ");
  if (!validate_channel(c, tol)) fail_arg("apply: channel is not completely positive");
  if (!validate_state(s, tol)) fail_arg("apply: state is not physical");
  GaussianState out;
  out.n = s.n;
  out.nu = SymMatrix::from(c.K * s.nu.to_real() * c.K.transposed() + c.M.to_real());
  out.d = c.K * std::span<const double>(s.d);
  for (std::size_t i = 0; i < out.d.size(); ++i) out.d[i] += c.dbar[i];
  return out;
}

/// Concatenation c2 after c1: K = K2 K1, M = K2 M1 K2^T + M2,
/// dbar = K2 dbar1 + dbar2.
inline GaussianChannel compose(const GaussianChannel& c2, const GaussianChannel& c1) {
  if (c1.n != c2.n) fail_arg("compose: mode counts differ");
  GaussianChannel out;
  out.n = c1.n;
  out.K = c2.K * c1.K;
  out.M = SymMatrix::from(c2.K * c1.M.to_real() * c2.K.transposed() + c2.M.to_real());
  out.dbar = c2.K * std::span<const double>(c1.dbar);
  for (std::size_t i = 0; i < out.dbar.size(); ++i) out.dbar[i] += c2.dbar[i];
  return out;
}

inline GaussianChannel tensor_channels(const GaussianChannel& a, const GaussianChannel& b) {
  GaussianChannel out;
  out.n = a.n + b.n;
  out.K = RealMatrix::direct_sum(a.K, b.K);
  out.M = SymMatrix::direct_sum(a.M, b.M);
  out.dbar = a.dbar;
  out.dbar.insert(out.dbar.end(), b.dbar.begin(), b.dbar.end());
  return out;
}

}  // namespace cvq
