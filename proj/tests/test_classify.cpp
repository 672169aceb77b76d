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

#include <catch2/catch.hpp>

#include "cvq/classify.hpp"
#include "cvq/sampling.hpp"

using namespace cvq;

namespace {

GaussianChannel cb_channel(std::vector<double> lambda) {
  GaussianChannel c;
  c.n = lambda.size();
  c.K = RealMatrix(2 * c.n, 2 * c.n);
  c.M = SymMatrix(2 * c.n);
  for (std::size_t k = 0; k < c.n; ++k) {
    c.M.set(2 * k, 2 * k, lambda[k]);
    c.M.set(2 * k + 1, 2 * k + 1, lambda[k]);
  }
  c.dbar.assign(2 * c.n, 0.0);
  return c;
}

GaussianChannel attenuator(double eta) {
  GaussianChannel c;
  c.n = 1;
  c.K = RealMatrix::identity(2) * std::sqrt(eta);
  c.M = SymMatrix::scaled_identity(2, 0.5 * (1.0 - eta));
  c.dbar = {0.0, 0.0};
  return c;
}

/// One-mode squeezed covariance [[a, c], [c, a]] from the rotation-angle
/// contradiction construction (valid whenever a^2 >= c^2 + 1/4).
GaussianState squeezed_ac(double a, double c) {
  GaussianState s = vacuum_state(1);
  s.nu.set(0, 0, a);
  s.nu.set(1, 1, a);
  s.nu.set(0, 1, c);
  return s;
}

bool matrices_close(const RealMatrix& x, const RealMatrix& y, double tol) {
  return (x - y).max_abs() <= tol;
}

}  // namespace

TEST_CASE("synthesize_incoherent reproduces reference channels", "[classify]") {
  // t = 1, O = I, lambda = 0 is the identity channel.
  IncoherentDecomposition d;
  d.pi = {0};
  d.t = {1.0};
  d.O = {RealMatrix::identity(2)};
  d.lambda = {0.0};
  d.symplectic = {true};
  d.zero_mode = {false};
  const GaussianChannel id = synthesize_incoherent(d);
  CHECK((id.K - RealMatrix::identity(2)).max_abs() == 0.0);
  CHECK(id.M.max_abs() == 0.0);

  // Reflection branch: O = diag(1, -1) needs lambda >= (t^2 + 1)/2 = 1.
  RealMatrix refl = RealMatrix::identity(2);
  refl(1, 1) = -1.0;
  d.O = {refl};
  d.symplectic = {false};
  d.lambda = {1.0};
  const GaussianChannel conj = synthesize_incoherent(d);
  CHECK(validate_channel(conj));
  d.lambda = {1.0 - 1e-6};
  CHECK_THROWS_AS(synthesize_incoherent(d), std::invalid_argument);

  // Mode swap: exchanging two thermal modes.
  IncoherentDecomposition swap;
  swap.pi = {1, 0};
  swap.t = {1.0, 1.0};
  swap.O = {RealMatrix::identity(2), RealMatrix::identity(2)};
  swap.lambda = {0.0, 0.0};
  swap.symplectic = {true, true};
  swap.zero_mode = {false, false};
  const GaussianChannel sw = synthesize_incoherent(swap);
  const GaussianState in = thermal_state(std::vector<double>{0.9, 2.0});
  const GaussianState out = apply(sw, in);
  CHECK(out.nu(0, 0) == Approx(2.0));
  CHECK(out.nu(2, 2) == Approx(0.9));
}

TEST_CASE("decompose_incoherent on reference channels", "[classify]") {
  const auto id = decompose_incoherent(identity_channel(3));
  REQUIRE(id.ok());
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(id.decomposition->pi[i] == i);
    CHECK(id.decomposition->t[i] == Approx(1.0).margin(1e-12));
    CHECK(id.decomposition->lambda[i] == Approx(0.0).margin(1e-12));
    CHECK(matrices_close(id.decomposition->O[i], RealMatrix::identity(2), 1e-12));
  }

  // A non-orthogonal block is refused.
  GaussianChannel proj;
  proj.n = 1;
  proj.K = RealMatrix(2, 2);
  proj.K(0, 0) = 1.0;
  proj.M = SymMatrix::scaled_identity(2, 1.0);
  proj.dbar = {0.0, 0.0};
  REQUIRE(validate_channel(proj));
  const auto refusal = decompose_incoherent(proj);
  CHECK_FALSE(refusal.ok());
  CHECK(refusal.refusal.find("orthogonal") != std::string::npos);

  // Nonzero displacement is refused first.
  GaussianChannel shifted = cb_channel({1.0});
  shifted.dbar = {0.5, 0.0};
  const auto dref = decompose_incoherent(shifted);
  CHECK_FALSE(dref.ok());
  CHECK(dref.refusal.find("dbar") != std::string::npos);

  // Off-pattern noise is refused.
  GaussianChannel squeezy = cb_channel({1.0});
  squeezy.M.set(0, 0, 1.4);
  const auto mref = decompose_incoherent(squeezy);
  CHECK_FALSE(mref.ok());
  CHECK(mref.refusal.find("M") != std::string::npos);

  CHECK_THROWS_AS(decompose_incoherent(attenuator(2.0)), std::invalid_argument);
}

TEST_CASE("decompose round-trips synthesized channels", "[classify]") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const SamplerConfig cfg{mix_seed(20000, trial), n, 1.0};
    const GaussianChannel c = sample_channel(cfg, ChannelKind::incoherent);
    const auto back = decompose_incoherent(c);
    REQUIRE(back.ok());
    const auto& d = *back.decomposition;

    // Recover the generator's parameters from the channel itself, modulo
    // the (t, O) <-> (-t, -O) gauge: decompose commits to t >= 0.
    for (std::size_t i = 0; i < n; ++i) {
      CHECK_FALSE(d.zero_mode[i]);
      const double t = d.t[i];
      CHECK(t >= 0.0);
      RealMatrix block(2, 2);
      for (std::size_t u = 0; u < 2; ++u)
        for (std::size_t v = 0; v < 2; ++v) block(u, v) = c.K(2 * d.pi[i] + u, 2 * i + v);
      CHECK(matrices_close(d.O[i] * t, block, 1e-9));
      CHECK(d.lambda[i] == Approx(c.M(2 * d.pi[i], 2 * d.pi[i])).margin(1e-9));
      CHECK(d.symplectic[i] == (detail::det2(d.O[i]) > 0.0));
      CHECK(d.lambda[i] >= incoherent_noise_bound(t, d.symplectic[i]) - 1e-9);
    }

    // And synthesizing the recovered decomposition reproduces the channel.
    const GaussianChannel again = synthesize_incoherent(d);
    CHECK((again.K - c.K).max_abs() <= 1e-9 * (1.0 + c.K.max_abs()));
    CHECK((again.M - c.M).max_abs() <= 1e-9 * (1.0 + c.M.max_abs()));
  }
}

TEST_CASE("decompose handles an all-zero input column by convention", "[classify]") {
  IncoherentDecomposition d;
  d.pi = {0, 1};
  d.t = {0.0, 0.7};
  d.O = {RealMatrix::identity(2), detail::rotation2(1.1)};
  d.lambda = {0.8, 1.5};
  d.symplectic = {true, true};
  d.zero_mode = {true, false};
  const GaussianChannel c = synthesize_incoherent(d);
  const auto back = decompose_incoherent(c);
  REQUIRE(back.ok());
  CHECK(back.decomposition->zero_mode[0]);
  CHECK_FALSE(back.decomposition->zero_mode[1]);
  CHECK(back.decomposition->t[0] == 0.0);
  CHECK(back.decomposition->t[1] == Approx(0.7).margin(1e-12));

  // A fully coherence-breaking channel is the all-zero-column case.
  const auto cb = decompose_incoherent(cb_channel({1.0, 2.0}));
  REQUIRE(cb.ok());
  CHECK(cb.decomposition->zero_mode == std::vector<bool>{true, true});
}

TEST_CASE("synthesized incoherent channels preserve incoherence", "[classify]") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const GaussianChannel c =
        sample_channel({mix_seed(21000, trial), n, 1.0}, ChannelKind::incoherent);
    const GaussianState s =
        sample_state({mix_seed(21500, trial), n, 1.5}, StateKind::thermal);
    CHECK(is_incoherent_state(apply(c, s), 1e-9));
  }
}

TEST_CASE("incoherent channels with t != 0 break on a squeezed input", "[classify]") {
  // The rotation-angle contradiction: a = b with c != 0 defeats every
  // orthogonal block, so no incoherent channel with a surviving mode can be
  // coherence-breaking.
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const GaussianChannel c =
        sample_channel({mix_seed(22000, trial), n, 1.0}, ChannelKind::incoherent);
    GaussianState in = squeezed_ac(1.25, 1.0);
    for (std::size_t k = 1; k < n; ++k) in = tensor_states(in, squeezed_ac(1.25, 1.0));
    REQUIRE(validate_state(in));
    CHECK_FALSE(is_incoherent_state(apply(c, in), 1e-9));
  }
}

TEST_CASE("is_coherence_breaking checks the theorem form", "[classify]") {
  CHECK(is_coherence_breaking(cb_channel({1.0})));
  CHECK(is_coherence_breaking(cb_channel({0.5, 0.5, 3.0})));

  GaussianChannel below = cb_channel({0.4});
  CHECK_FALSE(is_coherence_breaking(below));
  CHECK_FALSE(validate_channel(below));

  CHECK_FALSE(is_coherence_breaking(attenuator(0.5)));
  CHECK_FALSE(is_coherence_breaking(identity_channel(1)));

  GaussianChannel displaced = cb_channel({1.0});
  displaced.dbar = {1e-3, 0.0};
  CHECK_FALSE(is_coherence_breaking(displaced));

  GaussianChannel off_pattern = cb_channel({1.0, 1.0});
  off_pattern.M.set(0, 2, 0.2);
  CHECK_FALSE(is_coherence_breaking(off_pattern));
}

TEST_CASE("coherence-breaking channels thermalize every input", "[classify]") {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const GaussianChannel c = sample_channel({mix_seed(23000, trial), n, 1.0}, ChannelKind::cb);
    REQUIRE(is_coherence_breaking(c));
    const GaussianState s =
        sample_state({mix_seed(23500, trial), n, 1.0}, static_cast<StateKind>(trial % 4));
    CHECK(is_incoherent_state(apply(c, s), 1e-9));
  }
}

TEST_CASE("is_cq detects a vanishing K Delta K^T", "[classify]") {
  CHECK(is_cq(cb_channel({1.0})));
  CHECK_FALSE(is_cq(identity_channel(1)));
  CHECK_FALSE(is_cq(attenuator(0.5)));

  // Rank-deficient K on one mode: A Delta A^T = det(A) Delta = 0.
  GaussianChannel rank1;
  rank1.n = 1;
  rank1.K = RealMatrix(2, 2);
  rank1.K(0, 0) = 1.0;
  rank1.M = SymMatrix::scaled_identity(2, 0.5);
  rank1.dbar = {0.0, 0.0};
  REQUIRE(validate_channel(rank1));
  CHECK(is_cq(rank1));

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    CHECK(is_cq(sample_channel({mix_seed(24000, trial), n, 1.0}, ChannelKind::cq)));
  }
}

TEST_CASE("is_ppt on reference channels", "[classify]") {
  CHECK(is_ppt(cb_channel({1.0})));
  CHECK_FALSE(is_ppt(identity_channel(1)));
  CHECK_FALSE(is_ppt(attenuator(0.5)));

  // Additive classical noise K = I, M = lambda I is PPT iff lambda >= 1.
  GaussianChannel noise = identity_channel(1);
  noise.M = SymMatrix::scaled_identity(2, 1.2);
  CHECK(is_ppt(noise));
  noise.M = SymMatrix::scaled_identity(2, 0.8);
  CHECK_FALSE(is_ppt(noise));
}

TEST_CASE("is_eb certificates on reference channels", "[classify]") {
  const EbResult id = is_eb(identity_channel(1));
  CHECK(id.status == EbStatus::infeasible);
  CHECK(id.certificate == "ppt-violation");

  const EbResult att = is_eb(attenuator(0.5));
  CHECK(att.status != EbStatus::feasible);

  const EbResult cb = is_eb(cb_channel({1.0}));
  CHECK(cb.status == EbStatus::feasible);
  CHECK(cb.certificate == "cq-split");
  REQUIRE(cb.witness);
  CHECK((cb.witness->first - cb_channel({1.0}).M).max_abs() == 0.0);
  CHECK(cb.witness->second.max_abs() == 0.0);

  // Additive noise: EB exactly at lambda >= 1, boundary included.
  for (double lam : {1.0, 1.2}) {
    GaussianChannel noise = identity_channel(1);
    noise.M = SymMatrix::scaled_identity(2, lam);
    const EbResult r = is_eb(noise);
    CHECK(r.status == EbStatus::feasible);
    REQUIRE(r.witness);
    CHECK((r.witness->first + r.witness->second - noise.M).max_abs() <= 1e-7);
    CHECK(hermitian_psd(r.witness->first, make_delta(1) * 0.5, 1e-6));
  }
  GaussianChannel sub = identity_channel(1);
  sub.M = SymMatrix::scaled_identity(2, 0.8);
  CHECK(is_eb(sub).status == EbStatus::infeasible);
}

TEST_CASE("is_eb finds witnesses for sampled cq and generic channels", "[classify]") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const ChannelKind kind = trial % 2 ? ChannelKind::cq : ChannelKind::generic;
    const GaussianChannel c = sample_channel({mix_seed(25000, trial), n, 1.0}, kind);
    const EbResult r = is_eb(c);
    REQUIRE(r.status == EbStatus::feasible);
    REQUIRE(r.witness);
    const auto& [m1, m2] = *r.witness;
    CHECK((m1 + m2 - c.M).max_abs() <= 1e-6 * (1.0 + c.M.max_abs()));
    const RealMatrix delta = make_delta(n);
    RealMatrix p = c.K * delta * c.K.transposed();
    p = (p - p.transposed()) * 0.5;
    CHECK(detail::hermitian_violation(m1, delta * 0.5) <= 1e-6 * (1.0 + c.M.frobenius_norm()));
    CHECK(detail::hermitian_violation(m2, p * 0.5) <= 1e-6 * (1.0 + c.M.frobenius_norm()));
  }
}

TEST_CASE("is_product_preserving accepts blockwise permutations only", "[classify]") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const ChannelKind kind = trial % 2 ? ChannelKind::incoherent : ChannelKind::product_preserving;
    const GaussianChannel c = sample_channel({mix_seed(26000, trial), n, 1.0}, kind);
    CHECK(is_product_preserving(c).preserving);
  }

  GaussianChannel mixed;
  mixed.n = 2;
  mixed.K = RealMatrix::identity(4);
  mixed.M = SymMatrix::scaled_identity(4, 1.5);
  mixed.M.set(0, 2, 0.3);  // couples the output modes
  mixed.dbar.assign(4, 0.0);
  REQUIRE(validate_channel(mixed));
  CHECK_FALSE(is_product_preserving(mixed).preserving);

  GaussianChannel two_blocks;
  two_blocks.n = 2;
  two_blocks.K = RealMatrix(4, 4);
  two_blocks.K(0, 0) = 1.0;
  two_blocks.K(2, 1) = 0.5;  // input column 0 feeds both output modes
  two_blocks.M = SymMatrix::scaled_identity(4, 2.0);
  two_blocks.dbar.assign(4, 0.0);
  REQUIRE(validate_channel(two_blocks));
  CHECK_FALSE(is_product_preserving(two_blocks).preserving);
}

TEST_CASE("product-preserving channels send product states to product states", "[classify]") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const GaussianChannel c =
        sample_channel({mix_seed(27000, trial), n, 1.0}, ChannelKind::product_preserving);
    GaussianState in = sample_state({mix_seed(27500, trial), 1, 1.0}, StateKind::squeezed);
    for (std::size_t k = 1; k < n; ++k)
      in = tensor_states(in,
                         sample_state({mix_seed(27600 + k, trial), 1, 1.0}, StateKind::displaced));
    const GaussianState out = apply(c, in);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t cut[] = {m};
      CHECK(is_product_state(out, cut, 1e-9));
    }
  }
}

TEST_CASE("classify assembles consistent reports", "[classify]") {
  const ClassReport cb = classify(cb_channel({1.0}));
  CHECK(cb.is_incoherent);
  CHECK(cb.cb);
  CHECK(cb.cq);
  CHECK(cb.eb == EbStatus::feasible);
  CHECK(cb.ppt);
  CHECK(cb.chain_consistent);
  CHECK(cb.residuals.at("k_delta_kt_norm") == 0.0);

  GaussianChannel rank1;
  rank1.n = 1;
  rank1.K = RealMatrix(2, 2);
  rank1.K(0, 0) = 1.0;
  rank1.M = SymMatrix::scaled_identity(2, 0.5);
  rank1.dbar = {0.0, 0.0};
  const ClassReport cq = classify(rank1);
  CHECK_FALSE(cq.cb);
  CHECK(cq.cq);
  CHECK(cq.eb == EbStatus::feasible);
  CHECK(cq.ppt);
  CHECK(cq.chain_consistent);

  const ClassReport id = classify(identity_channel(1));
  CHECK_FALSE(id.cb);
  CHECK_FALSE(id.cq);
  CHECK(id.eb == EbStatus::infeasible);
  CHECK_FALSE(id.ppt);
  CHECK(id.chain_consistent);
  CHECK(id.is_incoherent);  // the identity is incoherent, just not CB

  CHECK_THROWS_AS(classify(attenuator(1.5)), std::invalid_argument);
}

TEST_CASE("class inclusions hold on sampled channels", "[classify]") {
  int unknown = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const ChannelKind kind = static_cast<ChannelKind>(trial % 5);
    const GaussianChannel c = sample_channel({mix_seed(28000, trial), n, 1.0}, kind);
    const ClassReport r = classify(c);
    CHECK(r.chain_consistent);
    if (r.eb == EbStatus::unknown) ++unknown;
    switch (kind) {
      case ChannelKind::cb:
        CHECK(r.cb);
        CHECK(r.cq);
        CHECK(r.eb == EbStatus::feasible);
        CHECK(r.ppt);
        break;
      case ChannelKind::cq:
        CHECK(r.cq);
        CHECK(r.eb == EbStatus::feasible);
        CHECK(r.ppt);
        break;
      default:
        break;
    }
  }
  // Semidecision may time out, but not on this seeded corpus.
  CHECK(unknown == 0);
}

TEST_CASE("verify_product_output matches the block formula", "[classify]") {
  // CB (x) identity on TMSV: output is diag(lambda I, cosh(2r)/2 I).
  const GaussianChannel cb = cb_channel({1.0});
  const auto check_id = verify_product_output(cb, identity_channel(1), tmsv_state(1.0));
  CHECK(check_id.product);
  CHECK(check_id.cross_norm <= 1e-10);
  CHECK(check_id.output.nu(0, 0) == 1.0);
  CHECK(check_id.output.nu(2, 2) == Approx(0.5 * std::cosh(2.0)).margin(1e-12));

  // CB (x) attenuator: environment block eta cosh(2r)/2 I + (1 - eta)/2 I.
  const double eta = 0.6, r = 0.8;
  const auto check_att = verify_product_output(cb, attenuator(eta), tmsv_state(r));
  CHECK(check_att.product);
  CHECK(check_att.cross_norm <= 1e-10);
  const double expected = eta * 0.5 * std::cosh(2.0 * r) + 0.5 * (1.0 - eta);
  CHECK(check_att.output.nu(2, 2) == Approx(expected).margin(1e-12));
  CHECK(check_att.output.nu(3, 3) == Approx(expected).margin(1e-12));

  // Degenerate case: a product input stays product.
  const GaussianState prod =
      tensor_states(vacuum_state(1), sample_state({3, 1, 1.0}, StateKind::squeezed));
  CHECK(verify_product_output(cb, identity_channel(1), prod).product);

  CHECK_THROWS_AS(verify_product_output(attenuator(0.5), identity_channel(1), tmsv_state(1.0)),
                  std::invalid_argument);
}

TEST_CASE("product output holds for sampled triples", "[classify]") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t na = 1 + trial % 2;
    const std::size_t ne = 1 + (trial / 2) % 2;
    const GaussianChannel cb = sample_channel({mix_seed(29000, trial), na, 1.0}, ChannelKind::cb);
    const GaussianChannel psi =
        sample_channel({mix_seed(29100, trial), ne, 1.0}, ChannelKind::generic);
    const GaussianState joint =
        sample_state({mix_seed(29200, trial), na + ne, 1.0}, StateKind::generic);
    const auto res = verify_product_output(cb, psi, joint);
    CHECK(res.product);
    CHECK(res.cross_norm <= 1e-10);
  }
}
