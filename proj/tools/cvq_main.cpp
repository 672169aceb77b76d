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

// cvq command-line frontend. One subcommand per invocation, one JSON
// document on stdout. Exit codes: 0 success, 1 malformed input (bad JSON,
// schema or units violation, unknown flag, missing file), 2 validation
// failure (an input that parses but is not a physical state / CP channel).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cvq/json_io.hpp"

namespace {

using cvq::jsonio::json;

struct CliError {
  int code;
  std::string message;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{1, "cannot open " + path};
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CliError{1, "invalid JSON in " + path + ": " + e.what()};
  }
}

cvq::GaussianState load_state(const std::string& path) {
  try {
    return cvq::jsonio::state_from_json(load_json_file(path));
  } catch (const cvq::SchemaError& e) {
    throw CliError{1, path + ": " + e.what()};
  }
}

cvq::GaussianChannel load_channel(const std::string& path) {
  try {
    return cvq::jsonio::channel_from_json(load_json_file(path));
  } catch (const cvq::SchemaError& e) {
    throw CliError{1, path + ": " + e.what()};
  }
}

cvq::ModulatedEnsemble load_ensemble(const std::string& path) {
  try {
    return cvq::jsonio::ensemble_from_json(load_json_file(path));
  } catch (const cvq::SchemaError& e) {
    throw CliError{1, path + ": " + e.what()};
  }
}

void emit(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw CliError{1, "cannot write " + out_path};
    out << text;
  }
}

void require_valid_channel(const cvq::GaussianChannel& c, double tol, const std::string& name) {
  if (!cvq::validate_channel(c, tol))
    throw CliError{2, name + " is not a completely positive Gaussian channel"};
}

void require_valid_state(const cvq::GaussianState& s, double tol, const std::string& name) {
  if (!cvq::validate_state(s, tol)) throw CliError{2, name + " is not a physical Gaussian state"};
}

cvq::StateKind parse_state_kind(const std::string& kind) {
  if (kind == "thermal") return cvq::StateKind::thermal;
  if (kind == "squeezed") return cvq::StateKind::squeezed;
  if (kind == "displaced") return cvq::StateKind::displaced;
  if (kind == "generic-state") return cvq::StateKind::generic;
  if (kind == "tmsv") return cvq::StateKind::tmsv;
  throw CliError{1, "unknown state kind: " + kind};
}

cvq::ChannelKind parse_channel_kind(const std::string& kind) {
  if (kind == "generic") return cvq::ChannelKind::generic;
  if (kind == "incoherent") return cvq::ChannelKind::incoherent;
  if (kind == "cb") return cvq::ChannelKind::cb;
  if (kind == "cq") return cvq::ChannelKind::cq;
  if (kind == "product-preserving") return cvq::ChannelKind::product_preserving;
  throw CliError{1, "unknown channel kind: " + kind};
}

bool is_state_kind(const std::string& kind) {
  return kind == "thermal" || kind == "squeezed" || kind == "displaced" ||
         kind == "generic-state" || kind == "tmsv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cvq - covariance-matrix toolkit for bosonic Gaussian states and channels"};
  app.require_subcommand(1);

  std::string state_path, out_path;
  std::vector<std::string> state_paths, channel_paths;
  std::string channel_path, kind;
  double tol = cvq::kDefaultTol;
  double scale = 1.0;
  double tmsv_r = 1.0;
  int trials = 100;
  int copies = 1;
  int max_iter = 5000;
  std::uint64_t seed = 0;
  std::size_t modes = 1;

  const auto add_common = [&](CLI::App* sc) {
    sc->add_option("--tol", tol, "tolerance override (default 1e-9)");
    sc->add_option("--out", out_path, "also write the JSON document to this file");
  };

  auto* vstate = app.add_subcommand("validate-state", "check the uncertainty bound of a state");
  vstate->add_option("--state", state_path, "state JSON file")->required();
  add_common(vstate);

  auto* vchan = app.add_subcommand("validate-channel", "check complete positivity of a channel");
  vchan->add_option("--channel", channel_path, "channel JSON file")->required();
  add_common(vchan);

  auto* cls = app.add_subcommand("classify", "evaluate the CB/CQ/EB/PPT class predicates");
  cls->add_option("--channel", channel_path, "channel JSON file")->required();
  cls->add_option("--max-iter", max_iter, "entanglement-breaking search iteration cap");
  add_common(cls);

  auto* dec = app.add_subcommand("decompose", "recover the incoherent-channel parameterization");
  dec->add_option("--channel", channel_path, "channel JSON file")->required();
  add_common(dec);

  auto* app_cmd = app.add_subcommand("apply", "apply a channel to a state");
  app_cmd->add_option("--channel", channel_path, "channel JSON file")->required();
  app_cmd->add_option("--state", state_path, "state JSON file")->required();
  add_common(app_cmd);

  auto* ten = app.add_subcommand("tensor", "tensor two states or two channels");
  ten->add_option("--state", state_paths, "state JSON file (give twice)");
  ten->add_option("--channel", channel_paths, "channel JSON file (give twice)");
  add_common(ten);

  auto* ent = app.add_subcommand("entropy", "von Neumann entropy of a state, in nats");
  ent->add_option("--state", state_path, "state JSON file")->required();
  add_common(ent);

  auto* chi = app.add_subcommand(
      "chi", "Holevo chi of a channel over a Gaussian-modulated displacement ensemble");
  chi->add_option("--channel", channel_path, "channel JSON file")->required();
  chi->add_option("--state", state_path, "ensemble JSON file (or a bare state, nu_mod = 0)")
      ->required();
  add_common(chi);

  auto* add = app.add_subcommand("audit-additivity",
                                 "two-sided chi additivity check for (cb (x) psi)^k");
  add->add_option("--channel", channel_paths,
                  "channel JSON files: first the coherence-breaking one, then psi (give twice)");
  add->add_option("--state", state_path, "joint ensemble JSON file")->required();
  add->add_option("--k", copies, "number of tensor copies");
  add_common(add);

  auto* inc = app.add_subcommand("audit-inclusions",
                                 "sample channels of one kind and audit the class inclusions");
  inc->add_option("--kind", kind, "generic|incoherent|cb|cq|product-preserving")->required();
  inc->add_option("--trials", trials, "number of sampled channels");
  inc->add_option("--seed", seed, "base RNG seed");
  inc->add_option("--n", modes, "mode count (default 1)");
  inc->add_option("--scale", scale, "sampler scale");
  inc->add_option("--max-iter", max_iter, "entanglement-breaking search iteration cap");
  add_common(inc);

  auto* smp = app.add_subcommand("sample", "draw a seeded state or channel");
  smp->add_option("--kind", kind,
                  "thermal|squeezed|displaced|generic-state|tmsv|"
                  "generic|incoherent|cb|cq|product-preserving")
      ->required();
  smp->add_option("--seed", seed, "RNG seed");
  smp->add_option("--n", modes, "mode count (default 1; tmsv forces 2)");
  smp->add_option("--scale", scale, "sampler scale");
  smp->add_option("--r", tmsv_r, "tmsv squeezing parameter");
  add_common(smp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*vstate) {
      const cvq::GaussianState s = load_state(state_path);
      const bool valid = cvq::validate_state(s, tol);
      emit(json{{"valid", valid},
                {"uncertainty_min_eig",
                 cvq::min_eigenvalue(cvq::hermitian_embedding(s.nu, cvq::make_delta(s.n) * 0.5))},
                {"tol", tol}},
           out_path);
      return valid ? 0 : 2;
    }

    if (*vchan) {
      const cvq::GaussianChannel c = load_channel(channel_path);
      const bool valid = cvq::validate_channel(c, tol);
      emit(json{{"valid", valid},
                {"cp_min_eig", cvq::min_eigenvalue(cvq::hermitian_embedding(c.M, cvq::cp_form(c)))},
                {"tol", tol}},
           out_path);
      return valid ? 0 : 2;
    }

    if (*cls) {
      const cvq::GaussianChannel c = load_channel(channel_path);
      require_valid_channel(c, tol, "channel");
      emit(cvq::jsonio::to_json(cvq::classify(c, tol, max_iter)), out_path);
      return 0;
    }

    if (*dec) {
      const cvq::GaussianChannel c = load_channel(channel_path);
      require_valid_channel(c, tol, "channel");
      const cvq::DecomposeOutcome outcome = cvq::decompose_incoherent(c, tol);
      json doc{{"ok", outcome.ok()}, {"refusal", outcome.refusal}, {"tol", tol}};
      doc.update(cvq::jsonio::to_json(outcome.ok() ? *outcome.decomposition
                                                   : cvq::IncoherentDecomposition{}));
      emit(doc, out_path);
      return 0;
    }

    if (*app_cmd) {
      const cvq::GaussianChannel c = load_channel(channel_path);
      const cvq::GaussianState s = load_state(state_path);
      require_valid_channel(c, tol, "channel");
      require_valid_state(s, tol, "state");
      if (c.n != s.n) throw CliError{2, "channel and state mode counts differ"};
      emit(cvq::jsonio::to_json(cvq::apply(c, s, tol)), out_path);
      return 0;
    }

    if (*ten) {
      if (state_paths.size() == 2 && channel_paths.empty()) {
        emit(cvq::jsonio::to_json(
                 cvq::tensor_states(load_state(state_paths[0]), load_state(state_paths[1]))),
             out_path);
        return 0;
      }
      if (channel_paths.size() == 2 && state_paths.empty()) {
        emit(cvq::jsonio::to_json(cvq::tensor_channels(load_channel(channel_paths[0]),
                                                       load_channel(channel_paths[1]))),
             out_path);
        return 0;
      }
      throw CliError{1, "tensor needs exactly two --state files or exactly two --channel files"};
    }

    if (*ent) {
      const cvq::GaussianState s = load_state(state_path);
      require_valid_state(s, tol, "state");
      emit(json{{"entropy_nats", cvq::entropy(s, tol)},
                {"symplectic_eigenvalues", cvq::symplectic_eigenvalues(s.nu, tol)},
                {"tol", tol}},
           out_path);
      return 0;
    }

    if (*chi) {
      const cvq::GaussianChannel c = load_channel(channel_path);
      const cvq::ModulatedEnsemble e = load_ensemble(state_path);
      require_valid_channel(c, tol, "channel");
      require_valid_state(e.seed, tol, "ensemble seed");
      if (!cvq::is_psd(e.nu_mod, tol)) throw CliError{2, "nu_mod is not PSD"};
      if (c.n != e.seed.n) throw CliError{2, "channel and ensemble mode counts differ"};
      emit(json{{"chi_nats", cvq::holevo_chi(c, e, tol)}, {"tol", tol}}, out_path);
      return 0;
    }

    if (*add) {
      if (channel_paths.size() != 2)
        throw CliError{1, "audit-additivity needs --channel twice: the CB channel, then psi"};
      const cvq::GaussianChannel cb = load_channel(channel_paths[0]);
      const cvq::GaussianChannel psi = load_channel(channel_paths[1]);
      const cvq::ModulatedEnsemble e = load_ensemble(state_path);
      require_valid_channel(cb, tol, "first channel");
      require_valid_channel(psi, tol, "second channel");
      if (!cvq::is_coherence_breaking(cb, tol))
        throw CliError{2, "first channel is not coherence-breaking"};
      if (e.seed.n != cb.n + psi.n) throw CliError{2, "ensemble does not live on the joint system"};
      if (copies < 1) throw CliError{1, "--k must be at least 1"};
      json doc = cvq::jsonio::to_json(cvq::additivity_audit(cb, psi, e, copies, tol));
      doc["tol"] = tol;
      emit(doc, out_path);
      return 0;
    }

    if (*inc) {
      const cvq::ChannelKind ck = parse_channel_kind(kind);
      if (trials < 1) throw CliError{1, "--trials must be at least 1"};
      int violations = 0, eb_unknown = 0;
      json counts{{"incoherent", 0}, {"cb", 0},            {"cq", 0},
                  {"eb_feasible", 0}, {"eb_infeasible", 0}, {"ppt", 0}};
      for (int trial = 0; trial < trials; ++trial) {
        const cvq::SamplerConfig cfg{cvq::mix_seed(seed, static_cast<std::uint64_t>(trial)), modes,
                                     scale};
        const cvq::ClassReport r = cvq::classify(cvq::sample_channel(cfg, ck), tol, max_iter);
        if (!r.chain_consistent) ++violations;
        if (r.eb == cvq::EbStatus::unknown) ++eb_unknown;
        if (r.is_incoherent) counts["incoherent"] = counts["incoherent"].get<int>() + 1;
        if (r.cb) counts["cb"] = counts["cb"].get<int>() + 1;
        if (r.cq) counts["cq"] = counts["cq"].get<int>() + 1;
        if (r.eb == cvq::EbStatus::feasible)
          counts["eb_feasible"] = counts["eb_feasible"].get<int>() + 1;
        if (r.eb == cvq::EbStatus::infeasible)
          counts["eb_infeasible"] = counts["eb_infeasible"].get<int>() + 1;
        if (r.ppt) counts["ppt"] = counts["ppt"].get<int>() + 1;
      }
      emit(json{{"kind", kind},
                {"trials", trials},
                {"seed", seed},
                {"n", modes},
                {"scale", scale},
                {"tol", tol},
                {"rng", cvq::kRngName},
                {"violations", violations},
                {"eb_unknown", eb_unknown},
                {"counts", counts}},
           out_path);
      return 0;
    }

    if (*smp) {
      cvq::SamplerConfig cfg{seed, modes, scale};
      if (is_state_kind(kind)) {
        if (kind == "tmsv") cfg.n = 2;
        emit(cvq::jsonio::to_json(cvq::sample_state(cfg, parse_state_kind(kind), tmsv_r)),
             out_path);
      } else {
        emit(cvq::jsonio::to_json(cvq::sample_channel(cfg, parse_channel_kind(kind))), out_path);
      }
      return 0;
    }
  } catch (const CliError& e) {
    emit(json{{"error", e.message}}, "");
    return e.code;
  } catch (const std::invalid_argument& e) {
    emit(json{{"error", e.what()}}, "");
    return 2;
  } catch (const std::exception& e) {
    emit(json{{"error", e.what()}}, "");
    return 1;
  }
  return 1;
}
