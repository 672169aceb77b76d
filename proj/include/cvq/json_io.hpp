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

// JSON wire formats. Every serialized object carries the unit convention
// string, and loaders reject anything but "vacuum=1/2":
//
//   state    { "n": int, "nu": [[...]], "d": [...], "units": "vacuum=1/2" }
//   channel  { "n": int, "K": [[...]], "M": [[...]], "dbar": [...],
//              "units": "vacuum=1/2" }
//   ensemble { "seed": <state>, "nu_mod": [[...]], "units": "vacuum=1/2" }
//
// Matrices are arrays of row arrays. Mode indices in emitted reports are
// zero-based.

#include <json.hpp>

#include "cvq/capacity.hpp"
#include "cvq/sampling.hpp"

namespace cvq {

/// Malformed or out-of-contract JSON (wrong shape, missing key, bad units).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace jsonio {

using nlohmann::json;

inline json to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const SymMatrix& m) { return to_json(m.to_real()); }

inline RealMatrix matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw SchemaError(name + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw SchemaError(name + " rows must be arrays");
  const std::size_t cols = j[0].size();
  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw SchemaError(name + " rows must all have the same length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw SchemaError(name + " entries must be numbers");
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

inline SymMatrix sym_from_json(const json& j, const std::string& name) {
  const RealMatrix m = matrix_from_json(j, name);
  if (m.rows() != m.cols()) throw SchemaError(name + " must be square");
  if ((m - m.transposed()).max_abs() > 1e-9 * (1.0 + m.frobenius_norm()))
    throw SchemaError(name + " must be symmetric");
  return SymMatrix::from(m);
}

inline std::vector<double> vector_from_json(const json& j, const std::string& name) {
  if (!j.is_array()) throw SchemaError(name + " must be an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw SchemaError(name + " entries must be numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

inline void require_units(const json& j, const std::string& what) {
  if (!j.contains("units") || !j["units"].is_string())
    throw SchemaError(what + ": missing units string");
  if (j["units"].get<std::string>() != kUnits)
    throw SchemaError(what + ": units must be \"" + kUnits + "\"");
}

inline std::size_t mode_count_from_json(const json& j, const std::string& what) {
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw SchemaError(what + ": n must be a positive integer");
  return static_cast<std::size_t>(j["n"].get<long long>());
}

inline json to_json(const GaussianState& s) {
  return json{{"n", s.n}, {"nu", to_json(s.nu)}, {"d", s.d}, {"units", kUnits}};
}

inline GaussianState state_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("state: expected a JSON object");
  require_units(j, "state");
  const std::size_t n = mode_count_from_json(j, "state");
  if (!j.contains("nu") || !j.contains("d")) throw SchemaError("state: needs nu and d");
  GaussianState s;
  s.n = n;
  s.nu = sym_from_json(j["nu"], "state.nu");
  s.d = vector_from_json(j["d"], "state.d");
  if (s.nu.dim() != 2 * n || s.d.size() != 2 * n)
    throw SchemaError("state: nu must be 2n x 2n and d of length 2n");
  return s;
}

inline json to_json(const GaussianChannel& c) {
  return json{{"n", c.n},
              {"K", to_json(c.K)},
              {"M", to_json(c.M)},
              {"dbar", c.dbar},
              {"units", kUnits}};
}

inline GaussianChannel channel_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("channel: expected a JSON object");
  require_units(j, "channel");
  const std::size_t n = mode_count_from_json(j, "channel");
  if (!j.contains("K") || !j.contains("M") || !j.contains("dbar"))
    throw SchemaError("channel: needs K, M and dbar");
  GaussianChannel c;
  c.n = n;
  c.K = matrix_from_json(j["K"], "channel.K");
  c.M = sym_from_json(j["M"], "channel.M");
  c.dbar = vector_from_json(j["dbar"], "channel.dbar");
  if (c.K.rows() != 2 * n || c.K.cols() != 2 * n || c.M.dim() != 2 * n ||
      c.dbar.size() != 2 * n)
    throw SchemaError("channel: K, M must be 2n x 2n and dbar of length 2n");
  return c;
}

inline json to_json(const ModulatedEnsemble& e) {
  return json{{"seed", to_json(e.seed)}, {"nu_mod", to_json(e.nu_mod)}, {"units", kUnits}};
}

/// Accepts either the ensemble schema or a bare state (nu_mod = 0).
inline ModulatedEnsemble ensemble_from_json(const json& j) {
  if (j.is_object() && j.contains("seed")) {
    require_units(j, "ensemble");
    ModulatedEnsemble e;
    e.seed = state_from_json(j["seed"]);
    if (!j.contains("nu_mod")) throw SchemaError("ensemble: needs nu_mod");
    e.nu_mod = sym_from_json(j["nu_mod"], "ensemble.nu_mod");
    if (e.nu_mod.dim() != e.seed.nu.dim())
      throw SchemaError("ensemble: nu_mod must match the seed covariance size");
    return e;
  }
  const GaussianState seed = state_from_json(j);
  return {seed, SymMatrix(seed.nu.dim())};
}

inline json to_json(const IncoherentDecomposition& d) {
  json o_list = json::array();
  for (const auto& o : d.O) o_list.push_back(to_json(o));
  return json{{"pi", d.pi},
              {"t", d.t},
              {"O", std::move(o_list)},
              {"lambda", d.lambda},
              {"symplectic", d.symplectic},
              {"zero_mode", d.zero_mode}};
}

inline json to_json(const ClassReport& r) {
  return json{{"tol", r.tol},
              {"is_incoherent", r.is_incoherent},
              {"is_cb", r.cb},
              {"is_cq", r.cq},
              {"is_eb", to_string(r.eb)},
              {"eb_certificate", r.eb_certificate},
              {"is_ppt", r.ppt},
              {"chain_consistent", r.chain_consistent},
              {"residuals", r.residuals}};
}

inline json to_json(const AdditivityReport& r) {
  return json{
      {"chi_joint", r.chi_joint}, {"chi_sum", r.chi_sum}, {"difference", r.difference},
      {"k", r.k}};
}

}  // namespace jsonio
}  // namespace cvq
