// Copyright 2026 The gkpwalk Authors.
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
// Deterministic serialization: 17-significant-digit locale-independent float
// formatting, FockState and EncodeReport JSON, CSV emitters.

#pragma once

#include <charconv>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "gkpwalk/fidelity.hpp"
#include "gkpwalk/fock.hpp"
#include "gkpwalk/walk.hpp"

namespace gkpwalk {
namespace io {

using json = nlohmann::ordered_json;

/// 17 significant digits via std::to_chars: locale-independent and
/// round-trip exact, so identical runs give identical bytes.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// FockState JSON: {"dims": [...], "normalized": b, "amplitudes": [[re, im], ...]}
// ---------------------------------------------------------------------------

inline json fock_to_json(const fock::FockState& s) {
  json j;
  j["dims"] = s.mode_count() == 1 ? json::array({s.dim(1)}) : json::array({s.dim(1), s.dim(2)});
  j["normalized"] = s.normalized();
  j["tail_tolerance"] = s.tail_tolerance();
  json amps = json::array();
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
    const cplx& a = s.amplitudes()(i);
    amps.push_back(json::array({a.real(), a.imag()}));
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

inline fock::FockState fock_from_json(const json& j) {
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  bool normalized = j.at("normalized").get<bool>();
  double tol = j.value("tail_tolerance", kDefaultTailTolerance);
  const json& amps = j.at("amplitudes");
  Vec v(amps.size());
  for (size_t i = 0; i < amps.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = cplx(amps[i][0].get<double>(), amps[i][1].get<double>());
  if (dims.size() == 1) return fock::FockState::one_mode(std::move(v), normalized, tol);
  if (dims.size() == 2)
    return fock::FockState::two_mode(std::move(v), dims[0], dims[1], normalized, tol);
  throw std::invalid_argument("fock_from_json: expected 1 or 2 dims");
}

// ---------------------------------------------------------------------------
// EncodeReport JSON
// ---------------------------------------------------------------------------

inline json encoder_config_to_json(const walk::EncoderConfig& c) {
  json j;
  j["runs"] = c.runs;
  j["alpha"] = c.alpha;
  j["phi"] = c.phi;
  j["zeta"] = c.zeta;
  j["depth"] = c.depth;
  j["dim"] = c.dim;
  j["postselect"] = c.postselect == fock::PostSelect::EvenSubspace ? "even" : "cat";
  return j;
}

inline json report_to_json(const walk::EncodeReport& r, const std::string& final_state_ref) {
  json j;
  j["config"] = encoder_config_to_json(r.config);
  j["ancilla_dim"] = r.ancilla_dim;
  j["walker_dim"] = r.walker_dim;
  json runs = json::array();
  for (const auto& rec : r.per_run) {
    json e;
    e["probability"] = rec.probability;
    e["fidelity"] = rec.fidelity;
    e["purity"] = rec.purity;
    e["deviation_from_half"] = rec.probability - 0.5;
    runs.push_back(std::move(e));
  }
  j["per_run"] = std::move(runs);
  j["cumulative_success"] = r.cumulative_success;
  j["final_state_ref"] = final_state_ref;
  return j;
}

// ---------------------------------------------------------------------------
// CSV emitters (RFC-4180-style, header row, LF line ends)
// ---------------------------------------------------------------------------

inline void write_wigner_csv(std::ostream& os, const std::vector<double>& xs,
                             const std::vector<double>& ps, const Eigen::MatrixXd& w) {
  os << "x,p,w\n";
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ps.size(); ++j)
      os << format_double(xs[i]) << ',' << format_double(ps[j]) << ','
         << format_double(w(i, j)) << '\n';
}

inline void write_marginals_csv(std::ostream& os, const std::vector<double>& xs,
                                const std::vector<double>& xdens, const std::vector<double>& ps,
                                const std::vector<double>& pdens) {
  os << "axis,coord,density\n";
  for (size_t i = 0; i < xs.size(); ++i)
    os << "x," << format_double(xs[i]) << ',' << format_double(xdens[i]) << '\n';
  for (size_t j = 0; j < ps.size(); ++j)
    os << "p," << format_double(ps[j]) << ',' << format_double(pdens[j]) << '\n';
}

inline void write_fidelity_map_csv(std::ostream& os,
                                   const std::vector<fidelity::FidelityGridRow>& rows) {
  os << "alpha,phi,zeta,fidelity,on_gkp_line\n";
  for (const auto& r : rows)
    os << format_double(r.alpha) << ',' << format_double(r.phi) << ',' << format_double(r.zeta)
       << ',' << format_double(r.fidelity) << ',' << (r.on_gkp_line ? 1 : 0) << '\n';
}

}  // namespace io
}  // namespace gkpwalk
