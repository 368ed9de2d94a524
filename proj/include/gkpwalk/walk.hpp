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
// Encoding pipelines: the ideal coin-walk recursion over superpositions of
// squeezed coherent states, and the exact truncated-Fock MZI pipeline with
// cat-state ancillas, optional concatenated-MZI depth, and parity
// post-selection.

#pragma once

#include <map>
#include <vector>

#include "gkpwalk/analytic.hpp"
#include "gkpwalk/fock.hpp"

namespace gkpwalk {
namespace walk {

// ---------------------------------------------------------------------------
// Ideal walk (analytic)
// ---------------------------------------------------------------------------

/// One walk step on the superposition: Psi -> D(+a_phi) Psi + D(-a_phi) Psi,
/// displacements within 1e-9 merged, renormalized on return.
inline analytic::Superposition ideal_step(const analytic::Superposition& s, double alpha_phi) {
  std::vector<analytic::SqueezedCoherentTerm> out;
  out.reserve(2 * s.size());
  auto add = [&](cplx coeff, double alpha) {
    for (auto& t : out)
      if (std::abs(t.alpha - alpha) < 1e-9) {
        t.coeff += coeff;
        return;
      }
    out.push_back({coeff, alpha, s.zeta()});
  };
  for (const auto& t : s.terms()) {
    add(t.coeff, t.alpha + alpha_phi);
    add(t.coeff, t.alpha - alpha_phi);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.alpha < b.alpha; });
  return analytic::normalized(analytic::Superposition(std::move(out), false));
}

/// Unnormalized codeword coefficients from a genuine two-level-coin walk in
/// integer arithmetic: coin basis {R, L}, the projective coin |D><D| and the
/// coin-conditioned translation, applied `runs` times to |R> x (input), then
/// a final |D> projection. Entry m corresponds to displacement (2m - runs).
inline std::vector<long long> ideal_walk_coefficients(int runs) {
  if (runs < 1) throw std::invalid_argument("ideal_walk_coefficients: runs must be >= 1");
  if (runs > 60) throw std::invalid_argument("ideal_walk_coefficients: integer overflow risk");
  struct Coin {
    long long r = 0, l = 0;
  };
  // lattice index j = displacement / alpha_phi; global powers of 1/2 and
  // 1/sqrt(2) are dropped (they cancel on normalization)
  std::map<int, Coin> branches{{0, Coin{1, 0}}};
  for (int step = 0; step < runs; ++step) {
    std::map<int, Coin> next;
    for (const auto& [j, c] : branches) {
      long long d = c.r + c.l;  // coin projected onto |D>, re-emitted as |R>+|L>
      next[j + 1].r += d;
      next[j - 1].l += d;
    }
    branches.swap(next);
  }
  std::vector<long long> coeffs(runs + 1, 0);
  for (const auto& [j, c] : branches) coeffs[(j + runs) / 2] = c.r + c.l;
  return coeffs;
}

/// The same walk as a normalized superposition; brute-force mirror of
/// analytic::codeword.
inline analytic::Superposition ideal_walk_reference(int runs, double alpha_phi, double zeta) {
  auto coeffs = ideal_walk_coefficients(runs);
  std::vector<analytic::SqueezedCoherentTerm> ts;
  ts.reserve(coeffs.size());
  for (int m = 0; m <= runs; ++m)
    ts.push_back({cplx(static_cast<double>(coeffs[m])), (2.0 * m - runs) * alpha_phi, zeta});
  return analytic::normalized(analytic::Superposition(std::move(ts), false));
}

/// 2^-N, the paper's quoted estimate for the N-run success rate.
inline double success_rate(int runs) {
  if (runs < 1) throw std::invalid_argument("success_rate: runs must be >= 1");
  return std::exp2(-static_cast<double>(runs));
}

// ---------------------------------------------------------------------------
// Exact MZI pipeline
// ---------------------------------------------------------------------------

struct EncoderConfig {
  int runs = 1;
  double alpha = 0.0;  // ancilla cat amplitude
  double phi = 0.0;    // MZI phase
  double zeta = 0.0;   // input squeezing
  int depth = 1;       // MZI passes per run (cMZI)
  int dim = 0;         // truncation; 0 picks per-mode sizes by the tail rules
  fock::PostSelect postselect = fock::PostSelect::EvenSubspace;

  double alpha_phi() const { return alpha * phi / 2.0; }
  double step_length() const { return depth * alpha_phi(); }
};

struct RunRecord {
  double probability;  // of the post-selection outcome
  double fidelity;     // |<codeword_k|state>| vs the k-run analytic reference
  double purity;       // of the conditioned reduced state
};

struct EncodeReport {
  EncoderConfig config;
  int ancilla_dim = 0;
  int walker_dim = 0;
  fock::FockState final_state;
  analytic::Superposition analytic_reference;
  std::vector<RunRecord> per_run;
  double cumulative_success = 1.0;
};

namespace detail {

inline fock::FockState kron(const fock::FockState& a, const fock::FockState& b) {
  int d1 = a.dim(1), d2 = b.dim(1);
  Vec v(static_cast<Eigen::Index>(d1) * d2);
  for (int n1 = 0; n1 < d1; ++n1)
    for (int n2 = 0; n2 < d2; ++n2)
      v(static_cast<Eigen::Index>(n1) * d2 + n2) = a.amp(n1) * b.amp(n2);
  return fock::FockState::two_mode(std::move(v), d1, d2, a.normalized() && b.normalized(),
                                   std::min(a.tail_tolerance(), b.tail_tolerance()));
}

/// Physical mode-routing swap |m, n> -> |n, m> (between consecutive MZIs).
inline fock::FockState swap_modes(const fock::FockState& s) {
  int d1 = s.dim(1), d2 = s.dim(2);
  Vec v(s.amplitudes().size());
  for (int n1 = 0; n1 < d1; ++n1)
    for (int n2 = 0; n2 < d2; ++n2)
      v(static_cast<Eigen::Index>(n2) * d1 + n1) = s.amp(n1, n2);
  return fock::FockState::two_mode(std::move(v), d2, d1, s.normalized(), s.tail_tolerance());
}

}  // namespace detail

/// Shared engine for the plain (depth 1) and concatenated pipelines. Per run:
/// a fresh cat ancilla enters port 1 and the current walker state port 2; the
/// MZI runs `depth` times with the output modes swapped in between; the
/// ancilla output is post-selected and the conditioned walker feeds forward.
inline EncodeReport encode(const EncoderConfig& cfg) {
  if (cfg.runs < 1 || cfg.depth < 1)
    throw std::invalid_argument("encode: runs and depth must be >= 1");
  if (cfg.alpha < 0) throw std::invalid_argument("encode: alpha must be >= 0");

  const double step = cfg.step_length();
  const double walker_reach = cfg.runs * step + std::abs(cfg.alpha_phi());
  int anc_dim = cfg.dim > 0 ? cfg.dim : recommended_dim(cfg.alpha, 0.0);
  int walk_dim = cfg.dim > 0 ? cfg.dim : recommended_dim(walker_reach, cfg.zeta);

  const fock::FockState cat =
      analytic::to_fock(analytic::cat_state(cfg.alpha), anc_dim);
  fock::FockState cur = analytic::to_fock(
      analytic::Superposition({{cplx(1.0), 0.0, cfg.zeta}}, false), walk_dim);

  EncodeReport report{cfg,
                      anc_dim,
                      walk_dim,
                      cur,
                      analytic::codeword(cfg.runs, step, cfg.zeta),
                      {},
                      1.0};
  for (int k = 1; k <= cfg.runs; ++k) {
    fock::FockState two = detail::kron(cat, cur);
    for (int j = 0; j < cfg.depth; ++j) {
      two = fock::apply_mzi(two, cfg.phi);
      if (j + 1 < cfg.depth) two = detail::swap_modes(two);
    }
    // walker now sits in mode 1, the ancilla in mode 2
    fock::Conditioned c = fock::conditional_state(two, 2, cfg.postselect, cfg.alpha);
    cur = std::move(c.state);
    cur.require_tail_ok("encode: walker state");
    double fid = fock::fidelity(analytic::to_fock(analytic::codeword(k, step, cfg.zeta), walk_dim),
                                cur);
    report.per_run.push_back({c.probability, fid, c.purity});
    report.cumulative_success *= c.probability;
  }
  report.final_state = std::move(cur);
  return report;
}

/// Single-MZI pipeline (depth must be 1).
inline EncodeReport run_mzi_encoding(const EncoderConfig& cfg) {
  if (cfg.depth != 1) throw std::invalid_argument("run_mzi_encoding: depth must be 1");
  return encode(cfg);
}

/// Concatenated-MZI pipeline; depth 1 coincides with run_mzi_encoding by
/// construction.
inline EncodeReport run_cmzi_encoding(const EncoderConfig& cfg) { return encode(cfg); }

}  // namespace walk
}  // namespace gkpwalk
