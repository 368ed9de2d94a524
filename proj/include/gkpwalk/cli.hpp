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
// Command-line front end: reproducible experiments emitting CSV/JSON plus a
// manifest per output. Exit codes: 0 ok, 1 invariant failure, 2 usage error,
// 3 truncation/convergence failure.

#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "gkpwalk/analytic.hpp"
#include "gkpwalk/fidelity.hpp"
#include "gkpwalk/fock.hpp"
#include "gkpwalk/io.hpp"
#include "gkpwalk/walk.hpp"

namespace gkpwalk {
namespace cli {

using io::format_double;
using io::json;

namespace detail {

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

/// Collects outputs and emits `<first output>.manifest.json` at the end.
class ManifestWriter {
 public:
  ManifestWriter(std::string command, json parameters)
      : command_(std::move(command)),
        parameters_(std::move(parameters)),
        start_(std::chrono::steady_clock::now()) {}

  void add_output(const std::string& path) { outputs_.push_back(path); }
  void set_dims(json dims) { dims_ = std::move(dims); }
  void set_tail_residuals(json t) { tails_ = std::move(t); }

  std::string finish() {
    if (outputs_.empty()) throw std::logic_error("manifest without outputs");
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    json m;
    m["command"] = command_;
    m["parameters"] = parameters_;
    m["library_version"] = kLibraryVersion;
    m["dims"] = dims_;
    m["tail_residuals"] = tails_;
    m["wall_time_ms"] = ms;
    json outs = json::array();
    for (const auto& p : outputs_) outs.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    m["outputs"] = std::move(outs);
    std::string path = outputs_.front() + ".manifest.json";
    write_file(path, m.dump(2) + "\n");
    return path;
  }

 private:
  std::string command_;
  json parameters_;
  json dims_ = json::object();
  json tails_ = json::object();
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

inline fidelity::GridRange parse_range(const std::string& spec, const char* what) {
  fidelity::GridRange r;
  char colon1 = 0, colon2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> r.lo >> colon1 >> r.hi >> colon2 >> r.n) || colon1 != ':' || colon2 != ':' ||
      r.n < 1 || !ss.eof())
    throw CLI::ValidationError(std::string(what) + ": expected lo:hi:n, got '" + spec + "'");
  return r;
}

inline std::vector<double> range_values(const fidelity::GridRange& r) {
  std::vector<double> v(r.n);
  for (int i = 0; i < r.n; ++i) v[i] = r.at(i);
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// wigner
// ---------------------------------------------------------------------------

inline int cmd_wigner(int runs, const std::string& alpha_phi_spec, const std::string& zeta_spec,
                      const std::string& grid_spec, const std::string& method,
                      const std::string& out, int jobs) {
  double aphi = alpha_phi_spec == "gkp" ? std::sqrt(M_PI / 2.0) : std::stod(alpha_phi_spec);
  double zeta = zeta_spec == "auto" ? 0.5 * std::log(runs * M_PI) : std::stod(zeta_spec);

  auto comma = grid_spec.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--grid: expected x0:x1:nx,p0:p1:np");
  fidelity::GridRange gx = detail::parse_range(grid_spec.substr(0, comma), "--grid x");
  fidelity::GridRange gp = detail::parse_range(grid_spec.substr(comma + 1), "--grid p");
  std::vector<double> xs = detail::range_values(gx), ps = detail::range_values(gp);

  json params;
  params["runs"] = runs;
  params["alpha_phi"] = aphi;
  params["zeta"] = zeta;
  params["grid"] = grid_spec;
  params["method"] = method;
  params["jobs"] = jobs;
  detail::ManifestWriter manifest("wigner", params);

  Eigen::MatrixXd w(xs.size(), ps.size());
  std::vector<double> xdens, pdens;
  if (method == "analytic") {
    parallel_for(static_cast<int>(xs.size()), jobs, [&](int i) {
      for (size_t j = 0; j < ps.size(); ++j)
        w(i, j) = analytic::wigner_analytic(runs, aphi, zeta, xs[i], ps[j]);
    });
    xdens = analytic::marginal_analytic(runs, aphi, zeta, analytic::Axis::X, xs);
    pdens = analytic::marginal_analytic(runs, aphi, zeta, analytic::Axis::P, ps);
  } else if (method == "fock") {
    double reach = std::abs(runs * aphi);
    int dim = recommended_dim(reach, zeta);
    fock::FockState st = analytic::to_fock(analytic::codeword(runs, aphi, zeta), dim);
    manifest.set_dims({{"fock_dim", dim}});
    manifest.set_tail_residuals({{"codeword", st.max_tail_mass()}});
    w = fock::wigner_numeric_grid(st, xs, ps);
    xdens = fock::position_density(st, xs);
    pdens.resize(ps.size());
    for (size_t j = 0; j < ps.size(); ++j)
      pdens[j] = std::norm(fock::momentum_wavefunction(st, ps[j]));
  } else {
    throw CLI::ValidationError("--method: expected analytic or fock");
  }

  std::ostringstream grid_csv;
  io::write_wigner_csv(grid_csv, xs, ps, w);
  detail::write_file(out, grid_csv.str());
  manifest.add_output(out);

  std::ostringstream marg_csv;
  io::write_marginals_csv(marg_csv, xs, xdens, ps, pdens);
  detail::write_file(out + ".marginals.csv", marg_csv.str());
  manifest.add_output(out + ".marginals.csv");

  std::cout << "wrote " << out << " and marginals; manifest " << manifest.finish() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// encode
// ---------------------------------------------------------------------------

inline int cmd_encode(const walk::EncoderConfig& cfg, const std::string& out) {
  json params = io::encoder_config_to_json(cfg);
  detail::ManifestWriter manifest("encode", params);

  walk::EncodeReport report = walk::run_cmzi_encoding(cfg);

  std::string state_path = out + ".state.json";
  detail::write_file(state_path, io::fock_to_json(report.final_state).dump(2) + "\n");

  json j = io::report_to_json(report, state_path);
  detail::write_file(out, j.dump(2) + "\n");
  manifest.add_output(out);
  manifest.add_output(state_path);
  manifest.set_dims({{"ancilla_dim", report.ancilla_dim}, {"walker_dim", report.walker_dim}});
  manifest.set_tail_residuals({{"final_state", report.final_state.max_tail_mass()}});
  std::string mpath = manifest.finish();

  for (size_t k = 0; k < report.per_run.size(); ++k)
    std::cout << "run " << (k + 1) << ": probability " << format_double(report.per_run[k].probability)
              << " (dev from 1/2: " << format_double(report.per_run[k].probability - 0.5)
              << "), fidelity " << format_double(report.per_run[k].fidelity) << "\n";
  std::cout << "cumulative success " << format_double(report.cumulative_success) << "; report "
            << out << "; manifest " << mpath << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fidelity
// ---------------------------------------------------------------------------

inline int cmd_fidelity(double alpha, double phi, double zeta, bool exact, int dim, bool ordered,
                        const std::string& out) {
  fidelity::MziParams p{alpha, phi, zeta};
  json j;
  j["alpha"] = alpha;
  j["phi"] = phi;
  j["zeta"] = zeta;
  j["analytic"] = fidelity::fidelity_analytic(p);
  if (!fidelity::perturbative_reliable(p))
    j["warning"] = "perturbative closed form unreliable for |phi| > 1";
  if (exact) {
    if (dim > 0) {
      fidelity::OverlapResult r = fidelity::overlap_exact(p, dim);
      j["exact"] = r.magnitude;
      j["exact_phase_residual"] = r.phase;
      j["exact_dim"] = dim;
    } else {
      j["exact"] = fidelity::fidelity_exact_converged(p);
    }
  }
  if (ordered) {
    int odim = dim > 0 ? dim : 0;
    fidelity::OverlapResult r =
        fidelity::overlap_ordered(p, odim > 0 ? odim : recommended_dim(alpha * std::abs(phi) / 2.0,
                                                                       zeta) + 32);
    j["ordered"] = r.magnitude;
    j["ordered_phase_residual"] = r.phase;
  }
  if (zeta == 0.0) {
    fidelity::DerivedParams d = fidelity::derived_params(p);
    j["coherent_overlap_reference"] =
        std::exp(-(d.alpha_s * d.alpha_s + d.alpha_c * d.alpha_c) / 2.0);
  }
  fidelity::DerivedParams d = fidelity::derived_params(p);
  j["derived_params"] = {{"alpha_c", d.alpha_c},
                         {"alpha_s", d.alpha_s},
                         {"zeta_c", d.zeta_c},
                         {"zeta_s", d.zeta_s},
                         {"mu", d.mu}};
  j["squeezing_db"] = fidelity::squeezing_db(std::abs(zeta));
  std::cout << j.dump(2) << "\n";
  if (!out.empty()) {
    json params;
    params["alpha"] = alpha;
    params["phi"] = phi;
    params["zeta"] = zeta;
    params["exact"] = exact;
    params["ordered"] = ordered;
    params["dim"] = dim;
    detail::ManifestWriter manifest("fidelity", params);
    detail::write_file(out, j.dump(2) + "\n");
    manifest.add_output(out);
    manifest.finish();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fidelity-map
// ---------------------------------------------------------------------------

inline int cmd_fidelity_map(int runs, const std::string& alpha_range,
                            const std::string& phi_range, const std::string& out, int jobs) {
  double zeta = 0.5 * std::log(runs * M_PI);
  fidelity::GridRange ga = detail::parse_range(alpha_range, "--alpha-range");
  fidelity::GridRange gp = detail::parse_range(phi_range, "--phi-range");
  json params;
  params["runs"] = runs;
  params["zeta"] = zeta;
  params["alpha_range"] = alpha_range;
  params["phi_range"] = phi_range;
  params["jobs"] = jobs;
  detail::ManifestWriter manifest("fidelity-map", params);
  auto rows = fidelity::fidelity_grid(ga, gp, zeta, jobs);
  std::ostringstream csv;
  io::write_fidelity_map_csv(csv, rows);
  detail::write_file(out, csv.str());
  manifest.add_output(out);
  std::cout << "wrote " << rows.size() << " rows to " << out << "; manifest "
            << manifest.finish() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

namespace detail {

struct CheckTable {
  bool ok = true;

  void row(const std::string& name, double value, double limit) {
    bool pass = value < limit;
    ok = ok && pass;
    std::cout << (pass ? "  [pass] " : "  [FAIL] ") << name << " = " << format_double(value)
              << "  (limit " << format_double(limit) << ")\n";
  }
  void info(const std::string& name, double value) {
    std::cout << "  [info] " << name << " = " << format_double(value) << "\n";
  }
};

inline void check_algebra(CheckTable& t) {
  std::cout << "algebra: commutation relations of the ordering operator set (dim 60)\n";
  for (const auto& [name, res] : fidelity::algebra_commutator_residuals(60))
    t.row(name, res, 1e-8);
  std::cout << "algebra: unitarity residuals\n";
  t.row("D(2), dim 64", fock::displacement_operator(2.0, 64).unitarity_residual, 1e-8);
  t.row("S(0.8), dim 128", fock::squeeze_operator(0.8, 128).unitarity_residual, 1e-8);
  t.row("MZI(0.3), dim 24", fock::mzi_unitary(0.3, 24).unitarity_residual, 1e-8);
}

inline void check_ordering(CheckTable& t) {
  std::cout << "ordering: theorem residuals on |00>\n";
  Vec v00 = Vec::Zero(32 * 32);
  v00(0) = 1.0;
  t.row("||B|00>||", fock::apply_generator(fock::gen_beamsplitter(), v00, 32, 32).norm(), 1e-14);
  t.row("ODE pqr, zeta=0.6 phi=0.2 dim=40", fidelity::verify_ordering(0.6, 0.2, 40), 1e-7);
  t.row("ODE pqr, zeta=0.6 phi=0.2 dim=80", fidelity::verify_ordering(0.6, 0.2, 80), 1e-7);
  fidelity::OrderingSolution pert = fidelity::pqr_perturbative(0.6, 0.2);
  t.info("perturbative pqr residual, phi=0.2", fidelity::verify_ordering(0.6, 0.2, 40, &pert));
  fidelity::OrderingSolution pert8 = fidelity::pqr_perturbative(0.6, 0.8);
  t.info("perturbative pqr residual, phi=0.8", fidelity::verify_ordering(0.6, 0.8, 40, &pert8));
  auto delta = [](double phi) {
    auto [l1, l2] = fidelity::mzi_ordering_lambdas(phi);
    fidelity::OrderingSolution ode = fidelity::solve_pqr_ode(l1, l2, 1.0);
    fidelity::OrderingSolution pp = fidelity::pqr_perturbative(1.0, phi);
    return std::max({std::abs(ode.p - pp.p), std::abs(ode.q - pp.q), std::abs(ode.r - pp.r)});
  };
  double ratio = delta(0.2) / delta(0.1);
  t.row("|ODE - perturbative| ratio under phi halving, |ratio - 4|", std::abs(ratio - 4.0), 1.0);
}

inline void check_wigner(CheckTable& t) {
  std::cout << "wigner: closed form vs truncated-Fock displaced parity (N=1)\n";
  double aphi = std::sqrt(M_PI / 2.0), zeta = 0.5 * std::log(M_PI);
  int dim = recommended_dim(aphi, zeta);
  fock::FockState st = analytic::to_fock(analytic::codeword(1, aphi, zeta), dim);
  double lim = 3.0 * std::sqrt(M_PI);
  std::vector<double> xs, ps;
  for (int i = 0; i < 21; ++i) xs.push_back(-lim + 2 * lim * i / 20.0);
  ps = xs;
  Eigen::MatrixXd w = fock::wigner_numeric_grid(st, xs, ps);
  double worst = 0.0;
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j)
      worst = std::max(worst,
                       std::abs(w(i, j) - analytic::wigner_analytic(1, aphi, zeta, xs[i], ps[j])));
  t.row("max |analytic - numeric| on 21x21", worst, 1e-6);

  std::vector<double> wide_x, wide_p;
  double lx = std::sqrt(2.0) * aphi + 6.0, lp = 6.0 * std::exp(zeta);
  for (int i = 0; i < 201; ++i) wide_x.push_back(-lx + 2 * lx * i / 200.0);
  for (int i = 0; i < 201; ++i) wide_p.push_back(-lp + 2 * lp * i / 200.0);
  double integral = 0.0;
  for (double x : wide_x)
    for (double p : wide_p) integral += analytic::wigner_analytic(1, aphi, zeta, x, p);
  integral *= (wide_x[1] - wide_x[0]) * (wide_p[1] - wide_p[0]);
  t.row("|integral - 1|", std::abs(integral - 1.0), 1e-4);

  auto dens = analytic::marginal_analytic(1, aphi, zeta, analytic::Axis::X, wide_x);
  double peak = wide_x[std::max_element(dens.begin(), dens.end()) - dens.begin()];
  t.row("|x-marginal peak| vs sqrt(pi), relative", std::abs(std::abs(peak) / std::sqrt(M_PI) - 1.0),
        0.01);
}

inline void check_fidelity(CheckTable& t) {
  std::cout << "fidelity: closed form vs oracles\n";
  double worst_even = 0.0;
  for (double a : {1.0, 3.0})
    for (double ph : {0.1, 0.5})
      worst_even = std::max(worst_even, std::abs(fidelity::fidelity_analytic({a, ph, 0.7}) -
                                                 fidelity::fidelity_analytic({a, -ph, 0.7})));
  t.row("evenness |F(phi) - F(-phi)|", worst_even, 1e-12);
  double worst_c = 0.0;
  for (double a : {1.0, 2.0, 3.0}) {
    fidelity::MziParams p{a, 0.25, 0.0};
    fidelity::DerivedParams d = fidelity::derived_params(p);
    double ref = std::exp(-(d.alpha_s * d.alpha_s + d.alpha_c * d.alpha_c) / 2.0);
    worst_c = std::max(worst_c, std::abs(fidelity::fidelity_exact(p) - ref));
  }
  t.row("zeta=0 slice |exact - coherent overlap|", worst_c, 1e-6);
  double worst_e = 0.0, worst_o = 0.0;
  for (double a : {1.0, 3.0})
    for (double z : {0.3, 1.2}) {
      fidelity::MziParams p{a, 0.2, z};
      double fa = fidelity::fidelity_analytic(p);
      worst_e = std::max(worst_e, std::abs(fidelity::fidelity_exact(p) - fa));
      worst_o = std::max(worst_o, std::abs(fidelity::fidelity_ordered(p) - fa));
    }
  t.row("box sample |exact - analytic|", worst_e, 0.01);
  t.row("box sample |ordered - analytic|", worst_o, 5e-3);
  double fmin = 1.0;
  for (int i = 1; i <= 80; ++i) {
    double ph = 0.8 * i / 80.0;
    fmin = std::min(fmin, fidelity::fidelity_analytic(
                              {2.0 * std::sqrt(M_PI / 2.0) / ph, ph, 0.5 * std::log(M_PI)}));
  }
  t.row("GKP line N=1: 0.90 - min F", 0.90 - fmin, 0.0);
  t.info("GKP line N=1: min F", fmin);
}

}  // namespace detail

inline int cmd_check(const std::string& suite) {
  detail::CheckTable t;
  if (suite == "algebra" || suite == "all") detail::check_algebra(t);
  if (suite == "ordering" || suite == "all") detail::check_ordering(t);
  if (suite == "wigner" || suite == "all") detail::check_wigner(t);
  if (suite == "fidelity" || suite == "all") detail::check_fidelity(t);
  std::cout << (t.ok ? "check: all limits met\n" : "check: FAILURES above\n");
  return t.ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// driver
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv) {
  CLI::App app{"gkpwalk: quantum-walk encoding of grid-state qubits in a bosonic mode"};
  app.set_version_flag("--version", std::string(kLibraryVersion));
  app.require_subcommand(1);

  // wigner
  auto* wig = app.add_subcommand("wigner", "Codeword Wigner function and marginals");
  int w_runs = 1;
  std::string w_aphi = "gkp", w_zeta = "auto", w_grid, w_method = "analytic", w_out;
  int w_jobs = 1;
  {
    std::ostringstream def;
    double l = 3.0 * std::sqrt(M_PI);
    def << -l << ":" << l << ":101," << -l << ":" << l << ":101";
    w_grid = def.str();
  }
  wig->add_option("--runs", w_runs, "number of walk runs N")->required()->check(CLI::PositiveNumber);
  wig->add_option("--alpha-phi", w_aphi, "step alpha*phi/2, or 'gkp' for sqrt(pi/2)");
  wig->add_option("--zeta", w_zeta, "squeezing, or 'auto' for ln(N*pi)/2");
  wig->add_option("--grid", w_grid, "x0:x1:nx,p0:p1:np");
  wig->add_option("--method", w_method, "analytic | fock");
  wig->add_option("--out", w_out, "output CSV path")->required();
  wig->add_option("--jobs", w_jobs, "parallel workers")->check(CLI::PositiveNumber);

  // encode
  auto* enc = app.add_subcommand("encode", "Exact MZI encoding pipeline");
  walk::EncoderConfig cfg;
  std::string e_post = "even", e_out;
  enc->add_option("--runs", cfg.runs, "number of runs N")->required()->check(CLI::PositiveNumber);
  enc->add_option("--alpha", cfg.alpha, "ancilla cat amplitude")->required();
  enc->add_option("--phi", cfg.phi, "MZI phase")->required();
  enc->add_option("--zeta", cfg.zeta, "input squeezing")->required();
  enc->add_option("--depth", cfg.depth, "MZI passes per run (cMZI)")->check(CLI::PositiveNumber);
  enc->add_option("--dim", cfg.dim, "truncation override (0 = auto per tail rules)");
  enc->add_option("--postselect", e_post, "even | cat");
  enc->add_option("--out", e_out, "output report path")->required();

  // fidelity
  auto* fid = app.add_subcommand("fidelity", "MZI-map fidelity at one parameter point");
  double f_alpha = 0, f_phi = 0, f_zeta = 0;
  bool f_exact = false, f_ordered = false;
  int f_dim = 0;
  std::string f_out;
  fid->add_option("--alpha", f_alpha)->required();
  fid->add_option("--phi", f_phi)->required();
  fid->add_option("--zeta", f_zeta)->required();
  fid->add_flag("--exact", f_exact, "also evaluate the exact two-mode overlap");
  fid->add_flag("--ordered", f_ordered, "also evaluate the ordered matrix element");
  fid->add_option("--dim", f_dim, "truncation for --exact/--ordered (0 = converged/auto)");
  fid->add_option("--out", f_out, "optional output JSON path");

  // fidelity-map
  auto* map = app.add_subcommand("fidelity-map", "Fidelity landscape with the GKP line flagged");
  int m_runs = 1, m_jobs = 1;
  std::string m_arange = "0.5:10:39", m_prange = "0.0125:0.8:64", m_out;
  map->add_option("--runs", m_runs, "N; sets zeta = ln(N*pi)/2")->required()->check(CLI::PositiveNumber);
  map->add_option("--alpha-range", m_arange, "a0:a1:na");
  map->add_option("--phi-range", m_prange, "p0:p1:np (stay within (0, 0.8])");
  map->add_option("--out", m_out, "output CSV path")->required();
  map->add_option("--jobs", m_jobs, "parallel workers")->check(CLI::PositiveNumber);

  // check
  auto* chk = app.add_subcommand("check", "Residual/invariant suites");
  std::string c_suite = "all";
  chk->add_option("--suite", c_suite, "algebra | ordering | wigner | fidelity | all")
      ->check(CLI::IsMember({"algebra", "ordering", "wigner", "fidelity", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (wig->parsed()) return cmd_wigner(w_runs, w_aphi, w_zeta, w_grid, w_method, w_out, w_jobs);
    if (enc->parsed()) {
      if (e_post != "even" && e_post != "cat")
        throw CLI::ValidationError("--postselect: expected even or cat");
      cfg.postselect =
          e_post == "even" ? fock::PostSelect::EvenSubspace : fock::PostSelect::CatVector;
      return cmd_encode(cfg, e_out);
    }
    if (fid->parsed()) return cmd_fidelity(f_alpha, f_phi, f_zeta, f_exact, f_dim, f_ordered, f_out);
    if (map->parsed()) return cmd_fidelity_map(m_runs, m_arange, m_prange, m_out, m_jobs);
    if (chk->parsed()) return cmd_check(c_suite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const TruncationError& e) {
    std::cerr << "truncation failure: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cli
}  // namespace gkpwalk
