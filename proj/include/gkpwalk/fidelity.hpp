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
// Fidelity of the MZI displacement map: the exact two-mode overlap, the
// perturbative closed form, the operator-ordering theorem with its ODE
// system, and grid scans with the GKP line.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gkpwalk/core.hpp"
#include "gkpwalk/fock.hpp"

namespace gkpwalk {
namespace fidelity {

struct MziParams {
  double alpha = 0.0;
  double phi = 0.0;
  double zeta = 0.0;
};

/// The closed forms carry tan(phi); |phi| <= 1 is the regime they were
/// derived for.
inline bool perturbative_reliable(const MziParams& p) { return std::abs(p.phi) <= 1.0; }

struct DerivedParams {
  double alpha_c;  // alpha (1 - cos(phi/2))
  double alpha_s;  // alpha (phi/2 - sin(phi/2))
  double zeta_c;   // zeta cos^2(phi/2)
  double zeta_s;   // zeta sin^2(phi/2)
  double mu;       // (1/2) tan(phi) sinh(zeta cos(phi))
};

namespace detail {

inline void require_tan_regular(double phi) {
  if (std::abs(std::cos(phi)) < 1e-12)
    throw SingularParameterError("tan(phi) pole at phi = " + std::to_string(phi));
}

}  // namespace detail

inline DerivedParams derived_params(const MziParams& p) {
  detail::require_tan_regular(p.phi);
  double h = p.phi / 2.0;
  return {p.alpha * (1.0 - std::cos(h)), p.alpha * (h - std::sin(h)),
          p.zeta * std::cos(h) * std::cos(h), p.zeta * std::sin(h) * std::sin(h),
          0.5 * std::tan(p.phi) * std::sinh(p.zeta * std::cos(p.phi))};
}

/// Perturbative closed form of the MZI-map fidelity:
///   F = sech(mu) sech(zeta_s)
///       exp{-(e^zeta/2) sech(zeta_s) (alpha_s^2 e^{zeta_c} + alpha_c^2 e^{-zeta_c})}
///       exp{-(alpha_c/2) sech^2(zeta_c) tanh(mu)
///            (alpha_c tanh(zeta_s) tanh(mu) - 2 alpha_s e^zeta)}.
inline double fidelity_analytic(const MziParams& p) {
  DerivedParams d = derived_params(p);
  auto sech = [](double x) { return 1.0 / std::cosh(x); };
  double f = sech(d.mu) * sech(d.zeta_s);
  f *= std::exp(-(std::exp(p.zeta) / 2.0) * sech(d.zeta_s) *
                (d.alpha_s * d.alpha_s * std::exp(d.zeta_c) +
                 d.alpha_c * d.alpha_c * std::exp(-d.zeta_c)));
  f *= std::exp(-(d.alpha_c / 2.0) * sech(d.zeta_c) * sech(d.zeta_c) * std::tanh(d.mu) *
                (d.alpha_c * std::tanh(d.zeta_s) * std::tanh(d.mu) -
                 2.0 * d.alpha_s * std::exp(p.zeta)));
  return f;
}

// ---------------------------------------------------------------------------
// Exact two-mode fidelity
// ---------------------------------------------------------------------------

struct OverlapResult {
  double magnitude;
  double phase;  // residual phase of the raw overlap (logged, not asserted)
};

namespace detail {

/// Exact MZI output for the input |alpha>|zeta>: the two-mode quadratic
/// generator of the rotated squeeze is exponentiated directly (no ordering
/// decomposition), then the product displacement is applied.
inline Vec psi_out(const MziParams& p, int dim) {
  double c = std::cos(p.phi / 2.0), s = std::sin(p.phi / 2.0);
  fock::TwoModeQuadratic k;
  k.g1 = p.zeta / 2.0 * c * c;
  k.g2 = p.zeta / 2.0 * s * s;
  k.gts = -p.zeta * c * s;
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim) * dim);
  v(0) = 1.0;
  v = fock::exp_apply(k, std::move(v), dim, dim);
  Mat d1 = fock::detail::displacement_matrix(p.alpha * s, dim);
  Mat d2 = fock::detail::displacement_matrix(p.alpha * c, dim);
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(v.data(),
                                                                                     dim, dim);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r =
      d1 * m * d2.transpose();
  return Eigen::Map<const Vec>(r.data(), r.size());
}

/// The approximate map's output D1(alpha phi / 2) |zeta>_1 |alpha>_2.
inline Vec psi_displ(const MziParams& p, int dim) {
  Vec m1 = fock::detail::displacement_matrix(p.alpha * p.phi / 2.0, dim) *
           fock::detail::squeeze_matrix(p.zeta, dim).col(0);
  Vec m2 = fock::detail::displacement_matrix(p.alpha, dim).col(0);
  Vec v(static_cast<Eigen::Index>(dim) * dim);
  for (int n1 = 0; n1 < dim; ++n1)
    for (int n2 = 0; n2 < dim; ++n2) v(static_cast<Eigen::Index>(n1) * dim + n2) = m1(n1) * m2(n2);
  return v;
}

}  // namespace detail

inline OverlapResult overlap_exact(const MziParams& p, int dim) {
  if (dim < 4) throw DimensionError("overlap_exact: dim too small");
  Vec out = detail::psi_out(p, dim);
  Vec ref = detail::psi_displ(p, dim);
  double tail = 1.0 - out.squaredNorm();
  if (tail > 1e-6)
    throw TruncationError("overlap_exact: psi_out lost " + std::to_string(tail) +
                          " probability at dim " + std::to_string(dim));
  cplx z = ref.dot(out) / (ref.norm() * out.norm());
  return {std::abs(z), std::arg(z)};
}

/// F = |<Psi_displ|Psi_out>| at a fixed truncation (0 picks the tail rule).
inline double fidelity_exact(const MziParams& p, int dim = 0) {
  if (dim == 0) dim = recommended_dim(p.alpha, p.zeta);
  return overlap_exact(p, dim).magnitude;
}

/// Dim-doubling convergence wrapper: doubles until successive values agree
/// to `tol`.
inline double fidelity_exact_converged(const MziParams& p, double tol = 1e-8) {
  int dim = recommended_dim(p.alpha, p.zeta);
  double prev = fidelity_exact(p, dim);
  for (int round = 0; round < 3; ++round) {
    dim *= 2;
    double next = fidelity_exact(p, dim);
    if (std::abs(next - prev) < tol) return next;
    prev = next;
  }
  throw ConvergenceError("fidelity_exact_converged: no convergence under dim doubling");
}

// ---------------------------------------------------------------------------
// Operator-ordering theorem: e^{theta (l1 A + l2 C)} = e^{pA} e^{rC} e^{qB}
// ---------------------------------------------------------------------------

enum class SolutionMethod { Ode, Perturbative };

struct PqrSample {
  double t;  // path parameter in [0, 1]
  cplx p, q, r;
};

struct OrderingSolution {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  cplx theta_final;
  cplx p, q, r;
  std::vector<PqrSample> trajectory;
  SolutionMethod method = SolutionMethod::Ode;
};

/// The generator exp{-(i zeta/2)(cos(phi) A - sin(phi) C)} of the decomposed
/// MZI squeeze corresponds to theta = -i zeta / 2, lambda1 = cos(phi),
/// lambda2 = -sin(phi). (With +sin(phi) the perturbative q and r flip sign
/// and no longer match the two-mode factors of the fidelity matrix element.)
inline std::pair<double, double> mzi_ordering_lambdas(double phi) {
  return {std::cos(phi), -std::sin(phi)};
}

/// Integrates the ordering ODE system
///   r' = l2 cos(2p),  i q' cos(2r) = l2 sin(2p),  i q' sin(2r) = p' - l1
/// from theta = 0 along the straight ray to -i zeta / 2, boundary
/// p(0) = q(0) = r(0) = 0. Fixed-step RK4 with step halving until the
/// endpoint moves by less than `tol`.
inline OrderingSolution solve_pqr_ode(double lambda1, double lambda2, double zeta,
                                      double tol = 1e-10) {
  if (std::abs(lambda1 * lambda1 + lambda2 * lambda2 - 1.0) > 1e-9)
    throw std::invalid_argument("solve_pqr_ode: lambda1^2 + lambda2^2 must be 1");
  const cplx theta_f(0.0, -zeta / 2.0);
  struct Y {
    cplx p, q, r;
  };
  auto deriv = [&](const Y& y) -> Y {
    cplx c2r = std::cos(2.0 * y.r);
    if (std::abs(c2r) < 1e-12)
      throw SingularParameterError("solve_pqr_ode: cos(2r) vanished on the path");
    cplx s2p = std::sin(2.0 * y.p);
    return {lambda1 + lambda2 * s2p * std::tan(2.0 * y.r),
            cplx(0.0, -1.0) * lambda2 * s2p / c2r, lambda2 * std::cos(2.0 * y.p)};
  };
  auto integrate = [&](int steps, std::vector<PqrSample>* samples) -> Y {
    Y y{0.0, 0.0, 0.0};
    cplx h = theta_f / static_cast<double>(steps);
    int stride = std::max(1, steps / 32);
    if (samples) samples->push_back({0.0, y.p, y.q, y.r});
    for (int i = 0; i < steps; ++i) {
      Y k1 = deriv(y);
      Y k2 = deriv({y.p + 0.5 * h * k1.p, y.q + 0.5 * h * k1.q, y.r + 0.5 * h * k1.r});
      Y k3 = deriv({y.p + 0.5 * h * k2.p, y.q + 0.5 * h * k2.q, y.r + 0.5 * h * k2.r});
      Y k4 = deriv({y.p + h * k3.p, y.q + h * k3.q, y.r + h * k3.r});
      y.p += h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
      y.q += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
      y.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
      if (samples && ((i + 1) % stride == 0 || i + 1 == steps))
        samples->push_back({static_cast<double>(i + 1) / steps, y.p, y.q, y.r});
    }
    return y;
  };
  int steps = 64;
  Y prev = integrate(steps, nullptr);
  for (;;) {
    steps *= 2;
    if (steps > (1 << 22)) throw ConvergenceError("solve_pqr_ode: step-size underflow");
    Y next = integrate(steps, nullptr);
    double delta = std::max({std::abs(next.p - prev.p), std::abs(next.q - prev.q),
                             std::abs(next.r - prev.r)});
    prev = next;
    if (delta < tol) break;
  }
  OrderingSolution sol;
  sol.lambda1 = lambda1;
  sol.lambda2 = lambda2;
  sol.theta_final = theta_f;
  sol.method = SolutionMethod::Ode;
  Y final = integrate(steps, &sol.trajectory);
  sol.p = final.p;
  sol.q = final.q;
  sol.r = final.r;
  return sol;
}

/// Perturbative endpoint values: p = -(i zeta/2) cos(phi),
/// q = -(i/2) tan(phi) [cosh(zeta cos phi) - 1],
/// r = +(i/2) tan(phi) sinh(zeta cos phi) = i mu.
inline OrderingSolution pqr_perturbative(double zeta, double phi) {
  detail::require_tan_regular(phi);
  OrderingSolution sol;
  auto [l1, l2] = mzi_ordering_lambdas(phi);
  sol.lambda1 = l1;
  sol.lambda2 = l2;
  sol.theta_final = cplx(0.0, -zeta / 2.0);
  sol.method = SolutionMethod::Perturbative;
  double zc = zeta * std::cos(phi);
  sol.p = cplx(0.0, -zeta / 2.0 * std::cos(phi));
  sol.q = cplx(0.0, -0.5 * std::tan(phi) * (std::cosh(zc) - 1.0));
  sol.r = cplx(0.0, +0.5 * std::tan(phi) * std::sinh(zc));
  return sol;
}

/// || (LHS - RHS) |00> || restricted to the interior subspace, where
/// LHS = e^{theta (l1 A + l2 C)} and RHS = e^{pA} e^{rC} e^{qB} with the
/// given solution (defaults to the ODE endpoint for the MZI lambdas).
inline double verify_ordering(double zeta, double phi, int dim,
                              const OrderingSolution* sol = nullptr) {
  OrderingSolution ode;
  if (!sol) {
    auto [l1, l2] = mzi_ordering_lambdas(phi);
    ode = solve_pqr_ode(l1, l2, zeta);
    sol = &ode;
  }
  const cplx i(0.0, 1.0);
  cplx th = sol->theta_final;
  Vec v00 = Vec::Zero(static_cast<Eigen::Index>(dim) * dim);
  v00(0) = 1.0;

  fock::TwoModeQuadratic lhs_gen;  // theta (l1 A + l2 C) in kernel coefficients
  lhs_gen.g1 = i * th * sol->lambda1 * 0.5;
  lhs_gen.g2 = -i * th * sol->lambda1 * 0.5;
  lhs_gen.gts = i * th * sol->lambda2;
  Vec lhs = fock::exp_apply(lhs_gen, v00, dim, dim);

  Vec rhs = fock::exp_apply({0, 0, 0, i * sol->q}, v00, dim, dim);
  rhs = fock::exp_apply({0, 0, i * sol->r, 0}, std::move(rhs), dim, dim);
  rhs = fock::exp_apply({i * sol->p * 0.5, -i * sol->p * 0.5, 0, 0}, std::move(rhs), dim, dim);

  int cut = interior_cut(dim);
  double acc = 0.0;
  for (int n1 = 0; n1 < cut; ++n1)
    for (int n2 = 0; n2 < cut; ++n2)
      acc += std::norm(lhs(static_cast<Eigen::Index>(n1) * dim + n2) -
                       rhs(static_cast<Eigen::Index>(n1) * dim + n2));
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Ordered-form fidelity (the full matrix element behind the closed form)
// ---------------------------------------------------------------------------

/// Evaluates the ordered matrix element
///   <00| S1(-zeta)^dag-form  D^dag(alpha_s, alpha_c) S1(zeta_c) S2(zeta_s)
///        e^{mu (a1+ a2+ - a1 a2)} e^{nu (a1+ a2 - a1 a2+)} |00>
/// numerically in Fock space with the perturbative ordering factors
/// mu = (1/2) tan(phi) sinh(zeta cos phi),
/// nu = (1/2) tan(phi) [cosh(zeta cos phi) - 1].
/// Its gap to fidelity_analytic isolates the dropped O(phi^4) term and the
/// coherent-state integral steps.
inline OverlapResult overlap_ordered(const MziParams& p, int dim) {
  DerivedParams d = derived_params(p);
  double nu = 0.5 * std::tan(p.phi) * (std::cosh(p.zeta * std::cos(p.phi)) - 1.0);

  // bra side, conjugated: D1(alpha_s) D2(alpha_c) S1(zeta) |00>
  Vec m1 = fock::detail::displacement_matrix(d.alpha_s, dim) *
           fock::detail::squeeze_matrix(p.zeta, dim).col(0);
  Vec m2 = fock::detail::displacement_matrix(d.alpha_c, dim).col(0);
  Vec left(static_cast<Eigen::Index>(dim) * dim);
  for (int n1 = 0; n1 < dim; ++n1)
    for (int n2 = 0; n2 < dim; ++n2)
      left(static_cast<Eigen::Index>(n1) * dim + n2) = m1(n1) * m2(n2);

  Vec w = Vec::Zero(static_cast<Eigen::Index>(dim) * dim);
  w(0) = 1.0;
  w = fock::exp_apply({0, 0, 0, nu}, std::move(w), dim, dim);       // beamsplitter factor
  w = fock::exp_apply({0, 0, -d.mu, 0}, std::move(w), dim, dim);    // two-mode squeeze factor
  Mat s1 = fock::detail::squeeze_matrix(d.zeta_c, dim);
  Mat s2 = fock::detail::squeeze_matrix(d.zeta_s, dim);
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> wm(w.data(),
                                                                                      dim, dim);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> wr =
      s1 * wm * s2.transpose();
  Vec right = Eigen::Map<const Vec>(wr.data(), wr.size());

  cplx z = left.dot(right);
  return {std::abs(z), std::arg(z)};
}

inline double fidelity_ordered(const MziParams& p, int dim = 0) {
  if (dim == 0) dim = recommended_dim(p.alpha * std::abs(p.phi) / 2.0, p.zeta) + 32;
  return overlap_ordered(p, dim).magnitude;
}

// ---------------------------------------------------------------------------
// Grid scan
// ---------------------------------------------------------------------------

struct GridRange {
  double lo = 0.0, hi = 0.0;
  int n = 1;

  double at(int i) const { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1.0); }
  double step() const { return n <= 1 ? 0.0 : (hi - lo) / (n - 1.0); }
};

struct FidelityGridRow {
  double alpha, phi, zeta, fidelity;
  bool on_gkp_line;
};

/// Row-major (alpha outer) scan of fidelity_analytic. A row is flagged as on
/// the GKP line when |alpha phi / 2 - sqrt(pi/2)| is below half the local
/// variation of the product across one grid cell.
inline std::vector<FidelityGridRow> fidelity_grid(const GridRange& alpha_range,
                                                  const GridRange& phi_range, double zeta,
                                                  int jobs = 1) {
  const double gkp = std::sqrt(M_PI / 2.0);
  std::vector<FidelityGridRow> rows(static_cast<size_t>(alpha_range.n) * phi_range.n);
  parallel_for(alpha_range.n, jobs, [&](int i) {
    double a = alpha_range.at(i);
    for (int j = 0; j < phi_range.n; ++j) {
      double ph = phi_range.at(j);
      double f = fidelity_analytic({a, ph, zeta});
      double half_step =
          0.5 * (alpha_range.step() * std::abs(ph) / 2.0 + phi_range.step() * std::abs(a) / 2.0);
      bool on = std::abs(a * ph / 2.0 - gkp) < half_step;
      rows[static_cast<size_t>(i) * phi_range.n + j] = {a, ph, zeta, f, on};
    }
  });
  return rows;
}

/// F^(M N): the paper's estimate for an N-run codeword built with depth-M
/// concatenated MZIs.
inline double codeword_fidelity_estimate(double mzi_fidelity, int runs, int depth = 1) {
  if (mzi_fidelity < 0.0 || mzi_fidelity > 1.0)
    throw std::invalid_argument("codeword_fidelity_estimate: fidelity outside [0, 1]");
  if (runs < 1 || depth < 1)
    throw std::invalid_argument("codeword_fidelity_estimate: runs and depth must be >= 1");
  return std::pow(mzi_fidelity, static_cast<double>(runs) * depth);
}

/// 10 log10(e^{2 zeta}) — squeezing in dB.
inline double squeezing_db(double zeta) {
  if (zeta < 0) throw std::invalid_argument("squeezing_db: zeta must be >= 0");
  return 20.0 * zeta / std::log(10.0);
}

// ---------------------------------------------------------------------------
// Algebra residuals (commutation relations of the ordering operator set)
// ---------------------------------------------------------------------------

/// Max-abs interior matrix element of each commutator identity among
/// A1, A2, B, C, A = (A1-A2)/2 and S = (A1+A2)/2, evaluated matrix-free.
inline std::vector<std::pair<std::string, double>> algebra_commutator_residuals(int dim) {
  using fock::TwoModeQuadratic;
  const cplx i2(0.0, 2.0);
  TwoModeQuadratic a1 = fock::gen_squeeze_mode1();
  TwoModeQuadratic a2 = fock::gen_squeeze_mode2();
  TwoModeQuadratic b = fock::gen_beamsplitter();
  TwoModeQuadratic c = fock::gen_two_mode_squeeze();
  TwoModeQuadratic a = fock::gen_squeeze_diff();
  TwoModeQuadratic sm{cplx(0, 0.5), cplx(0, 0.5), 0, 0};  // (A1+A2)/2

  auto ap = [dim](const TwoModeQuadratic& g, const Vec& v) {
    return fock::apply_generator(g, v, dim, dim);
  };
  auto comm = [&](const TwoModeQuadratic& x, const TwoModeQuadratic& y, const Vec& v) {
    return Vec(ap(x, ap(y, v)) - ap(y, ap(x, v)));
  };

  struct Check {
    std::string name;
    std::function<Vec(const Vec&)> residual;
  };
  std::vector<Check> checks;
  checks.push_back({"[A1,A2]", [&](const Vec& v) { return comm(a1, a2, v); }});
  checks.push_back({"[A1,B]-2iC", [&](const Vec& v) { return Vec(comm(a1, b, v) - i2 * ap(c, v)); }});
  checks.push_back({"[A1,C]-2iB", [&](const Vec& v) { return Vec(comm(a1, c, v) - i2 * ap(b, v)); }});
  checks.push_back({"[B,C]-2iA", [&](const Vec& v) { return Vec(comm(b, c, v) - i2 * ap(a, v)); }});
  checks.push_back({"[A2,B]+2iC", [&](const Vec& v) { return Vec(comm(a2, b, v) + i2 * ap(c, v)); }});
  checks.push_back({"[A2,C]+2iB", [&](const Vec& v) { return Vec(comm(a2, c, v) + i2 * ap(b, v)); }});
  checks.push_back({"[A,B]-2iC", [&](const Vec& v) { return Vec(comm(a, b, v) - i2 * ap(c, v)); }});
  checks.push_back({"[A,C]-2iB", [&](const Vec& v) { return Vec(comm(a, c, v) - i2 * ap(b, v)); }});
  checks.push_back({"[S,A]", [&](const Vec& v) { return comm(sm, a, v); }});
  checks.push_back({"[S,B]", [&](const Vec& v) { return comm(sm, b, v); }});
  checks.push_back({"[S,C]", [&](const Vec& v) { return comm(sm, c, v); }});

  int cut = interior_cut(dim);
  std::vector<std::pair<std::string, double>> out;
  Vec e = Vec::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (const auto& chk : checks) {
    double worst = 0.0;
    for (int c1 = 0; c1 < cut; ++c1)
      for (int c2 = 0; c2 < cut; ++c2) {
        Eigen::Index col = static_cast<Eigen::Index>(c1) * dim + c2;
        e(col) = 1.0;
        Vec r = chk.residual(e);
        e(col) = 0.0;
        for (int r1 = 0; r1 < cut; ++r1)
          for (int r2 = 0; r2 < cut; ++r2)
            worst = std::max(worst, std::abs(r(static_cast<Eigen::Index>(r1) * dim + r2)));
      }
    out.emplace_back(chk.name, worst);
  }
  return out;
}

}  // namespace fidelity
}  // namespace gkpwalk
