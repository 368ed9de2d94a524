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
// Truncated photon-number-basis simulation of one and two bosonic modes:
// displacement, squeezing and Mach-Zehnder unitaries, parity projections,
// conditional states, and Wigner functions. Conventions: hbar = 1,
// x = (a + a^dag)/sqrt(2); a real displacement alpha shifts the position
// wavefunction by sqrt(2)*alpha; positive zeta squeezes position.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "gkpwalk/core.hpp"

namespace gkpwalk {
namespace fock {

namespace detail {

inline Mat annihilation(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Mat matrix_exp(const Mat& m) { return m.exp(); }

// D(alpha) without the tail-rule precondition. Used by the Wigner scanner,
// where displacing probability mass past the truncation only suppresses
// already-negligible parity contributions.
inline Mat displacement_matrix(cplx alpha, int dim) {
  Mat a = annihilation(dim);
  return matrix_exp(alpha * a.adjoint() - std::conj(alpha) * a);
}

inline Mat squeeze_matrix(double zeta, int dim) {
  Mat a = annihilation(dim);
  Mat a2 = a * a;
  return matrix_exp(-(zeta / 2.0) * a2.adjoint() + (zeta / 2.0) * a2);
}

// max |(U^dag U - I)_{jk}| over the interior block.
inline double unitarity_residual(const Mat& u, int dim1, int dim2) {
  Mat g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  if (dim2 <= 1) {
    int c = interior_cut(dim1);
    return g.topLeftCorner(c, c).cwiseAbs().maxCoeff();
  }
  int c1 = interior_cut(dim1), c2 = interior_cut(dim2);
  double worst = 0.0;
  for (int r1 = 0; r1 < c1; ++r1)
    for (int r2 = 0; r2 < c2; ++r2) {
      int row = r1 * dim2 + r2;
      for (int s1 = 0; s1 < c1; ++s1)
        for (int s2 = 0; s2 < c2; ++s2)
          worst = std::max(worst, std::abs(g(row, s1 * dim2 + s2)));
    }
  return worst;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FockState
// ---------------------------------------------------------------------------

/// Pure state of one or two modes as a dense amplitude vector. Two-mode
/// amplitudes are stored mode-1-major: amp(n1, n2) = amps[n1 * dim2 + n2].
class FockState {
 public:
  static FockState one_mode(Vec amps, bool normalized,
                            double tail_tolerance = kDefaultTailTolerance) {
    return FockState(std::move(amps), static_cast<int>(0), normalized, tail_tolerance, true);
  }

  static FockState two_mode(Vec amps, int dim1, int dim2, bool normalized,
                            double tail_tolerance = kDefaultTailTolerance) {
    if (dim1 < 1 || dim2 < 1 || amps.size() != static_cast<Eigen::Index>(dim1) * dim2)
      throw DimensionError("two_mode: amplitude size does not match dim1*dim2");
    FockState s(std::move(amps), dim1, normalized, tail_tolerance, false);
    return s;
  }

  static FockState vacuum(int dim) {
    Vec v = Vec::Zero(dim);
    v(0) = 1.0;
    return one_mode(std::move(v), true);
  }

  static FockState two_mode_vacuum(int dim1, int dim2) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(dim1) * dim2);
    v(0) = 1.0;
    return two_mode(std::move(v), dim1, dim2, true);
  }

  int mode_count() const { return dim2_ == 1 && one_mode_ ? 1 : 2; }
  int dim(int mode = 1) const { return mode == 1 ? dim1_ : dim2_; }
  const Vec& amplitudes() const { return amps_; }
  bool normalized() const { return normalized_; }
  double tail_tolerance() const { return tail_tolerance_; }

  cplx amp(int n) const { return amps_(n); }
  cplx amp(int n1, int n2) const { return amps_(static_cast<Eigen::Index>(n1) * dim2_ + n2); }

  double norm() const { return amps_.norm(); }

  /// Probability carried by photon numbers >= interior_cut(dim) of `mode`.
  double tail_mass(int mode = 1) const {
    double t = 0.0;
    if (mode_count() == 1) {
      for (int n = interior_cut(dim1_); n < dim1_; ++n) t += std::norm(amps_(n));
      return t;
    }
    int c1 = interior_cut(dim1_), c2 = interior_cut(dim2_);
    for (int n1 = 0; n1 < dim1_; ++n1)
      for (int n2 = 0; n2 < dim2_; ++n2) {
        bool in_tail = (mode == 1) ? n1 >= c1 : n2 >= c2;
        if (in_tail) t += std::norm(amp(n1, n2));
      }
    return t;
  }

  double max_tail_mass() const {
    double t = tail_mass(1);
    if (mode_count() == 2) t = std::max(t, tail_mass(2));
    return t;
  }

  bool tail_ok() const { return max_tail_mass() < tail_tolerance_; }

  /// Throws if the boundary band holds more probability than tolerated.
  void require_tail_ok(const std::string& context) const {
    if (!tail_ok()) {
      char msg[160];
      std::snprintf(msg, sizeof(msg), "%s: tail mass %.3e exceeds tolerance %.3e at dims %d/%d",
                    context.c_str(), max_tail_mass(), tail_tolerance_, dim1_, dim2_);
      throw TruncationError(msg);
    }
  }

  FockState normalized_copy() const {
    double n = norm();
    if (n == 0.0) throw DegenerateConditionError("cannot normalize a zero state");
    FockState s = *this;
    s.amps_ /= n;
    s.normalized_ = true;
    return s;
  }

 private:
  FockState(Vec amps, int dim1, bool normalized, double tail_tolerance, bool single)
      : amps_(std::move(amps)),
        dim1_(single ? static_cast<int>(amps_.size()) : dim1),
        dim2_(single ? 1 : static_cast<int>(amps_.size()) / dim1),
        normalized_(normalized),
        one_mode_(single),
        tail_tolerance_(tail_tolerance) {
    if (!amps_.allFinite()) throw std::invalid_argument("FockState: non-finite amplitude");
    double n2 = amps_.squaredNorm();
    if (n2 > 1.0 + 1e-12)
      throw std::invalid_argument("FockState: squared norm " + std::to_string(n2) + " > 1");
    if (normalized_ && std::abs(std::sqrt(n2) - 1.0) >= 1e-10)
      throw std::invalid_argument("FockState: flagged normalized but norm deviates");
  }

  Vec amps_;
  int dim1_;
  int dim2_;
  bool normalized_;
  bool one_mode_;
  double tail_tolerance_;
};

// ---------------------------------------------------------------------------
// OperatorMatrix
// ---------------------------------------------------------------------------

/// Dense operator with measured unitarity metadata. dim2 == 1 marks a
/// single-mode operator.
struct OperatorMatrix {
  int dim1 = 0;
  int dim2 = 1;
  Mat entries;
  bool is_unitary = false;
  double unitarity_residual = 0.0;

  static OperatorMatrix from_matrix(Mat m, int dim1, int dim2 = 1) {
    OperatorMatrix op;
    op.dim1 = dim1;
    op.dim2 = dim2;
    op.entries = std::move(m);
    op.unitarity_residual = detail::unitarity_residual(op.entries, dim1, dim2);
    op.is_unitary = op.unitarity_residual < 1e-8;
    return op;
  }
};

/// D(alpha) = exp(alpha a^dag - alpha* a) on a dim-truncated mode.
/// Refuses truncations that cannot hold D(alpha)|0>.
inline OperatorMatrix displacement_operator(cplx alpha, int dim) {
  if (dim < 2) throw DimensionError("displacement_operator: dim must be >= 2");
  if (coherent_dim_rule(std::abs(alpha)) > dim)
    throw TruncationError("displacement_operator: dim " + std::to_string(dim) +
                          " too small for |alpha| = " + std::to_string(std::abs(alpha)));
  return OperatorMatrix::from_matrix(detail::displacement_matrix(alpha, dim), dim);
}

/// S(zeta) = exp(-(zeta/2) a^dag^2 + (zeta/2) a^2), real zeta; positive zeta
/// squeezes the position quadrature by e^{-zeta}.
inline OperatorMatrix squeeze_operator(double zeta, int dim) {
  if (dim < 2) throw DimensionError("squeeze_operator: dim must be >= 2");
  Mat s = detail::squeeze_matrix(zeta, dim);
  double tail = 0.0;
  for (int n = interior_cut(dim); n < dim; ++n) tail += std::norm(s(n, 0));
  if (tail >= kDefaultTailTolerance)
    throw TruncationError("squeeze_operator: squeezed vacuum tail " + std::to_string(tail) +
                          " at dim " + std::to_string(dim));
  return OperatorMatrix::from_matrix(std::move(s), dim);
}

// ---------------------------------------------------------------------------
// Two-mode quadratic generators and their exponential action
// ---------------------------------------------------------------------------

/// G = g1 (a1^2 - a1^dag^2) + g2 (a2^2 - a2^dag^2)
///   + gts (a1 a2 - a1^dag a2^dag) + gbs (a1^dag a2 - a1 a2^dag).
/// Every exponential generator in this project is of this shape.
struct TwoModeQuadratic {
  cplx g1{0.0, 0.0};
  cplx g2{0.0, 0.0};
  cplx gts{0.0, 0.0};
  cplx gbs{0.0, 0.0};
};

namespace detail {

inline void apply_quadratic(const TwoModeQuadratic& g, const Vec& v, Vec& out, int d1, int d2,
                            const std::vector<double>& rt) {
  out.setZero();
  auto idx = [d2](int n1, int n2) { return static_cast<Eigen::Index>(n1) * d2 + n2; };
  for (int n1 = 0; n1 < d1; ++n1) {
    for (int n2 = 0; n2 < d2; ++n2) {
      cplx acc(0.0, 0.0);
      if (g.g1 != cplx(0.0)) {
        if (n1 + 2 < d1) acc += g.g1 * rt[n1 + 1] * rt[n1 + 2] * v(idx(n1 + 2, n2));
        if (n1 >= 2) acc -= g.g1 * rt[n1] * rt[n1 - 1] * v(idx(n1 - 2, n2));
      }
      if (g.g2 != cplx(0.0)) {
        if (n2 + 2 < d2) acc += g.g2 * rt[n2 + 1] * rt[n2 + 2] * v(idx(n1, n2 + 2));
        if (n2 >= 2) acc -= g.g2 * rt[n2] * rt[n2 - 1] * v(idx(n1, n2 - 2));
      }
      if (g.gts != cplx(0.0)) {
        if (n1 + 1 < d1 && n2 + 1 < d2)
          acc += g.gts * rt[n1 + 1] * rt[n2 + 1] * v(idx(n1 + 1, n2 + 1));
        if (n1 >= 1 && n2 >= 1) acc -= g.gts * rt[n1] * rt[n2] * v(idx(n1 - 1, n2 - 1));
      }
      if (g.gbs != cplx(0.0)) {
        if (n1 >= 1 && n2 + 1 < d2) acc += g.gbs * rt[n1] * rt[n2 + 1] * v(idx(n1 - 1, n2 + 1));
        if (n1 + 1 < d1 && n2 >= 1) acc -= g.gbs * rt[n1 + 1] * rt[n2] * v(idx(n1 + 1, n2 - 1));
      }
      out(idx(n1, n2)) = acc;
    }
  }
}

}  // namespace detail

/// G v for a two-mode amplitude vector (mode-1 major).
inline Vec apply_generator(const TwoModeQuadratic& g, const Vec& v, int d1, int d2) {
  std::vector<double> rt(static_cast<size_t>(std::max(d1, d2)) + 2);
  for (size_t n = 0; n < rt.size(); ++n) rt[n] = std::sqrt(static_cast<double>(n));
  Vec out(v.size());
  detail::apply_quadratic(g, v, out, d1, d2, rt);
  return out;
}

/// Dense matrix of the generator (for tests and small-dim cross-checks).
inline Mat dense_generator(const TwoModeQuadratic& g, int d1, int d2) {
  Eigen::Index n = static_cast<Eigen::Index>(d1) * d2;
  Mat m(n, n);
  std::vector<double> rt(static_cast<size_t>(std::max(d1, d2)) + 2);
  for (size_t k = 0; k < rt.size(); ++k) rt[k] = std::sqrt(static_cast<double>(k));
  Vec e = Vec::Zero(n), col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    detail::apply_quadratic(g, e, col, d1, d2, rt);
    m.col(j) = col;
    e(j) = 0.0;
  }
  return m;
}

/// exp(G) v via a Taylor series with adaptive sub-stepping. Each sub-step is
/// sized so the leading term stays below ~1/2 in norm; a step whose series
/// misbehaves is halved and retried.
inline Vec exp_apply(const TwoModeQuadratic& g, Vec v, int d1, int d2, double tol = 1e-15) {
  std::vector<double> rt(static_cast<size_t>(std::max(d1, d2)) + 2);
  for (size_t n = 0; n < rt.size(); ++n) rt[n] = std::sqrt(static_cast<double>(n));
  Vec gv(v.size()), term(v.size()), tmp(v.size());

  double remaining = 1.0;
  detail::apply_quadratic(g, v, gv, d1, d2, rt);
  double vn = v.norm();
  double rate = vn > 0 ? gv.norm() / vn : 0.0;
  double h = rate > 0 ? std::min(1.0, 0.5 / rate) : 1.0;

  int guard = 0;
  while (remaining > 0.0) {
    if (++guard > 1 << 22) throw ConvergenceError("exp_apply: step-size underflow");
    double step = std::min(h, remaining);
    TwoModeQuadratic gs{g.g1 * step, g.g2 * step, g.gts * step, g.gbs * step};
    Vec sum = v;
    term = v;
    bool ok = false;
    double prev_norm = v.norm();
    for (int k = 1; k <= 60; ++k) {
      detail::apply_quadratic(gs, term, tmp, d1, d2, rt);
      term = tmp / static_cast<double>(k);
      sum += term;
      double tn = term.norm();
      if (tn <= tol * sum.norm()) {
        ok = true;
        break;
      }
      if (k > 4 && tn > 2.0 * prev_norm) break;  // diverging series: shrink step
      prev_norm = tn;
    }
    if (!ok) {
      h /= 2.0;
      if (h < 1e-12) throw ConvergenceError("exp_apply: step-size underflow");
      continue;
    }
    v = std::move(sum);
    remaining -= step;
    // re-estimate the local rate occasionally; squeezing grows the support
    detail::apply_quadratic(g, v, gv, d1, d2, rt);
    vn = v.norm();
    rate = vn > 0 ? gv.norm() / vn : 0.0;
    h = rate > 0 ? std::min(1.0, 0.5 / rate) : 1.0;
  }
  return v;
}

// ---------------------------------------------------------------------------
// MZI unitary
// ---------------------------------------------------------------------------
//
// Eq.-(8)-style mode mixing: a_1' = sin(phi/2) a_1 + cos(phi/2) a_2,
// a_2' = cos(phi/2) a_1 - sin(phi/2) a_2. The matrix is a reflection
// (det = -1); we realize it as a rotation R(phi/2 - pi/2) composed with a pi
// phase on mode 2:
//
//   U = exp{(phi/2)(a1^dag a2 - a1 a2^dag)} . SignedSwap . exp{i pi n2},
//
// where SignedSwap is the exact Fock-basis action of R(-pi/2):
// amp'(m, n) = (-1)^m amp(n, m). Coherent states map as
// |b1, b2> -> |M (b1, b2)^T> with no extra phase.

/// Matrix-free MZI application; works for unequal per-mode truncations
/// (the two dims swap roles on output).
inline FockState apply_mzi(const FockState& in, double phi) {
  if (in.mode_count() != 2) throw DimensionError("apply_mzi: need a two-mode state");
  int d1 = in.dim(1), d2 = in.dim(2);
  const Vec& a = in.amplitudes();
  // The pi phase contributes (-1)^{n2} and the R(-pi/2) swap contributes
  // (-1)^{new n1} on the same index, so the two stages compose to a plain
  // amplitude transpose (dims exchange).
  Vec b(static_cast<Eigen::Index>(d2) * d1);
  for (int m = 0; m < d2; ++m)
    for (int n = 0; n < d1; ++n)
      b(static_cast<Eigen::Index>(m) * d1 + n) = a(static_cast<Eigen::Index>(n) * d2 + m);
  TwoModeQuadratic rot;
  rot.gbs = phi / 2.0;
  Vec out = exp_apply(rot, std::move(b), d2, d1);
  return FockState::two_mode(std::move(out), d2, d1, in.normalized(), in.tail_tolerance());
}

/// Dense two-mode MZI unitary (equal dims). Heavy at large dim; the encoder
/// uses apply_mzi instead.
inline OperatorMatrix mzi_unitary(double phi, int dim) {
  if (dim < 2) throw DimensionError("mzi_unitary: dim must be >= 2");
  Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
  Mat u(n, n);
  Vec e = Vec::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    FockState col = apply_mzi(FockState::two_mode(e, dim, dim, false), phi);
    u.col(j) = col.amplitudes();
    e(j) = 0.0;
  }
  return OperatorMatrix::from_matrix(std::move(u), dim, dim);
}

// ---------------------------------------------------------------------------
// apply / overlap
// ---------------------------------------------------------------------------

inline FockState apply(const OperatorMatrix& op, const FockState& s) {
  if (op.dim2 == 1) {
    if (s.mode_count() != 1 || s.dim(1) != op.dim1)
      throw DimensionError("apply: single-mode operator vs state dims");
    Vec out = op.entries * s.amplitudes();
    return FockState::one_mode(std::move(out), s.normalized() && op.is_unitary,
                               s.tail_tolerance());
  }
  if (s.mode_count() != 2 || s.dim(1) != op.dim1 || s.dim(2) != op.dim2)
    throw DimensionError("apply: two-mode operator vs state dims");
  Vec out = op.entries * s.amplitudes();
  return FockState::two_mode(std::move(out), op.dim1, op.dim2,
                             s.normalized() && op.is_unitary, s.tail_tolerance());
}

/// Apply a single-mode operator to one mode of a two-mode state.
inline FockState apply_mode(const OperatorMatrix& op, const FockState& s, int mode) {
  if (op.dim2 != 1 || s.mode_count() != 2 || s.dim(mode) != op.dim1)
    throw DimensionError("apply_mode: dims mismatch");
  int d1 = s.dim(1), d2 = s.dim(2);
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      s.amplitudes().data(), d1, d2);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> r;
  if (mode == 1)
    r = op.entries * m;
  else
    r = m * op.entries.transpose();
  Vec out = Eigen::Map<const Vec>(r.data(), r.size());
  return FockState::two_mode(std::move(out), d1, d2, s.normalized() && op.is_unitary,
                             s.tail_tolerance());
}

inline cplx overlap(const FockState& a, const FockState& b) {
  if (a.mode_count() != b.mode_count() || a.dim(1) != b.dim(1) || a.dim(2) != b.dim(2))
    throw DimensionError("overlap: dims mismatch");
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left argument
}

/// |<a|b>| — all state comparisons in this project ignore global phase.
inline double fidelity(const FockState& a, const FockState& b) {
  return std::abs(overlap(a, b));
}

// ---------------------------------------------------------------------------
// Parity projection and conditioning
// ---------------------------------------------------------------------------

enum class Parity { Even, Odd };

/// Projects `mode` of a two-mode state onto even (odd) photon numbers.
/// Returns the unnormalized projected state and its squared norm.
inline std::pair<FockState, double> project_parity(const FockState& s, int mode, Parity parity) {
  if (s.mode_count() != 2) throw DimensionError("project_parity: need a two-mode state");
  int d1 = s.dim(1), d2 = s.dim(2);
  Vec out = s.amplitudes();
  int keep = parity == Parity::Even ? 0 : 1;
  for (int n1 = 0; n1 < d1; ++n1)
    for (int n2 = 0; n2 < d2; ++n2) {
      int n = (mode == 1) ? n1 : n2;
      if (n % 2 != keep) out(static_cast<Eigen::Index>(n1) * d2 + n2) = 0.0;
    }
  double prob = out.squaredNorm();
  return {FockState::two_mode(std::move(out), d1, d2, false, s.tail_tolerance()), prob};
}

enum class PostSelect { EvenSubspace, CatVector };

struct Conditioned {
  FockState state;       // normalized one-mode state of the untouched mode
  double probability;    // of the conditioning outcome
  double purity;         // of the reduced state (1 for rank-1 conditioning)
};

namespace detail {

// gauge fix: largest-magnitude amplitude made real positive
inline void fix_phase(Vec& v) {
  Eigen::Index imax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      imax = i;
    }
  if (best > 0) v *= std::conj(v(imax)) / best;
}

}  // namespace detail

/// Condition one mode of a two-mode state. EvenSubspace keeps the even
/// photon-number subspace of `mode` and returns the dominant eigenvector of
/// the other mode's reduced state together with its purity. CatVector
/// projects `mode` onto the normalized even cat with amplitude `cat_alpha`.
inline Conditioned conditional_state(const FockState& s, int mode, PostSelect sel,
                                     double cat_alpha = 0.0) {
  if (s.mode_count() != 2) throw DimensionError("conditional_state: need a two-mode state");
  int d1 = s.dim(1), d2 = s.dim(2);
  int dm = s.dim(mode), dk = (mode == 1) ? d2 : d1;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      s.amplitudes().data(), d1, d2);

  if (sel == PostSelect::CatVector) {
    // even part of |cat_alpha|, i.e. the normalized cat state
    Vec cat = Vec::Zero(dm);
    cat(0) = 1.0;
    if (cat_alpha != 0.0) {
      double log_half_fact = 0.0;  // (1/2) log n!
      for (int n = 2; n < dm; n += 2) {
        log_half_fact +=
            0.5 * (std::log(static_cast<double>(n)) + std::log(static_cast<double>(n - 1)));
        cat(n) = std::exp(n * std::log(std::abs(cat_alpha)) - log_half_fact);
      }
    }
    cat.normalize();
    Vec amp;
    if (mode == 2)
      amp = m * cat.conjugate();
    else
      amp = m.transpose() * cat.conjugate();
    double prob = amp.squaredNorm();
    if (prob < 1e-14) throw DegenerateConditionError("conditional_state: vanishing probability");
    amp /= std::sqrt(prob);
    detail::fix_phase(amp);
    return {FockState::one_mode(std::move(amp), true, s.tail_tolerance()), prob, 1.0};
  }

  auto [proj, prob] = project_parity(s, mode, Parity::Even);
  if (prob < 1e-14) throw DegenerateConditionError("conditional_state: vanishing probability");
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> pm(
      proj.amplitudes().data(), d1, d2);
  Mat rho;
  if (mode == 2)
    rho = pm * pm.adjoint() / prob;
  else
    rho = pm.transpose() * pm.conjugate() / prob;
  Eigen::SelfAdjointEigenSolver<Mat> eig(rho);
  double purity = eig.eigenvalues().array().square().sum();
  Vec top = eig.eigenvectors().col(dk - 1);
  detail::fix_phase(top);
  top.normalize();
  return {FockState::one_mode(std::move(top), true, s.tail_tolerance()), prob, purity};
}

/// <Parity> = sum_n (-1)^n |c_n|^2 of a one-mode state.
inline double parity_expectation(const FockState& s) {
  if (s.mode_count() != 1) throw DimensionError("parity_expectation: one-mode only");
  double e = 0.0;
  for (int n = 0; n < s.dim(1); ++n) e += ((n % 2 == 0) ? 1.0 : -1.0) * std::norm(s.amp(n));
  return e;
}

// ---------------------------------------------------------------------------
// Position / momentum wavefunctions (Hermite-function transform)
// ---------------------------------------------------------------------------

/// Values of the normalized Hermite functions h_0..h_{nmax-1} at x.
inline std::vector<double> hermite_functions(int nmax, double x) {
  std::vector<double> h(nmax);
  h[0] = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
  if (nmax > 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int n = 1; n + 1 < nmax; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1.0)) * x * h[n] - std::sqrt(n / (n + 1.0)) * h[n - 1];
  return h;
}

inline cplx position_wavefunction(const FockState& s, double x) {
  auto h = hermite_functions(s.dim(1), x);
  cplx acc(0.0, 0.0);
  for (int n = 0; n < s.dim(1); ++n) acc += s.amp(n) * h[n];
  return acc;
}

inline cplx momentum_wavefunction(const FockState& s, double p) {
  auto h = hermite_functions(s.dim(1), p);
  cplx acc(0.0, 0.0);
  cplx phase(1.0, 0.0);
  const cplx mi(0.0, -1.0);
  for (int n = 0; n < s.dim(1); ++n) {
    acc += s.amp(n) * phase * h[n];
    phase *= mi;
  }
  return acc;
}

/// |psi(x)|^2 on a grid.
inline std::vector<double> position_density(const FockState& s, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) out[i] = std::norm(position_wavefunction(s, xs[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Wigner function
// ---------------------------------------------------------------------------
//
// Displaced-parity form: W(x, p) = (1/pi) sum_n (-1)^n |<n| D(-beta) |psi>|^2
// with beta = (x + i p)/sqrt(2). Validated in the test suite against a direct
// quadrature of the defining integral over the position wavefunction.

namespace detail {

inline double parity_sum(const Vec& v) {
  double acc = 0.0;
  for (Eigen::Index n = 0; n < v.size(); ++n)
    acc += ((n % 2 == 0) ? 1.0 : -1.0) * std::norm(v(n));
  return acc;
}

// The scan displacement D(-beta) pushes the state toward the truncation edge;
// zero-padding (exact for a faithfully truncated state) gives it room.
inline Vec padded_amplitudes(const FockState& s, double max_abs_beta) {
  int target = s.dim(1) + coherent_dim_rule(max_abs_beta);
  Vec v = Vec::Zero(target);
  v.head(s.dim(1)) = s.amplitudes();
  return v;
}

}  // namespace detail

inline double wigner_numeric(const FockState& s, double x, double p) {
  if (s.mode_count() != 1) throw DimensionError("wigner_numeric: one-mode only");
  if (!s.normalized()) throw std::invalid_argument("wigner_numeric: state must be normalized");
  cplx beta(x / std::sqrt(2.0), p / std::sqrt(2.0));
  Vec padded = detail::padded_amplitudes(s, std::abs(beta));
  Vec shifted = detail::displacement_matrix(-beta, static_cast<int>(padded.size())) * padded;
  return detail::parity_sum(shifted) / M_PI;
}

/// W on a uniform grid. Successive grid points differ by one fixed real
/// (imaginary) displacement, so each value costs one matrix-vector product.
inline Eigen::MatrixXd wigner_numeric_grid(const FockState& s, const std::vector<double>& xs,
                                           const std::vector<double>& ps) {
  if (s.mode_count() != 1) throw DimensionError("wigner_numeric_grid: one-mode only");
  const double rt2 = std::sqrt(2.0);
  double reach = 0.0;
  for (double x : xs)
    for (double pv : {ps.front(), ps.back()})
      reach = std::max(reach, std::sqrt(x * x + pv * pv) / rt2);
  for (double pv : ps)
    for (double xv : {xs.front(), xs.back()})
      reach = std::max(reach, std::sqrt(xv * xv + pv * pv) / rt2);
  Vec padded = detail::padded_amplitudes(s, reach);
  const int d = static_cast<int>(padded.size());
  auto uniform = [](const std::vector<double>& g) {
    if (g.size() < 2) return true;
    double step = g[1] - g[0];
    for (size_t i = 1; i + 1 < g.size(); ++i)
      if (std::abs((g[i + 1] - g[i]) - step) > 1e-9 * std::max(1.0, std::abs(step))) return false;
    return true;
  };
  Eigen::MatrixXd w(xs.size(), ps.size());
  if (!uniform(xs) || !uniform(ps)) {
    for (size_t i = 0; i < xs.size(); ++i)
      for (size_t j = 0; j < ps.size(); ++j) w(i, j) = wigner_numeric(s, xs[i], ps[j]);
    return w;
  }
  double dx = xs.size() > 1 ? xs[1] - xs[0] : 0.0;
  double dp = ps.size() > 1 ? ps[1] - ps[0] : 0.0;
  Mat dx0 = detail::displacement_matrix(-xs[0] / rt2, d);
  Mat dxs = detail::displacement_matrix(-dx / rt2, d);
  Mat dp0 = detail::displacement_matrix(cplx(0.0, -ps[0] / rt2), d);
  Mat dps = detail::displacement_matrix(cplx(0.0, -dp / rt2), d);
  Vec col = dx0 * padded;
  for (size_t i = 0; i < xs.size(); ++i) {
    Vec cur = dp0 * col;
    for (size_t j = 0; j < ps.size(); ++j) {
      w(i, j) = detail::parity_sum(cur) / M_PI;
      if (j + 1 < ps.size()) cur = dps * cur;
    }
    if (i + 1 < xs.size()) col = dxs * col;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Hermitian quadratic generators of the ordering algebra
// ---------------------------------------------------------------------------

/// A_1 = i (a1^2 - a1^dag^2)   (single-mode squeeze generator, mode 1)
inline TwoModeQuadratic gen_squeeze_mode1() { return {cplx(0, 1), 0, 0, 0}; }
/// A_2 = i (a2^2 - a2^dag^2)
inline TwoModeQuadratic gen_squeeze_mode2() { return {0, cplx(0, 1), 0, 0}; }
/// B = i (a1^dag a2 - a1 a2^dag)   (beamsplitter generator)
inline TwoModeQuadratic gen_beamsplitter() { return {0, 0, 0, cplx(0, 1)}; }
/// C = i (a1 a2 - a1^dag a2^dag)   (two-mode squeeze generator)
inline TwoModeQuadratic gen_two_mode_squeeze() { return {0, 0, cplx(0, 1), 0}; }
/// A = (A_1 - A_2)/2
inline TwoModeQuadratic gen_squeeze_diff() { return {cplx(0, 0.5), cplx(0, -0.5), 0, 0}; }

}  // namespace fock
}  // namespace gkpwalk
