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

#include <catch2/catch_amalgamated.hpp>

#include "gkpwalk/analytic.hpp"

using namespace gkpwalk;
using analytic::SqueezedCoherentTerm;
using analytic::Superposition;

namespace {

// Fock-space oracle for <alpha1, zeta | alpha2, zeta>: build both states with
// the fock-core operators at a truncation satisfying the tail rule and take
// the raw inner product.
cplx fock_pair_overlap(double a1, double a2, double zeta) {
  int dim = recommended_dim(std::max(std::abs(a1), std::abs(a2)), zeta) + 20;
  Vec sq = fock::squeeze_operator(zeta, dim).entries.col(0);
  Vec v1 = a1 == 0.0 ? sq : Vec(fock::displacement_operator(a1, dim).entries * sq);
  Vec v2 = a2 == 0.0 ? sq : Vec(fock::displacement_operator(a2, dim).entries * sq);
  return v1.dot(v2);
}

double simpson(const std::vector<double>& f, double h) {
  double acc = f.front() + f.back();
  for (size_t i = 1; i + 1 < f.size(); ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("pair overlap closed form against the Fock oracle") {
  SECTION("identical terms give one") {
    SqueezedCoherentTerm t{1.0, 0.7, 0.4};
    REQUIRE(std::abs(analytic::pair_overlap(t, t) - 1.0) < 1e-14);
  }
  SECTION("coherent case matches <0|alpha>") {
    cplx got = analytic::pair_overlap({1.0, 0.0, 0.0}, {1.0, 1.0, 0.0});
    REQUIRE(std::abs(got - std::exp(-0.5)) < 1e-14);
  }
  SECTION("sweep: closed form == Fock inner product to 1e-10") {
    for (double zeta : {0.0, 0.25, 0.5, 0.9})
      for (double a1 : {-1.0, 0.0, 0.6})
        for (double a2 : {-0.4, 0.3, 1.0}) {
          cplx closed = analytic::pair_overlap({1.0, a1, zeta}, {1.0, a2, zeta});
          cplx oracle = fock_pair_overlap(a1, a2, zeta);
          REQUIRE(std::abs(closed - oracle) < 1e-10);
        }
  }
  SECTION("mismatched zeta throws") {
    REQUIRE_THROWS_AS(analytic::pair_overlap({1.0, 0.0, 0.1}, {1.0, 0.0, 0.2}),
                      std::invalid_argument);
  }
}

TEST_CASE("cat state") {
  SECTION("alpha = 0 collapses to the vacuum") {
    Superposition c = analytic::cat_state(0.0);
    fock::FockState f = analytic::to_fock(c, 16);
    REQUIRE(std::abs(std::abs(f.amp(0)) - 1.0) < 1e-12);
  }
  SECTION("normalization factor N_alpha") {
    REQUIRE(analytic::cat_normalization(1.0) == Catch::Approx(2.0 * (1 + std::exp(-2.0))));
    REQUIRE(analytic::cat_normalization(1.0) == Catch::Approx(2.2706705664732254).epsilon(1e-12));
    // the unnormalized two-term Gram norm equals N_alpha
    Superposition raw({{1.0, +1.0, 0.0}, {1.0, -1.0, 0.0}}, false);
    REQUIRE(analytic::norm_squared(raw) == Catch::Approx(analytic::cat_normalization(1.0)));
  }
  SECTION("even photon support only") {
    fock::FockState f = analytic::to_fock(analytic::cat_state(2.0), 48);
    REQUIRE(std::abs(f.amp(1)) < 1e-14);
    REQUIRE(std::abs(f.amp(7)) < 1e-14);
  }
}

TEST_CASE("codeword structure") {
  SECTION("N = 1: two equal terms at +-alpha_phi") {
    Superposition c = analytic::codeword(1, 0.9, 0.3);
    REQUIRE(c.size() == 2);
    REQUIRE(c.terms()[0].alpha == Catch::Approx(-0.9));
    REQUIRE(c.terms()[1].alpha == Catch::Approx(+0.9));
    REQUIRE(std::abs(c.terms()[0].coeff - c.terms()[1].coeff) < 1e-15);
  }
  SECTION("N = 2: coefficients 1, 2, 1 and displacements -2, 0, +2 alpha_phi") {
    Superposition c = analytic::codeword(2, 0.9, 0.3);
    REQUIRE(c.size() == 3);
    REQUIRE(std::abs(c.terms()[1].coeff / c.terms()[0].coeff - 2.0) < 1e-14);
    REQUIRE(c.terms()[0].alpha == Catch::Approx(-1.8));
    REQUIRE(c.terms()[1].alpha == Catch::Approx(0.0));
    REQUIRE(c.terms()[2].alpha == Catch::Approx(+1.8));
  }
  SECTION("N = 4: binomial row 1 4 6 4 1") {
    Superposition c = analytic::codeword(4, 0.5, 0.2);
    std::vector<double> want{1, 4, 6, 4, 1};
    for (int m = 0; m <= 4; ++m)
      REQUIRE(std::abs(c.terms()[m].coeff / c.terms()[0].coeff - want[m]) < 1e-12);
  }
  SECTION("normalized on return") {
    REQUIRE(analytic::norm(analytic::codeword(3, 1.2, 0.6)) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("superposition norm against the Fock oracle") {
  SECTION("single unit term") {
    REQUIRE(analytic::norm(Superposition({{1.0, 0.4, 0.7}}, false)) == Catch::Approx(1.0));
  }
  SECTION("wide cat approaches norm^2 = 2 before normalization") {
    Superposition raw({{1.0, +3.0, 0.0}, {1.0, -3.0, 0.0}}, false);
    REQUIRE(analytic::norm_squared(raw) == Catch::Approx(2.0).margin(1e-7));
  }
  SECTION("codeword norm matches the Fock construction") {
    double aphi = std::sqrt(M_PI / 2.0), zeta = 0.5 * std::log(2.0 * M_PI);
    std::vector<SqueezedCoherentTerm> ts;
    double binom[3] = {1.0, 2.0, 1.0};
    for (int m = 0; m <= 2; ++m) ts.push_back({binom[m], (2.0 * m - 2) * aphi, zeta});
    Superposition raw(ts, false);
    int dim = recommended_dim(2 * aphi, zeta) + 40;
    Vec sq = fock::squeeze_operator(zeta, dim).entries.col(0);
    Vec acc = Vec::Zero(dim);
    for (const auto& t : ts)
      acc += t.coeff * (t.alpha == 0.0
                            ? sq
                            : Vec(fock::displacement_operator(t.alpha, dim).entries * sq));
    REQUIRE(std::abs(analytic::norm(raw) - acc.norm()) < 1e-8);
  }
}

TEST_CASE("to_fock") {
  SECTION("vacuum term") {
    fock::FockState f = analytic::to_fock(Superposition({{1.0, 0.0, 0.0}}, true), 12);
    REQUIRE(std::abs(std::abs(f.amp(0)) - 1.0) < 1e-14);
  }
  SECTION("coherent amplitudes") {
    fock::FockState f = analytic::to_fock(Superposition({{1.0, 1.0, 0.0}}, true), 32);
    double ref = std::exp(-0.5);
    for (int n = 0; n < 6; ++n) {
      REQUIRE(std::abs(std::abs(f.amp(n)) - ref) < 1e-12);
      ref /= std::sqrt(n + 1.0);
    }
  }
  SECTION("zeta = 0 closed form equals the operator route") {
    Superposition s({{cplx(0.8, 0.1), 1.1, 0.0}, {cplx(-0.3, 0.4), -0.7, 0.0}}, false);
    Superposition sn = analytic::normalized(s);
    fock::FockState closed = analytic::to_fock(sn, 40);
    int dim = 40;
    Vec acc = Vec::Zero(dim);
    for (const auto& t : sn.terms())
      acc += t.coeff * fock::displacement_operator(t.alpha, dim).entries.col(0);
    acc.normalize();
    REQUIRE(std::abs(std::abs(acc.dot(closed.amplitudes())) - 1.0) < 1e-12);
  }
  SECTION("odd amplitudes of the one-run codeword vanish") {
    fock::FockState f = analytic::to_fock(
        analytic::codeword(1, std::sqrt(M_PI / 2.0), 0.5 * std::log(M_PI)), 96);
    for (int n = 1; n < 96; n += 2) REQUIRE(std::abs(f.amp(n)) < 1e-10);
  }
  SECTION("infidelity vs a higher-dim construction") {
    Superposition c = analytic::codeword(2, 1.0, 0.5);
    int d = recommended_dim(2.0, 0.5);
    fock::FockState lo = analytic::to_fock(c, d);
    fock::FockState hi = analytic::to_fock(c, 2 * d);
    cplx ov = 0.0;
    for (int n = 0; n < d; ++n) ov += std::conj(lo.amp(n)) * hi.amp(n);
    REQUIRE(1.0 - std::abs(ov) < 1e-8);
  }
  SECTION("truncation violation throws") {
    REQUIRE_THROWS_AS(analytic::to_fock(analytic::cat_state(4.0), 16), TruncationError);
  }
}

TEST_CASE("analytic wigner function") {
  const double gkp = std::sqrt(M_PI / 2.0);

  SECTION("x-marginal peaks at +-sqrt(pi) for the one-run GKP codeword") {
    double zeta = 0.5 * std::log(M_PI);
    std::vector<double> xs(4001);
    for (int i = 0; i < 4001; ++i) xs[i] = -4.0 + 8.0 * i / 4000.0;
    auto dens = analytic::marginal_analytic(1, gkp, zeta, analytic::Axis::X, xs);
    double best = xs[std::max_element(dens.begin(), dens.end()) - dens.begin()];
    REQUIRE(std::abs(std::abs(best) - std::sqrt(M_PI)) / std::sqrt(M_PI) < 0.01);
  }

  SECTION("x-reflection symmetry of the binomial codeword") {
    for (int n : {1, 2, 3})
      for (auto [x, p] : {std::pair{0.7, 0.2}, {1.3, -0.8}})
        REQUIRE(std::abs(analytic::wigner_analytic(n, gkp, 0.6, x, p) -
                         analytic::wigner_analytic(n, gkp, 0.6, -x, p)) < 1e-14);
  }

  SECTION("closed form equals the truncated-Fock displaced parity (N = 3 subgrid)") {
    int n = 3;
    double zeta = 0.5 * std::log(n * M_PI);
    int dim = recommended_dim(n * gkp, zeta);
    fock::FockState st = analytic::to_fock(analytic::codeword(n, gkp, zeta), dim);
    double lim = 3.0 * std::sqrt(M_PI);
    std::vector<double> xs, ps;
    for (int i = 0; i < 11; ++i) xs.push_back(-lim + 2.0 * lim * i / 10.0);
    ps = xs;
    Eigen::MatrixXd w = fock::wigner_numeric_grid(st, xs, ps);
    double worst = 0.0;
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j)
        worst = std::max(worst, std::abs(w(i, j) - analytic::wigner_analytic(n, gkp, zeta, xs[i],
                                                                             ps[j])));
    REQUIRE(worst < 1e-6);
  }

  SECTION("closed form equals a quadrature of the defining integral") {
    // guards the printed prefactor/Gaussian cancellation independently of the
    // displaced-parity implementation
    int n = 2;
    double zeta = 0.5 * std::log(2.0 * M_PI);
    int dim = recommended_dim(2 * gkp, zeta);
    fock::FockState st = analytic::to_fock(analytic::codeword(n, gkp, zeta), dim);
    auto defining_integral = [&](double x, double p) {
      int m = 4000;
      double q0 = -14.0, q1 = 14.0, h = (q1 - q0) / m;
      cplx acc(0, 0);
      for (int k = 0; k <= m; ++k) {
        double q = q0 + k * h;
        double wgt = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        acc += wgt * std::exp(cplx(0, p * q)) * fock::position_wavefunction(st, x - q / 2.0) *
               std::conj(fock::position_wavefunction(st, x + q / 2.0));
      }
      return (acc * h / 3.0 / (2.0 * M_PI)).real();
    };
    for (auto [x, p] : {std::pair{0.0, 0.0}, {std::sqrt(M_PI), 0.4}, {1.0, -1.2}})
      REQUIRE(std::abs(analytic::wigner_analytic(n, gkp, zeta, x, p) - defining_integral(x, p)) <
              1e-8);
  }
}

TEST_CASE("analytic marginals") {
  const double gkp = std::sqrt(M_PI / 2.0);

  SECTION("both marginals integrate to one") {
    int n = 2;
    double zeta = 0.5 * std::log(2.0 * M_PI);
    double lx = std::sqrt(2.0) * n * gkp + 6.0;
    double lp = 6.0 * std::exp(zeta);
    std::vector<double> xs(3201), ps(3201);
    for (int i = 0; i < 3201; ++i) {
      xs[i] = -lx + 2 * lx * i / 3200.0;
      ps[i] = -lp + 2 * lp * i / 3200.0;
    }
    auto dx = analytic::marginal_analytic(n, gkp, zeta, analytic::Axis::X, xs);
    auto dp = analytic::marginal_analytic(n, gkp, zeta, analytic::Axis::P, ps);
    REQUIRE(std::abs(simpson(dx, xs[1] - xs[0]) - 1.0) < 1e-4);
    REQUIRE(std::abs(simpson(dp, ps[1] - ps[0]) - 1.0) < 1e-4);
    for (double v : dx) REQUIRE(v >= -1e-15);
    for (double v : dp) REQUIRE(v >= -1e-15);
  }

  SECTION("p-marginal is even") {
    std::vector<double> grid{0.3, -0.3, 1.1, -1.1};
    auto d = analytic::marginal_analytic(3, gkp, 1.0, analytic::Axis::P, grid);
    REQUIRE(d[0] == Catch::Approx(d[1]));
    REQUIRE(d[2] == Catch::Approx(d[3]));
  }

  SECTION("N = 5 p-marginal: dominant peaks sit sqrt(pi) apart") {
    int n = 5;
    double zeta = 0.5 * std::log(5.0 * M_PI);
    std::vector<double> ps(8001);
    for (int i = 0; i < 8001; ++i) ps[i] = -4.0 + 8.0 * i / 8000.0;
    auto dens = analytic::marginal_analytic(n, gkp, zeta, analytic::Axis::P, ps);
    double top = *std::max_element(dens.begin(), dens.end());
    std::vector<double> peaks;
    for (size_t i = 1; i + 1 < dens.size(); ++i)
      if (dens[i] > dens[i - 1] && dens[i] > dens[i + 1] && dens[i] > 0.5 * top)
        peaks.push_back(ps[i]);
    REQUIRE(peaks.size() >= 3);
    for (size_t i = 1; i < peaks.size(); ++i)
      REQUIRE(std::abs((peaks[i] - peaks[i - 1]) - std::sqrt(M_PI)) < 0.02);
    // oracle: numeric integration of the truncated-Fock Wigner function over x
    int dim = recommended_dim(n * gkp, zeta);
    fock::FockState st = analytic::to_fock(analytic::codeword(n, gkp, zeta), dim);
    double lx = std::sqrt(2.0) * n * gkp + 6.0;
    std::vector<double> xs(1601);
    for (int i = 0; i < 1601; ++i) xs[i] = -lx + 2 * lx * i / 1600.0;
    for (double pk : {peaks[0], peaks[1]}) {
      std::vector<double> pgrid{pk};
      Eigen::MatrixXd w = fock::wigner_numeric_grid(st, xs, pgrid);
      double integral = 0.0;
      for (int i = 0; i + 1 < 1601; ++i) integral += 0.5 * (w(i, 0) + w(i + 1, 0)) * (xs[1] - xs[0]);
      auto closed = analytic::marginal_analytic(n, gkp, zeta, analytic::Axis::P, pgrid);
      REQUIRE(std::abs(integral - closed[0]) < 1e-6);
    }
  }
}

TEST_CASE("codeword parity and width") {
  const double gkp = std::sqrt(M_PI / 2.0);

  SECTION("parity expectation is +1 for even and odd N") {
    for (int n : {1, 2, 3}) {
      double zeta = 0.5 * std::log(n * M_PI);
      fock::FockState st =
          analytic::to_fock(analytic::codeword(n, gkp, zeta), recommended_dim(n * gkp, zeta));
      REQUIRE(std::abs(fock::parity_expectation(st) - 1.0) < 1e-8);
    }
  }

  SECTION("spike width follows e^{-zeta}") {
    double zeta = 0.5 * std::log(M_PI);
    // windowed second moment around the +sqrt(pi) spike
    double center = std::sqrt(M_PI);
    double win = 3.0 * std::exp(-zeta) / std::sqrt(2.0);
    std::vector<double> xs(2001);
    for (int i = 0; i < 2001; ++i) xs[i] = center - win + 2 * win * i / 2000.0;
    auto dens = analytic::marginal_analytic(1, gkp, zeta, analytic::Axis::X, xs);
    double m0 = 0, m1 = 0, m2 = 0, h = xs[1] - xs[0];
    for (size_t i = 0; i < xs.size(); ++i) {
      m0 += dens[i] * h;
      m1 += xs[i] * dens[i] * h;
    }
    double mean = m1 / m0;
    for (size_t i = 0; i < xs.size(); ++i) m2 += (xs[i] - mean) * (xs[i] - mean) * dens[i] * h;
    double sd = std::sqrt(m2 / m0);
    double want = std::exp(-zeta) / std::sqrt(2.0);  // e^{-zeta} times the vacuum width
    REQUIRE(std::abs(sd / want - 1.0) < 0.02);
  }
}

TEST_CASE("superposition invariants") {
  REQUIRE_THROWS_AS(Superposition({}, false), std::invalid_argument);
  REQUIRE_THROWS_AS(Superposition({{1.0, 0.0, 0.1}, {1.0, 1.0, 0.3}}, false),
                    std::invalid_argument);
}
