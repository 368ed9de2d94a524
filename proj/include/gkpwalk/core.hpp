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

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace gkpwalk {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kDefaultTailTolerance = 1e-10;
inline constexpr char kLibraryVersion[] = "1.0.0";

/// A state (or operator) extends past its truncated basis.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands with incompatible mode counts or truncation sizes.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Conditioning on an outcome whose probability is numerically zero.
class DegenerateConditionError : public std::runtime_error {
 public:
  explicit DegenerateConditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative scheme (series, integrator, dim doubling) failed to settle.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter hits a pole of a closed-form expression (tan phi and friends).
class SingularParameterError : public std::domain_error {
 public:
  explicit SingularParameterError(const std::string& msg) : std::domain_error(msg) {}
};

/// First photon number of the discarded boundary band. Truncation corrupts
/// the top rows of ladder-operator matrices, so residual-style invariants are
/// evaluated only below this cut.
inline int interior_cut(int dim) { return static_cast<int>(std::floor(0.9 * dim)); }

/// Truncation size that keeps the tail of a coherent state |alpha| below
/// ~1e-10 total probability.
inline int coherent_dim_rule(double abs_alpha) {
  double a = std::abs(abs_alpha);
  return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
}

/// Same for a squeezed vacuum with parameter zeta.
inline int squeezed_dim_rule(double zeta) {
  return static_cast<int>(std::ceil(20.0 * std::exp(2.0 * std::abs(zeta))));
}

/// Conservative size for a displaced squeezed state: both rules stacked,
/// plus headroom so the content clears the top-10% band that tail checks
/// inspect.
inline int recommended_dim(double abs_alpha, double zeta) {
  int d = coherent_dim_rule(abs_alpha);
  if (zeta != 0.0) d += squeezed_dim_rule(zeta);
  // another ~sigma of photon-number slack; the 6|alpha| of the base rule
  // thins out (in sigma units) as alpha grows
  d += static_cast<int>(std::ceil(std::abs(abs_alpha)));
  return static_cast<int>(std::ceil(d / 0.9));
}

/// Chunked parallel map over [0, n). Results must be written to disjoint
/// slots so the output is independent of the schedule.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  int workers = std::min(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &body]() {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gkpwalk
