// Copyright 2026 The univpep authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNIVPEP_PEP_HPP
#define UNIVPEP_PEP_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "univpep/extremal.hpp"
#include "univpep/interpolation.hpp"
#include "univpep/methods.hpp"

namespace univpep {

enum class Measure {
  AbsGradLast,
  AbsGradBest, // best of iterations 1..N
  FuncGapLast, // f(x_N) - f(x_star), requires the stationary point
  DistLast,    // |x_N - x_star|, requires the stationary point
  NewtonDecrementLast,
  EtaLast,
};

enum class InitialKind {
  FuncGap, // f_0 - f_N <= R (f_0 - f_star <= R with a stationary point)
  AbsGrad, // |f'(x_0)| <= R
  Dist,    // |x_0 - x_star| <= R
  NewtonDecrement,
  Eta,
};

struct PepProblem {
  ClassSpec cls;
  MethodSpec method;
  int iterations = 1;
  Measure measure = Measure::AbsGradLast;
  InitialKind initial = InitialKind::AbsGrad;
  double R = 1.0;
  bool stationarity = false; // include x_star with g = 0, h >= max(0, mu)
  /// Pins the curvature at the stationary point (local settings where the
  /// analysis fixes f''(x_star)).
  std::optional<double> star_curvature;

  void validate() const;
};

struct SolverConfig {
  int restarts = 256;
  std::uint64_t seed = 1;
  int grid_resolution = 32; // per-variable resolution of the coarse grid stage
  double feastol = 1e-8;
  int polish_budget = 6000; // function evaluations per restart and penalty round
  int threads = 0;          // 0: UNIVPEP_THREADS env var, else hardware (capped)
};

struct PepSolution {
  double value = -kInf;
  Dataset witness;                 // iterate data, plus the stationary point last
  double feasibility_residual = 0; // max exact-checker residual of the witness
  std::optional<PiecewiseFunction> certificate;
  double replay_residual = 0; // method replay deviation on the certificate
  int restarts_used = 0;
  std::uint64_t seed = 0;
  std::optional<double> known; // analytic tight value for this exact setting
  bool known_gap = false;      // solver value noticeably away from `known`
};

/// Thrown when no candidate passes certification: either the search found no
/// feasible point or every feasible candidate failed reconstruction/replay.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite constraint system over the free scalars of the normalized problem:
/// iterate positions are eliminated through the method's step map.
struct ConstraintSystem {
  std::vector<std::string> names;
  std::vector<double> lower, upper;
  /// signed residuals, <= 0 feasible
  std::function<void(const std::vector<double>&, std::vector<double>&)> residuals;
  std::function<double(const std::vector<double>&)> objective; // to maximize
  std::function<Dataset(const std::vector<double>&)> decode;
  std::function<std::optional<std::vector<double>>(const Dataset&)> encode;
  std::size_t residual_count = 0;
};

ConstraintSystem formulate(const PepProblem& problem);

/// Deterministic coarse grid + seeded multi-start penalty search; the result
/// is always a certified lower bound on the worst case.
PepSolution solve(const PepProblem& problem, const SolverConfig& config = {});

/// Same search with the exact interpolation conditions replaced by the named
/// classical necessary conditions. The result is not certifiable (its witness
/// is generally inconsistent with any actual class member), so no certificate
/// is produced; used to quantify the exact-vs-classical gap.
PepSolution solve_relaxed(const PepProblem& problem, ClassicalCondition which,
                          const SolverConfig& config = {});

struct VerifyReport {
  bool certified = false;
  double feasibility_residual = kInf;
  double replay_residual = kInf;
  std::optional<PiecewiseFunction> certificate;
  /// residual of the witness under the class's previously known necessary
  /// conditions, for gap illustration (present for QSC and HL classes)
  std::optional<double> classical_residual;
};

/// Exact-checker pass, worst-case reconstruction and method replay for a
/// solution's witness. Throws CertificationError when the witness is
/// infeasible.
VerifyReport verify(const PepSolution& solution, const PepProblem& problem,
                    double feastol = 1e-8);

/// Analytic worst-case value when one is proven tight for this exact setting.
std::optional<double> known_value(const PepProblem& problem);

} // namespace univpep

#endif
