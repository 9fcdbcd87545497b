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

#include <doctest.h>

#include <cmath>

#include "univpep/json_io.hpp"
#include "univpep/pep.hpp"

using namespace univpep;

namespace {

PepProblem sc_newton(double R, int N = 1) {
  PepProblem p;
  p.cls = ClassSpec::self_concordant(1.0);
  p.method = MethodSpec::newton();
  p.iterations = N;
  p.measure = Measure::NewtonDecrementLast;
  p.initial = InitialKind::NewtonDecrement;
  p.R = R;
  return p;
}

PepProblem qsc_gnm1(double R, int N = 1) {
  PepProblem p;
  p.cls = ClassSpec::quasi_self_concordant(1.0);
  p.method = MethodSpec::grad_reg_newton1(1.0);
  p.iterations = N;
  p.measure = Measure::EtaLast;
  p.initial = InitialKind::Eta;
  p.R = R;
  return p;
}

PepProblem hl_cnm(double R, int N = 1, Measure m = Measure::AbsGradLast) {
  PepProblem p;
  p.cls = ClassSpec::hessian_lipschitz(1.0);
  p.method = MethodSpec::cubic_newton(1.0);
  p.iterations = N;
  p.measure = m;
  p.initial = InitialKind::FuncGap;
  p.R = R;
  return p;
}

SolverConfig quick() {
  SolverConfig cfg;
  cfg.restarts = 48;
  return cfg;
}

} // namespace

TEST_CASE("formulate: normalized variable counts") {
  const auto cs_sc = formulate(sc_newton(0.5));
  CHECK(cs_sc.names.size() == 2); // g1, h1 after the affine normalization
  const auto cs_qsc = formulate(qsc_gnm1(0.5));
  CHECK(cs_qsc.names.size() == 2);
  const auto cs_cnm = formulate(hl_cnm(1.0));
  CHECK(cs_cnm.names.size() == 5); // g0 h0 g1 h1 f1
  std::vector<double> res;
  std::vector<double> th(cs_sc.names.size(), 0.5);
  cs_sc.residuals(th, res);
  CHECK(res.size() == cs_sc.residual_count);
}

TEST_CASE("formulate rejects incompatible settings") {
  PepProblem p = sc_newton(0.5);
  p.measure = Measure::FuncGapLast;
  CHECK_THROWS_AS(formulate(p), std::invalid_argument);
  PepProblem q = hl_cnm(1.0);
  q.measure = Measure::DistLast; // needs stationarity
  CHECK_THROWS_AS(formulate(q), std::invalid_argument);
}

TEST_CASE("solve: one Newton step on self-concordant functions") {
  const auto sol = solve(sc_newton(0.5), quick());
  CHECK(sol.value == doctest::Approx(0.2858983848622456).epsilon(1e-3));
  REQUIRE(sol.known.has_value());
  CHECK(sol.value <= *sol.known + 1e-6);
  CHECK_FALSE(sol.known_gap);
  CHECK(sol.feasibility_residual <= 1e-8);
  CHECK(sol.replay_residual <= 1e-6);
  REQUIRE(sol.certificate.has_value());
  const auto rep =
      membership_residual(*sol.certificate, ClassSpec::self_concordant(1.0), -0.4, 1.3);
  CHECK(rep.max_residual <= 1e-4);
}

TEST_CASE("solve: one gradient-regularized step on quasi-self-concordant functions") {
  const auto sol = solve(qsc_gnm1(0.5), quick());
  CHECK(sol.value == doctest::Approx(0.3021937874569552).epsilon(1e-3));
  CHECK(sol.value <= *sol.known + 1e-6);
}

TEST_CASE("solve: one cubic-regularized step on Hessian-Lipschitz functions") {
  const auto sol = solve(hl_cnm(1.0), quick());
  CHECK(sol.value == doctest::Approx(std::pow(12.0 / 5.0, 2.0 / 3.0)).epsilon(1e-2));
  CHECK(sol.value <= *sol.known + 1e-6);
}

TEST_CASE("verify rejects a hand-built infeasible witness") {
  PepSolution fake;
  fake.value = 10.0;
  fake.witness.points.push_back(SecondOrderPoint::xgh(0.0, -0.25, 0.25));
  fake.witness.points.push_back(SecondOrderPoint::xgh(1.0, 5.0, 0.01));
  CHECK_THROWS_AS(verify(fake, sc_newton(0.5)), CertificationError);
}

TEST_CASE("known values dispatch") {
  CHECK(known_value(sc_newton(0.3)).has_value());
  CHECK_FALSE(known_value(sc_newton(0.3, 2)).has_value());
  {
    PepProblem p = sc_newton(0.4, 3);
    p.method = MethodSpec::damped_newton(1.0 / 1.4);
    const auto v = known_value(p);
    REQUIRE(v.has_value());
    double lam = 0.4;
    const double gamma = 1.0 / 1.4;
    for (int k = 0; k < 3; ++k) lam = lam - gamma * lam + gamma * lam * lam;
    CHECK(*v == doctest::Approx(lam).epsilon(1e-13));
  }
  CHECK(known_value(qsc_gnm1(0.7)).has_value());
  CHECK_FALSE(known_value(qsc_gnm1(0.7, 2)).has_value());
  CHECK(known_value(hl_cnm(1.0)).has_value());
  CHECK_FALSE(known_value(hl_cnm(1.0, 2)).has_value());
}

TEST_CASE("determinism: identical seeds give identical solutions") {
  SolverConfig cfg = quick();
  cfg.seed = 77;
  const auto a = solve(qsc_gnm1(0.25), cfg);
  const auto b = solve(qsc_gnm1(0.25), cfg);
  CHECK(a.value == b.value);
  CHECK(solution_to_json(a) == solution_to_json(b));
}

TEST_CASE("relaxed solves skip certification and overshoot the exact value") {
  PepProblem p = qsc_gnm1(1.0);
  const auto relaxed = solve_relaxed(p, ClassicalCondition::QscExisting, quick());
  const auto exact = solve(p, quick());
  CHECK(relaxed.value > exact.value);
  CHECK_FALSE(relaxed.certificate.has_value());
  // the relaxed witness is not consistent with any class member
  CHECK_FALSE(check_dataset(relaxed.witness, p.cls).feasible);
}
