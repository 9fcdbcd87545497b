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

#include "univpep/json_io.hpp"

using namespace univpep;

TEST_CASE("class specs round-trip through JSON") {
  for (const auto& spec : {ClassSpec::hessian_lipschitz(2.0),
                           ClassSpec::strongly_convex_hessian_lipschitz(1.0, 0.25),
                           ClassSpec::self_concordant(1.0), ClassSpec::quasi_self_concordant(3.0),
                           ClassSpec::generalized_sc(1.0, 0.5), ClassSpec::smooth(1.0)}) {
    const auto back = class_from_json(class_to_json(spec));
    CHECK(back.kind == spec.kind);
    CHECK(back.M == spec.M);
    CHECK(back.alpha == spec.alpha);
    CHECK(back.mu == spec.mu);
    CHECK(back.order == spec.order);
  }
  const auto qsc = class_from_json(R"({"kind": "qsc", "M": 1.0, "order": 2})");
  CHECK(qsc.kind == ClassKind::QuasiSelfConcordant);
  CHECK_THROWS(class_from_json(R"({"kind": "bogus"})"));
}

TEST_CASE("datasets round-trip with optional fields") {
  Dataset d;
  d.points.push_back(SecondOrderPoint::xgh(0.0, 1.0, 2.0));
  d.points.push_back(SecondOrderPoint::xfgh(0.5, -1.0, 0.25, 3.0));
  const auto cls = ClassSpec::quasi_self_concordant(1.0);
  ClassSpec parsed_cls;
  const auto back = dataset_from_json(dataset_to_json(d, &cls), &parsed_cls);
  REQUIRE(back.points.size() == 2);
  CHECK_FALSE(back.points[0].f.has_value());
  CHECK(back.points[1].f == -1.0);
  CHECK(*back.points[0].g == 1.0);
  CHECK(parsed_cls.kind == ClassKind::QuasiSelfConcordant);
}

TEST_CASE("piecewise functions round-trip") {
  const auto f = named_worst_case("sc_nm_tight", {{"R", 0.5}});
  const auto back = piecewise_from_json(piecewise_to_json(f));
  for (double x : {-0.3, 0.0, 0.4, 0.9}) {
    CHECK(back.value(x) == doctest::Approx(f.value(x)).epsilon(1e-14));
    CHECK(back.second(x) == doctest::Approx(f.second(x)).epsilon(1e-14));
  }
}

TEST_CASE("problems round-trip") {
  PepProblem p;
  p.cls = ClassSpec::self_concordant(1.0);
  p.method = MethodSpec::damped_newton(0.8);
  p.iterations = 2;
  p.measure = Measure::NewtonDecrementLast;
  p.initial = InitialKind::NewtonDecrement;
  p.R = 0.4;
  const auto q = problem_from_json(problem_to_json(p));
  CHECK(q.method.kind == MethodSpec::Kind::FixedDampedNewton);
  CHECK(q.method.step == 0.8);
  CHECK(q.iterations == 2);
  CHECK(q.R == 0.4);
  CHECK(q.measure == Measure::NewtonDecrementLast);
}

TEST_CASE("csv formatting uses 12 significant digits") {
  CHECK(csv_number(0.3021937874569552) == "0.302193787457");
  CHECK(csv_number(1.0) == "1");
  CHECK(csv_number(-2.5e-11) == "-2.5e-11");
}

TEST_CASE("trajectory csv carries the fixed header") {
  const auto f = named_worst_case("cnm_tight", {{"M", 1.0}});
  const auto csv = trajectory_to_csv(run(MethodSpec::cubic_newton(1.0), f, 0.0, 1));
  CHECK(csv.rfind("k,x,f,g,h,abs_g,lambda,eta,dist\n", 0) == 0);
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("verdict json lists violations") {
  FeasibilityVerdict v;
  v.feasible = false;
  v.max_residual = 0.5;
  v.violations.push_back({0, 1, "value_lower", 0.5});
  const auto text = verdict_to_json(v);
  CHECK(text.find("\"feasible\":false") != std::string::npos);
  CHECK(text.find("value_lower") != std::string::npos);
}
