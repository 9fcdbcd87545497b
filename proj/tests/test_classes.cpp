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

#include "univpep/classes.hpp"
#include "univpep/extremal.hpp"
#include "univpep/piecewise.hpp"

using namespace univpep;

TEST_CASE("beta exponent") {
  CHECK(beta(0.0) == doctest::Approx(1.0));
  CHECK(beta(1.0) == doctest::Approx(1.0));
  CHECK(beta(1.5) == doctest::Approx(-2.0));
  CHECK(beta(0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(beta(-0.1), std::domain_error);
}

TEST_CASE("beta identity on a grid") {
  for (double a = 0.0; a <= 3.0; a += 0.05) {
    if (std::abs(a - 1.0) < 1e-9) continue;
    CHECK(beta(a) * (1.0 - a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("tilde transform values") {
  CHECK(tilde_transform(1.0, 1.0) == doctest::Approx(0.0));
  CHECK(tilde_transform(2.5, 0.0) == doctest::Approx(2.5));
  CHECK(tilde_transform(4.0, 1.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(tilde_transform(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(tilde_transform(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(tilde_transform(-1.0, 0.5), std::domain_error);
  CHECK(tilde_transform(0.0, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("tilde transform monotonicity") {
  const double vs[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (double alpha : {0.0, 0.5, 1.0, 1.5, 3.0}) {
    for (std::size_t i = 0; i + 1 < 5; ++i) {
      const double a = tilde_transform(vs[i], alpha);
      const double b = tilde_transform(vs[i + 1], alpha);
      if (alpha > 1.0)
        CHECK(a > b); // decreasing
      else
        CHECK(a < b);
    }
  }
}

TEST_CASE("nu inverts tilde") {
  for (double alpha : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double v : {0.3, 1.0, 2.7}) {
      CHECK(nu_transform(tilde_transform(v, alpha), alpha) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("named kinds lock their parameters") {
  const auto sc = ClassSpec::self_concordant(1.0);
  CHECK(sc.alpha == 1.5);
  CHECK(sc.nonneg);
  CHECK(sc.order == 2);
  const auto qsc = ClassSpec::quasi_self_concordant(2.0);
  CHECK(qsc.alpha == 1.0);
  const auto hl = ClassSpec::hessian_lipschitz(1.0);
  CHECK(hl.alpha == 0.0);
  CHECK_FALSE(hl.nonneg);
  CHECK_THROWS_AS(ClassSpec::hessian_lipschitz(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ClassSpec::strongly_convex_hessian_lipschitz(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("membership of exp under the quasi-self-concordant inequality") {
  // f''' = f'' exactly, so the finite-difference residual is pure noise
  const auto f = PiecewiseFunction::entire({Term::exp_affine(1.0, 0.0, 1.0)});
  const auto rep = membership_residual(f, ClassSpec::quasi_self_concordant(1.0), -2.0, 2.0);
  CHECK(rep.max_residual <= 1e-6);
  CHECK(rep.samples == 1001);
}

TEST_CASE("membership of the log barrier under self-concordance") {
  // f = -log(x): |f'''| = 2 (f'')^(3/2) exactly
  const auto f = PiecewiseFunction({Segment(0.0, kInf, {Term::log_affine(-1.0, 0.0, 1.0)})});
  const auto rep = membership_residual(f, ClassSpec::self_concordant(1.0), 0.5, 5.0);
  CHECK(rep.max_residual <= 1e-6);
}

TEST_CASE("membership of the cubic under the Hessian-Lipschitz inequality") {
  const auto f = PiecewiseFunction::entire({Term::mono(1.0 / 6.0, 3)});
  const auto rep = membership_residual(f, ClassSpec::hessian_lipschitz(1.0), -3.0, 3.0);
  CHECK(rep.max_residual <= 1e-9);
}

TEST_CASE("membership flags violations") {
  // f = x^3/6 has |f'''| = 1 > M for M = 0.5
  const auto f = PiecewiseFunction::entire({Term::mono(1.0 / 6.0, 3)});
  const auto rep = membership_residual(f, ClassSpec::hessian_lipschitz(0.5), -3.0, 3.0);
  CHECK(rep.max_residual == doctest::Approx(0.5).epsilon(1e-6));
}
