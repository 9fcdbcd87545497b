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
#include <random>

#include "univpep/extremal.hpp"
#include "univpep/methods.hpp"
#include "univpep/random_members.hpp"

using namespace univpep;

TEST_CASE("cubic step: symmetric model ties break to the left") {
  const auto f = named_worst_case("cnm_tight", {{"M", 1.0}});
  CHECK(step(MethodSpec::cubic_newton(1.0), f, 0.0) == doctest::Approx(-2.0));
}

TEST_CASE("cubic step: first- and second-order conditions hold") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ug(-3.0, 3.0), uh(-2.0, 2.0);
  for (int t = 0; t < 500; ++t) {
    const double g = ug(rng), h = uh(rng), M = 1.0;
    const double d = step_from_values(MethodSpec::cubic_newton(M), 0.0, g, h);
    CHECK(std::abs(g + h * d + 0.5 * M * d * std::abs(d)) <= 1e-10 * (1.0 + std::abs(g)));
    CHECK(h + 0.5 * M * std::abs(d) >= -1e-10);
  }
}

TEST_CASE("newton step on the local cubic") {
  const auto f = named_worst_case("newton_local_tight", {{"M", 1.0}, {"mu", 1.0}});
  CHECK(step(MethodSpec::newton(), f, 0.5) == doctest::Approx(-0.25).epsilon(1e-13));
}

TEST_CASE("gradient-regularized step") {
  // any function with f'(0) = 1, f''(0) = 1
  const auto f = PiecewiseFunction::entire({Term::mono(0.5, 2), Term::mono(1.0, 1)});
  CHECK(step(MethodSpec::grad_reg_newton1(1.0), f, 0.0) == doctest::Approx(-0.5));
  CHECK(step(MethodSpec::grad_reg_newton2(2.0), f, 0.0) == doctest::Approx(-0.5));
  CHECK(step(MethodSpec::adaptive_damped_newton(1.0), f, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("step errors") {
  const auto flat = PiecewiseFunction::entire({Term::mono(1.0, 1)}); // f'' = 0
  CHECK_THROWS_AS(step(MethodSpec::newton(), flat, 0.0), StepError);
  CHECK_THROWS_AS(step(MethodSpec::adaptive_damped_newton(1.0), flat, 0.0), StepError);
}

TEST_CASE("run: gradient method attains the contraction branch exactly") {
  const double M = 1.0, L = 1.0, mu = 0.3;
  const auto f = named_worst_case("newton_local_tight", {{"M", M}, {"mu", mu}});
  const double h = 2.0 / (L + mu);
  const auto traj = run(MethodSpec::gradient(h), f, 0.42, 5, 0.0);
  for (int k = 0; k < 5; ++k) {
    const double r = *traj.points[k].dist;
    const double rn = *traj.points[k + 1].dist;
    const double bound =
        analytic_bound("gm_contraction", {{"r", r}, {"h", h}, {"M", M}, {"mu", mu}, {"L", L}});
    CHECK(rn == doctest::Approx(bound).epsilon(1e-12));
  }
}

TEST_CASE("run: overshoot branch on the companion function") {
  const double M = 1.0, L = 1.0, mu = 0.3;
  const auto g = named_worst_case("gm_tight_upper", {{"M", M}, {"L", L}});
  const double h = 2.1 / (L + mu);
  const auto traj = run(MethodSpec::gradient(h), g, 0.42, 5, 0.0);
  for (int k = 0; k < 5; ++k) {
    const double r = *traj.points[k].dist;
    const double rn = *traj.points[k + 1].dist;
    const double bound =
        analytic_bound("gm_contraction", {{"r", r}, {"h", h}, {"M", M}, {"mu", mu}, {"L", L}});
    CHECK(rn == doctest::Approx(bound).epsilon(1e-12));
  }
}

TEST_CASE("run: damped Newton decrement recurrence on the log barrier") {
  const double R = 0.4;
  const double gamma = 1.0 / (1.0 + R);
  const auto f = named_worst_case("dnm_sc_tight", {{"R", R}});
  const auto traj = run(MethodSpec::damped_newton(gamma), f, 0.0, 4);
  for (int k = 0; k < 4; ++k) {
    const double lam = traj.points[k].lambda;
    CHECK(traj.points[k + 1].lambda ==
          doctest::Approx(analytic_bound("dnm_sc", {{"lambda", lam}, {"gamma", gamma}}))
              .epsilon(1e-12));
  }
}

TEST_CASE("run: newton on the descent cubic records the indefinite start") {
  const auto f = named_worst_case("cnm_tight", {{"M", 1.0}});
  const auto traj = run(MethodSpec::newton(), f, 0.0, 2);
  CHECK(traj.points[0].h == doctest::Approx(-1.0));
  CHECK(traj.points.size() == 3);
  CHECK(std::isnan(traj.points[0].lambda));
}

TEST_CASE("analytic bounds: frozen reference values") {
  CHECK(analytic_bound("sc_nm", {{"lambda", 0.5}}) ==
        doctest::Approx(0.2858983848622456).epsilon(1e-13));
  CHECK(analytic_bound("gnm1_qsc", {{"eta", 0.5}}) ==
        doctest::Approx(0.3021937874569552).epsilon(1e-13));
  CHECK(analytic_bound("cnm_descent_improved", {{"g", 4.0}, {"M", 1.0}}) ==
        doctest::Approx(10.0 / 3).epsilon(1e-13));
  CHECK(analytic_bound("qsc_newton", {{"g", 1.0}, {"M", 1.0}, {"mu", 1.0}}) ==
        doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-13));
  CHECK_THROWS_AS(analytic_bound("sc_nm", {{"lambda", 1.2}}), std::domain_error);
  CHECK_THROWS_AS(analytic_bound("newton_local", {{"r", 1.0}, {"M", 1.0}, {"mu", 1.0}}),
                  std::domain_error);
  CHECK_THROWS_AS(analytic_bound("unknown", {}), std::invalid_argument);
}

TEST_CASE("improved descent guarantee is exactly five times the old gradient branch") {
  for (int i = 0; i < 100; ++i) {
    const double g = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
    const double lhs = analytic_bound("cnm_descent_improved", {{"g", g}, {"M", 1.0}});
    const double rhs = analytic_bound("cnm_descent_old_grad", {{"g", g}, {"M", 1.0}});
    CHECK(lhs == doctest::Approx(5.0 * rhs).epsilon(1e-12));
  }
}

namespace {

// exact affine substitution x -> a x + b for the term kinds the generators use
PiecewiseFunction affine_substitute(const PiecewiseFunction& f, double a, double b) {
  std::vector<Segment> segs;
  auto mapx = [&](double x) {
    if (!std::isfinite(x)) return a > 0 ? x : -x;
    return (x - b) / a;
  };
  for (const auto& s : f.segments()) {
    std::vector<Term> terms;
    for (const auto& t : s.terms) {
      switch (t.kind) {
        case Term::Kind::LogAffine:
          terms.push_back(Term::log_affine(t.c, t.a + t.b * b, t.b * a));
          break;
        case Term::Kind::ExpAffine:
          terms.push_back(Term::exp_affine(t.c, t.a + t.b * b, t.b * a));
          break;
        case Term::Kind::Mono:
          REQUIRE(t.n <= 1);
          if (t.n == 0) {
            terms.push_back(t);
          } else {
            terms.push_back(Term::mono(t.c * a, 1));
            terms.push_back(Term::mono(t.c * b, 0));
          }
          break;
        default:
          REQUIRE(false);
      }
    }
    double lo = mapx(s.lo), hi = mapx(s.hi);
    if (lo > hi) std::swap(lo, hi);
    segs.emplace_back(lo, hi, std::move(terms));
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& u, const Segment& v) { return u.lo < v.lo; });
  return PiecewiseFunction(std::move(segs));
}

} // namespace

TEST_CASE("newton decrement trajectories are affine invariant on barrier sums") {
  std::mt19937_64 rng(13);
  const auto spec = ClassSpec::self_concordant(1.0);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_member(spec, rng);
    const auto g = affine_substitute(f, 2.0, -0.3); // g(x) = f(2x - 0.3)
    const double x0 = 0.4;
    const double y0 = (x0 + 0.3) / 2.0;
    for (const auto& method : {MethodSpec::newton(), MethodSpec::damped_newton(0.7)}) {
      Trajectory tf, tg;
      try {
        tf = run(method, f, x0, 3);
        tg = run(method, g, y0, 3);
      } catch (const StepError&) {
        continue;
      } catch (const std::domain_error&) {
        continue; // trajectory left the barrier domain
      }
      for (int k = 0; k <= 3; ++k) {
        if (std::isnan(tf.points[k].lambda) || std::isnan(tg.points[k].lambda)) continue;
        CHECK(tf.points[k].lambda == doctest::Approx(tg.points[k].lambda).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("eta trajectories are scale invariant") {
  std::mt19937_64 rng(17);
  const auto spec = ClassSpec::quasi_self_concordant(1.0);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_member(spec, rng);
    const double c = 3.7;
    std::vector<Segment> scaled;
    for (const auto& s : f.segments()) {
      std::vector<Term> terms;
      for (Term tm : s.terms) {
        tm.c *= c;
        terms.push_back(tm);
      }
      scaled.emplace_back(s.lo, s.hi, std::move(terms));
    }
    const PiecewiseFunction g{std::move(scaled)};
    const auto method = MethodSpec::grad_reg_newton1(1.0);
    Trajectory tf, tg;
    try {
      tf = run(method, f, 0.5, 3);
      tg = run(method, g, 0.5, 3);
    } catch (const StepError&) {
      continue;
    }
    for (int k = 0; k <= 3; ++k) {
      if (std::isnan(tf.points[k].eta)) continue;
      CHECK(tf.points[k].eta == doctest::Approx(tg.points[k].eta).epsilon(1e-10));
      CHECK(tf.points[k].x == doctest::Approx(tg.points[k].x).epsilon(1e-10));
    }
  }
}

TEST_CASE("trajectory measures are consistent with the iterates") {
  std::mt19937_64 rng(19);
  const auto spec = ClassSpec::strongly_convex_hessian_lipschitz(1.0, 0.5);
  const auto f = random_member(spec, rng);
  const auto traj = run(MethodSpec::cubic_newton(1.0), f, 1.0, 4, 0.25);
  for (const auto& p : traj.points) {
    CHECK(p.abs_g == doctest::Approx(std::abs(p.g)));
    CHECK(p.lambda == doctest::Approx(std::abs(p.g) / std::sqrt(p.h)));
    CHECK(p.eta == doctest::Approx(std::abs(p.g) / p.h));
    REQUIRE(p.dist.has_value());
    CHECK(*p.dist == doctest::Approx(std::abs(p.x - 0.25)));
  }
}
