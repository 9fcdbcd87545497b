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

// End-to-end suite: one criterion per numbered check, one PASS/FAIL line
// each. Run all by default, or a single one with --only <k>.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "univpep/conditions.hpp"
#include "univpep/json_io.hpp"
#include "univpep/pep.hpp"
#include "univpep/random_members.hpp"

using namespace univpep;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << "  failed: " << what << "\n";
    }
  }
  void require_close(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      ok = false;
      notes << "  failed: " << what << " (got " << got << ", want " << want << " +- " << tol
            << ")\n";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------- 1
void criterion_1(Checker& c) {
  const auto f = named_worst_case("cnm_tight", {{"M", 1.0}});
  const auto traj = run(MethodSpec::cubic_newton(1.0), f, 0.0, 1);
  c.require_close(traj.points[0].f - traj.points[1].f, 10.0 / 3.0, 1e-12, "value decrease 10/3");
  c.require_close(traj.points[1].abs_g, 4.0, 1e-12, "gradient after one step");

  const auto t0 = std::chrono::steady_clock::now();
  PepProblem p;
  p.cls = ClassSpec::hessian_lipschitz(1.0);
  p.method = MethodSpec::cubic_newton(1.0);
  p.iterations = 1;
  p.measure = Measure::AbsGradLast;
  p.initial = InitialKind::FuncGap;
  p.R = 1.0;
  const auto sol = solve(p);
  c.require_close(sol.value, std::pow(12.0 / 5.0, 2.0 / 3.0), 1e-2, "one-step worst gradient");
  c.require(seconds_since(t0) < 30.0, "solve finished within 30 s");
}

// ---------------------------------------------------------------------- 2
void criterion_2(Checker& c) {
  for (int i = 0; i < 100; ++i) {
    const double g = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
    const double improved = analytic_bound("cnm_descent_improved", {{"g", g}, {"M", 1.0}});
    const double old_grad = analytic_bound("cnm_descent_old_grad", {{"g", g}, {"M", 1.0}});
    if (std::abs(improved - 5.0 * old_grad) > 1e-12 * std::max(1.0, improved)) {
      c.require(false, "factor-five identity at |g| = " + std::to_string(g));
      return;
    }
  }
}

// ---------------------------------------------------------------------- 3
void criterion_3(Checker& c) {
  for (int i = 1; i <= 9; ++i) {
    const double lam = 0.1 * i;
    const auto t0 = std::chrono::steady_clock::now();
    PepProblem p;
    p.cls = ClassSpec::self_concordant(1.0);
    p.method = MethodSpec::newton();
    p.iterations = 1;
    p.measure = Measure::NewtonDecrementLast;
    p.initial = InitialKind::NewtonDecrement;
    p.R = lam;
    const auto sol = solve(p);
    const double want = analytic_bound("sc_nm", {{"lambda", lam}});
    c.require_close(sol.value, want, 1e-3, "decrement after one step at lambda=" + std::to_string(lam));
    c.require(sol.certificate.has_value(), "witness certified at lambda=" + std::to_string(lam));
    if (sol.certificate) {
      const auto rep = membership_residual(*sol.certificate, p.cls, -0.4, 1.4);
      c.require(rep.max_residual <= 1e-4,
                "certificate membership at lambda=" + std::to_string(lam));
    }
    c.require(seconds_since(t0) < 60.0, "point solved within 60 s");
  }
}

// ---------------------------------------------------------------------- 4
void criterion_4(Checker& c) {
  const double R = 0.4;
  const double gamma = 1.0 / (1.0 + R);
  // chosen damping stays within the validity region at both steps
  double lam = R;
  for (int k = 0; k < 2; ++k) {
    const double cap = 2.0 * (std::sqrt(1.0 + lam * lam * lam) - 1.0) / (lam * lam * lam);
    c.require(gamma <= cap, "damping within validity at step " + std::to_string(k));
    lam = lam - gamma * lam + gamma * lam * lam;
  }
  PepProblem p;
  p.cls = ClassSpec::self_concordant(1.0);
  p.method = MethodSpec::damped_newton(gamma);
  p.iterations = 2;
  p.measure = Measure::NewtonDecrementLast;
  p.initial = InitialKind::NewtonDecrement;
  p.R = R;
  const auto sol = solve(p);
  c.require_close(sol.value, lam, 1e-3, "two-step decrement equals the composed recurrence");

  const auto f = named_worst_case("dnm_sc_tight", {{"R", R}});
  const auto traj = run(MethodSpec::damped_newton(gamma), f, 0.0, 2);
  c.require_close(traj.points[2].lambda, lam, 1e-10, "trajectory attains the composition");
}

// ---------------------------------------------------------------------- 5
void criterion_5(Checker& c) {
  for (double lam : {0.3, 0.5, 0.7}) {
    PepProblem p;
    p.cls = ClassSpec::self_concordant(1.0);
    p.method = MethodSpec::newton();
    p.iterations = 2;
    p.measure = Measure::NewtonDecrementLast;
    p.initial = InitialKind::NewtonDecrement;
    p.R = lam;
    const auto sol = solve(p);
    const double one = analytic_bound("sc_nm", {{"lambda", lam}});
    const double composed = analytic_bound("sc_nm", {{"lambda", one}});
    c.require(sol.value < composed - 1e-3,
              "two-step worst case strictly below the composed bound at lambda=" +
                  std::to_string(lam) + " (" + std::to_string(sol.value) + " vs " +
                  std::to_string(composed) + ")");
  }
}

// ---------------------------------------------------------------------- 6
void criterion_6(Checker& c) {
  for (double eta : {0.25, 0.5, 1.0}) {
    PepProblem p;
    p.cls = ClassSpec::quasi_self_concordant(1.0);
    p.method = MethodSpec::grad_reg_newton1(1.0);
    p.iterations = 1;
    p.measure = Measure::EtaLast;
    p.initial = InitialKind::Eta;
    p.R = eta;
    const auto sol = solve(p);
    const double want = analytic_bound("gnm1_qsc", {{"eta", eta}});
    c.require_close(sol.value, want, 1e-3, "eta contraction at eta=" + std::to_string(eta));
    if (eta < 1.0) {
      const double old_bound = analytic_bound("gnm1_qsc_old", {{"eta", eta}});
      c.require(sol.value < old_bound, "strictly below the previous bound at eta=" +
                                           std::to_string(eta));
    }
  }
  for (double eta = 0.05; eta < 1.0; eta += 0.05) {
    const double neu = analytic_bound("gnm1_qsc", {{"eta", eta}});
    const double old_bound = analytic_bound("gnm1_qsc_old", {{"eta", eta}});
    c.require(neu < old_bound, "improved bound strictly below the old one on (0,1)");
  }
}

// ---------------------------------------------------------------------- 7
void criterion_7(Checker& c) {
  const auto f = named_worst_case("qsc_nm_tight", {{"M", 1.0}, {"mu", 1.0}});
  const double x1 = step(MethodSpec::newton(), f, 0.0);
  c.require_close(std::abs(f.deriv(x1)), std::exp(1.0) - 2.0, 1e-12, "gradient after one step");
  const double rhs = analytic_bound("qsc_newton", {{"g", std::abs(f.deriv(0.0))}, {"M", 1.0},
                                                   {"mu", 1.0}});
  c.require_close(std::abs(f.deriv(x1)), rhs, 1e-12, "bound attained with equality");
}

// ---------------------------------------------------------------------- 8
void criterion_8(Checker& c) {
  const auto f = named_worst_case("newton_local_tight", {{"M", 1.0}, {"mu", 1.0}});
  const auto traj = run(MethodSpec::newton(), f, 0.5, 5, 0.0);
  for (int k = 0; k < 5; ++k) {
    const double r = *traj.points[k].dist;
    const double bound = analytic_bound("newton_local", {{"r", r}, {"M", 1.0}, {"mu", 1.0}});
    c.require_close(*traj.points[k + 1].dist, bound, 1e-12,
                    "local rate equality at step " + std::to_string(k));
  }
}

// ---------------------------------------------------------------------- 9
void criterion_9(Checker& c) {
  const double M = 1.0, L = 1.0, mu = 0.3, r0 = 0.42;
  {
    const auto f = named_worst_case("newton_local_tight", {{"M", M}, {"mu", mu}});
    const double h = 2.0 / (L + mu);
    const auto traj = run(MethodSpec::gradient(h), f, r0, 5, 0.0);
    for (int k = 0; k < 5; ++k) {
      const double r = *traj.points[k].dist;
      const double bound =
          analytic_bound("gm_contraction", {{"r", r}, {"h", h}, {"M", M}, {"mu", mu}, {"L", L}});
      c.require_close(*traj.points[k + 1].dist, bound, 1e-12,
                      "short-step branch equality at step " + std::to_string(k));
    }
  }
  {
    const auto g = named_worst_case("gm_tight_upper", {{"M", M}, {"L", L}});
    const double h = 2.1 / (L + mu);
    const auto traj = run(MethodSpec::gradient(h), g, r0, 5, 0.0);
    for (int k = 0; k < 5; ++k) {
      const double r = *traj.points[k].dist;
      const double bound =
          analytic_bound("gm_contraction", {{"r", r}, {"h", h}, {"M", M}, {"mu", mu}, {"L", L}});
      c.require_close(*traj.points[k + 1].dist, bound, 1e-12 * std::max(1.0, bound),
                      "overshoot branch equality at step " + std::to_string(k));
    }
  }
}

// ---------------------------------------------------------------------- 10
void criterion_10(Checker& c) {
  std::mt19937_64 rng(2024);
  const struct {
    ClassSpec spec;
    bool with_values;
    const char* tag;
  } cases[] = {
      {ClassSpec::hessian_lipschitz(1.0), false, "hl"},
      {ClassSpec::hessian_lipschitz(1.0), true, "hl_values"},
      {ClassSpec::strongly_convex_hessian_lipschitz(1.0, 0.2), false, "schl"},
      {ClassSpec::self_concordant(1.0), false, "sc"},
      {ClassSpec::quasi_self_concordant(1.0), false, "qsc"},
  };
  for (const auto& cs : cases) {
    int rejected = 0;
    for (int t = 0; t < 200; ++t) {
      const auto member = random_member(cs.spec, rng);
      const auto data = sample_dataset(member, cs.spec, 3, -1.4, 1.4, rng, cs.with_values);
      if (!check_dataset(data, cs.spec, {1e-7}).feasible) {
        c.require(false, std::string(cs.tag) + ": sampled dataset not feasible");
        return;
      }
      PiecewiseFunction rec;
      try {
        rec = reconstruct_interpolant(data, cs.spec);
      } catch (const std::exception& e) {
        c.require(false, std::string(cs.tag) + ": reconstruction failed: " + e.what());
        return;
      }
      const double lo = data.points.front().x, hi = data.points.back().x;
      const auto rep = membership_residual(rec, cs.spec, lo, hi, 1000);
      if (rep.max_residual > 1e-4) {
        c.require(false, std::string(cs.tag) + ": membership residual " +
                             std::to_string(rep.max_residual));
        return;
      }
      auto resampled = sample_dataset(rec, cs.spec, 1000, lo, hi, rng, cs.with_values);
      CheckOptions opts;
      opts.feastol = 1e-8;
      opts.all_pairs = false;
      if (!check_dataset(resampled, cs.spec, opts).feasible) {
        c.require(false, std::string(cs.tag) + ": resampled points not feasible at 1e-8");
        return;
      }

      // push one value just past its admissible window
      Dataset bad = data;
      const auto& a = bad.points[0];
      auto& b = bad.points[1];
      try {
        if (cs.with_values) {
          const auto bounds = integral_bounds(a, b, cs.spec);
          *b.f = *a.f + (std::isfinite(bounds.upper) ? bounds.upper + 1e-6 : bounds.lower - 1e-6);
        } else {
          // derivative-level window: query on the curvature data alone
          SecondOrderPoint qa, qb;
          qa.x = a.x;
          qa.h = a.h;
          qb.x = b.x;
          qb.h = b.h;
          const auto bounds = integral_bounds(qa, qb, cs.spec);
          *b.g = *a.g + (std::isfinite(bounds.upper) ? bounds.upper + 1e-6 : bounds.lower - 1e-6);
        }
      } catch (const std::exception& e) {
        c.require(false, std::string(cs.tag) + ": bounds failed: " + e.what());
        return;
      }
      if (!check_dataset(bad, cs.spec, {1e-9}).feasible) ++rejected;
    }
    c.require(rejected == 200, std::string(cs.tag) + ": all boundary-perturbed datasets rejected (" +
                                   std::to_string(rejected) + "/200)");
  }
}

// ---------------------------------------------------------------------- 11
void criterion_11(Checker& c) {
  std::mt19937_64 rng(4099);
  const auto spec = ClassSpec::hessian_lipschitz(1.0);
  for (int t = 0; t < 100; ++t) {
    const auto member = random_member(spec, rng);
    const auto data = sample_dataset(member, spec, 4, -2.0, 2.0, rng, false);
    PiecewiseFunction rec;
    try {
      rec = reconstruct_interpolant(data, spec);
    } catch (const std::exception& e) {
      c.require(false, std::string("reconstruction failed: ") + e.what());
      return;
    }
    std::uniform_real_distribution<double> x0d(-1.5, 1.5);
    const auto traj = run(MethodSpec::cubic_newton(1.0), rec, x0d(rng), 4);
    for (std::size_t k = 1; k < traj.points.size(); ++k) {
      const double slack =
          std::sqrt(traj.points[k].abs_g) + 2.0 / 3.0 * traj.points[k].h;
      if (slack < -1e-8) {
        c.require(false, "curvature-measure domination violated (slack " +
                             std::to_string(slack) + ")");
        return;
      }
    }
  }
}

// ---------------------------------------------------------------------- 12
void criterion_12(Checker& c) {
  // admissible-region gap at the two-point setup (x0, g0, h0) = (0, 1, 1),
  // x1 = 1/2: maximize eta_1 = |g1|/h1 under classical vs exact conditions
  const double x0 = 0.0, g0 = 1.0, h0 = 1.0, x1 = 0.5, M = 1.0;
  auto classical_ok = [&](double g1, double h1) {
    return h1 >= 0.0 &&
           cond::qsc_classical(x0, g0, h0, x1, g1, M) <= 0 &&
           cond::qsc_classical(x1, g1, h1, x0, g0, M) <= 0;
  };
  auto exact_res = [&](double g1, double h1) {
    return std::max(cond::qsc_pair_lower(x0, g0, h0, x1, g1, h1, M),
                    cond::qsc_pair_lower(x1, g1, h1, x0, g0, h0, M));
  };
  double best_classical = -kInf, bc_g = 0, bc_h = 0;
  double best_exact = -kInf, be_g = 0, be_h = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double h1 = 1e-4 + 3.0 * i / 2000.0;
    for (int j = 0; j <= 2000; ++j) {
      const double g1 = -1.0 + 4.0 * j / 2000.0;
      const double eta = std::abs(g1) / h1;
      if (classical_ok(g1, h1) && eta > best_classical) {
        best_classical = eta;
        bc_g = g1;
        bc_h = h1;
      }
      if (exact_res(g1, h1) <= 0.0 && eta > best_exact) {
        best_exact = eta;
        be_g = g1;
        be_h = h1;
      }
    }
  }
  c.require(best_classical > best_exact + 1e-3, "classical region admits a larger worst case");
  c.require(exact_res(bc_g, bc_h) > 1e-3,
            "classical worst point infeasible under the exact conditions");
  // the exact worst point sits where both pairwise conditions are active
  c.require_close(best_exact, 2.0 * std::exp(0.5) - 1.0, 2e-2, "exact worst eta");
  {
    Dataset witness;
    witness.points.push_back(SecondOrderPoint::xgh(x0, g0, h0));
    witness.points.push_back(SecondOrderPoint::xgh(x1, be_g, be_h));
    try {
      const auto rec = reconstruct_interpolant(witness, ClassSpec::quasi_self_concordant(1.0));
      const auto rep =
          membership_residual(rec, ClassSpec::quasi_self_concordant(1.0), -0.25, 0.75);
      c.require(rep.max_residual <= 1e-4, "exact worst point certified by reconstruction");
    } catch (const std::exception& e) {
      c.require(false, std::string("certification of the exact worst point failed: ") + e.what());
    }
  }

  // multi-iteration sweeps are property-checked: monotone, below the
  // analytic envelope, deterministic
  SolverConfig cfg;
  cfg.restarts = 128;
  cfg.seed = 5;
  std::vector<double> cnm_values;
  for (int N = 1; N <= 3; ++N) {
    PepProblem p;
    p.cls = ClassSpec::hessian_lipschitz(1.0);
    p.method = MethodSpec::cubic_newton(1.0);
    p.iterations = N;
    p.measure = Measure::AbsGradBest;
    p.initial = InitialKind::FuncGap;
    p.R = 1.0;
    const auto sol = solve(p, cfg);
    cnm_values.push_back(sol.value);
    const double envelope = analytic_bound(
        "cnm_sublinear_improved", {{"R", 1.0}, {"M", 1.0}, {"N", double(N)}});
    c.require(sol.value <= envelope + 1e-6,
              "best-gradient worst case below the envelope at N=" + std::to_string(N));
    if (N == 2) {
      const auto again = solve(p, cfg);
      c.require(again.value == sol.value, "deterministic under a fixed seed");
    }
  }
  for (std::size_t i = 0; i + 1 < cnm_values.size(); ++i)
    c.require(cnm_values[i + 1] <= cnm_values[i] + 1e-6,
              "best-gradient worst case monotone in N");

  double composed = 0.4;
  for (int N = 1; N <= 3; ++N) {
    composed = analytic_bound("gnm1_qsc", {{"eta", composed}});
    PepProblem p;
    p.cls = ClassSpec::quasi_self_concordant(1.0);
    p.method = MethodSpec::grad_reg_newton1(1.0);
    p.iterations = N;
    p.measure = Measure::EtaLast;
    p.initial = InitialKind::Eta;
    p.R = 0.4;
    const auto sol = solve(p, cfg);
    c.require(sol.value <= composed + 1e-6,
              "eta worst case below the composed contraction at N=" + std::to_string(N));
  }
}

struct Criterion {
  int id;
  const char* what;
  std::function<void(Checker&)> fn;
};

} // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  const std::vector<Criterion> criteria = {
      {1, "cubic Newton one-step tightness and worst-case solve", criterion_1},
      {2, "improved descent guarantee is exactly 5x the old gradient branch", criterion_2},
      {3, "Newton decrement worst case matches the closed form across lambda", criterion_3},
      {4, "damped Newton two-step composition is tight and attained", criterion_4},
      {5, "two Newton steps beat the composed one-step bound", criterion_5},
      {6, "gradient-regularized Newton eta contraction is tight and improves the old bound",
       criterion_6},
      {7, "Newton step on the exponential pair attains the strongly convex bound", criterion_7},
      {8, "local Newton rate equality over five iterations", criterion_8},
      {9, "gradient method attains both contraction branches", criterion_9},
      {10, "random feasible datasets round-trip; boundary-perturbed ones are rejected",
       criterion_10},
      {11, "curvature-measure domination along cubic Newton runs", criterion_11},
      {12, "exact-vs-classical gap and multi-iteration sweep properties", criterion_12},
  };
  int failures = 0;
  for (const auto& crit : criteria) {
    if (only != 0 && crit.id != only) continue;
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      crit.fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << crit.id << ": " << crit.what
              << "  [" << csv_number(seconds_since(t0)) << " s]\n";
    if (!c.ok) {
      std::cout << c.notes.str();
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
