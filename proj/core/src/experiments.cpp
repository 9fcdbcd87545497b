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

#include "univpep/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "univpep/json_io.hpp"
#include "univpep/pep.hpp"

namespace univpep {

namespace {

namespace fs = std::filesystem;

double param(const ExperimentSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

std::string write_atomic(const std::string& dir, const std::string& name,
                         const std::string& content) {
  fs::create_directories(dir);
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = final_path.string() + ".tmp";
  {
    std::ofstream out(tmp_path);
    if (!out) throw std::runtime_error("experiment: cannot write " + tmp_path.string());
    out << content;
  }
  fs::rename(tmp_path, final_path);
  return final_path.string();
}

SolverConfig solver_config(const ExperimentSpec& spec) {
  SolverConfig cfg;
  cfg.restarts = spec.restarts;
  cfg.seed = spec.seed;
  return cfg;
}

std::string maybe(double v, bool present) { return present ? csv_number(v) : std::string(); }

std::vector<std::string> fig6(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  const double R = param(spec, "R", 1.0);
  const int n_max = static_cast<int>(param(spec, "N_max", 3));
  std::string csv = "N,measure,value,bound_old,bound_improved\n";
  for (int N = 1; N <= n_max; ++N) {
    for (Measure m : {Measure::AbsGradBest, Measure::AbsGradLast}) {
      PepProblem p;
      p.cls = ClassSpec::hessian_lipschitz(M);
      p.method = MethodSpec::cubic_newton(M);
      p.iterations = N;
      p.measure = m;
      p.initial = InitialKind::FuncGap;
      p.R = R;
      const auto sol = solve(p, solver_config(spec));
      const double old_b =
          analytic_bound("cnm_sublinear_old", {{"R", R}, {"M", M}, {"N", double(N)}});
      const double new_b =
          analytic_bound("cnm_sublinear_improved", {{"R", R}, {"M", M}, {"N", double(N)}});
      csv += std::to_string(N) + "," +
             (m == Measure::AbsGradBest ? "abs_grad_best" : "abs_grad_last") + "," +
             csv_number(sol.value) + "," + maybe(old_b, m == Measure::AbsGradBest) + "," +
             maybe(new_b, m == Measure::AbsGradBest) + "\n";
    }
  }
  return {write_atomic(spec.out_dir, "fig6_cnm_rates.csv", csv)};
}

std::vector<std::string> fig7(const ExperimentSpec& spec) {
  const double R = param(spec, "R", 1.0);
  std::string csv = "alpha,M,value\n";
  for (double M : {0.5, 1.0, 2.0}) {
    for (double alpha = 0.25; alpha <= 2.0 + 1e-12; alpha += 0.25) {
      PepProblem p;
      p.cls = ClassSpec::hessian_lipschitz(M);
      p.method = MethodSpec::cubic_newton_step(M, alpha);
      p.iterations = 1;
      p.measure = Measure::AbsGradLast;
      p.initial = InitialKind::FuncGap;
      p.R = R;
      const auto sol = solve(p, solver_config(spec));
      csv += csv_number(alpha) + "," + csv_number(M) + "," + csv_number(sol.value) + "\n";
    }
  }
  return {write_atomic(spec.out_dir, "fig7_cnm_alpha.csv", csv)};
}

std::vector<std::string> fig8(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  const double mu = param(spec, "mu", 0.1);
  const double R = param(spec, "R", mu * mu / (4.0 * M));
  const int n_max = static_cast<int>(param(spec, "N_max", 2));
  std::string csv = "N,value,bound\n";
  double bound = R;
  for (int N = 1; N <= n_max; ++N) {
    bound = analytic_bound("gnm2_local", {{"g", bound}, {"M", M}, {"mu", mu}});
    PepProblem p;
    p.cls = ClassSpec::strongly_convex_hessian_lipschitz(M, mu);
    p.method = MethodSpec::grad_reg_newton2(M);
    p.iterations = N;
    p.measure = Measure::AbsGradLast;
    p.initial = InitialKind::AbsGrad;
    p.R = R;
    const auto sol = solve(p, solver_config(spec));
    csv += std::to_string(N) + "," + csv_number(sol.value) + "," + csv_number(bound) + "\n";
  }
  return {write_atomic(spec.out_dir, "fig8_gnm2_local.csv", csv)};
}

std::vector<std::string> fig9(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  const double L = param(spec, "L", 1.0);
  const double mu = param(spec, "mu", 0.3);
  const double r0 = param(spec, "r0", 0.42);
  const int steps = static_cast<int>(param(spec, "N", 5));
  std::vector<std::string> written;
  struct Setup {
    const char* file;
    const char* fn_name;
    double step;
  };
  const Setup setups[] = {{"fig9_gm_contract.csv", "newton_local_tight", 2.0 / (L + mu)},
                          {"fig9_gm_overshoot.csv", "gm_tight_upper", 2.1 / (L + mu)}};
  for (const auto& s : setups) {
    std::map<std::string, double> params = {{"M", M}};
    if (std::string(s.fn_name) == "newton_local_tight")
      params["mu"] = mu;
    else
      params["L"] = L;
    const auto f = named_worst_case(s.fn_name, params);
    const auto traj = run(MethodSpec::gradient(s.step), f, r0, steps, 0.0);
    std::string csv = "k,x,dist,ratio,bound_factor\n";
    for (int k = 0; k + 1 < static_cast<int>(traj.points.size()); ++k) {
      const double r = *traj.points[k].dist;
      const double rn = *traj.points[k + 1].dist;
      const double factor = analytic_bound("gm_contraction", {{"r", r},
                                                              {"h", s.step},
                                                              {"M", M},
                                                              {"mu", mu},
                                                              {"L", L}}) /
                            r;
      csv += std::to_string(k) + "," + csv_number(traj.points[k].x) + "," + csv_number(r) + "," +
             csv_number(rn / r) + "," + csv_number(factor) + "\n";
    }
    written.push_back(write_atomic(spec.out_dir, s.file, csv));
  }
  return written;
}

// stationary point of a family member near the origin
double stationary_point(const PiecewiseFunction& f) {
  double lo = -2.0, hi = 2.0;
  double flo = f.deriv(lo), fhi = f.deriv(hi);
  if (flo * fhi > 0.0) throw std::runtime_error("no bracketed stationary point");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f.deriv(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// worst of the damped-Newton family over the cut-parameter grid; distances
// are measured from each member's own minimizer
double dnm_family_worst(double M, double mu, double gamma, double r0, int steps) {
  double worst = 0.0;
  const auto eval = [&](const PiecewiseFunction& f) {
    const double xs = stationary_point(f);
    for (double x0 : {xs + r0, xs - r0}) {
      const auto traj = run(MethodSpec::damped_newton(gamma), f, x0, steps, xs);
      worst = std::max(worst, *traj.points.back().dist);
    }
  };
  eval(named_worst_case("newton_local_tight", {{"M", M}, {"mu", mu}}));
  for (int i = 0; i <= 8; ++i) {
    const double a = mu * i / 8.0;
    try {
      eval(named_worst_case("dnm_family_g", {{"M", M}, {"mu", mu}, {"a", a}}));
      eval(named_worst_case("dnm_family_h", {{"M", M}, {"mu", mu}, {"a", a}}));
    } catch (const std::exception&) {
    }
  }
  return worst;
}

std::vector<std::string> fig10(const ExperimentSpec& spec, bool sweep_alpha) {
  const double M = param(spec, "M", 1.0);
  const double mu = param(spec, "mu", 1.0);
  const int steps = static_cast<int>(param(spec, "N", 3));
  std::string csv = sweep_alpha ? "alpha,r0,value,family_worst\n" : "r0,alpha,value,family_worst\n";
  std::vector<double> alphas, r0s;
  if (sweep_alpha) {
    for (double a = 0.5; a <= 1.0 + 1e-12; a += 0.1) alphas.push_back(a);
    r0s.push_back(param(spec, "r0", 2.0 / 3.0 * mu / M));
  } else {
    alphas.push_back(param(spec, "alpha", 0.9));
    for (double r = 0.1; r <= 0.6 + 1e-12; r += 0.1) r0s.push_back(r * mu / M);
  }
  for (double alpha : alphas) {
    for (double r0 : r0s) {
      PepProblem p;
      p.cls = ClassSpec::hessian_lipschitz(M);
      p.method = MethodSpec::damped_newton(alpha);
      p.iterations = steps;
      p.measure = Measure::DistLast;
      p.initial = InitialKind::Dist;
      p.R = r0;
      p.stationarity = true;
      p.star_curvature = mu;
      double value = std::nan("");
      try {
        value = solve(p, solver_config(spec)).value;
      } catch (const std::exception&) {
      }
      const double fam = dnm_family_worst(M, mu, alpha, r0, steps);
      if (sweep_alpha)
        csv += csv_number(alpha) + "," + csv_number(r0) + ",";
      else
        csv += csv_number(r0) + "," + csv_number(alpha) + ",";
      csv += (std::isnan(value) ? std::string() : csv_number(value)) + "," + csv_number(fam) + "\n";
    }
  }
  return {write_atomic(spec.out_dir, sweep_alpha ? "fig10b_dnm_alpha.csv" : "fig10_dnm_r.csv",
                       csv)};
}

std::vector<std::string> fig11(const ExperimentSpec& spec) {
  std::string csv = "lambda0,pep_two_steps,one_step,composed\n";
  for (double lam = 0.1; lam <= 0.9 + 1e-12; lam += 0.1) {
    PepProblem p;
    p.cls = ClassSpec::self_concordant(1.0);
    p.method = MethodSpec::newton();
    p.iterations = 2;
    p.measure = Measure::NewtonDecrementLast;
    p.initial = InitialKind::NewtonDecrement;
    p.R = lam;
    const auto sol = solve(p, solver_config(spec));
    const double one = analytic_bound("sc_nm", {{"lambda", lam}});
    // the one-step bound only composes while it stays inside its own domain
    const std::string composed =
        one <= 1.0 ? csv_number(analytic_bound("sc_nm", {{"lambda", one}})) : std::string();
    csv += csv_number(lam) + "," + csv_number(sol.value) + "," + csv_number(one) + "," +
           composed + "\n";
  }
  return {write_atomic(spec.out_dir, "fig11_sc_nm_two_steps.csv", csv)};
}

std::vector<std::string> fig12(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  std::string csv = "eta0,value,bound_new,bound_old\n";
  for (double eta = 0.1; eta <= 1.0 + 1e-12; eta += 0.1) {
    PepProblem p;
    p.cls = ClassSpec::quasi_self_concordant(M);
    p.method = MethodSpec::grad_reg_newton1(M);
    p.iterations = 1;
    p.measure = Measure::EtaLast;
    p.initial = InitialKind::Eta;
    p.R = eta;
    const auto sol = solve(p, solver_config(spec));
    csv += csv_number(eta) + "," + csv_number(sol.value) + "," +
           csv_number(analytic_bound("gnm1_qsc", {{"eta", eta}})) + "," +
           csv_number(analytic_bound("gnm1_qsc_old", {{"eta", eta}})) + "\n";
  }
  return {write_atomic(spec.out_dir, "fig12_gnm1_one_step.csv", csv)};
}

std::vector<std::string> fig13(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  const double eta0 = param(spec, "eta0", 0.4);
  const int n_max = static_cast<int>(param(spec, "N_max", 3));
  std::string csv = "N,value,composed_bound\n";
  double bound = eta0;
  for (int N = 1; N <= n_max; ++N) {
    bound = analytic_bound("gnm1_qsc", {{"eta", bound}});
    PepProblem p;
    p.cls = ClassSpec::quasi_self_concordant(M);
    p.method = MethodSpec::grad_reg_newton1(M);
    p.iterations = N;
    p.measure = Measure::EtaLast;
    p.initial = InitialKind::Eta;
    p.R = eta0;
    const auto sol = solve(p, solver_config(spec));
    csv += std::to_string(N) + "," + csv_number(sol.value) + "," + csv_number(bound) + "\n";
  }
  return {write_atomic(spec.out_dir, "fig13_gnm1_N.csv", csv)};
}

std::vector<std::string> fig14(const ExperimentSpec& spec) {
  const double M = param(spec, "M", 1.0);
  const double R = param(spec, "R", 1.0);
  std::string csv = "method,mu,worst_abs_g1,analytic_bound_if_any\n";
  const std::vector<double> mus = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0};
  struct M1 {
    const char* name;
    MethodSpec spec;
  };
  const std::vector<M1> methods = {{"newton", MethodSpec::newton()},
                                   {"cubic_newton", MethodSpec::cubic_newton(M)},
                                   {"grad_reg_newton1", MethodSpec::grad_reg_newton1(M)},
                                   {"grad_reg_newton2", MethodSpec::grad_reg_newton2(M)},
                                   {"adaptive_damped_newton", MethodSpec::adaptive_damped_newton(M)}};
  for (const auto& m : methods) {
    for (double mu : mus) {
      PepProblem p;
      p.cls = ClassSpec::strongly_convex_hessian_lipschitz(M, mu);
      p.method = m.spec;
      p.iterations = 1;
      p.measure = Measure::AbsGradLast;
      p.initial = InitialKind::AbsGrad;
      p.R = R;
      double value = std::nan("");
      try {
        value = solve(p, solver_config(spec)).value;
      } catch (const std::exception&) {
      }
      std::string bound;
      if (std::string(m.name) == "grad_reg_newton2")
        bound = csv_number(analytic_bound("gnm2_local", {{"g", R}, {"M", M}, {"mu", mu}}));
      csv += std::string(m.name) + "," + csv_number(mu) + "," +
             (std::isnan(value) ? std::string() : csv_number(value)) + "," + bound + "\n";
    }
  }
  return {write_atomic(spec.out_dir, "fig14_method_comparison.csv", csv)};
}

} // namespace

std::vector<std::string> experiment_names() {
  return {"fig6_cnm_rates",  "fig7_cnm_alpha",       "fig8_gnm2_local", "fig9_gm_regimes",
          "fig10_dnm_r",     "fig10b_dnm_alpha",     "fig11_sc_nm_two_steps",
          "fig12_gnm1_one_step", "fig13_gnm1_N",     "fig14_method_comparison"};
}

std::vector<std::string> run_experiment(const ExperimentSpec& spec) {
  if (spec.name == "fig6_cnm_rates") return fig6(spec);
  if (spec.name == "fig7_cnm_alpha") return fig7(spec);
  if (spec.name == "fig8_gnm2_local") return fig8(spec);
  if (spec.name == "fig9_gm_regimes") return fig9(spec);
  if (spec.name == "fig10_dnm_r") return fig10(spec, false);
  if (spec.name == "fig10b_dnm_alpha") return fig10(spec, true);
  if (spec.name == "fig11_sc_nm_two_steps") return fig11(spec);
  if (spec.name == "fig12_gnm1_one_step") return fig12(spec);
  if (spec.name == "fig13_gnm1_N") return fig13(spec);
  if (spec.name == "fig14_method_comparison") return fig14(spec);
  throw std::invalid_argument("run_experiment: unknown experiment " + spec.name);
}

} // namespace univpep
