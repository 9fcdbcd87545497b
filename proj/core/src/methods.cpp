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

#include "univpep/methods.hpp"

#include <cmath>

namespace univpep {

MethodSpec MethodSpec::newton() { return {Kind::Newton, 1.0, 1.0}; }

MethodSpec MethodSpec::gradient(double step) {
  if (!(step > 0.0)) throw std::invalid_argument("MethodSpec: gradient step must be > 0");
  return {Kind::Gradient, step, 1.0};
}

MethodSpec MethodSpec::damped_newton(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("MethodSpec: damping must be > 0");
  return {Kind::FixedDampedNewton, gamma, 1.0};
}

MethodSpec MethodSpec::cubic_newton(double M) {
  if (!(M > 0.0)) throw std::invalid_argument("MethodSpec: M must be > 0");
  return {Kind::CubicNewton, 1.0, M};
}

MethodSpec MethodSpec::cubic_newton_step(double M, double alpha) {
  if (!(M > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("MethodSpec: M and step must be > 0");
  return {Kind::CubicNewtonStep, alpha, M};
}

MethodSpec MethodSpec::grad_reg_newton1(double M) {
  if (!(M > 0.0)) throw std::invalid_argument("MethodSpec: M must be > 0");
  return {Kind::GradRegNewton1, 1.0, M};
}

MethodSpec MethodSpec::grad_reg_newton2(double M) {
  if (!(M > 0.0)) throw std::invalid_argument("MethodSpec: M must be > 0");
  return {Kind::GradRegNewton2, 1.0, M};
}

MethodSpec MethodSpec::adaptive_damped_newton(double M) {
  if (!(M > 0.0)) throw std::invalid_argument("MethodSpec: M must be > 0");
  return {Kind::AdaptiveDampedNewton, 1.0, M};
}

std::string MethodSpec::name() const {
  switch (kind) {
    case Kind::Newton: return "newton";
    case Kind::Gradient: return "gradient";
    case Kind::FixedDampedNewton: return "damped_newton";
    case Kind::CubicNewton: return "cubic_newton";
    case Kind::CubicNewtonStep: return "cubic_newton_step";
    case Kind::GradRegNewton1: return "grad_reg_newton1";
    case Kind::GradRegNewton2: return "grad_reg_newton2";
    case Kind::AdaptiveDampedNewton: return "adaptive_damped_newton";
  }
  return "unknown";
}

namespace {

// Global minimizer displacement of g d + h d^2/2 + (Mr/6) |d|^3; ties between
// two global minimizers break to the left.
double cubic_model_step(double g, double h, double Mr) {
  struct Candidate {
    double d;
    double model;
  };
  std::vector<Candidate> cands;
  auto model = [&](double d) {
    return g * d + 0.5 * h * d * d + Mr / 6.0 * std::abs(d) * d * d;
  };
  // d >= 0 branch: (Mr/2) d^2 + h d + g = 0, local min at the larger root
  {
    const double disc = h * h - 2.0 * Mr * g;
    if (disc >= 0.0) {
      const double d = (-h + std::sqrt(disc)) / Mr;
      if (d >= 0.0) cands.push_back({d, model(d)});
    }
  }
  // d <= 0 branch: -(Mr/2) d^2 + h d + g = 0, local min at the smaller root
  {
    const double disc = h * h + 2.0 * Mr * g;
    if (disc >= 0.0) {
      const double d = (h - std::sqrt(disc)) / Mr;
      if (d <= 0.0) cands.push_back({d, model(d)});
    }
  }
  if (cands.empty()) throw StepError("cubic step: no stationary point (malformed model)");
  const double best = std::min(cands[0].model, cands.size() > 1 ? cands[1].model : kInf);
  double chosen = kInf;
  for (const auto& c : cands) {
    if (c.model <= best + 1e-14 * (1.0 + std::abs(best))) chosen = std::min(chosen, c.d);
  }
  return chosen;
}

} // namespace

double step_from_values(const MethodSpec& method, double x, double g, double h) {
  switch (method.kind) {
    case MethodSpec::Kind::Newton:
      if (h == 0.0) throw StepError("newton step: zero second derivative");
      return x - g / h;
    case MethodSpec::Kind::Gradient:
      return x - method.step * g;
    case MethodSpec::Kind::FixedDampedNewton:
      if (h == 0.0) throw StepError("damped newton step: zero second derivative");
      return x - method.step * g / h;
    case MethodSpec::Kind::CubicNewton:
      return x + cubic_model_step(g, h, method.M);
    case MethodSpec::Kind::CubicNewtonStep:
      return x + cubic_model_step(g, h, method.M / method.step);
    case MethodSpec::Kind::GradRegNewton1: {
      const double denom = h + method.M * std::abs(g);
      if (std::abs(denom) < 1e-300) throw StepError("grad-reg newton step: vanishing denominator");
      return x - g / denom;
    }
    case MethodSpec::Kind::GradRegNewton2: {
      const double denom = h + std::sqrt(0.5 * method.M * std::abs(g));
      if (std::abs(denom) < 1e-300) throw StepError("grad-reg newton step: vanishing denominator");
      return x - g / denom;
    }
    case MethodSpec::Kind::AdaptiveDampedNewton: {
      if (!(h > 0.0)) throw StepError("adaptive damped newton step: needs h > 0");
      const double gamma = 1.0 / (1.0 + method.M * std::sqrt(g * g / h));
      return x - gamma * g / h;
    }
  }
  throw StepError("unknown method kind");
}

double step(const MethodSpec& method, const PiecewiseFunction& f, double x) {
  return step_from_values(method, x, f.deriv(x), f.second(x));
}

Trajectory run(const MethodSpec& method, const PiecewiseFunction& f, double x0, int steps,
               std::optional<double> xstar) {
  if (steps < 1) throw std::invalid_argument("run: need at least one step");
  Trajectory traj;
  double x = x0;
  for (int k = 0; k <= steps; ++k) {
    TrajectoryPoint p;
    p.x = x;
    p.f = f.value(x);
    p.g = f.deriv(x);
    p.h = f.second(x);
    p.abs_g = std::abs(p.g);
    p.lambda = p.h > 0.0 ? p.abs_g / std::sqrt(p.h) : std::nan("");
    p.eta = p.h > 0.0 ? method.M * p.abs_g / p.h : std::nan("");
    if (xstar) p.dist = std::abs(x - *xstar);
    traj.points.push_back(p);
    if (k == steps) break;
    try {
      x = step_from_values(method, x, p.g, p.h);
    } catch (const StepError& e) {
      throw StepError(e.what(), k);
    }
  }
  return traj;
}

double analytic_bound(const std::string& name, const std::map<std::string, double>& in) {
  auto get = [&](const char* key) {
    auto it = in.find(key);
    if (it == in.end())
      throw std::invalid_argument("analytic_bound: missing input " + std::string(key));
    return it->second;
  };

  if (name == "cnm_descent_old") {
    const double g = get("g"), h = get("h"), M = get("M");
    const double m = std::max(std::sqrt(std::abs(g) / M), -2.0 / 3.0 * h / M);
    return M / 12.0 * m * m * m;
  }
  if (name == "cnm_descent_old_grad") {
    const double g = get("g"), M = get("M");
    return M / 12.0 * std::pow(std::abs(g) / M, 1.5);
  }
  if (name == "cnm_descent_improved") {
    const double g = get("g"), M = get("M");
    return 5.0 * M / 12.0 * std::pow(std::abs(g) / M, 1.5);
  }
  if (name == "cnm_sublinear_old") {
    const double R = get("R"), M = get("M"), N = get("N");
    return 4.0 * std::cbrt(M) * std::pow(1.5 * R / N, 2.0 / 3.0);
  }
  if (name == "cnm_sublinear_improved") {
    const double R = get("R"), M = get("M"), N = get("N");
    return 4.0 * std::cbrt(M) / std::pow(5.0, 2.0 / 3.0) * std::pow(1.5 * R / N, 2.0 / 3.0);
  }
  if (name == "gnm2_local") {
    const double g = get("g"), M = get("M"), mu = get("mu");
    return M / (2.0 * mu * mu) * g * g + std::sqrt(0.5 * M) / mu * std::pow(std::abs(g), 1.5);
  }
  if (name == "newton_local") {
    const double r = get("r"), M = get("M"), mu = get("mu");
    const double q = M / mu * r;
    if (q > 2.0 / 3.0) throw std::domain_error("analytic_bound: newton_local needs (M/mu) r <= 2/3");
    return q * r / (2.0 * (1.0 - q));
  }
  if (name == "gm_contraction") {
    const double r = get("r"), h = get("h"), M = get("M"), mu = get("mu"), L = get("L");
    const double b1 = 1.0 - h * (mu - 0.5 * M * r);
    const double b2 = h * (L + 0.5 * M * r) - 1.0;
    return std::max(b1, b2) * r;
  }
  if (name == "sc_nm") {
    const double lam = get("lambda");
    if (!(lam <= 1.0)) throw std::domain_error("analytic_bound: sc_nm needs lambda <= 1");
    return 4.0 - lam * lam - 4.0 * std::sqrt(1.0 - lam * lam);
  }
  if (name == "dnm_sc") {
    const double lam = get("lambda"), gamma = get("gamma");
    const double cap = lam > 0.0 ? 2.0 * (std::sqrt(1.0 + lam * lam * lam) - 1.0) / (lam * lam * lam)
                                 : 1.0;
    if (gamma > cap + 1e-12) throw std::domain_error("analytic_bound: dnm_sc damping too large");
    return lam - gamma * lam + gamma * lam * lam;
  }
  if (name == "gnm1_qsc") {
    const double eta = get("eta");
    return std::exp(eta / (eta + 1.0)) * (eta - 1.0) + 1.0;
  }
  if (name == "gnm1_qsc_old") {
    const double eta = get("eta");
    return std::exp(eta) * (std::exp(eta) + eta * eta - eta - 1.0);
  }
  if (name == "qsc_newton") {
    const double g = get("g"), M = get("M"), mu = get("mu");
    const double t = M / mu * std::abs(g);
    return mu / M * (std::exp(t) - t - 1.0);
  }
  throw std::invalid_argument("analytic_bound: unknown bound " + name);
}

} // namespace univpep
