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

#include "univpep/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace univpep {

using nlohmann::json;

namespace {

json class_to_obj(const ClassSpec& spec) {
  json j;
  switch (spec.kind) {
    case ClassKind::HessianLipschitz: j["kind"] = "hl"; break;
    case ClassKind::StronglyConvexHessianLipschitz: j["kind"] = "schl"; break;
    case ClassKind::SelfConcordant: j["kind"] = "sc"; break;
    case ClassKind::QuasiSelfConcordant: j["kind"] = "qsc"; break;
    case ClassKind::GeneralizedSC: j["kind"] = "gsc"; break;
    case ClassKind::BasicLipschitz: j["kind"] = "lip"; break;
    case ClassKind::Smooth: j["kind"] = "smooth"; break;
  }
  j["M"] = spec.M;
  j["order"] = spec.order;
  if (spec.kind == ClassKind::StronglyConvexHessianLipschitz) j["mu"] = spec.mu;
  if (spec.kind == ClassKind::GeneralizedSC) {
    j["alpha"] = spec.alpha;
    j["nonneg"] = spec.nonneg;
  }
  return j;
}

ClassSpec class_from_obj(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double M = j.value("M", 1.0);
  ClassSpec spec;
  if (kind == "hl") {
    spec = ClassSpec::hessian_lipschitz(M);
  } else if (kind == "schl") {
    spec = ClassSpec::strongly_convex_hessian_lipschitz(M, j.value("mu", 0.0));
  } else if (kind == "sc") {
    spec = ClassSpec::self_concordant(M);
  } else if (kind == "qsc") {
    spec = ClassSpec::quasi_self_concordant(M);
  } else if (kind == "gsc") {
    spec = ClassSpec::generalized_sc(M, j.value("alpha", 0.0));
    spec.nonneg = j.value("nonneg", true);
  } else if (kind == "lip") {
    spec = ClassSpec::basic_lipschitz(M);
  } else if (kind == "smooth") {
    spec = ClassSpec::smooth(M);
  } else {
    throw std::invalid_argument("class_from_json: unknown kind " + kind);
  }
  if (j.contains("order")) spec.order = j.at("order").get<int>();
  spec.validate();
  return spec;
}

json dataset_to_obj(const Dataset& data) {
  json pts = json::array();
  for (const auto& p : data.points) {
    json q;
    q["x"] = p.x;
    if (p.f) q["f"] = *p.f;
    if (p.g) q["g"] = *p.g;
    if (p.h) q["h"] = *p.h;
    pts.push_back(q);
  }
  return json{{"points", pts}};
}

Dataset dataset_from_obj(const json& j) {
  Dataset out;
  for (const auto& q : j.at("points")) {
    SecondOrderPoint p;
    p.x = q.at("x").get<double>();
    if (q.contains("f")) p.f = q.at("f").get<double>();
    if (q.contains("g")) p.g = q.at("g").get<double>();
    if (q.contains("h")) p.h = q.at("h").get<double>();
    out.points.push_back(p);
  }
  return out;
}

const char* term_kind_name(Term::Kind k) {
  switch (k) {
    case Term::Kind::Mono: return "mono";
    case Term::Kind::ExpAffine: return "exp";
    case Term::Kind::PowAffine: return "pow";
    case Term::Kind::LogAffine: return "log";
    case Term::Kind::XLogAffine: return "xlog";
    case Term::Kind::Infinity: return "inf";
  }
  return "?";
}

json piecewise_to_obj(const PiecewiseFunction& f) {
  json segs = json::array();
  for (const auto& s : f.segments()) {
    json terms = json::array();
    for (const auto& t : s.terms) {
      json jt;
      jt["kind"] = term_kind_name(t.kind);
      switch (t.kind) {
        case Term::Kind::Mono:
          jt["c"] = t.c;
          jt["n"] = t.n;
          break;
        case Term::Kind::Infinity:
          break;
        case Term::Kind::PowAffine:
          jt["p"] = t.p;
          [[fallthrough]];
        default:
          jt["c"] = t.c;
          jt["a"] = t.a;
          jt["b"] = t.b;
          break;
      }
      terms.push_back(jt);
    }
    json js;
    if (std::isfinite(s.lo)) js["lo"] = s.lo;
    if (std::isfinite(s.hi)) js["hi"] = s.hi;
    js["terms"] = terms;
    segs.push_back(js);
  }
  return json{{"segments", segs}};
}

PiecewiseFunction piecewise_from_obj(const json& j) {
  std::vector<Segment> segs;
  for (const auto& js : j.at("segments")) {
    std::vector<Term> terms;
    for (const auto& jt : js.at("terms")) {
      const std::string kind = jt.at("kind").get<std::string>();
      if (kind == "mono") {
        terms.push_back(Term::mono(jt.at("c").get<double>(), jt.at("n").get<int>()));
      } else if (kind == "exp") {
        terms.push_back(
            Term::exp_affine(jt.at("c").get<double>(), jt.at("a").get<double>(), jt.at("b").get<double>()));
      } else if (kind == "pow") {
        terms.push_back(Term::pow_affine(jt.at("c").get<double>(), jt.at("a").get<double>(),
                                         jt.at("b").get<double>(), jt.at("p").get<double>()));
      } else if (kind == "log") {
        terms.push_back(
            Term::log_affine(jt.at("c").get<double>(), jt.at("a").get<double>(), jt.at("b").get<double>()));
      } else if (kind == "xlog") {
        terms.push_back(
            Term::x_log_affine(jt.at("c").get<double>(), jt.at("a").get<double>(), jt.at("b").get<double>()));
      } else if (kind == "inf") {
        terms.push_back(Term::infinity());
      } else {
        throw std::invalid_argument("piecewise_from_json: unknown term kind " + kind);
      }
    }
    segs.emplace_back(js.value("lo", -kInf), js.value("hi", kInf), std::move(terms));
  }
  return PiecewiseFunction(std::move(segs));
}

json method_to_obj(const MethodSpec& m) {
  json j;
  j["kind"] = m.name();
  using K = MethodSpec::Kind;
  if (m.kind == K::Gradient || m.kind == K::FixedDampedNewton || m.kind == K::CubicNewtonStep)
    j["step"] = m.step;
  if (m.kind == K::CubicNewton || m.kind == K::CubicNewtonStep || m.kind == K::GradRegNewton1 ||
      m.kind == K::GradRegNewton2 || m.kind == K::AdaptiveDampedNewton)
    j["M"] = m.M;
  return j;
}

MethodSpec method_from_obj(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "newton") return MethodSpec::newton();
  if (kind == "gradient") return MethodSpec::gradient(j.at("step").get<double>());
  if (kind == "damped_newton") return MethodSpec::damped_newton(j.at("step").get<double>());
  if (kind == "cubic_newton") return MethodSpec::cubic_newton(j.value("M", 1.0));
  if (kind == "cubic_newton_step")
    return MethodSpec::cubic_newton_step(j.value("M", 1.0), j.at("step").get<double>());
  if (kind == "grad_reg_newton1") return MethodSpec::grad_reg_newton1(j.value("M", 1.0));
  if (kind == "grad_reg_newton2") return MethodSpec::grad_reg_newton2(j.value("M", 1.0));
  if (kind == "adaptive_damped_newton")
    return MethodSpec::adaptive_damped_newton(j.value("M", 1.0));
  throw std::invalid_argument("method_from_json: unknown kind " + kind);
}

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::AbsGradLast: return "abs_grad_last";
    case Measure::AbsGradBest: return "abs_grad_best";
    case Measure::FuncGapLast: return "func_gap_last";
    case Measure::DistLast: return "dist_last";
    case Measure::NewtonDecrementLast: return "newton_decrement_last";
    case Measure::EtaLast: return "eta_last";
  }
  return "?";
}

Measure measure_from_name(const std::string& s) {
  if (s == "abs_grad_last") return Measure::AbsGradLast;
  if (s == "abs_grad_best") return Measure::AbsGradBest;
  if (s == "func_gap_last") return Measure::FuncGapLast;
  if (s == "dist_last") return Measure::DistLast;
  if (s == "newton_decrement_last") return Measure::NewtonDecrementLast;
  if (s == "eta_last") return Measure::EtaLast;
  throw std::invalid_argument("problem_from_json: unknown measure " + s);
}

const char* initial_name(InitialKind k) {
  switch (k) {
    case InitialKind::FuncGap: return "func_gap";
    case InitialKind::AbsGrad: return "abs_grad";
    case InitialKind::Dist: return "dist";
    case InitialKind::NewtonDecrement: return "newton_decrement";
    case InitialKind::Eta: return "eta";
  }
  return "?";
}

InitialKind initial_from_name(const std::string& s) {
  if (s == "func_gap") return InitialKind::FuncGap;
  if (s == "abs_grad") return InitialKind::AbsGrad;
  if (s == "dist") return InitialKind::Dist;
  if (s == "newton_decrement") return InitialKind::NewtonDecrement;
  if (s == "eta") return InitialKind::Eta;
  throw std::invalid_argument("problem_from_json: unknown initial condition " + s);
}

} // namespace

std::string class_to_json(const ClassSpec& spec) { return class_to_obj(spec).dump(); }

ClassSpec class_from_json(const std::string& text) {
  return class_from_obj(json::parse(text));
}

std::string dataset_to_json(const Dataset& data, const ClassSpec* cls) {
  json j = dataset_to_obj(data);
  if (cls) j["class"] = class_to_obj(*cls);
  return j.dump();
}

Dataset dataset_from_json(const std::string& text, ClassSpec* cls_out) {
  const json j = json::parse(text);
  if (cls_out && j.contains("class")) *cls_out = class_from_obj(j.at("class"));
  return dataset_from_obj(j);
}

std::string verdict_to_json(const FeasibilityVerdict& verdict) {
  json j;
  j["feasible"] = verdict.feasible;
  j["max_residual"] = verdict.max_residual == -kInf ? json() : json(verdict.max_residual);
  json v = json::array();
  for (const auto& viol : verdict.violations) {
    v.push_back(json{{"i", viol.i}, {"j", viol.j}, {"tag", viol.tag}, {"residual", viol.residual}});
  }
  j["violations"] = v;
  return j.dump();
}

std::string piecewise_to_json(const PiecewiseFunction& f) { return piecewise_to_obj(f).dump(); }

PiecewiseFunction piecewise_from_json(const std::string& text) {
  return piecewise_from_obj(json::parse(text));
}

std::string method_to_json(const MethodSpec& method) { return method_to_obj(method).dump(); }

MethodSpec method_from_json(const std::string& text) {
  return method_from_obj(json::parse(text));
}

std::string problem_to_json(const PepProblem& p) {
  json j;
  j["class"] = class_to_obj(p.cls);
  j["method"] = method_to_obj(p.method);
  j["N"] = p.iterations;
  j["measure"] = measure_name(p.measure);
  j["initial"] = json{{"kind", initial_name(p.initial)}, {"R", p.R}};
  j["stationarity"] = p.stationarity;
  return j.dump();
}

PepProblem problem_from_json(const std::string& text) {
  const json j = json::parse(text);
  PepProblem p;
  p.cls = class_from_obj(j.at("class"));
  p.method = method_from_obj(j.at("method"));
  p.iterations = j.at("N").get<int>();
  p.measure = measure_from_name(j.at("measure").get<std::string>());
  p.initial = initial_from_name(j.at("initial").at("kind").get<std::string>());
  p.R = j.at("initial").at("R").get<double>();
  p.stationarity = j.value("stationarity", false);
  p.validate();
  return p;
}

std::string solution_to_json(const PepSolution& sol) {
  json j;
  j["value"] = sol.value;
  j["witness"] = dataset_to_obj(sol.witness);
  j["feasibility_residual"] = sol.feasibility_residual;
  j["replay_residual"] = sol.replay_residual;
  if (sol.certificate) j["certificate"] = piecewise_to_obj(*sol.certificate);
  j["solver"] = json{{"restarts", sol.restarts_used}, {"seed", sol.seed}};
  if (sol.known) {
    j["known_value"] = *sol.known;
    j["known_gap"] = sol.known_gap;
  }
  return j.dump();
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::string out = "k,x,f,g,h,abs_g,lambda,eta,dist\n";
  for (std::size_t k = 0; k < t.points.size(); ++k) {
    const auto& p = t.points[k];
    out += std::to_string(k);
    for (double v : {p.x, p.f, p.g, p.h, p.abs_g}) out += "," + csv_number(v);
    out += "," + (std::isnan(p.lambda) ? std::string() : csv_number(p.lambda));
    out += "," + (std::isnan(p.eta) ? std::string() : csv_number(p.eta));
    out += "," + (p.dist ? csv_number(*p.dist) : std::string());
    out += "\n";
  }
  return out;
}

} // namespace univpep
