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

#include "univpep/pep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <thread>

#include "univpep/conditions.hpp"
#include "univpep/random_members.hpp"

namespace univpep {

void PepProblem::validate() const {
  cls.validate();
  if (iterations < 1 || iterations > 12)
    throw std::invalid_argument("PepProblem: iterations must be in 1..12");
  if (!(R > 0.0)) throw std::invalid_argument("PepProblem: R must be > 0");
  if (cls.order != 2) throw std::invalid_argument("PepProblem: second-order classes only");
  const bool positive_h = cls.kind == ClassKind::SelfConcordant ||
                          cls.kind == ClassKind::QuasiSelfConcordant ||
                          cls.kind == ClassKind::StronglyConvexHessianLipschitz;
  if ((measure == Measure::NewtonDecrementLast || measure == Measure::EtaLast ||
       initial == InitialKind::NewtonDecrement || initial == InitialKind::Eta) &&
      !positive_h)
    throw std::invalid_argument("PepProblem: decrement measures need a positive-curvature class");
  const bool needs_values = initial == InitialKind::FuncGap || measure == Measure::FuncGapLast;
  if (needs_values && cls.kind != ClassKind::HessianLipschitz)
    throw std::invalid_argument(
        "PepProblem: value-based settings are only available for the Hessian-Lipschitz class");
  const bool needs_star = measure == Measure::DistLast || measure == Measure::FuncGapLast ||
                          initial == InitialKind::Dist;
  if (needs_star && !stationarity)
    throw std::invalid_argument("PepProblem: distance/value-gap settings need stationarity");
}

namespace {

struct Layout {
  int N = 1;
  bool with_values = false;
  bool has_star = false;
  bool g0_fixed = false, h0_fixed = false;
  double g0 = 0.0, h0 = 0.0;
  int idx_g0 = -1, idx_h0 = -1;
  std::vector<int> idx_g, idx_h; // size N+1; entry <0 means fixed
  std::vector<int> idx_f;        // size N+1 when with_values; f_0 = 0
  int idx_xs = -1, idx_hs = -1, idx_fs = -1;
};

bool positive_curvature(const ClassSpec& cls) {
  return cls.kind == ClassKind::SelfConcordant || cls.kind == ClassKind::QuasiSelfConcordant ||
         cls.kind == ClassKind::StronglyConvexHessianLipschitz;
}

bool affine_covariant(const MethodSpec& m) {
  using K = MethodSpec::Kind;
  return m.kind == K::Newton || m.kind == K::FixedDampedNewton ||
         m.kind == K::AdaptiveDampedNewton;
}

bool scale_invariant(const MethodSpec& m) {
  using K = MethodSpec::Kind;
  return m.kind == K::Newton || m.kind == K::FixedDampedNewton || m.kind == K::GradRegNewton1;
}

struct Decoded {
  // N+1 iterate entries, optionally followed by the stationary point
  static constexpr int kMax = 16;
  std::array<double, kMax> x{}, f{}, g{}, h{};
  int n = 0;
  bool ok = true;
};

class System {
 public:
  PepProblem prob;
  Layout lay;
  std::vector<std::string> names;
  std::vector<double> lo, hi;
  std::vector<double> sample_lo, sample_hi; // coarse-stage sampling windows

  void decode_into(const std::vector<double>& th, Decoded& d) const {
    const int N = lay.N;
    d.ok = true;
    d.n = N + 1 + (lay.has_star ? 1 : 0);
    for (int k = 0; k <= N; ++k) {
      d.g[k] = lay.idx_g[k] >= 0 ? th[lay.idx_g[k]] : lay.g0;
      d.h[k] = lay.idx_h[k] >= 0 ? th[lay.idx_h[k]] : lay.h0;
      if (lay.with_values) d.f[k] = k == 0 ? 0.0 : th[lay.idx_f[k]];
    }
    d.x[0] = 0.0;
    for (int k = 0; k < N; ++k) {
      try {
        d.x[k + 1] = step_from_values(prob.method, d.x[k], d.g[k], d.h[k]);
      } catch (const StepError&) {
        d.ok = false;
        return;
      }
      if (!std::isfinite(d.x[k + 1]) || std::abs(d.x[k + 1]) > 1e8) {
        d.ok = false;
        return;
      }
    }
    if (lay.has_star) {
      const int s = N + 1;
      d.x[s] = th[lay.idx_xs];
      d.g[s] = 0.0;
      d.h[s] = th[lay.idx_hs];
      if (lay.with_values) d.f[s] = th[lay.idx_fs];
    }
  }

  void interpolation_residuals(const Decoded& d, std::vector<double>& out) const {
    const auto& cls = prob.cls;
    const double M = cls.M;
    const int n = d.n;
    const bool relaxed = relaxed_mode;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (relaxed) {
          switch (*prob_relaxed) {
            case ClassicalCondition::QscExisting:
              out.push_back(cond::qsc_classical(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j], M));
              break;
            case ClassicalCondition::QscImproved:
              out.push_back(
                  cond::qsc_classical_improved(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j], d.h[j], M));
              break;
            case ClassicalCondition::CubicBound:
              out.push_back(cond::hl_cubic_bound(d.x[i], d.f[i], d.g[i], d.h[i], d.x[j], d.f[j], M));
              break;
            case ClassicalCondition::CubicImproved:
              out.push_back(cond::hl_cubic_bound_improved(d.x[i], d.f[i], d.g[i], d.h[i], d.x[j],
                                                          d.f[j], d.g[j], M));
              break;
          }
          continue;
        }
        switch (cls.kind) {
          case ClassKind::HessianLipschitz: {
            if (lay.with_values) {
              const auto r = cond::hl_pair_with_values(d.x[i], d.f[i], d.g[i], d.h[i], d.x[j],
                                                       d.f[j], d.g[j], d.h[j], M);
              if (i < j) out.push_back(r.band);
              out.push_back(r.lower);
              if (r.limit_val != -kInf) out.push_back(r.limit_val);
            } else {
              out.push_back(cond::hl_pair_lower(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j], d.h[j], M));
              if (i < j)
                out.push_back(cond::lipschitz_band(d.x[i], d.h[i], d.x[j], d.h[j], M));
            }
            break;
          }
          case ClassKind::StronglyConvexHessianLipschitz: {
            out.push_back(cond::hl_pair_lower(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j], d.h[j], M));
            out.push_back(cond::schl_pair_conditional(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j],
                                                      d.h[j], M, cls.mu));
            if (i < j) out.push_back(cond::lipschitz_band(d.x[i], d.h[i], d.x[j], d.h[j], M));
            break;
          }
          case ClassKind::SelfConcordant: {
            const double ti = 1.0 / std::sqrt(d.h[i]);
            const double tj = 1.0 / std::sqrt(d.h[j]);
            if (i < j) out.push_back(cond::lipschitz_band(d.x[i], ti, d.x[j], tj, M));
            out.push_back(cond::sc_pair_lower(d.x[i], d.g[i], ti, d.x[j], d.g[j], tj, M));
            break;
          }
          case ClassKind::QuasiSelfConcordant: {
            out.push_back(cond::qsc_pair_lower(d.x[i], d.g[i], d.h[i], d.x[j], d.g[j], d.h[j], M));
            if (i < j && d.h[i] > 0.0 && d.h[j] > 0.0)
              out.push_back(
                  cond::lipschitz_band(d.x[i], std::log(d.h[i]), d.x[j], std::log(d.h[j]), M));
            break;
          }
          default:
            throw std::invalid_argument("pep: unsupported class kind");
        }
      }
    }
    if (cls.kind == ClassKind::StronglyConvexHessianLipschitz && !relaxed) {
      for (int i = 0; i < n; ++i) out.push_back(cls.mu - d.h[i]);
    }
  }

  double initial_residual(const Decoded& d) const {
    const int N = lay.N;
    switch (prob.initial) {
      case InitialKind::FuncGap: {
        const double last = lay.has_star && prob.measure == Measure::FuncGapLast
                                ? d.f[N + 1]
                                : d.f[N];
        return (d.f[0] - last) - prob.R;
      }
      case InitialKind::AbsGrad:
        return std::abs(d.g[0]) - prob.R;
      case InitialKind::Dist:
        return std::abs(d.x[0] - d.x[N + 1]) - prob.R;
      case InitialKind::NewtonDecrement:
        return d.g[0] * d.g[0] - prob.R * prob.R * d.h[0];
      case InitialKind::Eta:
        return prob.cls.M * std::abs(d.g[0]) - prob.R * d.h[0];
    }
    return 0.0;
  }

  double measure_value(const Decoded& d) const {
    const int N = lay.N;
    switch (prob.measure) {
      case Measure::AbsGradLast:
        return std::abs(d.g[N]);
      case Measure::AbsGradBest: {
        double best = kInf;
        for (int k = 1; k <= N; ++k) best = std::min(best, std::abs(d.g[k]));
        return best;
      }
      case Measure::FuncGapLast:
        return d.f[N] - d.f[N + 1];
      case Measure::DistLast:
        return std::abs(d.x[N] - d.x[N + 1]);
      case Measure::NewtonDecrementLast:
        return d.h[N] > 0.0 ? std::abs(d.g[N]) / std::sqrt(d.h[N]) : -kInf;
      case Measure::EtaLast:
        return d.h[N] > 0.0 ? prob.cls.M * std::abs(d.g[N]) / d.h[N] : -kInf;
    }
    return -kInf;
  }

  std::optional<ClassicalCondition> prob_relaxed;
  bool relaxed_mode = false;
};

System build_system(const PepProblem& problem, std::optional<ClassicalCondition> relaxed) {
  problem.validate();
  System sys;
  sys.prob = problem;
  sys.prob_relaxed = relaxed;
  sys.relaxed_mode = relaxed.has_value();
  Layout& lay = sys.lay;
  lay.N = problem.iterations;
  lay.with_values =
      problem.initial == InitialKind::FuncGap || problem.measure == Measure::FuncGapLast;
  lay.has_star = problem.stationarity;

  const double Rs = std::max(problem.R, 1.0);
  const double gbox = 1e3 * Rs;
  const bool pos_h = positive_curvature(problem.cls);
  const double hlo = pos_h ? std::max(1e-6, problem.cls.mu) : -1e3;
  const double hhi = 1e3;
  const double fbox = 10.0 * Rs;

  // natural scales of the normalized worst case, used to focus the coarse
  // sampling stage (the full boxes stay wide)
  double gscale = 10.0 * Rs, hscale = 10.0 * Rs;
  switch (problem.initial) {
    case InitialKind::AbsGrad:
      gscale = 10.0 * problem.R;
      hscale = 10.0 * std::max({1.0, problem.cls.mu, problem.cls.M});
      break;
    case InitialKind::Eta:
      gscale = 10.0;
      hscale = 10.0 * problem.cls.M / problem.R;
      break;
    case InitialKind::NewtonDecrement:
      gscale = 10.0 * std::max(problem.R * problem.R, problem.R);
      hscale = 10.0 * std::max(problem.R * problem.R, 1.0);
      break;
    default:
      break;
  }

  // normalizations beyond x_0 = 0, f_0 = 0
  if (problem.cls.kind == ClassKind::SelfConcordant &&
      problem.initial == InitialKind::NewtonDecrement && affine_covariant(problem.method)) {
    lay.g0_fixed = lay.h0_fixed = true;
    lay.g0 = -problem.R * problem.R;
    lay.h0 = problem.R * problem.R;
  } else if (problem.cls.kind == ClassKind::QuasiSelfConcordant &&
             problem.initial == InitialKind::Eta && scale_invariant(problem.method)) {
    lay.g0_fixed = lay.h0_fixed = true;
    lay.g0 = 1.0;
    lay.h0 = problem.cls.M / problem.R;
  }

  auto add_var = [&](const std::string& name, double l, double u, double sl, double sh) {
    sys.names.push_back(name);
    sys.lo.push_back(l);
    sys.hi.push_back(u);
    sys.sample_lo.push_back(std::max(l, sl));
    sys.sample_hi.push_back(std::min(u, sh));
    return static_cast<int>(sys.names.size()) - 1;
  };

  lay.idx_g.assign(lay.N + 1, -1);
  lay.idx_h.assign(lay.N + 1, -1);
  if (lay.with_values) lay.idx_f.assign(lay.N + 1, -1);
  for (int k = 0; k <= lay.N; ++k) {
    if (k == 0 && lay.g0_fixed) {
      lay.idx_g[0] = -1;
    } else {
      lay.idx_g[k] = add_var("g" + std::to_string(k), -gbox, gbox, -gscale, gscale);
    }
    if (k == 0 && lay.h0_fixed) {
      lay.idx_h[0] = -1;
    } else {
      lay.idx_h[k] = add_var("h" + std::to_string(k), hlo, hhi, -hscale, hscale);
    }
    if (lay.with_values && k > 0)
      lay.idx_f[k] = add_var("f" + std::to_string(k), -fbox, fbox, -2.0 * problem.R, 2.0 * problem.R);
  }
  if (lay.has_star) {
    lay.idx_xs = add_var("x_star", -10.0 * Rs, 10.0 * Rs, -2.0 * problem.R, 2.0 * problem.R);
    const double hs_lo = problem.star_curvature.value_or(std::max(0.0, problem.cls.mu));
    const double hs_hi = problem.star_curvature.value_or(hhi);
    lay.idx_hs = add_var("h_star", hs_lo, hs_hi, hs_lo, std::min(hs_hi, hscale));
    if (lay.with_values) lay.idx_fs = add_var("f_star", -fbox, fbox, -2.0 * problem.R, 2.0 * problem.R);
  }
  return sys;
}

ConstraintSystem to_constraint_system(std::shared_ptr<System> sys) {
  ConstraintSystem cs;
  cs.names = sys->names;
  cs.lower = sys->lo;
  cs.upper = sys->hi;
  cs.residuals = [sys](const std::vector<double>& th, std::vector<double>& out) {
    out.clear();
    Decoded d;
    sys->decode_into(th, d);
    if (!d.ok) {
      out.push_back(kInf);
      return;
    }
    sys->interpolation_residuals(d, out);
    out.push_back(sys->initial_residual(d));
  };
  cs.objective = [sys](const std::vector<double>& th) {
    Decoded d;
    sys->decode_into(th, d);
    if (!d.ok) return -kInf;
    return sys->measure_value(d);
  };
  cs.decode = [sys](const std::vector<double>& th) {
    Decoded d;
    sys->decode_into(th, d);
    Dataset out;
    for (int k = 0; k < d.n; ++k) {
      SecondOrderPoint p;
      p.x = d.x[k];
      p.g = d.g[k];
      p.h = d.h[k];
      if (sys->lay.with_values) p.f = d.f[k];
      out.points.push_back(p);
    }
    return out;
  };
  cs.encode = [sys](const Dataset& data) -> std::optional<std::vector<double>> {
    const Layout& lay = sys->lay;
    const std::size_t want = lay.N + 1 + (lay.has_star ? 1 : 0);
    if (data.points.size() != want) return std::nullopt;
    std::vector<double> th(sys->names.size(), 0.0);
    auto put = [&](int idx, double v) {
      if (idx < 0) return;
      th[idx] = std::clamp(v, sys->lo[idx], sys->hi[idx]);
    };
    for (int k = 0; k <= lay.N; ++k) {
      const auto& p = data.points[k];
      if (!p.g || !p.h) return std::nullopt;
      if (k == 0 && lay.g0_fixed && std::abs(*p.g - lay.g0) > 1e-6) return std::nullopt;
      if (k == 0 && lay.h0_fixed && std::abs(*p.h - lay.h0) > 1e-6) return std::nullopt;
      put(lay.idx_g[k], *p.g);
      put(lay.idx_h[k], *p.h);
      if (lay.with_values) {
        if (!p.f) return std::nullopt;
        if (k > 0) put(lay.idx_f[k], *p.f - *data.points[0].f);
      }
    }
    if (lay.has_star) {
      const auto& p = data.points[lay.N + 1];
      if (!p.h) return std::nullopt;
      put(lay.idx_xs, p.x);
      put(lay.idx_hs, *p.h);
      if (lay.with_values && p.f) put(lay.idx_fs, *p.f - *data.points[0].f);
    }
    return th;
  };
  std::vector<double> probe(sys->names.size());
  for (std::size_t i = 0; i < probe.size(); ++i)
    probe[i] = std::clamp(0.5, sys->lo[i], sys->hi[i]);
  std::vector<double> out;
  cs.residuals(probe, out);
  cs.residual_count = out.size();
  return cs;
}

// ---------------------------------------------------------------------------
// search machinery

double penalty(const std::vector<double>& res) {
  double p = 0.0;
  for (double r : res) {
    if (r > 0.0) p += std::isfinite(r) ? r * r : 1e30;
  }
  return p;
}

double max_residual(const std::vector<double>& res) {
  double m = -kInf;
  for (double r : res) m = std::max(m, r);
  return m;
}

struct Candidate {
  double value = -kInf;
  double maxres = kInf;
  std::vector<double> theta;
};

// penalized objective that also remembers the best feasible point it has seen
struct Merit {
  const ConstraintSystem& cs;
  double rho;
  double feastol;
  Candidate* best = nullptr;
  mutable std::vector<double> scratch;
  double operator()(const std::vector<double>& th) const {
    const double obj = cs.objective(th);
    if (!std::isfinite(obj) && obj < 0) return -kInf;
    cs.residuals(th, scratch);
    if (best) {
      const double mr = max_residual(scratch);
      if (mr <= feastol && obj > best->value) {
        best->value = obj;
        best->maxres = mr;
        best->theta = th;
      }
    }
    return obj - rho * penalty(scratch);
  }
};

// deterministic compass search with adaptive per-coordinate steps
template <typename F>
double pattern_search(F&& fn, std::vector<double>& th, const std::vector<double>& lo,
                      const std::vector<double>& hi, int budget) {
  const std::size_t n = th.size();
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double width = std::isfinite(hi[i] - lo[i]) ? hi[i] - lo[i] : 8.0;
    step[i] = std::min(width / 8.0, 0.5 * (1.0 + std::abs(th[i])));
  }
  double best = fn(th);
  int evals = 0;
  while (evals < budget) {
    bool improved = false;
    for (std::size_t i = 0; i < n && evals < budget; ++i) {
      for (double sgn : {+1.0, -1.0}) {
        double saved = th[i];
        th[i] = std::clamp(saved + sgn * step[i], lo[i], hi[i]);
        if (th[i] == saved) continue;
        const double v = fn(th);
        ++evals;
        if (v > best) {
          best = v;
          improved = true;
          break; // keep the move
        }
        th[i] = saved;
      }
    }
    if (improved) {
      for (auto& s : step) s = std::min(s * 1.6, 1e3);
    } else {
      bool all_tiny = true;
      for (std::size_t i = 0; i < n; ++i) {
        step[i] *= 0.5;
        if (step[i] > 1e-12 * (1.0 + std::abs(th[i]))) all_tiny = false;
      }
      if (all_tiny) break;
    }
  }
  return best;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.theta < b.theta; // lexicographic tie-break keeps reduction deterministic
}

Candidate polish(const ConstraintSystem& cs, std::vector<double> th, double feastol, int budget) {
  Candidate best;
  best.theta = th;
  std::vector<double> res;
  for (double rho : {1e3, 1e5, 1e7, 1e9, 1e11, 1e13}) {
    Merit merit{cs, rho, feastol, &best, {}};
    merit(th); // score the start itself
    pattern_search(merit, th, cs.lower, cs.upper, budget);
    cs.residuals(th, res);
    if (max_residual(res) <= 0.5 * feastol) break;
  }
  if (best.value == -kInf) {
    cs.residuals(th, res);
    best.theta = th;
    best.maxres = max_residual(res);
  }
  return best;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UNIVPEP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

// ---------------------------------------------------------------------------
// seeding

// trajectory of `method` on `f` from x0, as witness data mapped to normalized
// coordinates by the given affine data transform
Dataset trajectory_dataset(const MethodSpec& method, const PiecewiseFunction& f, double x0,
                           int N, bool with_values, double xmap, double gmap, double hmap,
                           double fmap) {
  Dataset out;
  double x = x0;
  for (int k = 0; k <= N; ++k) {
    SecondOrderPoint p;
    p.x = (x - x0) * xmap;
    p.g = f.deriv(x) * gmap;
    p.h = f.second(x) * hmap;
    if (with_values) p.f = f.value(x) * fmap;
    out.points.push_back(p);
    if (k < N) x = step_from_values(method, x, f.deriv(x), f.second(x));
  }
  return out;
}

std::vector<Dataset> seed_datasets(const PepProblem& prob, std::mt19937_64& rng) {
  std::vector<Dataset> seeds;
  const int N = prob.iterations;
  const double R = prob.R;
  const bool with_values =
      prob.initial == InitialKind::FuncGap || prob.measure == Measure::FuncGapLast;

  auto try_push = [&](auto&& maker) {
    try {
      seeds.push_back(maker());
    } catch (const std::exception&) {
    }
  };

  if (prob.stationarity) {
    // local-rate settings around a pinned minimizer: seed with trajectories of
    // the cubic-by-parts families, which have a stationary point at zero
    if (prob.initial == InitialKind::Dist && prob.cls.kind == ClassKind::HessianLipschitz) {
      const double mu = prob.star_curvature.value_or(1.0);
      auto bisect_stationary = [](const PiecewiseFunction& f) {
        double lo = -2.0, hi = 2.0, flo = f.deriv(lo);
        if (flo * f.deriv(hi) > 0.0) throw std::runtime_error("no stationary point");
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((f.deriv(mid) <= 0.0) == (flo <= 0.0))
            lo = mid;
          else
            hi = mid;
        }
        return 0.5 * (lo + hi);
      };
      auto family_seed = [&](const char* name, double a, double side) {
        return [&, name, a, side] {
          std::map<std::string, double> params = {{"M", prob.cls.M}, {"mu", mu}};
          if (std::string(name) != "newton_local_tight") params["a"] = a;
          const auto f = named_worst_case(name, params);
          const double xs = bisect_stationary(f);
          // translate so the member's minimizer provides the stationary point
          Dataset d = trajectory_dataset(prob.method, f, xs + side * R, N, with_values, 1, 1, 1, 1);
          SecondOrderPoint star;
          star.x = xs - (xs + side * R); // relative to the normalized x0 = 0
          star.g = 0.0;
          star.h = f.second(xs);
          if (with_values) star.f = f.value(xs);
          d.points.push_back(star);
          return d;
        };
      };
      for (double side : {1.0, -1.0}) {
        try_push(family_seed("newton_local_tight", 0.0, side));
        for (double a : {0.0, 0.5 * mu, mu}) {
          try_push(family_seed("dnm_family_g", a, side));
          try_push(family_seed("dnm_family_h", a, side));
        }
      }
    }
    return seeds;
  }

  // named tight instances
  if (prob.cls.kind == ClassKind::SelfConcordant && affine_covariant(prob.method) &&
      prob.initial == InitialKind::NewtonDecrement && R < 1.0) {
    try_push([&] {
      const auto f = named_worst_case("sc_nm_tight", {{"R", R}});
      return trajectory_dataset(prob.method, f, 0.0, N, false, 1, 1, 1, 1);
    });
    try_push([&] {
      const auto f = named_worst_case("dnm_sc_tight", {{"R", R}});
      // f'(0) = 1, f''(0) = 1/R^2; rescale to g0 = -R^2, h0 = R^2
      const double a = -R * R;
      return trajectory_dataset(prob.method, f, 0.0, N, false, 1.0 / a, a, a * a, 1);
    });
  }
  if (prob.cls.kind == ClassKind::QuasiSelfConcordant && scale_invariant(prob.method) &&
      prob.initial == InitialKind::Eta && N == 1 &&
      prob.method.kind == MethodSpec::Kind::GradRegNewton1) {
    try_push([&] {
      const double M = prob.cls.M;
      const double h0 = M / R;
      const double h1 = h0 * std::exp(-(M * R) / (M * R + 1.0));
      Dataset d;
      d.points.push_back(SecondOrderPoint::xgh(0.0, 1.0, h0));
      d.points.push_back(SecondOrderPoint::xgh(-R / (M * R + 1.0), 1.0 + (h1 - h0) / M, h1));
      return d;
    });
  }
  if (prob.cls.kind == ClassKind::HessianLipschitz &&
      (prob.method.kind == MethodSpec::Kind::CubicNewton ||
       prob.method.kind == MethodSpec::Kind::CubicNewtonStep) &&
      prob.initial == InitialKind::FuncGap) {
    try_push([&] {
      const auto f = named_worst_case("cnm_tight", {{"M", prob.cls.M}});
      // rescale so the trajectory's value decrease over N steps equals R
      Trajectory t = run(prob.method, f, 0.0, N);
      const double gap = t.points.front().f - t.points.back().f;
      if (!(gap > 0.0)) throw std::runtime_error("no decrease");
      const double a = R / gap;
      const double b = std::cbrt(a);
      return trajectory_dataset(prob.method, f, 0.0, N, with_values, b, a / b, a / (b * b), a);
    });
  }

  // simulation seeds on random members
  const int sims = 24;
  for (int s = 0; s < sims; ++s) {
    try {
      const auto f = random_member(prob.cls, rng);
      std::uniform_real_distribution<double> x0d(-2.0, 2.0);
      switch (prob.initial) {
        case InitialKind::AbsGrad: {
          // pick a start with |f'| = R if the member allows it, else skip
          double found = kInf;
          for (int it = 0; it < 40; ++it) {
            const double x = x0d(rng);
            if (std::abs(std::abs(f.deriv(x)) - R) <
                std::abs(std::abs(f.deriv(found == kInf ? x : found)) - R))
              found = x;
          }
          if (found == kInf) break;
          // scale values so the start saturates the bound where possible
          const double g0 = f.deriv(found);
          if (g0 == 0.0) break;
          const double c = R / std::abs(g0);
          if (positive_curvature(prob.cls) && prob.cls.mu > 0.0) break; // scaling moves the floor
          seeds.push_back(
              trajectory_dataset(prob.method, f, found, N, with_values, 1, c, c, c));
          break;
        }
        case InitialKind::FuncGap: {
          const double x0 = x0d(rng);
          Trajectory t = run(prob.method, f, x0, N);
          const double gap = t.points.front().f - t.points.back().f;
          if (!(gap > 1e-9)) break;
          const double a = R / gap;
          const double b = std::cbrt(a);
          seeds.push_back(
              trajectory_dataset(prob.method, f, x0, N, with_values, b, a / b, a / (b * b), a));
          break;
        }
        case InitialKind::Eta: {
          if (!scale_invariant(prob.method)) break;
          const double M = prob.cls.M;
          double x_at = kInf;
          for (int it = 0; it < 200; ++it) {
            const double x = x0d(rng);
            const double h = f.second(x);
            const double g = f.deriv(x);
            if (h <= 0.0 || g <= 0.0) continue;
            if (std::abs(M * g / h - R) < 0.02 * R) {
              x_at = x;
              break;
            }
          }
          if (x_at == kInf) break;
          const double c = 1.0 / f.deriv(x_at);
          seeds.push_back(trajectory_dataset(prob.method, f, x_at, N, false, 1, c, c, c));
          break;
        }
        case InitialKind::NewtonDecrement: {
          if (!affine_covariant(prob.method)) break;
          double x_at = kInf;
          for (int it = 0; it < 200; ++it) {
            const double x = x0d(rng);
            const double h = f.second(x);
            const double g = f.deriv(x);
            if (h <= 0.0 || g >= 0.0) continue;
            if (std::abs(std::abs(g) / std::sqrt(h) - R) < 0.02 * R) {
              x_at = x;
              break;
            }
          }
          if (x_at == kInf) break;
          const double a = R / std::sqrt(f.second(x_at));
          seeds.push_back(trajectory_dataset(prob.method, f, x_at, N, false, 1.0 / a, a, a * a, 1));
          break;
        }
        default:
          break;
      }
    } catch (const std::exception&) {
    }
  }
  return seeds;
}

} // namespace

ConstraintSystem formulate(const PepProblem& problem) {
  auto sys = std::make_shared<System>(build_system(problem, std::nullopt));
  return to_constraint_system(sys);
}

namespace {

PepSolution solve_impl(const PepProblem& problem, const SolverConfig& config,
                       std::optional<ClassicalCondition> relaxed) {
  auto sys = std::make_shared<System>(build_system(problem, relaxed));
  ConstraintSystem cs = to_constraint_system(sys);
  const std::size_t n = cs.names.size();
  std::mt19937_64 master(config.seed);
  auto draw = [&](std::size_t i, std::mt19937_64& r) {
    const double a = sys->sample_lo[i], b = sys->sample_hi[i];
    return b > a ? std::uniform_real_distribution<double>(a, b)(r) : a;
  };

  // stage 1: deterministic coarse sampling of the box
  std::vector<std::vector<double>> starts;
  {
    std::vector<std::vector<double>> grid_axes(n);
    int res = n <= 2 ? config.grid_resolution : (n <= 4 ? 8 : 4);
    double total = 1;
    for (std::size_t i = 0; i < n && total < 1e7; ++i) total *= res;
    std::vector<std::pair<double, std::vector<double>>> scored;
    Merit merit{cs, 1e4, 0.0, nullptr, {}};
    if (total <= 65536.0) {
      for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < res; ++k) {
          const double span_lo = sys->sample_lo[i];
          const double span_hi = sys->sample_hi[i];
          grid_axes[i].push_back(span_lo + (span_hi - span_lo) * (k + 0.5) / res);
        }
      }
      std::vector<double> th(n);
      std::vector<int> idx(n, 0);
      while (true) {
        for (std::size_t i = 0; i < n; ++i) th[i] = grid_axes[i][idx[i]];
        scored.emplace_back(merit(th), th);
        std::size_t carry = 0;
        while (carry < n && ++idx[carry] == res) idx[carry++] = 0;
        if (carry == n) break;
      }
    } else {
      std::mt19937_64 grid_rng(config.seed ^ 0x9e3779b97f4a7c15ull);
      std::vector<double> th(n);
      for (int s = 0; s < 8192; ++s) {
        for (std::size_t i = 0; i < n; ++i) th[i] = draw(i, grid_rng);
        scored.emplace_back(merit(th), th);
      }
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t keep = std::min<std::size_t>(scored.size(), config.restarts / 2);
    for (std::size_t i = 0; i < keep; ++i) starts.push_back(scored[i].second);
  }

  // stage 2: simulation and tight-instance seeds
  {
    const bool debug = std::getenv("UNIVPEP_DEBUG") != nullptr;
    int offered = 0, taken = 0;
    for (const auto& d : seed_datasets(problem, master)) {
      ++offered;
      if (auto th = cs.encode(d)) {
        starts.push_back(*th);
        ++taken;
        if (debug) {
          std::vector<double> res;
          cs.residuals(*th, res);
          std::fprintf(stderr, "[pep] seed obj %.9g maxres %.3e\n", cs.objective(*th),
                       max_residual(res));
        }
      }
    }
    if (debug) std::fprintf(stderr, "[pep] seeds offered %d taken %d\n", offered, taken);
  }

  // stage 3: random restarts up to the budget
  {
    std::mt19937_64 rng(config.seed ^ 0xc2b2ae3d27d4eb4full);
    std::vector<double> th(n);
    while (starts.size() < static_cast<std::size_t>(config.restarts)) {
      for (std::size_t i = 0; i < n; ++i) th[i] = draw(i, rng);
      starts.push_back(th);
    }
  }

  const int threads = resolve_threads(config.threads);
  std::vector<Candidate> results(starts.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      results[i] = polish(cs, starts[i], config.feastol, config.polish_budget);
  };
  if (threads <= 1 || starts.size() < 2) {
    work(0, starts.size());
  } else {
    std::vector<std::future<void>> futs;
    const std::size_t chunk = (starts.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(starts.size(), b + chunk);
      if (b < e) futs.push_back(std::async(std::launch::async, work, b, e));
    }
    for (auto& f : futs) f.get();
  }

  std::stable_sort(results.begin(), results.end(), better);

  PepSolution sol;
  sol.seed = config.seed;
  sol.restarts_used = static_cast<int>(results.size());
  sol.known = relaxed ? std::nullopt : known_value(problem);

  std::string last_error = "no feasible candidate found";
  const bool debug = std::getenv("UNIVPEP_DEBUG") != nullptr;
  for (const auto& cand : results) {
    if (cand.value == -kInf) break;
    sol.value = cand.value;
    sol.witness = cs.decode(cand.theta);
    sol.feasibility_residual = cand.maxres;
    if (relaxed) {
      sol.certificate.reset();
      sol.replay_residual = 0.0;
      return sol;
    }
    try {
      const auto report = verify(sol, problem, config.feastol);
      sol.certificate = report.certificate;
      sol.replay_residual = report.replay_residual;
      sol.feasibility_residual = report.feasibility_residual;
      if (sol.known)
        sol.known_gap = std::abs(sol.value - *sol.known) > 1e-2 * std::max(1.0, std::abs(*sol.known));
      return sol;
    } catch (const std::exception& e) {
      last_error = e.what();
      if (debug)
        std::fprintf(stderr, "[pep] candidate value %.9g maxres %.3e rejected: %s\n", cand.value,
                     cand.maxres, e.what());
      continue; // try the next-best candidate
    }
  }
  throw CertificationError("pep solve: " + last_error);
}

} // namespace

PepSolution solve(const PepProblem& problem, const SolverConfig& config) {
  return solve_impl(problem, config, std::nullopt);
}

PepSolution solve_relaxed(const PepProblem& problem, ClassicalCondition which,
                          const SolverConfig& config) {
  return solve_impl(problem, config, which);
}

VerifyReport verify(const PepSolution& solution, const PepProblem& problem, double feastol) {
  problem.validate();
  VerifyReport report;
  CheckOptions opts;
  opts.feastol = feastol;
  const auto verdict = check_dataset(solution.witness, problem.cls, opts);
  report.feasibility_residual = verdict.max_residual;
  if (!verdict.feasible)
    throw CertificationError("verify: witness fails the exact interpolation conditions");

  // classical-conditions verdict for gap illustration
  try {
    if (problem.cls.kind == ClassKind::QuasiSelfConcordant)
      report.classical_residual =
          classical_necessary(solution.witness, problem.cls, ClassicalCondition::QscExisting, opts)
              .max_residual;
    else if (problem.cls.kind == ClassKind::HessianLipschitz && solution.witness.has_values())
      report.classical_residual =
          classical_necessary(solution.witness, problem.cls, ClassicalCondition::CubicBound, opts)
              .max_residual;
  } catch (const std::exception&) {
  }

  PiecewiseFunction cert = reconstruct_interpolant(solution.witness, problem.cls);
  const int N = problem.iterations;
  double replay = 0.0;
  double x = solution.witness.points.at(0).x;
  for (int k = 0; k <= N; ++k) {
    const auto& p = solution.witness.points.at(k);
    replay = std::max(replay, std::abs(x - p.x));
    replay = std::max(replay, std::abs(cert.deriv(x) - *p.g));
    replay = std::max(replay, std::abs(cert.second(x) - *p.h));
    if (p.f) replay = std::max(replay, std::abs(cert.value(x) - *p.f));
    if (k < N) x = step_from_values(problem.method, x, cert.deriv(x), cert.second(x));
  }
  report.replay_residual = replay;
  if (replay > 1e-6)
    throw CertificationError("verify: method replay deviates from the witness");
  report.certificate = std::move(cert);
  report.certified = true;
  return report;
}

std::optional<double> known_value(const PepProblem& p) {
  using K = MethodSpec::Kind;
  const int N = p.iterations;
  try {
    if (p.cls.kind == ClassKind::SelfConcordant && p.cls.M == 1.0 &&
        p.initial == InitialKind::NewtonDecrement &&
        p.measure == Measure::NewtonDecrementLast) {
      if (p.method.kind == K::Newton && N == 1 && p.R <= 1.0)
        return analytic_bound("sc_nm", {{"lambda", p.R}});
      if (p.method.kind == K::FixedDampedNewton) {
        double lam = p.R;
        for (int k = 0; k < N; ++k)
          lam = analytic_bound("dnm_sc", {{"lambda", lam}, {"gamma", p.method.step}});
        return lam;
      }
    }
    if (p.cls.kind == ClassKind::QuasiSelfConcordant && p.method.kind == K::GradRegNewton1 &&
        p.initial == InitialKind::Eta && p.measure == Measure::EtaLast && N == 1 &&
        p.cls.M == p.method.M)
      return analytic_bound("gnm1_qsc", {{"eta", p.R}});
    if (p.cls.kind == ClassKind::HessianLipschitz && p.method.kind == K::CubicNewton &&
        p.initial == InitialKind::FuncGap &&
        (p.measure == Measure::AbsGradLast || p.measure == Measure::AbsGradBest) && N == 1 &&
        p.cls.M == p.method.M)
      return p.cls.M * std::pow(12.0 * p.R / (5.0 * p.cls.M), 2.0 / 3.0);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

} // namespace univpep
