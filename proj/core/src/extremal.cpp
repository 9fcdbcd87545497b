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

#include "univpep/extremal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

#include "univpep/conditions.hpp"
#include "univpep/interpolation.hpp"

namespace univpep {

namespace {

constexpr double kPairTol = 1e-7;

// nu(t_anchor + slope * (x - x_anchor)) as closed-form terms
std::vector<Term> nu_piece_terms(double alpha, double t_anchor, double x_anchor, double slope) {
  const double a = t_anchor - slope * x_anchor;
  if (alpha == 0.0) return {Term::mono(a, 0), Term::mono(slope, 1)};
  if (alpha == 1.0) return {Term::exp_affine(1.0, a, slope)};
  return {Term::pow_affine(1.0, a, slope, beta(alpha))};
}

std::vector<Segment> drop_empty(std::vector<Segment> segs) {
  std::vector<Segment> out;
  for (auto& s : segs)
    if (s.hi > s.lo || out.empty()) out.push_back(std::move(s));
  while (out.size() > 1 && out.front().hi == out.front().lo) out.erase(out.begin());
  return out;
}

std::vector<Term> scaled_terms(const std::vector<Term>& terms, double s) {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (Term t : terms) {
    t.c *= s;
    out.push_back(t);
  }
  return out;
}

// lam * lo + (1 - lam) * hi on the union of both breakpoint grids
PiecewiseFunction mix(const PiecewiseFunction& lo, const PiecewiseFunction& hi, double lam) {
  std::set<double> cuts;
  cuts.insert(lo.domain_lo());
  cuts.insert(lo.domain_hi());
  for (double b : lo.breakpoints()) cuts.insert(b);
  for (double b : hi.breakpoints()) cuts.insert(b);
  std::vector<double> xs(cuts.begin(), cuts.end());
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double m = 0.5 * (xs[k] + xs[k + 1]);
    std::vector<Term> terms;
    auto locate_terms = [&](const PiecewiseFunction& f, double scale) {
      for (const auto& seg : f.segments()) {
        if (seg.lo <= m && m <= seg.hi) {
          for (const auto& t : scaled_terms(seg.terms, scale)) terms.push_back(t);
          return;
        }
      }
      throw std::logic_error("mix: segment lookup failed");
    };
    locate_terms(lo, lam);
    locate_terms(hi, 1.0 - lam);
    segs.emplace_back(xs[k], xs[k + 1], std::move(terms));
  }
  return PiecewiseFunction(drop_empty(std::move(segs)));
}

// x where a single monotone closed-form term crosses the level, or nullopt
std::optional<double> term_crossing(const Term& t, double level, double lo, double hi) {
  double x = 0.0;
  switch (t.kind) {
    case Term::Kind::ExpAffine: {
      if (level <= 0.0 || t.c <= 0.0 || t.b == 0.0) return std::nullopt;
      x = (std::log(level / t.c) - t.a) / t.b;
      break;
    }
    case Term::Kind::PowAffine: {
      if (level <= 0.0 || t.c <= 0.0 || t.b == 0.0) return std::nullopt;
      x = (std::pow(level / t.c, 1.0 / t.p) - t.a) / t.b;
      break;
    }
    case Term::Kind::Mono: {
      if (t.n == 0) return std::nullopt;
      if (t.n == 1) {
        if (t.c == 0.0) return std::nullopt;
        x = level / t.c;
        break;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
  if (x <= lo || x >= hi) return std::nullopt;
  return x;
}

std::optional<double> segment_crossing(const Segment& seg, double level, double lo, double hi) {
  if (seg.is_infinite_plateau()) return std::nullopt;
  if (seg.terms.size() == 1) return term_crossing(seg.terms[0], level, lo, hi);
  if (seg.terms.size() == 2 && seg.terms[0].kind == Term::Kind::Mono &&
      seg.terms[1].kind == Term::Kind::Mono) {
    // affine piece c0 + c1 x
    const double c0 = seg.terms[0].n == 0 ? seg.terms[0].c : seg.terms[1].c;
    const double c1 = seg.terms[0].n == 1 ? seg.terms[0].c : seg.terms[1].c;
    if (c1 == 0.0) return std::nullopt;
    const double x = (level - c0) / c1;
    if (x <= lo || x >= hi) return std::nullopt;
    return x;
  }
  // bisection fallback for composite pieces
  double a = lo, b = hi;
  const double fa = seg.value(a) - level, fb = seg.value(b) - level;
  if (fa == 0.0 || fb == 0.0 || fa * fb > 0.0) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = seg.value(m) - level;
    if ((fm <= 0.0) == (fa <= 0.0))
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

// min(hi, max(lo, level)) as a piecewise function on the envelopes' interval
PiecewiseFunction level_cut(const PiecewiseFunction& lo, const PiecewiseFunction& hi,
                            double level) {
  std::set<double> cuts;
  cuts.insert(lo.domain_lo());
  cuts.insert(lo.domain_hi());
  for (double b : lo.breakpoints()) cuts.insert(b);
  for (double b : hi.breakpoints()) cuts.insert(b);
  // refine with the level crossings of every envelope piece
  for (const PiecewiseFunction* f : {&lo, &hi}) {
    for (const auto& seg : f->segments()) {
      if (auto x = segment_crossing(seg, level, seg.lo, seg.hi)) cuts.insert(*x);
    }
  }
  std::vector<double> xs(cuts.begin(), cuts.end());
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double a = xs[k], b = xs[k + 1];
    if (!(b > a)) continue;
    const double m = 0.5 * (a + b);
    const auto pick = [&](const PiecewiseFunction& f) -> const Segment& {
      for (const auto& seg : f.segments())
        if (seg.lo <= m && m <= seg.hi) return seg;
      throw std::logic_error("level_cut: segment lookup failed");
    };
    const Segment& slo = pick(lo);
    const Segment& shi = pick(hi);
    const double vlo = slo.value(m);
    const double vhi = shi.is_infinite_plateau() ? kInf : shi.value(m);
    std::vector<Term> terms;
    if (vhi <= level)
      terms = shi.terms;
    else if (vlo >= level)
      terms = slo.terms;
    else
      terms = {Term::mono(level, 0)};
    segs.emplace_back(a, b, std::move(terms));
  }
  return PiecewiseFunction(drop_empty(std::move(segs)));
}

double env_integral(const PiecewiseFunction& f) {
  return f.integrate(f.domain_lo(), f.domain_hi());
}

bool has_plateau(const PiecewiseFunction& f) {
  return std::any_of(f.segments().begin(), f.segments().end(),
                     [](const Segment& s) { return s.is_infinite_plateau(); });
}

// derivative-level profile matching endpoint data of the pair and realizing
// the increment `target` of its own antiderivative
PiecewiseFunction matched_profile(const EnvelopePair& env, double x1, double x2, double target,
                                  double alpha) {
  double lo = env.lower.integrate(x1, x2);
  double hi = has_plateau(env.upper) ? kInf : env.upper.integrate(x1, x2);
  if (target < lo - kPairTol || target > hi + kPairTol)
    throw InfeasibleInputError("matched_profile: target increment outside admissible range");
  target = std::clamp(target, lo, hi);
  if (alpha <= 1.0) {
    if (!(hi < kInf)) throw std::logic_error("matched_profile: infinite upper bound at alpha<=1");
    if (hi - lo < 1e-14) return env.lower;
    const double lam = (hi - target) / (hi - lo);
    return mix(env.lower, env.upper, std::clamp(lam, 0.0, 1.0));
  }
  // level-cut bisection; the cut integral grows continuously with the level
  double a_lo = 0.0;
  double a_hi = std::max({1.0, env.lower.value(x1), env.lower.value(x2)});
  int guard = 0;
  while (env_integral(level_cut(env.lower, env.upper, a_hi)) < target) {
    a_hi *= 2.0;
    if (++guard > 200)
      throw BisectionFailureError("matched_profile: could not bracket the level cut");
  }
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a_lo + a_hi);
    if (env_integral(level_cut(env.lower, env.upper, m)) < target)
      a_lo = m;
    else
      a_hi = m;
  }
  return level_cut(env.lower, env.upper, 0.5 * (a_lo + a_hi));
}

ClassSpec basic_of(const ClassSpec& spec) {
  return ClassSpec::basic(spec.M, spec.alpha, spec.nonneg);
}

void require_sorted_pair(double x1, double x2, const char* who) {
  if (!(x1 < x2)) throw std::invalid_argument(std::string(who) + ": requires x1 < x2");
}

} // namespace

EnvelopePair extremal_envelopes_basic(double x1, double v1, double x2, double v2,
                                      const ClassSpec& spec) {
  require_sorted_pair(x1, x2, "extremal_envelopes_basic");
  if (spec.order != 0) throw std::invalid_argument("extremal_envelopes_basic: order-0 class expected");
  {
    Dataset d;
    d.points = {SecondOrderPoint::xf(x1, v1), SecondOrderPoint::xf(x2, v2)};
    CheckOptions o;
    o.feastol = kPairTol;
    const auto verdict = check_basic(d, spec, o);
    if (!verdict.feasible)
      throw InfeasibleInputError("extremal_envelopes_basic: pair not interpolable");
  }
  const double alpha = spec.alpha;
  const double M = spec.M;

  EnvelopePair out;
  if (alpha >= 1.0 && v1 == 0.0 && v2 == 0.0) {
    out.lower = PiecewiseFunction({Segment(x1, x2, {Term::mono(0.0, 0)})});
    out.upper = out.lower;
    return out;
  }
  const double t1 = alpha == 0.0 ? v1 : tilde_transform(v1, alpha);
  const double t2 = alpha == 0.0 ? v2 : tilde_transform(v2, alpha);
  const double s = beta(alpha) > 0.0 ? 1.0 : -1.0;
  const double dx = x2 - x1;

  // lower envelope
  if (alpha >= 1.0 || !spec.nonneg || t1 + t2 >= M * dx) {
    double z = 0.5 * (x1 + x2) + s * (t1 - t2) / (2.0 * M);
    z = std::clamp(z, x1, x2);
    out.lower = PiecewiseFunction(drop_empty(
        {Segment(x1, z, nu_piece_terms(alpha, t1, x1, -s * M)),
         Segment(z, x2, nu_piece_terms(alpha, t2, x2, s * M))}));
    out.lower_case = 1;
  } else {
    const double p = x1 + t1 / M, q = x2 - t2 / M;
    out.lower = PiecewiseFunction(drop_empty(
        {Segment(x1, p, nu_piece_terms(alpha, t1, x1, -M)),
         Segment(p, q, {Term::mono(0.0, 0)}),
         Segment(q, x2, nu_piece_terms(alpha, t2, x2, M))}));
    out.lower_case = 2;
  }

  // upper envelope
  if (alpha <= 1.0 || t1 + t2 > M * dx) {
    double y = 0.5 * (x1 + x2) - s * (t1 - t2) / (2.0 * M);
    y = std::clamp(y, x1, x2);
    out.upper = PiecewiseFunction(drop_empty(
        {Segment(x1, y, nu_piece_terms(alpha, t1, x1, s * M)),
         Segment(y, x2, nu_piece_terms(alpha, t2, x2, -s * M))}));
    out.upper_case = 1;
  } else {
    const double p = x1 + t1 / M, q = x2 - t2 / M;
    out.upper = PiecewiseFunction(drop_empty(
        {Segment(x1, p, nu_piece_terms(alpha, t1, x1, -M)),
         Segment(p, q, {Term::infinity()}),
         Segment(q, x2, nu_piece_terms(alpha, t2, x2, M))}));
    out.upper_case = 2;
  }
  return out;
}

EnvelopePair extremal_gradients_smooth(double x1, double g1, double h1, double x2, double g2,
                                       double h2, double M) {
  require_sorted_pair(x1, x2, "extremal_gradients_smooth");
  if (!(M > 0.0)) throw std::invalid_argument("extremal_gradients_smooth: M must be > 0");
  if (cond::hl_pair_lower(x1, g1, h1, x2, g2, h2, M) > kPairTol ||
      cond::hl_pair_lower(x2, g2, h2, x1, g1, h1, M) > kPairTol ||
      std::abs(h2 - h1) - M * (x2 - x1) > kPairTol)
    throw InfeasibleInputError("extremal_gradients_smooth: pair not interpolable");

  const double dx = x2 - x1;
  const double dh = h2 - h1;
  const double tg = g2 - g1 - h1 * dx;
  const double scale = std::max({1.0, std::abs(dh), M * dx});

  auto quad = [&](double c0, double c1, double c2) {
    return std::vector<Term>{Term::mono(c0, 0), Term::mono(c1, 1), Term::mono(c2, 2)};
  };
  auto end_piece = [&](double xa, double ga, double ha, double sign) {
    // ga + ha (x - xa) + sign M/2 (x - xa)^2
    const double c2 = sign * 0.5 * M;
    const double c1 = ha - 2.0 * c2 * xa;
    const double c0 = ga - ha * xa + c2 * xa * xa;
    return quad(c0, c1, c2);
  };

  EnvelopePair out;
  if (std::abs(dh - M * dx) <= 1e-12 * scale || std::abs(dh + M * dx) <= 1e-12 * scale) {
    const double sign = dh > 0.0 ? 1.0 : -1.0;
    auto para = end_piece(x1, g1, h1, sign);
    out.lower = PiecewiseFunction({Segment(x1, x2, para)});
    out.upper = out.lower;
    return out;
  }

  {
    const double denom = dh + M * dx;
    const double shift = (tg + 0.5 * M * dx * dx) / denom;
    double y1 = x2 - shift - denom / (4.0 * M);
    double y2 = x2 - shift + denom / (4.0 * M);
    y1 = std::clamp(y1, x1, x2);
    y2 = std::clamp(y2, y1, x2);
    const double c2 = 0.5 * M;
    const double c1 = h1 + M * (x1 - 2.0 * y1);
    const double c0 = g1 - h1 * x1 - 0.5 * M * (y1 - x1) * (y1 - x1) - 0.5 * M * y1 * y1 -
                      M * (x1 - 2.0 * y1) * y1;
    out.lower = PiecewiseFunction(drop_empty({Segment(x1, y1, end_piece(x1, g1, h1, -1.0)),
                                              Segment(y1, y2, quad(c0, c1, c2)),
                                              Segment(y2, x2, end_piece(x2, g2, h2, -1.0))}));
  }
  {
    const double denom = M * dx - dh;
    const double shift = (tg - 0.5 * M * dx * dx) / denom;
    double z1 = x2 + shift - denom / (4.0 * M);
    double z2 = x2 + shift + denom / (4.0 * M);
    z1 = std::clamp(z1, x1, x2);
    z2 = std::clamp(z2, z1, x2);
    const double c2 = -0.5 * M;
    const double c1 = h1 - M * (x1 - 2.0 * z1);
    const double c0 = g1 - h1 * x1 + 0.5 * M * (z1 - x1) * (z1 - x1) + 0.5 * M * z1 * z1 +
                      M * (x1 - 2.0 * z1) * z1;
    out.upper = PiecewiseFunction(drop_empty({Segment(x1, z1, end_piece(x1, g1, h1, 1.0)),
                                              Segment(z1, z2, quad(c0, c1, c2)),
                                              Segment(z2, x2, end_piece(x2, g2, h2, 1.0))}));
  }
  return out;
}

PairBounds basic_pair_value_bounds(double x1, double d1, double x2, double d2,
                                   const ClassSpec& basic_spec) {
  if (x1 == x2) return {0.0, 0.0};
  require_sorted_pair(x1, x2, "basic_pair_value_bounds");
  const auto env = extremal_envelopes_basic(x1, d1, x2, d2, basic_spec);
  PairBounds b;
  b.lower = env.lower.integrate(x1, x2);
  b.upper = has_plateau(env.upper) ? kInf : env.upper.integrate(x1, x2);
  return b;
}

PairBounds integral_bounds(const SecondOrderPoint& a, const SecondOrderPoint& b,
                           const ClassSpec& spec) {
  spec.validate();
  const bool swapped = b.x < a.x;
  const SecondOrderPoint& p = swapped ? b : a;
  const SecondOrderPoint& q = swapped ? a : b;
  PairBounds out;
  if (p.x == q.x) return {0.0, 0.0};
  switch (spec.order) {
    case 1: {
      if (!p.g || !q.g) throw std::invalid_argument("integral_bounds: missing g fields");
      out = basic_pair_value_bounds(p.x, *p.g, q.x, *q.g, basic_of(spec));
      break;
    }
    case 2: {
      if (!p.h || !q.h) throw std::invalid_argument("integral_bounds: missing h fields");
      if (spec.kind == ClassKind::HessianLipschitz && p.g && q.g) {
        // bounds on the value increment, from the gradient envelopes
        const auto env = extremal_gradients_smooth(p.x, *p.g, *p.h, q.x, *q.g, *q.h, spec.M);
        out.lower = env.lower.integrate(p.x, q.x);
        out.upper = env.upper.integrate(p.x, q.x);
      } else if (spec.kind == ClassKind::StronglyConvexHessianLipschitz) {
        auto base = basic_pair_value_bounds(p.x, *p.h - spec.mu, q.x, *q.h - spec.mu,
                                            ClassSpec::basic(spec.M, 0.0, true));
        const double drift = spec.mu * (q.x - p.x);
        out.lower = base.lower + drift;
        out.upper = base.upper + drift;
      } else {
        out = basic_pair_value_bounds(p.x, *p.h, q.x, *q.h, basic_of(spec));
      }
      break;
    }
    default:
      throw std::invalid_argument("integral_bounds: order-0 classes have no lower level");
  }
  if (swapped) {
    PairBounds flipped;
    flipped.lower = out.upper == kInf ? -kInf : -out.upper;
    flipped.upper = -out.lower;
    return flipped;
  }
  return out;
}

namespace {

// Bounds on value increments specifically for Hessian-Lipschitz quadruple
// reconstruction (gradient-envelope route).
PairBounds hl_value_bounds(const SecondOrderPoint& p, const SecondOrderPoint& q, double M) {
  const auto env = extremal_gradients_smooth(p.x, *p.g, *p.h, q.x, *q.g, *q.h, M);
  return {env.lower.integrate(p.x, q.x), env.upper.integrate(p.x, q.x)};
}

// extends the profile beyond the data hull with affine pieces of the given
// slopes (slope 0 keeps the extension constant)
PiecewiseFunction with_affine_tails(std::vector<Segment> segs, double slope_lo,
                                    double slope_hi) {
  const Segment& first = segs.front();
  auto affine = [](double v0, double x0, double slope) {
    return std::vector<Term>{Term::mono(v0 - slope * x0, 0), Term::mono(slope, 1)};
  };
  std::vector<Segment> out;
  out.emplace_back(-kInf, first.lo, affine(first.value(first.lo), first.lo, slope_lo));
  for (auto& s : segs) out.push_back(std::move(s));
  const Segment& last = out.back();
  out.emplace_back(last.hi, kInf, affine(last.value(last.hi), last.hi, slope_hi));
  return PiecewiseFunction(std::move(out));
}

Dataset sorted_unique(const Dataset& data) {
  Dataset s = data.sorted_by_x();
  Dataset out;
  for (const auto& p : s.points) {
    if (!out.points.empty() && p.x == out.points.back().x) continue; // checker already vetted duplicates
    out.points.push_back(p);
  }
  return out;
}

PiecewiseFunction reconstruct_order0(const Dataset& data, const ClassSpec& spec) {
  const double alpha = spec.alpha;
  const double M = spec.M;
  const auto& pts = data.points;
  if (std::all_of(pts.begin(), pts.end(), [](const auto& p) { return *p.f == 0.0; }))
    return PiecewiseFunction::entire({Term::mono(0.0, 0)});
  std::vector<Segment> segs;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double x1 = pts[k].x, x2 = pts[k + 1].x;
    const double t1 = alpha == 0.0 ? *pts[k].f : tilde_transform(*pts[k].f, alpha);
    const double t2 = alpha == 0.0 ? *pts[k + 1].f : tilde_transform(*pts[k + 1].f, alpha);
    double z = 0.5 * (x1 + x2) + (t2 - t1) / (2.0 * M);
    z = std::clamp(z, x1, x2);
    segs.emplace_back(x1, z, nu_piece_terms(alpha, t1, x1, M));
    segs.emplace_back(z, x2, nu_piece_terms(alpha, t2, x2, -M));
  }
  return with_affine_tails(drop_empty(std::move(segs)), 0.0, 0.0);
}

} // namespace

PiecewiseFunction reconstruct_interpolant(const Dataset& data, const ClassSpec& spec) {
  spec.validate();
  {
    CheckOptions opts;
    opts.feastol = kPairTol; // tolerate boundary-active data up to the pair slack
    const auto verdict = check_dataset(data, spec, opts);
    if (!verdict.feasible)
      throw InfeasibleInputError("reconstruct_interpolant: dataset is not interpolable (residual " +
                                 std::to_string(verdict.max_residual) + ")");
  }
  const Dataset d = sorted_unique(data);
  const auto& pts = d.points;
  const double M = spec.M;

  if (spec.order == 0) return reconstruct_order0(d, spec);

  if (pts.size() == 1) {
    const auto& p = pts[0];
    if (spec.order == 1) {
      const double f0 = *p.f, g0 = *p.g;
      return PiecewiseFunction::entire(
          {Term::mono(f0 - g0 * p.x, 0), Term::mono(g0, 1)});
    }
    const double f0 = p.f.value_or(0.0), g0 = *p.g, h0 = *p.h;
    const double c2 = 0.5 * h0;
    const double c1 = g0 - h0 * p.x;
    const double c0 = f0 - g0 * p.x + c2 * p.x * p.x;
    return PiecewiseFunction::entire({Term::mono(c0, 0), Term::mono(c1, 1), Term::mono(c2, 2)});
  }

  const bool hl_with_values = spec.order == 2 &&
                              spec.kind == ClassKind::HessianLipschitz && d.has_values();

  // profile of the highest constrained derivative across the data hull
  std::vector<Segment> profile;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto &p = pts[k], &q = pts[k + 1];
    PiecewiseFunction piece;
    if (spec.order == 1) {
      const auto env = extremal_envelopes_basic(p.x, *p.g, q.x, *q.g, basic_of(spec));
      piece = matched_profile(env, p.x, q.x, *q.f - *p.f, spec.alpha);
    } else if (hl_with_values) {
      const auto env = extremal_gradients_smooth(p.x, *p.g, *p.h, q.x, *q.g, *q.h, M);
      piece = matched_profile(env, p.x, q.x, *q.f - *p.f, 0.0);
    } else if (spec.kind == ClassKind::StronglyConvexHessianLipschitz) {
      const auto env = extremal_envelopes_basic(p.x, *p.h - spec.mu, q.x, *q.h - spec.mu,
                                                ClassSpec::basic(M, 0.0, true));
      const double target = (*q.g - *p.g) - spec.mu * (q.x - p.x);
      piece = matched_profile(env, p.x, q.x, target, 0.0);
      // add back the curvature floor
      std::vector<Segment> shifted;
      for (Segment s : piece.segments()) {
        s.terms.push_back(Term::mono(spec.mu, 0));
        shifted.push_back(std::move(s));
      }
      piece = PiecewiseFunction(std::move(shifted));
    } else {
      const auto env = extremal_envelopes_basic(p.x, *p.h, q.x, *q.h, basic_of(spec));
      piece = matched_profile(env, p.x, q.x, *q.g - *p.g, spec.alpha);
    }
    for (const auto& s : piece.segments()) profile.push_back(s);
  }
  // gradient-level profiles keep their endpoint curvature in the tails
  const double slope_lo = hl_with_values ? *pts.front().h : 0.0;
  const double slope_hi = hl_with_values ? *pts.back().h : 0.0;
  PiecewiseFunction Q = with_affine_tails(drop_empty(std::move(profile)), slope_lo, slope_hi);

  if (spec.order == 1) {
    return Q.antiderivative(pts[0].x, *pts[0].f);
  }
  if (hl_with_values) {
    // Q is already the gradient profile
    return Q.antiderivative(pts[0].x, *pts[0].f);
  }
  PiecewiseFunction G = Q.antiderivative(pts[0].x, *pts[0].g);
  return G.antiderivative(pts[0].x, pts[0].f.value_or(0.0));
}

PiecewiseFunction named_worst_case(const std::string& name,
                                   const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("named_worst_case: missing parameter " + std::string(key));
    return it->second;
  };
  auto cubic_pair = [](double c3_left, double c3_right, double c2) {
    return PiecewiseFunction({Segment(-kInf, 0.0, {Term::mono(c3_left, 3), Term::mono(c2, 2)}),
                              Segment(0.0, kInf, {Term::mono(c3_right, 3), Term::mono(c2, 2)})});
  };

  if (name == "cnm_tight") {
    const double M = get("M");
    if (!(M > 0)) throw std::invalid_argument("named_worst_case: M must be > 0");
    return PiecewiseFunction::entire({Term::mono(M / 6.0, 3), Term::mono(-0.5, 2)});
  }
  if (name == "newton_local_tight") {
    const double M = get("M"), mu = get("mu");
    if (!(M > 0) || !(mu > 0)) throw std::invalid_argument("named_worst_case: need M, mu > 0");
    return cubic_pair(M / 6.0, -M / 6.0, mu / 2.0);
  }
  if (name == "gm_tight_upper") {
    const double M = get("M"), L = get("L");
    if (!(M > 0) || !(L > 0)) throw std::invalid_argument("named_worst_case: need M, L > 0");
    return cubic_pair(-M / 6.0, M / 6.0, L / 2.0);
  }
  if (name == "dnm_family_g") {
    const double M = get("M"), mu = get("mu"), a = get("a");
    if (!(M > 0) || !(mu > 0)) throw std::invalid_argument("named_worst_case: need M, mu > 0");
    // join where both curvature branches agree, so the kink stays second-order
    const double z = (mu - a) / (2.0 * M);
    const double fL = -M / 6.0 * z * z * z + 0.5 * mu * z * z;
    const double dL = -0.5 * M * z * z + mu * z;
    const double A1 = dL - (0.5 * M * z * z + a * z);
    const double B1 = fL - (M / 6.0 * z * z * z + 0.5 * a * z * z + A1 * z);
    return PiecewiseFunction(
        {Segment(-kInf, z, {Term::mono(-M / 6.0, 3), Term::mono(mu / 2.0, 2)}),
         Segment(z, kInf,
                 {Term::mono(M / 6.0, 3), Term::mono(a / 2.0, 2), Term::mono(A1, 1),
                  Term::mono(B1, 0)})});
  }
  if (name == "dnm_family_h") {
    const double M = get("M"), mu = get("mu"), a = get("a");
    if (!(M > 0) || !(mu > 0)) throw std::invalid_argument("named_worst_case: need M, mu > 0");
    if (a > mu) throw std::invalid_argument("named_worst_case: dnm_family_h needs a <= mu");
    const double z = (a - mu) / (2.0 * M);
    const double fL = -M / 6.0 * z * z * z + 0.5 * a * z * z;
    const double dL = -0.5 * M * z * z + a * z;
    const double A2 = dL - (0.5 * M * z * z + mu * z);
    const double B2 = fL - (M / 6.0 * z * z * z + 0.5 * mu * z * z + A2 * z);
    return PiecewiseFunction(
        {Segment(-kInf, z, {Term::mono(-M / 6.0, 3), Term::mono(a / 2.0, 2)}),
         Segment(z, 0.0,
                 {Term::mono(M / 6.0, 3), Term::mono(mu / 2.0, 2), Term::mono(A2, 1),
                  Term::mono(B2, 0)}),
         Segment(0.0, kInf,
                 {Term::mono(-M / 6.0, 3), Term::mono(mu / 2.0, 2), Term::mono(A2, 1),
                  Term::mono(B2, 0)})});
  }
  if (name == "sc_nm_tight") {
    const double R = get("R");
    if (!(R > 0.0) || !(R < 1.0)) throw std::invalid_argument("named_worst_case: need R in (0,1)");
    const double th0 = 1.0 / R;
    const double th1 = (R - 1.0 + 2.0 * std::sqrt((1.0 - R) / (1.0 + R))) / R;
    const double y = 0.5 * (th0 + 1.0 - th1);
    PiecewiseFunction hess(
        {Segment(-kInf, y, {Term::pow_affine(1.0, th0, -1.0, -2.0)}),
         Segment(y, kInf, {Term::pow_affine(1.0, th1 - 1.0, 1.0, -2.0)})});
    return hess.antiderivative(0.0, -R * R).antiderivative(0.0, 0.0);
  }
  if (name == "dnm_sc_tight") {
    const double R = get("R");
    if (!(R > 0.0) || !(R < 1.0)) throw std::invalid_argument("named_worst_case: need R in (0,1)");
    return PiecewiseFunction({Segment(
        -kInf, R,
        {Term::mono((R - 1.0) / R, 1), Term::log_affine(-1.0, R, -1.0), Term::mono(std::log(R), 0)})});
  }
  if (name == "qsc_nm_tight") {
    const double M = get("M"), mu = get("mu");
    if (!(M > 0) || !(mu > 0)) throw std::invalid_argument("named_worst_case: need M, mu > 0");
    return PiecewiseFunction(
        {Segment(-kInf, 0.0,
                 {Term::exp_affine(mu / (M * M), 0.0, -M), Term::mono(2.0 * mu / M, 1)}),
         Segment(0.0, kInf, {Term::exp_affine(mu / (M * M), 0.0, M)})});
  }
  throw std::invalid_argument("named_worst_case: unknown name " + name);
}

} // namespace univpep
