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

#include "univpep/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace univpep {

Term Term::mono(double c, int n) {
  Term t;
  t.kind = Kind::Mono;
  t.c = c;
  t.n = n;
  return t;
}

Term Term::exp_affine(double c, double a, double b) {
  Term t;
  t.kind = Kind::ExpAffine;
  t.c = c;
  t.a = a;
  t.b = b;
  return t;
}

Term Term::pow_affine(double c, double a, double b, double p) {
  Term t;
  t.kind = Kind::PowAffine;
  t.c = c;
  t.a = a;
  t.b = b;
  t.p = p;
  return t;
}

Term Term::log_affine(double c, double a, double b) {
  Term t;
  t.kind = Kind::LogAffine;
  t.c = c;
  t.a = a;
  t.b = b;
  return t;
}

Term Term::x_log_affine(double c, double a, double b) {
  Term t;
  t.kind = Kind::XLogAffine;
  t.c = c;
  t.a = a;
  t.b = b;
  return t;
}

Term Term::infinity() {
  Term t;
  t.kind = Kind::Infinity;
  return t;
}

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

} // namespace

double Term::value(double x) const {
  switch (kind) {
    case Kind::Mono: return c * ipow(x, n);
    case Kind::ExpAffine: return c * std::exp(a + b * x);
    case Kind::PowAffine: return c * std::pow(a + b * x, p);
    case Kind::LogAffine: return c * std::log(a + b * x);
    case Kind::XLogAffine: {
      const double t = a + b * x;
      return c * t * std::log(t);
    }
    case Kind::Infinity: return kInf;
  }
  return 0.0;
}

double Term::deriv(double x) const {
  switch (kind) {
    case Kind::Mono: return n == 0 ? 0.0 : c * n * ipow(x, n - 1);
    case Kind::ExpAffine: return c * b * std::exp(a + b * x);
    case Kind::PowAffine: return c * b * p * std::pow(a + b * x, p - 1.0);
    case Kind::LogAffine: return c * b / (a + b * x);
    case Kind::XLogAffine: return c * b * (std::log(a + b * x) + 1.0);
    case Kind::Infinity: throw std::domain_error("Term: derivative of infinite plateau");
  }
  return 0.0;
}

double Term::second(double x) const {
  switch (kind) {
    case Kind::Mono: return n <= 1 ? 0.0 : c * n * (n - 1) * ipow(x, n - 2);
    case Kind::ExpAffine: return c * b * b * std::exp(a + b * x);
    case Kind::PowAffine: return c * b * b * p * (p - 1.0) * std::pow(a + b * x, p - 2.0);
    case Kind::LogAffine: {
      const double t = a + b * x;
      return -c * b * b / (t * t);
    }
    case Kind::XLogAffine: return c * b * b / (a + b * x);
    case Kind::Infinity: throw std::domain_error("Term: derivative of infinite plateau");
  }
  return 0.0;
}

std::vector<Term> Term::antiderivative() const {
  switch (kind) {
    case Kind::Mono:
      return {mono(c / (n + 1), n + 1)};
    case Kind::ExpAffine:
      if (b == 0.0) return {mono(c * std::exp(a), 1)};
      return {exp_affine(c / b, a, b)};
    case Kind::PowAffine:
      if (b == 0.0) return {mono(c * std::pow(a, p), 1)};
      if (p == -1.0) return {log_affine(c / b, a, b)};
      return {pow_affine(c / (b * (p + 1.0)), a, b, p + 1.0)};
    case Kind::LogAffine:
      if (b == 0.0) return {mono(c * std::log(a), 1)};
      // int log(a+bx) dx = ((a+bx) log(a+bx) - (a+bx)) / b
      return {x_log_affine(c / b, a, b), mono(-c * a / b, 0), mono(-c, 1)};
    case Kind::XLogAffine:
      throw std::domain_error("Term: antiderivative of x*log term not supported");
    case Kind::Infinity:
      throw std::domain_error("Term: cannot integrate an infinite plateau");
  }
  return {};
}

Segment::Segment(double lo_, double hi_, std::vector<Term> terms_)
    : lo(lo_), hi(hi_), terms(std::move(terms_)) {
  if (!(lo <= hi)) throw std::invalid_argument("Segment: lo must be <= hi");
}

bool Segment::is_infinite_plateau() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.kind == Term::Kind::Infinity; });
}

double Segment::value(double x) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.value(x);
  return s;
}

double Segment::deriv(double x) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.deriv(x);
  return s;
}

double Segment::second(double x) const {
  double s = 0.0;
  for (const auto& t : terms) s += t.second(x);
  return s;
}

PiecewiseFunction::PiecewiseFunction(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("PiecewiseFunction: no segments");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (segments_[i].hi != segments_[i + 1].lo)
      throw std::invalid_argument("PiecewiseFunction: segments must be contiguous");
  }
}

PiecewiseFunction PiecewiseFunction::entire(std::vector<Term> terms) {
  return PiecewiseFunction({Segment(-kInf, kInf, std::move(terms))});
}

double PiecewiseFunction::domain_lo() const { return segments_.front().lo; }
double PiecewiseFunction::domain_hi() const { return segments_.back().hi; }

std::vector<double> PiecewiseFunction::breakpoints() const {
  std::vector<double> bps;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) bps.push_back(segments_[i].hi);
  return bps;
}

const Segment& PiecewiseFunction::locate(double x) const {
  if (x < domain_lo() || x > domain_hi())
    throw std::domain_error("PiecewiseFunction: point outside domain");
  // first segment whose hi is >= x
  auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                             [](const Segment& s, double v) { return s.hi < v; });
  if (it == segments_.end()) --it;
  return *it;
}

double PiecewiseFunction::value(double x) const { return locate(x).value(x); }
double PiecewiseFunction::deriv(double x) const { return locate(x).deriv(x); }
double PiecewiseFunction::second(double x) const { return locate(x).second(x); }

namespace {

double segment_integral(const Segment& seg, double lo, double hi) {
  if (seg.is_infinite_plateau()) {
    if (lo < hi) throw std::domain_error("PiecewiseFunction: integral over infinite plateau");
    return 0.0;
  }
  double s = 0.0;
  for (const auto& t : seg.terms) {
    for (const auto& at : t.antiderivative()) s += at.value(hi) - at.value(lo);
  }
  return s;
}

} // namespace

double PiecewiseFunction::integrate(double lo, double hi) const {
  if (lo > hi) return -integrate(hi, lo);
  if (lo < domain_lo() || hi > domain_hi())
    throw std::domain_error("PiecewiseFunction: integration range outside domain");
  double total = 0.0;
  for (const auto& seg : segments_) {
    const double a = std::max(lo, seg.lo);
    const double b = std::min(hi, seg.hi);
    if (a < b) total += segment_integral(seg, a, b);
  }
  return total;
}

PiecewiseFunction PiecewiseFunction::antiderivative(double anchor_x, double anchor_value) const {
  if (anchor_x < domain_lo() || anchor_x > domain_hi())
    throw std::domain_error("PiecewiseFunction: anchor outside domain");
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (const auto& seg : segments_) {
    if (seg.is_infinite_plateau())
      throw std::domain_error("PiecewiseFunction: antiderivative over infinite plateau");
    std::vector<Term> terms;
    for (const auto& t : seg.terms)
      for (const auto& at : t.antiderivative()) terms.push_back(at);
    out.emplace_back(seg.lo, seg.hi, std::move(terms));
  }
  // fix the integration constant segment by segment so the result is continuous
  PiecewiseFunction F(std::move(out));
  std::vector<double> offsets(F.segments_.size(), 0.0);
  const auto raw_at = [&](std::size_t i, double x) { return F.segments_[i].value(x); };
  std::size_t anchor_idx = 0;
  while (anchor_idx + 1 < F.segments_.size() && F.segments_[anchor_idx].hi < anchor_x) ++anchor_idx;
  offsets[anchor_idx] = anchor_value - raw_at(anchor_idx, anchor_x);
  for (std::size_t i = anchor_idx + 1; i < F.segments_.size(); ++i) {
    const double x = F.segments_[i].lo;
    offsets[i] = offsets[i - 1] + raw_at(i - 1, x) - raw_at(i, x);
  }
  for (std::size_t i = anchor_idx; i-- > 0;) {
    const double x = F.segments_[i].hi;
    offsets[i] = offsets[i + 1] + raw_at(i + 1, x) - raw_at(i, x);
  }
  for (std::size_t i = 0; i < F.segments_.size(); ++i)
    F.segments_[i].terms.push_back(Term::mono(offsets[i], 0));
  return F;
}

MembershipReport membership_residual(const PiecewiseFunction& f, const ClassSpec& spec,
                                     double lo, double hi, int samples) {
  if (!(lo < hi)) throw std::invalid_argument("membership_residual: empty interval");
  if (samples < 2) throw std::invalid_argument("membership_residual: need at least 2 samples");
  spec.validate();

  const auto bps = f.breakpoints();
  const double babs = std::abs(beta(spec.alpha));
  const double shift = spec.kind == ClassKind::StronglyConvexHessianLipschitz ? spec.mu : 0.0;

  MembershipReport rep;
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    double x = lo + (hi - lo) * i / (samples - 1);
    for (double bp : bps) {
      if (std::abs(x - bp) < 1e-9) x = bp + (x <= bp ? -1e-9 : 1e-9);
    }
    const double fd_step = std::max(1e-5, 1e-5 * std::abs(x));

    double q, dq; // the constrained derivative and its derivative
    switch (spec.order) {
      case 0:
        q = f.value(x);
        dq = f.deriv(x);
        break;
      case 1:
        q = f.deriv(x);
        dq = f.second(x);
        break;
      default:
        q = f.second(x);
        dq = (f.second(x + fd_step) - f.second(x - fd_step)) / (2.0 * fd_step);
        break;
    }
    q -= shift;

    double res = 0.0;
    if (spec.nonneg) res = std::max(res, -q);
    const double base = std::max(q, 0.0);
    res = std::max(res, std::abs(dq) - babs * spec.M * std::pow(base, spec.alpha));
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.worst_x = x;
    }
  }
  return rep;
}

} // namespace univpep
