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

#include "univpep/random_members.hpp"

#include <algorithm>
#include <cmath>

namespace univpep {

namespace {

constexpr double kSpan = 4.0; // members are valid well beyond the sampling window

// Piecewise-cubic member of the Hessian-Lipschitz family: the curvature is a
// random continuous piecewise-linear profile with slopes in [-M, M], with an
// optional floor at mu for the convex variants.
PiecewiseFunction random_hessian_lipschitz(double M, double floor, bool clamp_floor,
                                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nseg(2, 5);
  std::uniform_real_distribution<double> h0dist(clamp_floor ? floor : -1.5,
                                                std::max(1.5, floor + 1.0));

  const int k = nseg(rng);
  std::vector<double> xs(k + 1);
  for (int i = 0; i <= k; ++i) xs[i] = -kSpan + 2.0 * kSpan * i / k;
  std::vector<double> hs(k + 1);
  hs[0] = h0dist(rng);
  std::vector<double> slopes(k);
  for (int i = 0; i < k; ++i) {
    double lo_slope = -M;
    if (clamp_floor) lo_slope = std::max(lo_slope, (floor - hs[i]) / (xs[i + 1] - xs[i]));
    slopes[i] = std::uniform_real_distribution<double>(lo_slope, M)(rng);
    hs[i + 1] = hs[i] + slopes[i] * (xs[i + 1] - xs[i]);
  }
  std::vector<Segment> profile;
  for (int i = 0; i < k; ++i) {
    // h(x) = hs[i] + slopes[i] (x - xs[i])
    profile.emplace_back(xs[i], xs[i + 1],
                         std::vector<Term>{Term::mono(hs[i] - slopes[i] * xs[i], 0),
                                           Term::mono(slopes[i], 1)});
  }
  std::vector<Segment> full;
  full.emplace_back(-kInf, xs.front(), std::vector<Term>{Term::mono(hs.front(), 0)});
  for (auto& s : profile) full.push_back(std::move(s));
  full.emplace_back(xs.back(), kInf, std::vector<Term>{Term::mono(hs.back(), 0)});
  PiecewiseFunction hess{std::move(full)};
  return hess.antiderivative(0.0, 0.0).antiderivative(0.0, 0.0);
}

// Sum of gentle exponentials: |f'''| <= max|b_i| f'' pointwise.
PiecewiseFunction random_qsc(double M, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_real_distribution<double> mag(0.1, 1.5);
  std::uniform_real_distribution<double> rate(0.2 * M, M);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Term> terms;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    const double b = (coin(rng) ? 1.0 : -1.0) * rate(rng);
    terms.push_back(Term::exp_affine(mag(rng), 0.0, b));
  }
  terms.push_back(Term::mono(mag(rng) - 1.0, 1));
  return PiecewiseFunction::entire(std::move(terms));
}

// Sum of scaled log barriers bracketing the working window; each term with
// weight c >= 1/M^2 keeps the modulus below M, and sums stay in the class.
PiecewiseFunction random_sc(double M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(1.0, 3.0);
  std::uniform_real_distribution<double> left(-8.0, -5.0);
  std::uniform_real_distribution<double> right(5.0, 8.0);
  const double scale = 1.0 / (M * M);
  const double a0 = left(rng), a1 = right(rng);
  std::vector<Term> terms;
  // -c log(x - a0) - c' log(a1 - x), both barriers
  terms.push_back(Term::log_affine(-scale * weight(rng), -a0, 1.0));
  terms.push_back(Term::log_affine(-scale * weight(rng), a1, -1.0));
  std::uniform_real_distribution<double> lin(-1.0, 1.0);
  terms.push_back(Term::mono(lin(rng), 1));
  return PiecewiseFunction({Segment(a0, a1, std::move(terms))});
}

} // namespace

PiecewiseFunction random_member(const ClassSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  switch (spec.kind) {
    case ClassKind::HessianLipschitz:
      return random_hessian_lipschitz(spec.M, 0.0, false, rng);
    case ClassKind::StronglyConvexHessianLipschitz:
      return random_hessian_lipschitz(spec.M, spec.mu, true, rng);
    case ClassKind::QuasiSelfConcordant:
      return random_qsc(spec.M, rng);
    case ClassKind::SelfConcordant:
      return random_sc(spec.M, rng);
    default:
      throw std::invalid_argument("random_member: unsupported class kind " + spec.name());
  }
}

Dataset sample_dataset(const PiecewiseFunction& f, const ClassSpec& spec, int n, double lo,
                       double hi, std::mt19937_64& rng, bool with_values) {
  std::uniform_real_distribution<double> xs(lo, hi);
  std::vector<double> pos(n);
  for (auto& x : pos) x = xs(rng);
  std::sort(pos.begin(), pos.end());
  Dataset out;
  for (double x : pos) {
    SecondOrderPoint p;
    p.x = x;
    if (spec.order == 0) {
      p.f = f.value(x);
    } else if (spec.order == 1) {
      p.f = f.value(x);
      p.g = f.deriv(x);
    } else {
      if (with_values) p.f = f.value(x);
      p.g = f.deriv(x);
      p.h = f.second(x);
    }
    out.points.push_back(p);
  }
  return out;
}

} // namespace univpep
