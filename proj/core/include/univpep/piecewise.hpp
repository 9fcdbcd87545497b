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

#ifndef UNIVPEP_PIECEWISE_HPP
#define UNIVPEP_PIECEWISE_HPP

#include <vector>

#include "univpep/classes.hpp"

namespace univpep {

/// One closed-form building block of a piecewise analytic function, always a
/// function of the absolute coordinate x.
struct Term {
  enum class Kind {
    Mono,      // c * x^n
    ExpAffine, // c * exp(a + b x)
    PowAffine, // c * (a + b x)^p
    LogAffine, // c * log(a + b x)
    XLogAffine,// c * (a + b x) * log(a + b x)
    Infinity,  // +inf plateau
  };

  Kind kind = Kind::Mono;
  double c = 0.0;
  int n = 0;
  double a = 0.0, b = 0.0;
  double p = 0.0;

  static Term mono(double c, int n);
  static Term exp_affine(double c, double a, double b);
  static Term pow_affine(double c, double a, double b, double p);
  static Term log_affine(double c, double a, double b);
  static Term x_log_affine(double c, double a, double b);
  static Term infinity();

  double value(double x) const;
  double deriv(double x) const;
  double second(double x) const;
  /// Closed-form antiderivative, as a sum of terms (throws on Infinity).
  std::vector<Term> antiderivative() const;
};

struct Segment {
  double lo = -kInf;
  double hi = kInf;
  std::vector<Term> terms;

  Segment() = default;
  Segment(double lo, double hi, std::vector<Term> terms);

  bool is_infinite_plateau() const;
  double value(double x) const;
  double deriv(double x) const;
  double second(double x) const;
};

/// Piecewise analytic univariate function with exact value, first and second
/// derivative evaluation on segment interiors. Immutable after construction.
class PiecewiseFunction {
 public:
  PiecewiseFunction() = default;
  explicit PiecewiseFunction(std::vector<Segment> segments);

  /// Single segment covering the whole line.
  static PiecewiseFunction entire(std::vector<Term> terms);

  const std::vector<Segment>& segments() const { return segments_; }
  double domain_lo() const;
  double domain_hi() const;
  /// Interior segment boundaries.
  std::vector<double> breakpoints() const;

  double value(double x) const;
  double deriv(double x) const;
  double second(double x) const;

  /// Exact integral over [lo, hi]; throws std::domain_error when the range
  /// meets an infinite plateau.
  double integrate(double lo, double hi) const;

  /// Antiderivative F with F(anchor_x) = anchor_value, again piecewise
  /// closed-form. Throws on infinite plateaus.
  PiecewiseFunction antiderivative(double anchor_x, double anchor_value) const;

 private:
  std::vector<Segment> segments_;
  const Segment& locate(double x) const;
};

/// Largest violation of the defining one-point inequality of `spec` over a
/// uniform grid on [lo, hi]. The highest constrained derivative is estimated
/// by a central finite difference of the one below it, so the report is an
/// oracle independent of how `f` was produced. Grid points are nudged off
/// segment breakpoints.
MembershipReport membership_residual(const PiecewiseFunction& f, const ClassSpec& spec,
                                     double lo, double hi, int samples = 1001);

} // namespace univpep

#endif
