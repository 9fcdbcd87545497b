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

#ifndef UNIVPEP_METHODS_HPP
#define UNIVPEP_METHODS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "univpep/piecewise.hpp"

namespace univpep {

struct MethodSpec {
  enum class Kind {
    Newton,              //  x - g/h
    Gradient,            //  x - step * g
    FixedDampedNewton,   //  x - step * g/h
    CubicNewton,         //  global minimizer of the cubic-regularized model
    CubicNewtonStep,     //  cubic model with regularizer M/step
    GradRegNewton1,      //  x - g/(h + M |g|)
    GradRegNewton2,      //  x - g/(h + sqrt(M |g| / 2))
    AdaptiveDampedNewton //  damping 1/(1 + M |g|/sqrt(h))
  };

  Kind kind = Kind::Newton;
  double step = 1.0; // Gradient step, damping coefficient, or cubic step scale
  double M = 1.0;    // regularization modulus where the method uses one

  static MethodSpec newton();
  static MethodSpec gradient(double step);
  static MethodSpec damped_newton(double gamma);
  static MethodSpec cubic_newton(double M);
  static MethodSpec cubic_newton_step(double M, double alpha);
  static MethodSpec grad_reg_newton1(double M);
  static MethodSpec grad_reg_newton2(double M);
  static MethodSpec adaptive_damped_newton(double M);

  std::string name() const;
  bool uses_hessian() const { return kind != Kind::Gradient; }
};

/// Thrown when a step map is undefined at the query point (zero curvature for
/// Newton-type steps, vanishing regularized denominator).
class StepError : public std::runtime_error {
 public:
  StepError(const std::string& what, int index = -1) : std::runtime_error(what), index(index) {}
  int index; // failing iteration when raised from run()
};

/// Next iterate given local first- and second-derivative values. The cubic
/// step solves its scalar model exactly; when the model has two global
/// minimizers the leftmost is returned.
double step_from_values(const MethodSpec& method, double x, double g, double h);

/// Next iterate of `method` on `f` from `x`.
double step(const MethodSpec& method, const PiecewiseFunction& f, double x);

struct TrajectoryPoint {
  double x = 0;
  double f = 0;
  double g = 0;
  double h = 0;
  double abs_g = 0;
  double lambda = 0; // |g| / sqrt(h), NaN when h <= 0
  double eta = 0;    // M |g| / h with the method's modulus (1 when none), NaN when h <= 0
  std::optional<double> dist;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points; // N+1 entries
};

/// Runs N steps recording the iterates and derived progress measures; `xstar`
/// feeds the distance column when the worst-case setting fixes a minimizer.
Trajectory run(const MethodSpec& method, const PiecewiseFunction& f, double x0, int steps,
               std::optional<double> xstar = std::nullopt);

/// Closed-form one-step/worst-case bounds keyed by name:
///   cnm_descent_old        {g, h, M}   old cubic-Newton descent guarantee
///   cnm_descent_old_grad   {g, M}      its gradient branch alone
///   cnm_descent_improved   {g, M}      improved univariate descent guarantee
///   cnm_sublinear_old      {R, M, N}   min-gradient rate from the old lemma
///   cnm_sublinear_improved {R, M, N}   improved min-gradient rate
///   gnm2_local             {g, M, mu}  gradient-regularized Newton contraction
///   newton_local           {r, M, mu}  Newton distance contraction, needs (M/mu) r <= 2/3
///   gm_contraction         {r, h, M, mu, L} gradient-method distance factor
///   sc_nm                  {lambda}    Newton decrement after one Newton step, lambda <= 1
///   dnm_sc                 {lambda, gamma} damped-Newton decrement, gamma within validity
///   gnm1_qsc               {eta}       improved eta contraction
///   gnm1_qsc_old           {eta}       previously known eta contraction
///   qsc_newton             {g, M, mu}  Newton gradient bound on quasi-self-concordant
///                                      strongly convex functions
double analytic_bound(const std::string& name, const std::map<std::string, double>& inputs);

} // namespace univpep

#endif
