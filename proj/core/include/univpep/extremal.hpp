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

#ifndef UNIVPEP_EXTREMAL_HPP
#define UNIVPEP_EXTREMAL_HPP

#include <map>
#include <string>

#include "univpep/classes.hpp"
#include "univpep/dataset.hpp"
#include "univpep/piecewise.hpp"

namespace univpep {

/// Pointwise smallest and largest class members through a pair of data
/// points, restricted to the interval between them.
struct EnvelopePair {
  PiecewiseFunction lower;
  PiecewiseFunction upper;
  int lower_case = 1; // 1: two-piece, 2: three-piece with a plateau
  int upper_case = 1;
};

/// Thrown when an operation requires a feasible input pair/dataset.
class InfeasibleInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the level-cut bisection cannot bracket its target; impossible
/// on feasible input and therefore indicates checker/reconstructor mismatch.
class BisectionFailureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extremal interpolants of a feasible (position, value) pair for an order-0
/// class, on [x1, x2]. Three-piece variants carry a zero (alpha < 1) or +inf
/// (alpha > 1) middle plateau.
EnvelopePair extremal_envelopes_basic(double x1, double v1, double x2, double v2,
                                      const ClassSpec& spec);

/// Extremal interpolants of a feasible (x, g, h) pair for the class of
/// functions with M-Lipschitz derivative-of-g (three-piece quadratics, or a
/// single parabola in the degenerate case h2 - h1 = +-M (x2 - x1)).
EnvelopePair extremal_gradients_smooth(double x1, double g1, double h1, double x2, double g2,
                                       double h2, double M);

struct PairBounds {
  double lower = -kInf;
  double upper = kInf;
};

/// Admissible range of v2 - v1 for a pair whose derivative data d1, d2 at
/// x1 < x2 is interpolable by the order-0 class: the exact integrals of the
/// extremal interpolants.
PairBounds basic_pair_value_bounds(double x1, double d1, double x2, double d2,
                                   const ClassSpec& basic_spec);

/// Admissible range of the next value increment for a feasible pair, at the
/// level right below the class order: bounds on f_j - f_i for order-1 data
/// and for full Hessian-Lipschitz quadruples, bounds on g_j - g_i for
/// second-order data without values. Upper bound may be +inf.
PairBounds integral_bounds(const SecondOrderPoint& a, const SecondOrderPoint& b,
                           const ClassSpec& spec);

/// Builds an actual class member interpolating a feasible dataset: envelope
/// mixing for convex classes (alpha <= 1), level-cut bisection above, with
/// constant-curvature tails outside the data hull. Function values are
/// matched when the dataset carries them; otherwise the member is anchored at
/// f(x_min) = 0.
PiecewiseFunction reconstruct_interpolant(const Dataset& data, const ClassSpec& spec);

/// Closed-form worst-case functions. Names:
///   cnm_tight(M)            cubic attaining the one-step cubic-Newton descent bound
///   newton_local_tight(M,mu) cubic-by-parts attaining the local Newton rate
///   gm_tight_upper(M,L)     companion overshoot function for the gradient method
///   dnm_family_g(M,mu,a)    damped-Newton worst-case family, one-kink branch
///   dnm_family_h(M,mu,a)    damped-Newton worst-case family, two-kink branch
///   sc_nm_tight(R)          log-barrier pair attaining the Newton decrement bound
///   dnm_sc_tight(R)         single log barrier attaining the damped-Newton bound
///   qsc_nm_tight(M,mu)      exponential pair attaining the Newton bound on
///                           quasi-self-concordant strongly convex functions
PiecewiseFunction named_worst_case(const std::string& name,
                                   const std::map<std::string, double>& params);

} // namespace univpep

#endif
