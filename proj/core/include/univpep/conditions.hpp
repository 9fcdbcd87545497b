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

#ifndef UNIVPEP_CONDITIONS_HPP
#define UNIVPEP_CONDITIONS_HPP

#include <cmath>

#include "univpep/classes.hpp"

// Signed residuals of the pairwise feasibility conditions: a value <= 0 means
// the condition holds, positive values measure the violation. The same
// formulas back the exact checkers and the PEP constraint system.
namespace univpep::cond {

/// |t_i - t_j| <= M |x_i - x_j| on tilde-transformed quantities.
inline double lipschitz_band(double xi, double ti, double xj, double tj, double M) {
  return std::abs(ti - tj) - M * std::abs(xj - xi);
}

/// Smooth-derivative-data condition on the ordered pair (i, j): lower bound on
/// g_j - g_i given h_i, h_j for a function whose second derivative is
/// M-Lipschitz.
inline double hl_pair_lower(double xi, double gi, double hi, double xj, double gj, double hj,
                            double M) {
  const double dx = xj - xi;
  const double dh = hj - hi;
  const double rhs = hi * dx - 0.5 * M * dx * dx + (dh + M * dx) * (dh + M * dx) / (4.0 * M);
  return rhs - (gj - gi);
}

/// Extra conditional constraint for the strongly convex Hessian-Lipschitz
/// class: only active when the h-profile can reach the floor mu in between.
inline double schl_pair_conditional(double xi, double gi, double hi, double xj, double gj,
                                    double hj, double M, double mu) {
  const double dx = xj - xi;
  if (dx < (hi + hj - 2.0 * mu) / M) return -kInf;
  const double rhs = mu * dx + ((hi - mu) * (hi - mu) + (hj - mu) * (hj - mu)) / (2.0 * M);
  return rhs - (gj - gi);
}

/// Self-concordant lower bound on g_j - g_i, in the variables t = h^(-1/2).
/// Returns -inf when the guard t_i + t_j > -M (x_j - x_i) is off.
inline double sc_pair_lower(double xi, double gi, double ti, double xj, double gj, double tj,
                            double M) {
  const double denom = ti + tj + M * (xj - xi);
  if (!(denom > 0.0)) return -kInf;
  const double rhs = 1.0 / (M * ti) + 1.0 / (M * tj) - 4.0 / (M * denom);
  return rhs - (gj - gi);
}

/// Quasi-self-concordant lower bound on g_j - g_i given h_i, h_j >= 0.
inline double qsc_pair_lower(double xi, double gi, double hi, double xj, double gj, double hj,
                             double M) {
  const double rhs =
      (hi + hj) / M - 2.0 / M * std::sqrt(hi * hj) * std::exp(-0.5 * M * (xj - xi));
  return rhs - (gj - gi);
}

struct HlValueResiduals {
  double band;      // |dh| - M |dx|
  double lower;     // value lower bound (or gradient limit equality when degenerate)
  double limit_val; // value limit equality (degenerate branch only, else -inf)
};

/// Full second-order conditions with values for the Hessian-Lipschitz class,
/// on the ordered pair (i, j). Near dh + M|dx| = 0 the division form is
/// replaced by the exact limit equalities.
inline HlValueResiduals hl_pair_with_values(double xi, double fi, double gi, double hi,
                                            double xj, double fj, double gj, double hj,
                                            double M, double degenerate_guard = 1e-12) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double dh = hj - hi;
  const double tg = gj - gi - hi * dx;
  const double tf = fj - fi - gi * dx - 0.5 * hi * dx * dx;
  HlValueResiduals r;
  r.band = std::abs(dh) - M * adx;
  const double denom = dh + M * adx;
  if (denom > degenerate_guard) {
    const double num = tg + 0.5 * M * adx * dx;
    r.lower = -M / 6.0 * adx * adx * adx + num * num / (2.0 * denom) +
              denom * denom * denom / (96.0 * M * M) - tf;
    r.limit_val = -kInf;
  } else {
    r.lower = std::abs(tg + 0.5 * M * adx * dx);
    r.limit_val = std::abs(tf + M / 6.0 * adx * adx * adx);
  }
  return r;
}

/// Companion upper bound implied by the lower bound on the reversed pair.
inline double hl_pair_with_values_upper(double xi, double fi, double gi, double hi, double xj,
                                        double fj, double gj, double hj, double M) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double dh = hj - hi;
  const double tg = gj - gi - hi * dx;
  const double tf = fj - fi - gi * dx - 0.5 * hi * dx * dx;
  const double denom = M * adx - dh;
  if (!(denom > 1e-12)) return -kInf;
  const double num = tg - 0.5 * M * adx * dx;
  return tf - (M / 6.0 * adx * adx * adx - num * num / (2.0 * denom) -
               denom * denom * denom / (96.0 * M * M));
}

/// Previously known necessary condition for quasi-self-concordance (one-sided
/// in the curvature, hence no h_j argument).
inline double qsc_classical(double xi, double gi, double hi, double xj, double gj, double M) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double rhs = hi / M * (std::exp(M * adx) - M * adx - 1.0);
  return (gj - gi - hi * dx) - rhs;
}

/// Strengthened version with the squared-root correction term.
inline double qsc_classical_improved(double xi, double gi, double hi, double xj, double gj,
                                     double hj, double M) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double root = std::sqrt(hj) - std::sqrt(hi * std::exp(M * dx));
  const double rhs = hi / M * (std::exp(M * adx) - M * adx - 1.0) - root * root / M;
  return (gj - gi - hi * dx) - rhs;
}

/// Two-sided cubic bound on function values of Hessian-Lipschitz functions,
/// ordered pair (i, j); returns max of the two one-sided residuals.
inline double hl_cubic_bound(double xi, double fi, double gi, double hi, double xj, double fj,
                             double M) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double tf = fj - fi - gi * dx - 0.5 * hi * dx * dx;
  const double cap = M / 6.0 * adx * adx * adx;
  return std::max(tf - cap, -tf - cap);
}

/// Cubic bound strengthened by the gradient-residual correction term.
inline double hl_cubic_bound_improved(double xi, double fi, double gi, double hi, double xj,
                                      double fj, double gj, double M) {
  const double dx = xj - xi;
  const double adx = std::abs(dx);
  const double tf = fj - fi - gi * dx - 0.5 * hi * dx * dx;
  const double tg = gj - gi - hi * dx;
  const double num = std::abs(tg - 0.5 * M * adx * dx) / M;
  const double rhs = M / 6.0 * adx * adx * adx - M / 3.0 * std::pow(num, 1.5);
  return tf - rhs;
}

} // namespace univpep::cond

#endif
