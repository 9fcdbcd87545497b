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

#ifndef UNIVPEP_CLASSES_HPP
#define UNIVPEP_CLASSES_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace univpep {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Families of univariate function classes handled by the toolkit.
///
/// Every class constrains some derivative q = f^(k) (k = `order`) through a
/// generalized Lipschitz inequality |q'(x)| <= |beta(alpha)| * M * q(x)^alpha,
/// optionally together with a sign constraint on q.
enum class ClassKind {
  HessianLipschitz,               // |f''(x)-f''(y)| <= M|x-y|
  StronglyConvexHessianLipschitz, // same, plus f'' >= mu
  SelfConcordant,                 // |f'''| <= 2 M f''^(3/2), f'' >= 0
  QuasiSelfConcordant,            // |f'''| <= M f'', f'' >= 0
  GeneralizedSC,                  // |f'''| <= |beta(alpha)| M f''^alpha, f'' >= 0
  BasicLipschitz,                 // |f(x)-f(y)| <= M|x-y|
  Smooth,                         // |f'(x)-f'(y)| <= M|x-y|
};

struct ClassSpec {
  ClassKind kind = ClassKind::HessianLipschitz;
  double M = 1.0;      // Lipschitz-type modulus, must be > 0
  double alpha = 0.0;  // exponent of the generalized Lipschitz inequality
  double mu = 0.0;     // strong convexity modulus (StronglyConvexHessianLipschitz)
  bool nonneg = false; // whether the constrained derivative must be nonnegative
  int order = 2;       // which derivative carries the Lipschitz structure

  static ClassSpec hessian_lipschitz(double M);
  static ClassSpec strongly_convex_hessian_lipschitz(double M, double mu);
  static ClassSpec self_concordant(double M);
  static ClassSpec quasi_self_concordant(double M);
  static ClassSpec generalized_sc(double M, double alpha);
  static ClassSpec basic_lipschitz(double M);
  /// Generic order-0 class with free alpha and sign flag.
  static ClassSpec basic(double M, double alpha, bool nonneg);
  /// Generic order-1 class (derivative in the basic class).
  static ClassSpec first_order(double M, double alpha, bool nonneg);
  static ClassSpec smooth(double M);

  /// Checks M > 0, alpha >= 0, mu >= 0 and the named-kind parameter locks.
  void validate() const;

  std::string name() const;
};

/// beta(alpha) = 1/(1-alpha) for alpha != 1, and 1 at alpha = 1.
double beta(double alpha);

/// v -> v^(1-alpha) (alpha != 1) or log v (alpha = 1), the change of variable
/// that turns the generalized Lipschitz inequality into plain Lipschitzness.
///
/// Requires v >= 0, and v > 0 when alpha >= 1 (v = 0 with alpha > 1 would map
/// to +infinity; with alpha = 1 to -infinity; both are rejected as the class
/// only admits the identically-zero degenerate member there).
double tilde_transform(double v, double alpha);

/// Inverse map t -> t^beta(alpha) (alpha != 1) or e^t (alpha = 1).
double nu_transform(double t, double alpha);

struct MembershipReport {
  double max_residual = 0.0; // largest one-point inequality violation on the grid
  double worst_x = 0.0;
  int samples = 0;
};

} // namespace univpep

#endif
