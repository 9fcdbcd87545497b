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

#ifndef UNIVPEP_INTERPOLATION_HPP
#define UNIVPEP_INTERPOLATION_HPP

#include <string>
#include <vector>

#include "univpep/classes.hpp"
#include "univpep/dataset.hpp"

namespace univpep {

struct Violation {
  int i = -1; // first point index, -1 for single-point constraints' absent partner
  int j = -1;
  std::string tag;
  double residual = 0.0;
};

struct FeasibilityVerdict {
  bool feasible = true;
  double max_residual = -kInf; // signed; positive means violated
  std::vector<Violation> violations;
};

struct CheckOptions {
  double feastol = 1e-9;
  /// Check every ordered pair (default) or only consecutive pairs after
  /// sorting by x. The two modes accept exactly the same datasets.
  bool all_pairs = true;
  std::size_t max_violations = 64;
};

/// Is a set of (position, value) pairs realizable by a member of the order-0
/// class? Values enter through the tilde transform; nonnegative classes also
/// require the stated sign, with the all-zero dataset always admissible.
FeasibilityVerdict check_basic(const Dataset& data, const ClassSpec& spec,
                               const CheckOptions& opts = {});

/// Feasibility of (x, f, g) triples for classes whose first derivative lies in
/// a basic class.
FeasibilityVerdict check_first_order(const Dataset& data, const ClassSpec& spec,
                                     const CheckOptions& opts = {});

/// Feasibility of (x, g, h) triples, ignoring function values, for the
/// second-order classes.
FeasibilityVerdict check_second_order_no_values(const Dataset& data, const ClassSpec& spec,
                                                const CheckOptions& opts = {});

/// Feasibility of full (x, f, g, h) quadruples for the Hessian-Lipschitz
/// class.
FeasibilityVerdict check_second_order_with_values(const Dataset& data, const ClassSpec& spec,
                                                  const CheckOptions& opts = {});

/// Previously known necessary-but-not-sufficient conditions, used to quantify
/// the gap against the exact checkers.
enum class ClassicalCondition {
  QscExisting,
  QscImproved,
  CubicBound,
  CubicImproved,
};

FeasibilityVerdict classical_necessary(const Dataset& data, const ClassSpec& spec,
                                       ClassicalCondition which, const CheckOptions& opts = {});

/// Dispatch on the class order and field presence: order 0 -> check_basic,
/// order 1 -> check_first_order, order 2 -> with values when every point
/// carries f and the class supports it, otherwise without values.
FeasibilityVerdict check_dataset(const Dataset& data, const ClassSpec& spec,
                                 const CheckOptions& opts = {});

} // namespace univpep

#endif
