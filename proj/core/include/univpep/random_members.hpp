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

#ifndef UNIVPEP_RANDOM_MEMBERS_HPP
#define UNIVPEP_RANDOM_MEMBERS_HPP

#include <random>

#include "univpep/classes.hpp"
#include "univpep/dataset.hpp"
#include "univpep/piecewise.hpp"

namespace univpep {

/// Random class member built from closed forms that satisfy the defining
/// inequality by construction, usable on [-3, 3] at least. Supports the five
/// second-order classes with fixed modulus.
PiecewiseFunction random_member(const ClassSpec& spec, std::mt19937_64& rng);

/// Samples `n` points of `f` at sorted positions drawn from [lo, hi], filling
/// the fields the class order requires (order-2 with values when
/// `with_values`).
Dataset sample_dataset(const PiecewiseFunction& f, const ClassSpec& spec, int n, double lo,
                       double hi, std::mt19937_64& rng, bool with_values = false);

} // namespace univpep

#endif
