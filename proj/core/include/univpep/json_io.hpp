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

#ifndef UNIVPEP_JSON_IO_HPP
#define UNIVPEP_JSON_IO_HPP

#include <string>

#include "univpep/interpolation.hpp"
#include "univpep/pep.hpp"

namespace univpep {

// Class specs: {"kind": "hl"|"schl"|"sc"|"qsc"|"gsc"|"lip"|"smooth",
//               "M": 1.0, "mu": 0.1, "alpha": 0.5, "order": 2, "nonneg": true}
// (mu/alpha/order/nonneg optional; named kinds fill their locked values)
std::string class_to_json(const ClassSpec& spec);
ClassSpec class_from_json(const std::string& text);

// Datasets: {"points": [{"x": 0.0, "f": ..., "g": ..., "h": ...}, ...],
//            "class": {...}}  ("class" optional, absent fields omitted)
std::string dataset_to_json(const Dataset& data, const ClassSpec* cls = nullptr);
Dataset dataset_from_json(const std::string& text, ClassSpec* cls_out = nullptr);

std::string verdict_to_json(const FeasibilityVerdict& verdict);

std::string piecewise_to_json(const PiecewiseFunction& f);
PiecewiseFunction piecewise_from_json(const std::string& text);

std::string method_to_json(const MethodSpec& method);
MethodSpec method_from_json(const std::string& text);

// Problems: {"class": {...}, "method": {...}, "N": 1,
//            "measure": "abs_grad_last", "initial": {"kind": "func_gap", "R": 1.0},
//            "stationarity": false}
std::string problem_to_json(const PepProblem& problem);
PepProblem problem_from_json(const std::string& text);

std::string solution_to_json(const PepSolution& solution);

/// One value formatted with 12 significant digits, the repo-wide CSV style.
std::string csv_number(double v);

std::string trajectory_to_csv(const Trajectory& trajectory);

} // namespace univpep

#endif
