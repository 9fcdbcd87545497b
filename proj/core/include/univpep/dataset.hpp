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

#ifndef UNIVPEP_DATASET_HPP
#define UNIVPEP_DATASET_HPP

#include <optional>
#include <string>
#include <vector>

namespace univpep {

/// One observation of a function: position plus whichever of value, first and
/// second derivative the setting provides. The repo-wide tuple convention is
/// (x, f, g, h).
struct SecondOrderPoint {
  double x = 0.0;
  std::optional<double> f;
  std::optional<double> g;
  std::optional<double> h;

  static SecondOrderPoint xf(double x, double f);
  static SecondOrderPoint xfg(double x, double f, double g);
  static SecondOrderPoint xgh(double x, double g, double h);
  static SecondOrderPoint xfgh(double x, double f, double g, double h);
};

struct Dataset {
  std::vector<SecondOrderPoint> points;

  Dataset() = default;
  explicit Dataset(std::vector<SecondOrderPoint> pts) : points(std::move(pts)) {}

  std::size_t size() const { return points.size(); }
  bool has_values() const;
  bool has_gradients() const;
  bool has_hessians() const;
  /// Copy with points ordered by increasing x.
  Dataset sorted_by_x() const;
};

} // namespace univpep

#endif
