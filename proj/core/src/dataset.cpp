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

#include "univpep/dataset.hpp"

#include <algorithm>

namespace univpep {

SecondOrderPoint SecondOrderPoint::xf(double x, double f) {
  SecondOrderPoint p;
  p.x = x;
  p.f = f;
  return p;
}

SecondOrderPoint SecondOrderPoint::xfg(double x, double f, double g) {
  SecondOrderPoint p;
  p.x = x;
  p.f = f;
  p.g = g;
  return p;
}

SecondOrderPoint SecondOrderPoint::xgh(double x, double g, double h) {
  SecondOrderPoint p;
  p.x = x;
  p.g = g;
  p.h = h;
  return p;
}

SecondOrderPoint SecondOrderPoint::xfgh(double x, double f, double g, double h) {
  SecondOrderPoint p;
  p.x = x;
  p.f = f;
  p.g = g;
  p.h = h;
  return p;
}

bool Dataset::has_values() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.f.has_value(); });
}

bool Dataset::has_gradients() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.g.has_value(); });
}

bool Dataset::has_hessians() const {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.h.has_value(); });
}

Dataset Dataset::sorted_by_x() const {
  Dataset out = *this;
  std::stable_sort(out.points.begin(), out.points.end(),
                   [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

} // namespace univpep
