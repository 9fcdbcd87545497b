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

#ifndef UNIVPEP_EXPERIMENTS_HPP
#define UNIVPEP_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace univpep {

/// A named experiment: a sweep of worst-case solves and/or trajectory replays
/// emitting CSV plot data (solver values next to the analytic baselines).
struct ExperimentSpec {
  std::string name;
  std::map<std::string, double> params; // overrides of the experiment defaults
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int restarts = 256;
};

std::vector<std::string> experiment_names();

/// Runs the experiment, writes its CSV file(s) atomically into out_dir and
/// returns their paths.
std::vector<std::string> run_experiment(const ExperimentSpec& spec);

} // namespace univpep

#endif
