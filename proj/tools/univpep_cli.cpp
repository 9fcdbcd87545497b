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

// Command-line front end: feasibility checks, pair bounds, worst-case
// function lookup, method trajectories, worst-case solves and the named
// experiment sweeps.
//
// Exit codes: 0 success (check: feasible), 2 check: infeasible or pep:
// certification failure, 1 any other error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "univpep/experiments.hpp"
#include "univpep/json_io.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("expected key=value parameter, got " + kv);
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"univariate second-order worst-case analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  std::uint64_t seed = 1;
  int restarts = 256;
  double feastol = 1e-8;
  std::string out_path;
  app.add_option("--seed", seed, "solver seed")->capture_default_str();
  app.add_option("--restarts", restarts, "solver restarts")->capture_default_str();
  app.add_option("--feastol", feastol, "feasibility tolerance")->capture_default_str();
  app.add_option("--out", out_path, "output file or directory (default: stdout / cwd)");

  // check
  auto* check = app.add_subcommand("check", "feasibility of a dataset for a class");
  check->fallthrough();
  std::string check_dataset_path, check_class_json;
  check->add_option("dataset", check_dataset_path, "dataset JSON file")->required();
  check->add_option("--class", check_class_json,
                    "class JSON (overrides the dataset's \"class\" entry)");
  bool check_consecutive = false;
  check->add_flag("--consecutive", check_consecutive, "check consecutive pairs only");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "admissible increment range of a feasible pair");
  bounds->fallthrough();
  std::string bounds_dataset_path, bounds_class_json;
  bounds->add_option("dataset", bounds_dataset_path, "two-point dataset JSON file")->required();
  bounds->add_option("--class", bounds_class_json, "class JSON");

  // worst-fn
  auto* worstfn = app.add_subcommand("worst-fn", "closed-form worst-case function by name");
  worstfn->fallthrough();
  std::string wf_name;
  std::vector<std::string> wf_params;
  worstfn->add_option("name", wf_name, "function family name")->required();
  worstfn->add_option("--param", wf_params, "family parameters as key=value");

  // run-method
  auto* runm = app.add_subcommand("run-method", "trajectory of a method on a function");
  runm->fallthrough();
  std::string rm_method_json, rm_fn_path;
  double rm_x0 = 0.0;
  int rm_steps = 5;
  double rm_xstar = 0.0;
  bool rm_has_xstar = false;
  runm->add_option("--method", rm_method_json, "method JSON")->required();
  runm->add_option("--fn", rm_fn_path, "piecewise function JSON file")->required();
  runm->add_option("--x0", rm_x0, "starting point")->required();
  runm->add_option("-N,--steps", rm_steps, "iterations")->capture_default_str();
  runm->add_option("--xstar", rm_xstar, "minimizer for the distance column")
      ->each([&](const std::string&) { rm_has_xstar = true; });

  // pep
  auto* pep = app.add_subcommand("pep", "solve a worst-case estimation problem");
  pep->fallthrough();
  std::string pep_problem_path;
  bool pep_csv_row = false;
  std::string pep_relaxed;
  pep->add_option("problem", pep_problem_path, "problem JSON file")->required();
  pep->add_flag("--csv-row", pep_csv_row, "append a one-line CSV summary to stdout");
  pep->add_option("--relaxed", pep_relaxed,
                  "replace exact conditions by a classical one "
                  "(qsc_existing|qsc_improved|cubic_bound|cubic_improved)");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "run a named experiment sweep");
  rep->fallthrough();
  std::string rep_name;
  std::vector<std::string> rep_params;
  bool rep_list = false;
  rep->add_option("experiment", rep_name, "experiment name");
  rep->add_option("--param", rep_params, "parameter overrides as key=value");
  rep->add_flag("--list", rep_list, "list experiment names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      univpep::ClassSpec cls;
      bool have_cls = false;
      univpep::Dataset data;
      {
        univpep::ClassSpec embedded;
        const std::string text = slurp(check_dataset_path);
        data = univpep::dataset_from_json(text, &embedded);
        if (text.find("\"class\"") != std::string::npos) {
          cls = embedded;
          have_cls = true;
        }
      }
      if (!check_class_json.empty()) {
        cls = univpep::class_from_json(check_class_json);
        have_cls = true;
      }
      if (!have_cls) throw std::runtime_error("no class given (embed \"class\" or pass --class)");
      univpep::CheckOptions opts;
      opts.feastol = feastol;
      opts.all_pairs = !check_consecutive;
      const auto verdict = univpep::check_dataset(data, cls, opts);
      emit(univpep::verdict_to_json(verdict), out_path);
      return verdict.feasible ? 0 : 2;
    }

    if (bounds->parsed()) {
      univpep::ClassSpec cls;
      univpep::Dataset data = univpep::dataset_from_json(slurp(bounds_dataset_path), &cls);
      if (!bounds_class_json.empty()) cls = univpep::class_from_json(bounds_class_json);
      if (data.points.size() != 2) throw std::runtime_error("bounds expects exactly two points");
      const auto b = univpep::integral_bounds(data.points[0], data.points[1], cls);
      std::string text = std::string("{\"lower\": ") +
                         (b.lower == -univpep::kInf ? "null" : univpep::csv_number(b.lower)) +
                         ", \"upper\": " +
                         (b.upper == univpep::kInf ? "null" : univpep::csv_number(b.upper)) + "}";
      emit(text, out_path);
      return 0;
    }

    if (worstfn->parsed()) {
      const auto f = univpep::named_worst_case(wf_name, parse_params(wf_params));
      emit(univpep::piecewise_to_json(f), out_path);
      return 0;
    }

    if (runm->parsed()) {
      const auto method = univpep::method_from_json(rm_method_json);
      const auto f = univpep::piecewise_from_json(slurp(rm_fn_path));
      const auto traj = univpep::run(method, f, rm_x0, rm_steps,
                                     rm_has_xstar ? std::optional<double>(rm_xstar) : std::nullopt);
      emit(univpep::trajectory_to_csv(traj), out_path);
      return 0;
    }

    if (pep->parsed()) {
      const auto problem = univpep::problem_from_json(slurp(pep_problem_path));
      univpep::SolverConfig cfg;
      cfg.seed = seed;
      cfg.restarts = restarts;
      cfg.feastol = feastol;
      univpep::PepSolution sol;
      if (pep_relaxed.empty()) {
        sol = univpep::solve(problem, cfg);
      } else {
        univpep::ClassicalCondition which;
        if (pep_relaxed == "qsc_existing")
          which = univpep::ClassicalCondition::QscExisting;
        else if (pep_relaxed == "qsc_improved")
          which = univpep::ClassicalCondition::QscImproved;
        else if (pep_relaxed == "cubic_bound")
          which = univpep::ClassicalCondition::CubicBound;
        else if (pep_relaxed == "cubic_improved")
          which = univpep::ClassicalCondition::CubicImproved;
        else
          throw std::runtime_error("unknown classical condition " + pep_relaxed);
        sol = univpep::solve_relaxed(problem, which, cfg);
      }
      emit(univpep::solution_to_json(sol), out_path);
      if (pep_csv_row) {
        std::cout << "value,feasibility_residual,replay_residual,restarts,seed\n"
                  << univpep::csv_number(sol.value) << ","
                  << univpep::csv_number(sol.feasibility_residual) << ","
                  << univpep::csv_number(sol.replay_residual) << "," << sol.restarts_used << ","
                  << sol.seed << "\n";
      }
      return 0;
    }

    if (rep->parsed()) {
      if (rep_list) {
        for (const auto& n : univpep::experiment_names()) std::cout << n << "\n";
        return 0;
      }
      if (rep_name.empty()) throw std::runtime_error("experiment name required (or --list)");
      univpep::ExperimentSpec spec;
      spec.name = rep_name;
      spec.params = parse_params(rep_params);
      spec.out_dir = out_path.empty() ? "." : out_path;
      spec.seed = seed;
      spec.restarts = restarts;
      for (const auto& path : univpep::run_experiment(spec)) std::cout << path << "\n";
      return 0;
    }
  } catch (const univpep::CertificationError& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
