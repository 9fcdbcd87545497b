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

#include <benchmark/benchmark.h>

#include <random>

#include "univpep/interpolation.hpp"
#include "univpep/pep.hpp"
#include "univpep/random_members.hpp"

namespace {

using namespace univpep;

void BM_CheckQsc(benchmark::State& state) {
  const auto spec = ClassSpec::quasi_self_concordant(1.0);
  std::mt19937_64 rng(7);
  const auto f = random_member(spec, rng);
  const auto data = sample_dataset(f, spec, static_cast<int>(state.range(0)), -2.0, 2.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_second_order_no_values(data, spec));
  }
}
BENCHMARK(BM_CheckQsc)->Arg(4)->Arg(16)->Arg(64);

void BM_CheckHlValues(benchmark::State& state) {
  const auto spec = ClassSpec::hessian_lipschitz(1.0);
  std::mt19937_64 rng(7);
  const auto f = random_member(spec, rng);
  const auto data = sample_dataset(f, spec, static_cast<int>(state.range(0)), -2.0, 2.0, rng, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_second_order_with_values(data, spec));
  }
}
BENCHMARK(BM_CheckHlValues)->Arg(4)->Arg(16)->Arg(64);

void BM_Reconstruct(benchmark::State& state) {
  const auto spec = ClassSpec::self_concordant(1.0);
  std::mt19937_64 rng(11);
  const auto f = random_member(spec, rng);
  const auto data = sample_dataset(f, spec, 3, -1.5, 1.5, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_interpolant(data, spec));
  }
}
BENCHMARK(BM_Reconstruct);

void BM_PepScNewton(benchmark::State& state) {
  PepProblem p;
  p.cls = ClassSpec::self_concordant(1.0);
  p.method = MethodSpec::newton();
  p.iterations = 1;
  p.measure = Measure::NewtonDecrementLast;
  p.initial = InitialKind::NewtonDecrement;
  p.R = 0.5;
  SolverConfig cfg;
  cfg.restarts = 32;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(p, cfg));
  }
}
BENCHMARK(BM_PepScNewton)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
