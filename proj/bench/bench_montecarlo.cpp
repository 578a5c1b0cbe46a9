// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.
//
//   qtomo_bench --benchmark_filter=Tomography

#include <benchmark/benchmark.h>

#include <numbers>

#include "qtomo/information.hpp"
#include "qtomo/montecarlo.hpp"

namespace {

using namespace qtomo;

SimulationPlan tomography_plan(std::int64_t n) {
  SimulationPlan p;
  p.povm = xyz_povm();
  p.s_true = bloch_from_spherical({0.99, std::numbers::pi / 4, std::numbers::pi / 4});
  p.n_grid = {n};
  p.sequences = 4000;
  p.seed = 1;
  return p;
}

void BM_TomographySerial(benchmark::State& state) {
  const SimulationPlan plan = tomography_plan(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::empirical_expected_loss(plan));
  state.SetItemsProcessed(state.iterations() * plan.sequences);
}

void BM_TomographyOmp(benchmark::State& state) {
  const SimulationPlan plan = tomography_plan(state.range(0));
  const ParallelOptions par{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(empirical_expected_loss(plan, par));
  state.SetItemsProcessed(state.iterations() * plan.sequences);
}

struct OracleCase {
  BlochVector s = bloch_from_spherical({0.9, std::numbers::pi / 4, std::numbers::pi / 4});
  FisherMatrix f = fisher_matrix(xyz_povm(), s);
  LossFunctional loss = LossFunctional::quadratic(hesse_if(s));
};

void BM_OracleSerial(benchmark::State& state) {
  const OracleCase c;
  const std::int64_t m = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::gaussian_projection_oracle(c.s, c.f, 400, m, c.loss, 2));
  }
  state.SetItemsProcessed(state.iterations() * m);
}

void BM_OracleOmp(benchmark::State& state) {
  const OracleCase c;
  const std::int64_t m = state.range(0);
  const ParallelOptions par{static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_projection_oracle(c.s, c.f, 400, m, c.loss, 2, par));
  }
  state.SetItemsProcessed(state.iterations() * m);
}

}  // namespace

BENCHMARK(BM_TomographySerial)->Arg(100)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TomographyOmp)
    ->ArgsProduct({{100, 100000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_OracleSerial)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleOmp)
    ->ArgsProduct({{1 << 18}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
