// Copyright 2026 The vwb Authors
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

#include "vwb/epigraph.hpp"
#include "vwb/regularity.hpp"
#include "vwb/runner.hpp"

namespace {

using vwb::Real;

vwb::NeighborhoodSchedule schedule(int depth, bool fl) {
  vwb::NeighborhoodSchedule s;
  s.r0 = Real::rational(1, 10);
  s.depth = depth;
  return fl ? s.to_float() : s;
}

void BM_MinkowskiSum(benchmark::State& state) {
  std::vector<vwb::Interval> a, b;
  for (long i = 0; i < state.range(0); ++i) {
    a.push_back({Real::rational(4 * i, 3), Real::rational(4 * i + 1, 3)});
    b.push_back({Real::rational(7 * i, 5), Real::rational(7 * i + 2, 5)});
  }
  const vwb::IntervalSet sa = vwb::IntervalSet::normalize(a), sb = vwb::IntervalSet::normalize(b);
  for (auto _ : state) benchmark::DoNotOptimize(vwb::minkowski_sum(sa, sb));
}
BENCHMARK(BM_MinkowskiSum)->Arg(4)->Arg(16)->Arg(64);

// Regularity trace of F+G at the origin; arg 1 selects the float backend.
void BM_CounterexampleModulus(benchmark::State& state) {
  const bool fl = state.range(1) != 0;
  vwb::PMF sum = vwb::sum_mf(vwb::counterexample_f(), vwb::counterexample_g());
  if (fl) sum = sum.to_float();
  const auto sched = schedule(static_cast<int>(state.range(0)), fl);
  for (auto _ : state) benchmark::DoNotOptimize(vwb::mr_modulus(sum, Real(0), Real(0), sched, vwb::GridSpec{}));
}
BENCHMARK(BM_CounterexampleModulus)->Args({8, 0})->Args({8, 1})->Args({16, 0})->Unit(benchmark::kMillisecond);

void BM_EpigraphicalModulus(benchmark::State& state) {
  const vwb::EpigraphicalMF e(vwb::PMF::affine("F", Real(2), Real(0)),
                              vwb::PMF::affine("G", Real::rational(-1, 2), Real(0)), Real::rational(1, 2));
  vwb::GridSpec grid;
  grid.counts = {static_cast<int>(state.range(0))};
  for (auto _ : state)
    benchmark::DoNotOptimize(vwb::epi_mr_modulus(e, Real(0), Real(0), Real(0), schedule(6, false), grid));
}
BENCHMARK(BM_EpigraphicalModulus)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SumStabilityProbe(benchmark::State& state) {
  const vwb::PMF f = vwb::counterexample_f(), g = vwb::counterexample_g();
  for (auto _ : state)
    benchmark::DoNotOptimize(vwb::sum_stability_probe(f, g, Real(0), Real(0), Real(0), {Real::rational(1, 40)},
                                                      schedule(8, false), vwb::GridSpec{}));
}
BENCHMARK(BM_SumStabilityProbe)->Unit(benchmark::kMillisecond);

// Full built-in suite; the argument is the worker count.
void BM_ScenarioSuite(benchmark::State& state) {
  vwb::ScenarioConfig cfg;
  for (const std::string& n : vwb::builtin_scenario_names()) cfg.scenarios.push_back(vwb::builtin_scenario(n));
  const vwb::RunOptions opts{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(vwb::run_scenario(cfg, opts));
}
BENCHMARK(BM_ScenarioSuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
