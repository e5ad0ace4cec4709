// Copyright 2026 The ultragas Authors
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

#include "ultragas/chains.hpp"
#include "ultragas/engine.hpp"
#include "ultragas/grand.hpp"
#include "ultragas/recurrence.hpp"
#include "ultragas/sampler.hpp"

namespace ultragas {
namespace {

void BM_EnumerateChains(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    enumerate_reduced_chains(IndexSet::range(n), [&](const ReducedChain&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateChains)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_EngineExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Rational> charges;
  for (int i = 1; i <= n; ++i) charges.emplace_back(i);
  const auto spec = ExponentSpec::from_charges(charges, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(z_R(spec, Field::exact(3)));
}
BENCHMARK(BM_EngineExact)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_EngineProjective(benchmark::State& state) {
  const auto spec = ExponentSpec::uniform(static_cast<int>(state.range(0)), Rational(2));
  for (auto _ : state) benchmark::DoNotOptimize(z_proj(spec, Field::exact(2)));
}
BENCHMARK(BM_EngineProjective)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EngineSymbolic(benchmark::State& state) {
  const auto spec = ExponentSpec::uniform(static_cast<int>(state.range(0)), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(z_R(spec, Field::symbolic()));
}
BENCHMARK(BM_EngineSymbolic)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_FTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f_table(n, 0.8, 1.0));
}
BENCHMARK(BM_FTable)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ZRFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_R_fast(n, 3.0, 0.5));
}
BENCHMARK(BM_ZRFast)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_VerifyAll(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_all(2, 1, n, Mode::exact));
}
BENCHMARK(BM_VerifyAll)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  McOptions options;
  options.samples = 100000;
  options.workers = static_cast<int>(state.range(0));
  const auto spec = ExponentSpec::from_charges({1, 2, 3}, Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(mc_estimate(SpaceSpec::projective(), spec, 2, options));
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace ultragas

BENCHMARK_MAIN();
