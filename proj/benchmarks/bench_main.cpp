// Copyright 2026 The spinorbit authors
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

// Microbenchmarks for the hot paths: bench construction (operator
// composition), applying the bench unitary, Bell expansion, path-level
// detector statistics, exhaustive protocol evaluation, trial sampling,
// correction-table derivation, the parity-to-polarization swap, and DSL
// parsing + lowering. Window half-width K is the sweep argument where the
// cost scales with the truncation.

#include <cmath>
#include <string>

#include <benchmark/benchmark.h>

#include "spinorbit/apparatus.hpp"
#include "spinorbit/bell.hpp"
#include "spinorbit/bench_dsl.hpp"
#include "spinorbit/elements.hpp"
#include "spinorbit/protocol.hpp"
#include "spinorbit/spdc.hpp"

namespace {

using namespace spinorbit;

void BM_BuildBench(benchmark::State& state) {
  OamWindow window(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_bell_bench(window));
  }
}
BENCHMARK(BM_BuildBench)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_ApplyBenchUnitary(benchmark::State& state) {
  OamWindow window(static_cast<int>(state.range(0)));
  BenchLayout bench = build_bell_bench(window);
  ParityEnvelopes env = parity_envelopes(uniform_profile(window));
  SinglePhotonState photon = env.even.with_paths(bench.space.n_paths);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply(bench.unitary, photon));
  }
}
BENCHMARK(BM_ApplyBenchUnitary)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_ExpandInBell(benchmark::State& state) {
  OamWindow window(static_cast<int>(state.range(0)));
  TwoPhotonState chi =
      prepare_input(make_biphoton(uniform_profile(window)), 0.6, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand_in_bell(chi));
  }
}
BENCHMARK(BM_ExpandInBell)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_DetectorStatistics(benchmark::State& state) {
  OamWindow window(static_cast<int>(state.range(0)));
  BenchLayout bench = build_bell_bench(window);
  TwoPhotonState chi =
      prepare_input(make_biphoton(uniform_profile(window)), 0.6, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(detector_statistics(chi, bench));
  }
}
BENCHMARK(BM_DetectorStatistics)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_TeleportExhaustiveProjector(benchmark::State& state) {
  ProtocolContext ctx =
      make_context(uniform_profile(OamWindow(static_cast<int>(state.range(0)))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        teleport_exhaustive(ctx, 0.6, 0.8, MeasureMode::kProjector));
  }
}
BENCHMARK(BM_TeleportExhaustiveProjector)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_TeleportExhaustiveApparatus(benchmark::State& state) {
  ProtocolContext ctx =
      make_context(uniform_profile(OamWindow(static_cast<int>(state.range(0)))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        teleport_exhaustive(ctx, 0.6, 0.8, MeasureMode::kApparatus));
  }
}
BENCHMARK(BM_TeleportExhaustiveApparatus)->Arg(2)->Arg(4)
    ->Unit(benchmark::kMicrosecond);

void BM_RunTrials(benchmark::State& state) {
  ProtocolContext ctx = make_context(uniform_profile(OamWindow(2)));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trials(ctx, 0.6, 0.8, n, 7,
                                        MeasureMode::kApparatus,
                                        /*n_threads=*/1));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RunTrials)->Arg(256)->Arg(2048)
    ->Unit(benchmark::kMicrosecond);

void BM_DeriveCorrectionTable(benchmark::State& state) {
  Profile profile = uniform_profile(OamWindow(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(derive_correction_table(profile));
  }
}
BENCHMARK(BM_DeriveCorrectionTable)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

void BM_SwapParity(benchmark::State& state) {
  OamWindow window(static_cast<int>(state.range(0)));
  ParityEnvelopes env = parity_envelopes(uniform_profile(window));
  SinglePhotonState bob(env.even.space,
                        (env.even.amps + env.odd.amps) / std::sqrt(2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(swap_parity_to_polarization(bob));
  }
}
BENCHMARK(BM_SwapParity)->Arg(2)->Arg(4)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

const char kBenchProgram[] = R"(source spdc l=1 K=2 profile=uniform
prepare A alpha=0.6+0i beta=0.8+0i
element A sorter -> even odd
element odd dove
element odd sph
element odd hwp 0.7853981633974483
element odd delay 1.5707963267948966
element even pbs -> eh ev
element odd pbs -> oh ov
element eh bs oh
element ev bs ov
detect D1 eh
detect D2 oh
detect D3 ev
detect D4 ov
run trials=1000 seed=7 mode=apparatus
)";

void BM_ParseProgram(benchmark::State& state) {
  std::string text(kBenchProgram);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::parse(text));
  }
}
BENCHMARK(BM_ParseProgram)->Unit(benchmark::kMicrosecond);

void BM_LowerProgram(benchmark::State& state) {
  dsl::BenchProgram program = dsl::parse(kBenchProgram);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::lower(program));
  }
}
BENCHMARK(BM_LowerProgram)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
