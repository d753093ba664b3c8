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

#ifndef SPINORBIT_REPORT_HPP_
#define SPINORBIT_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/bench_dsl.hpp"
#include "spinorbit/protocol.hpp"
#include "spinorbit/spdc.hpp"

namespace spinorbit {

// Input qubit(s) of a run: either one fixed (alpha, beta) or n
// Haar-random qubits drawn from the run seed.
struct InputSpec {
  std::optional<std::pair<Complex, Complex>> fixed;
  int haar_n = 0;
};

struct SweepSpec {
  std::string parameter;  // "K" or "width"
  std::vector<double> values;
};

// Batch-run description, normally loaded from a JSON config file.
struct RunConfig {
  ProfileSpec profile;
  InputSpec input;
  int trials = 0;
  std::optional<std::uint64_t> seed;
  MeasureMode mode = MeasureMode::kProjector;
  BsConvention convention = BsConvention::kSymmetricI;
  bool record_trials = false;
  int control_inputs = 2000;  // sample count for the l = 0 control
  std::optional<SweepSpec> sweep;
};

// Throws ConfigError on malformed or inconsistent input.
RunConfig config_from_json(const std::string& text);

// Executes the run described by `config` (exhaustive always; Monte Carlo
// when trials > 0; negative control when the pump charge is 0) and renders
// the full JSON report. Pure in (config): byte-identical on rerun.
// Throws ProtocolIntegrityError if a charge-1 run produces a
// post-correction parity fidelity below 1 - 1e-10.
std::string run_report(const RunConfig& config);

// Same, driven by a lowered bench program. Optional overrides replace the
// program's run directives.
struct BenchOverrides {
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<MeasureMode> mode;
};
std::string run_report(const dsl::LoweredBench& bench,
                       const BenchOverrides& overrides = {});

// One CSV row per sweep value; columns: value, min/mean parity fidelity,
// mean full-OAM fidelity, max |p - 1/4|. Throws ConfigError when the
// config has no (or an empty) sweep.
std::string sweep_csv(const RunConfig& config);

}  // namespace spinorbit

#endif  // SPINORBIT_REPORT_HPP_
