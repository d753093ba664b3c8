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

// sot - spin-orbit teleportation batch runner.
//
//   sot run   --config cfg.json | --bench prog.bench  --out report.json
//             [--trials N] [--seed S] [--mode projector|apparatus]
//   sot sweep --config cfg.json --out sweep.csv
//
// Exit codes: 0 success; 2 unreadable input, invalid config, or bench
// program error; 3 protocol-integrity failure (a charge-1 run that is not
// exact - a bug, never expected). The environment variable SPINORBIT_LOG
// (quiet|info|debug) controls stderr verbosity; there is no flag for it.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spinorbit/bench_dsl.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/report.hpp"
#include "spinorbit/version.hpp"

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitIntegrity = 3;

int log_level() {
  const char* v = std::getenv("SPINORBIT_LOG");
  if (v == nullptr) return 0;
  std::string s(v);
  if (s == "debug") return 2;
  if (s == "info") return 1;
  return 0;
}

void log_info(const std::string& message) {
  if (log_level() >= 1) std::cerr << "sot: " << message << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw spinorbit::ConfigError("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    throw spinorbit::ConfigError("cannot write '" + path + "'");
  }
}

struct RunArgs {
  std::string config_path;
  std::string bench_path;
  std::string out_path;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
};

int do_run(const RunArgs& args) {
  if (args.config_path.empty() == args.bench_path.empty()) {
    std::cerr << "sot run: exactly one of --config or --bench is required\n";
    return kExitBadInput;
  }
  std::optional<spinorbit::MeasureMode> mode;
  if (args.mode) {
    mode = spinorbit::measure_mode_from_string(*args.mode);
  }

  std::string report;
  if (!args.config_path.empty()) {
    spinorbit::RunConfig config =
        spinorbit::config_from_json(read_file(args.config_path));
    if (args.trials) config.trials = *args.trials;
    if (args.seed) config.seed = *args.seed;
    if (mode) config.mode = *mode;
    if (config.trials > 0 && !config.seed) {
      throw spinorbit::ConfigError(
          "config: 'seed' is required when trials > 0");
    }
    log_info("running config '" + args.config_path + "'");
    report = spinorbit::run_report(config);
  } else {
    spinorbit::dsl::BenchProgram program =
        spinorbit::dsl::parse(read_file(args.bench_path));
    spinorbit::dsl::LoweredBench bench = spinorbit::dsl::lower(program);
    spinorbit::BenchOverrides overrides{args.trials, args.seed, mode};
    log_info("running bench program '" + args.bench_path + "'");
    report = spinorbit::run_report(bench, overrides);
  }
  write_file(args.out_path, report);
  log_info("wrote '" + args.out_path + "'");
  return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_path) {
  spinorbit::RunConfig config =
      spinorbit::config_from_json(read_file(config_path));
  // Validate before touching the output path: an empty sweep writes no file.
  std::string csv = spinorbit::sweep_csv(config);
  write_file(out_path, csv);
  log_info("wrote '" + out_path + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-orbit teleportation simulator"};
  app.set_version_flag("--version", spinorbit::kVersionString);
  app.require_subcommand(1);

  RunArgs run_args;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string mode;

  CLI::App* run = app.add_subcommand(
      "run", "execute a run and write a JSON report");
  run->add_option("--config", run_args.config_path,
                  "JSON run configuration");
  run->add_option("--bench", run_args.bench_path, "bench program file");
  run->add_option("--out", run_args.out_path, "output report path")
      ->required();
  CLI::Option* trials_opt =
      run->add_option("--trials", trials, "override the trial count")
          ->check(CLI::NonNegativeNumber);
  CLI::Option* seed_opt =
      run->add_option("--seed", seed, "override the master seed");
  CLI::Option* mode_opt =
      run->add_option("--mode", mode, "projector or apparatus")
          ->check(CLI::IsMember({"projector", "apparatus"}));

  std::string sweep_config, sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a parameter sweep and write a CSV");
  sweep->add_option("--config", sweep_config, "JSON run configuration")
      ->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      if (trials_opt->count() > 0) run_args.trials = trials;
      if (seed_opt->count() > 0) run_args.seed = seed;
      if (mode_opt->count() > 0) run_args.mode = mode;
      return do_run(run_args);
    }
    return do_sweep(sweep_config, sweep_out);
  } catch (const spinorbit::ProtocolIntegrityError& e) {
    std::cerr << "sot: protocol integrity failure: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const spinorbit::Error& e) {
    std::cerr << "sot: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "sot: " << e.what() << "\n";
    return kExitBadInput;
  }
}
