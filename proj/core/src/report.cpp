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

#include "spinorbit/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinorbit/apparatus.hpp"
#include "spinorbit/bell.hpp"
#include "spinorbit/density.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/rng.hpp"
#include "spinorbit/version.hpp"

namespace spinorbit {

namespace {

using nlohmann::ordered_json;

// Stream-id namespaces under one master seed: Monte Carlo trials use the
// raw stream ids 0..n-1, so everything else carves out a disjoint range.
constexpr std::uint64_t kHaarInputStream = 1ull << 63;
constexpr std::uint64_t kTrialMasterStream = 1ull << 62;

constexpr double kIntegrityTol = 1e-10;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

ordered_json json_complex(Complex c) {
  return ordered_json::array({c.real(), c.imag()});
}

std::string bits_string(int bits) {
  return {static_cast<char>('0' + ((bits >> 1) & 1)),
          static_cast<char>('0' + (bits & 1))};
}

// ---------------------------------------------------------------------------
// Config parsing

Complex complex_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2 ||
      !j[key][0].is_number() || !j[key][1].is_number()) {
    throw ConfigError(std::string("config: '") + key +
                      "' must be an [re, im] pair");
  }
  return Complex{j[key][0].get<double>(), j[key][1].get<double>()};
}

ProfileSpec profile_spec_from_json(const ordered_json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: 'profile' must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "kind" && key != "l" && key != "K" && key != "width" &&
        key != "coeffs") {
      throw ConfigError("config: unknown profile key '" + key + "'");
    }
  }
  ProfileSpec spec;
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("config: profile needs a string 'kind'");
  }
  try {
    spec.kind = profile_kind_from_string(j["kind"].get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (j.contains("l")) {
    if (!j["l"].is_number_integer()) {
      throw ConfigError("config: profile 'l' must be an integer");
    }
    spec.l = j["l"].get<int>();
  }
  if (!j.contains("K") || !j["K"].is_number_integer()) {
    throw ConfigError("config: profile needs an integer 'K'");
  }
  spec.window_k = j["K"].get<int>();
  if (spec.window_k < 1 || spec.window_k > 64) {
    throw ConfigError("config: profile 'K' must be in [1, 64]");
  }
  if (j.contains("width")) {
    if (!j["width"].is_number()) {
      throw ConfigError("config: profile 'width' must be a number");
    }
    spec.width = j["width"].get<double>();
  }
  if (j.contains("coeffs")) {
    if (!j["coeffs"].is_array()) {
      throw ConfigError("config: profile 'coeffs' must be an array");
    }
    for (const ordered_json& entry : j["coeffs"]) {
      if (!entry.is_array() || entry.size() != 3 ||
          !entry[0].is_number_integer() || !entry[1].is_number() ||
          !entry[2].is_number()) {
        throw ConfigError(
            "config: each profile coefficient must be [m, re, im]");
      }
      spec.coeffs.emplace_back(
          entry[0].get<int>(),
          Complex{entry[1].get<double>(), entry[2].get<double>()});
    }
  }
  return spec;
}

ordered_json profile_spec_json(const ProfileSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["l"] = spec.l;
  j["K"] = spec.window_k;
  if (spec.width) j["width"] = *spec.width;
  if (!spec.coeffs.empty()) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& [m, c] : spec.coeffs) {
      coeffs.push_back({m, c.real(), c.imag()});
    }
    j["coeffs"] = std::move(coeffs);
  }
  return j;
}

// Checks |alpha|^2 + |beta|^2 = 1 to config precision, then renormalizes
// exactly so that downstream unit-norm preconditions hold bit-for-bit.
std::pair<Complex, Complex> normalized_input(Complex alpha, Complex beta,
                                             const char* what) {
  double n = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw ConfigError(std::string(what) +
                      ": |alpha|^2 + |beta|^2 must equal 1");
  }
  double s = 1.0 / std::sqrt(n);
  return {alpha * s, beta * s};
}

// ---------------------------------------------------------------------------
// Report building blocks

ordered_json exhaustive_json(const ExhaustiveReport& ex,
                             const CorrectionTable& table) {
  ordered_json outcomes = ordered_json::object();
  double min_par = 1.0, max_par = 0.0, min_full = 1.0, max_full = 0.0;
  for (const OutcomeReport& r : ex.outcomes) {
    ordered_json o;
    o["probability"] = r.probability;
    o["bits"] = bits_string(classical_bits(r.outcome));
    o["correction"] = correction_element_names(table.correction(r.outcome));
    o["parity_fidelity_pre"] = r.parity_fidelity_pre;
    o["parity_fidelity_post"] = r.parity_fidelity_post;
    o["full_oam_fidelity_post"] = r.full_oam_fidelity_post;
    o["parity_purity"] = r.parity_purity;
    o["full_state_purity"] = r.full_state_purity;
    outcomes[to_string(r.outcome)] = std::move(o);
    if (r.probability > kTol) {
      min_par = std::min(min_par, r.parity_fidelity_post);
      max_par = std::max(max_par, r.parity_fidelity_post);
      min_full = std::min(min_full, r.full_oam_fidelity_post);
      max_full = std::max(max_full, r.full_oam_fidelity_post);
    }
  }
  ordered_json j;
  j["outcomes"] = std::move(outcomes);
  j["probability_sum"] = ex.probability_sum();
  j["max_probability_deviation"] = ex.max_probability_deviation();
  j["fidelity"] = {
      {"parity_post",
       {{"min", min_par},
        {"mean", ex.mean_parity_fidelity_post()},
        {"max", max_par}}},
      {"full_oam_post",
       {{"min", min_full},
        {"mean", ex.mean_full_oam_fidelity_post()},
        {"max", max_full}}}};
  return j;
}

ordered_json trials_json(const std::vector<TrialRecord>& records,
                         std::uint64_t master_seed, bool record_trials) {
  std::array<int, 4> counts{};
  double sum_par = 0.0, min_par = 1.0, max_par = 0.0;
  double sum_full = 0.0, min_full = 1.0, max_full = 0.0;
  for (const TrialRecord& r : records) {
    ++counts[static_cast<int>(r.outcome)];
    sum_par += r.parity_fidelity_post;
    min_par = std::min(min_par, r.parity_fidelity_post);
    max_par = std::max(max_par, r.parity_fidelity_post);
    sum_full += r.full_oam_fidelity_post;
    min_full = std::min(min_full, r.full_oam_fidelity_post);
    max_full = std::max(max_full, r.full_oam_fidelity_post);
  }
  double n = static_cast<double>(records.size());
  ordered_json j;
  j["n"] = records.size();
  j["seed"] = master_seed;
  ordered_json jc = ordered_json::object();
  ordered_json jf = ordered_json::object();
  for (BellOutcome o : kBellOutcomes) {
    int i = static_cast<int>(o);
    jc[to_string(o)] = counts[i];
    jf[to_string(o)] = counts[i] / n;
  }
  j["counts"] = std::move(jc);
  j["frequencies"] = std::move(jf);
  j["fidelity"] = {
      {"parity_post",
       {{"min", min_par}, {"mean", sum_par / n}, {"max", max_par}}},
      {"full_oam_post",
       {{"min", min_full}, {"mean", sum_full / n}, {"max", max_full}}}};
  if (record_trials) {
    ordered_json recs = ordered_json::array();
    for (const TrialRecord& r : records) {
      ordered_json rec;
      rec["trial"] = r.trial;
      rec["outcome"] = to_string(r.outcome);
      rec["bits"] = bits_string(r.bits);
      rec["parity_fidelity_pre"] = r.parity_fidelity_pre;
      rec["parity_fidelity_post"] = r.parity_fidelity_post;
      rec["full_oam_fidelity_post"] = r.full_oam_fidelity_post;
      recs.push_back(std::move(rec));
    }
    j["records"] = std::move(recs);
  }
  return j;
}

ordered_json context_json(const ProtocolContext& ctx,
                          const std::array<std::string, 4>& detector_names) {
  ordered_json j;
  j["window_K"] = ctx.window().half_width();
  j["pump_charge"] = ctx.profile.pump_charge();
  j["convention"] = to_string(ctx.bench.convention);
  j["negative_control"] = ctx.profile.pump_charge() == 0;
  ordered_json map = ordered_json::object();
  for (int d = 0; d < 4; ++d) {
    map[detector_names[d]] = to_string(ctx.detector_map.outcome_at[d]);
  }
  j["detector_map"] = std::move(map);
  ordered_json table = ordered_json::object();
  for (BellOutcome o : kBellOutcomes) {
    table[to_string(o)] =
        correction_element_names(ctx.table.correction(o));
  }
  j["correction_table"] = std::move(table);
  return j;
}

ordered_json control_json(const NegativeControlStats& stats) {
  ordered_json j;
  j["n_inputs"] = stats.n_inputs;
  j["mean_fidelity_frozen"] = stats.mean_fidelity_frozen;
  j["min_fidelity_frozen"] = stats.min_fidelity_frozen;
  j["max_fidelity_frozen"] = stats.max_fidelity_frozen;
  j["mean_fidelity_best"] = stats.mean_fidelity_best;
  ordered_json best = ordered_json::object();
  for (BellOutcome o : kBellOutcomes) {
    best[to_string(o)] =
        to_string(stats.best_correction[static_cast<int>(o)]);
  }
  j["best_correction"] = std::move(best);
  return j;
}

// A charge-1 run with a post-correction parity fidelity below 1 - 1e-10 on
// a reachable outcome means the simulator itself is broken; never report
// such numbers as results.
void check_integrity(const ProtocolContext& ctx, const ExhaustiveReport& ex) {
  if (ctx.profile.pump_charge() != 1) return;
  for (const OutcomeReport& r : ex.outcomes) {
    if (r.probability > kTol &&
        r.parity_fidelity_post < 1.0 - kIntegrityTol) {
      throw ProtocolIntegrityError(
          "post-correction parity fidelity " +
          std::to_string(r.parity_fidelity_post) + " on outcome " +
          to_string(r.outcome) +
          " for a charge-1 pump; the protocol must be exact");
    }
  }
}

// Outcome probabilities and Bob's corrected conditional states, the same
// branch teleport_exhaustive scores internally (needed here to feed a
// program-defined receiver stage).
struct CorrectedBranches {
  std::array<double, 4> probability;
  std::vector<DensityMatrix> corrected;  // indexed by outcome
};

CorrectedBranches corrected_branches(const ProtocolContext& ctx,
                                     Complex alpha, Complex beta,
                                     MeasureMode mode) {
  TwoPhotonState chi = prepare_input(make_biphoton(ctx.profile), alpha, beta);
  ModeSpace space_b = chi.space_b;
  CorrectedBranches out{};
  std::vector<DensityMatrix> bob;
  if (mode == MeasureMode::kProjector) {
    BellExpansion e = expand_in_bell(chi);
    for (BellOutcome o : kBellOutcomes) {
      int i = static_cast<int>(o);
      out.probability[i] = e.probability(o);
      bob.push_back(out.probability[i] > kTol ? e.conditional_b(o)
                                              : DensityMatrix(space_b));
    }
  } else {
    DetectorStats stats = detector_statistics(chi, ctx.bench);
    for (BellOutcome o : kBellOutcomes) {
      int d = ctx.detector_map.detector_of(o);
      out.probability[static_cast<int>(o)] = stats.probability[d];
      bob.push_back(stats.conditional_b[d]);
    }
  }
  for (BellOutcome o : kBellOutcomes) {
    int i = static_cast<int>(o);
    CorrectionKind kind =
        ctx.table.correction(outcome_from_bits(classical_bits(o)));
    out.corrected.push_back(
        out.probability[i] > kTol
            ? apply(correction_op(kind, space_b), bob[i])
            : DensityMatrix(space_b));
  }
  return out;
}

// Embed a single-path density matrix onto path 0 of an n-path space.
DensityMatrix embed_density(const DensityMatrix& rho, int n_paths) {
  if (rho.space.n_paths != 1) {
    throw InvalidArgumentError("embedding expects a single-path state");
  }
  ModeSpace wide = rho.space.with_paths(n_paths);
  DensityMatrix out(wide);
  int d = rho.space.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out.mat(i * n_paths, j * n_paths) = rho.mat(i, j);
    }
  }
  return out;
}

// The receiver-side stage of a program: Bob's corrected state is pushed
// through the stage and read out at the stage's first detector; reported
// per outcome with the polarization landing there.
ordered_json swap_json(const ProtocolContext& ctx,
                       const dsl::LoweredStage& stage, Complex alpha,
                       Complex beta, MeasureMode mode) {
  const auto& [det_name, det_path] = stage.detectors.front();
  CorrectedBranches branches = corrected_branches(ctx, alpha, beta, mode);
  Qubit target(alpha, beta);

  ordered_json outcomes = ordered_json::object();
  double mean_fid = 0.0, prob_sum = 0.0, max_leak = 0.0;
  for (BellOutcome o : kBellOutcomes) {
    int i = static_cast<int>(o);
    ordered_json entry;
    entry["probability"] = branches.probability[i];
    if (branches.probability[i] > kTol) {
      DensityMatrix wide =
          embed_density(branches.corrected[i], stage.op.space.n_paths);
      DensityMatrix after = apply(stage.op, wide);
      double weight = after.path_weight(det_path);
      // Polarization block on the detector path, traced over charge.
      QubitMatrix pol = QubitMatrix::Zero();
      int n = stage.op.space.n_paths;
      int n_charges = stage.op.space.window.size();
      for (int p = 0; p < 2; ++p) {
        for (int pp = 0; pp < 2; ++pp) {
          for (int q = 0; q < n_charges; ++q) {
            pol(p, pp) += after.mat((q * 2 + p) * n + det_path,
                                    (q * 2 + pp) * n + det_path);
          }
        }
      }
      double fid = 0.0;
      if (weight > kTol) {
        pol /= weight;
        fid = (target.adjoint() * pol * target).value().real();
      }
      entry["weight_at_detector"] = weight;
      entry["leak_weight"] = 1.0 - weight;
      entry["polarization"] = {
          {json_complex(pol(0, 0)), json_complex(pol(0, 1))},
          {json_complex(pol(1, 0)), json_complex(pol(1, 1))}};
      entry["fidelity_vs_input"] = fid;
      mean_fid += branches.probability[i] * fid;
      prob_sum += branches.probability[i];
      max_leak = std::max(max_leak, 1.0 - weight);
    }
    outcomes[to_string(o)] = std::move(entry);
  }
  ordered_json j;
  j["detector"] = det_name;
  j["outcomes"] = std::move(outcomes);
  j["mean_fidelity_vs_input"] = prob_sum > 0.0 ? mean_fid / prob_sum : 0.0;
  j["max_leak_weight"] = max_leak;
  return j;
}

// One teleportation input: exhaustive section always, sampled section when
// trials > 0.
ordered_json input_json(const ProtocolContext& ctx, Complex alpha,
                        Complex beta, MeasureMode mode, int trials,
                        std::uint64_t trial_master, bool record_trials) {
  ordered_json j;
  j["alpha"] = json_complex(alpha);
  j["beta"] = json_complex(beta);
  ExhaustiveReport ex = teleport_exhaustive(ctx, alpha, beta, mode);
  check_integrity(ctx, ex);
  j["exhaustive"] = exhaustive_json(ex, ctx.table);
  if (trials > 0) {
    std::vector<TrialRecord> records =
        run_trials(ctx, alpha, beta, trials, trial_master, mode);
    j["trials"] = trials_json(records, trial_master, record_trials);
  }
  return j;
}

std::array<std::string, 4> default_detector_names() {
  return {"D1", "D2", "D3", "D4"};
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, /*cb=*/nullptr,
                                       /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw ConfigError("config: input is not a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    static const char* kKeys[] = {"profile",    "input", "trials",
                                  "seed",       "mode",  "convention",
                                  "record_trials", "control_inputs",
                                  "sweep"};
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return key == k;
        }) == std::end(kKeys)) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  RunConfig config;
  if (!j.contains("profile")) {
    throw ConfigError("config: missing 'profile'");
  }
  config.profile = profile_spec_from_json(j["profile"]);
  try {
    (void)make_profile(config.profile);  // surface inconsistencies now
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (!j.contains("input") || !j["input"].is_object()) {
    throw ConfigError("config: missing 'input' object");
  }
  const ordered_json& in = j["input"];
  if (in.contains("haar")) {
    if (in.contains("alpha") || in.contains("beta")) {
      throw ConfigError(
          "config: 'input' must give either alpha/beta or haar, not both");
    }
    if (!in["haar"].is_number_integer() || in["haar"].get<int>() < 1) {
      throw ConfigError("config: 'input.haar' must be a positive integer");
    }
    config.input.haar_n = in["haar"].get<int>();
  } else {
    auto [alpha, beta] = normalized_input(complex_field(in, "alpha"),
                                          complex_field(in, "beta"),
                                          "config input");
    config.input.fixed = std::make_pair(alpha, beta);
  }

  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer() || j["trials"].get<int>() < 0) {
      throw ConfigError("config: 'trials' must be an integer >= 0");
    }
    config.trials = j["trials"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ConfigError("config: 'seed' must be a non-negative integer");
    }
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (config.trials > 0 && !config.seed) {
    throw ConfigError("config: 'seed' is required when trials > 0");
  }
  if (config.input.haar_n > 0 && !config.seed) {
    throw ConfigError("config: 'seed' is required for haar-random inputs");
  }

  try {
    if (j.contains("mode")) {
      if (!j["mode"].is_string()) {
        throw ConfigError("config: 'mode' must be a string");
      }
      config.mode = measure_mode_from_string(j["mode"].get<std::string>());
    }
    if (j.contains("convention")) {
      if (!j["convention"].is_string()) {
        throw ConfigError("config: 'convention' must be a string");
      }
      config.convention =
          bs_convention_from_string(j["convention"].get<std::string>());
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (j.contains("record_trials")) {
    if (!j["record_trials"].is_boolean()) {
      throw ConfigError("config: 'record_trials' must be a boolean");
    }
    config.record_trials = j["record_trials"].get<bool>();
  }
  if (j.contains("control_inputs")) {
    if (!j["control_inputs"].is_number_integer() ||
        j["control_inputs"].get<int>() < 1) {
      throw ConfigError("config: 'control_inputs' must be >= 1");
    }
    config.control_inputs = j["control_inputs"].get<int>();
  }

  if (j.contains("sweep")) {
    const ordered_json& sw = j["sweep"];
    if (!sw.is_object() || !sw.contains("parameter") ||
        !sw["parameter"].is_string() || !sw.contains("values") ||
        !sw["values"].is_array()) {
      throw ConfigError(
          "config: 'sweep' needs a string 'parameter' and an array "
          "'values'");
    }
    SweepSpec sweep;
    sweep.parameter = sw["parameter"].get<std::string>();
    if (sweep.parameter != "K" && sweep.parameter != "width") {
      throw ConfigError("config: sweep parameter must be 'K' or 'width'");
    }
    for (const ordered_json& v : sw["values"]) {
      if (!v.is_number()) {
        throw ConfigError("config: sweep values must be numbers");
      }
      sweep.values.push_back(v.get<double>());
    }
    if (sweep.values.empty()) {
      throw ConfigError("config: sweep values must be nonempty");
    }
    config.sweep = std::move(sweep);
  }
  return config;
}

namespace {

ordered_json config_echo(const RunConfig& config) {
  ordered_json j;
  j["profile"] = profile_spec_json(config.profile);
  ordered_json in;
  if (config.input.fixed) {
    in["alpha"] = json_complex(config.input.fixed->first);
    in["beta"] = json_complex(config.input.fixed->second);
  } else {
    in["haar"] = config.input.haar_n;
  }
  j["input"] = std::move(in);
  j["trials"] = config.trials;
  if (config.seed) j["seed"] = *config.seed;
  j["mode"] = to_string(config.mode);
  j["convention"] = to_string(config.convention);
  j["record_trials"] = config.record_trials;
  j["control_inputs"] = config.control_inputs;
  if (config.sweep) {
    j["sweep"] = {{"parameter", config.sweep->parameter},
                  {"values", config.sweep->values}};
  }
  return j;
}

std::vector<std::pair<Complex, Complex>> resolve_inputs(
    const RunConfig& config) {
  std::vector<std::pair<Complex, Complex>> inputs;
  if (config.input.fixed) {
    inputs.push_back(*config.input.fixed);
  } else {
    for (int i = 0; i < config.input.haar_n; ++i) {
      TrialRng rng(*config.seed, kHaarInputStream + i);
      Qubit q = rng.haar_qubit();
      inputs.emplace_back(q(0), q(1));
    }
  }
  return inputs;
}

}  // namespace

std::string run_report(const RunConfig& config) {
  Profile profile = make_profile(config.profile);
  ProtocolContext ctx = make_context(profile, config.convention);

  ordered_json report;
  report["version"] = kVersionString;
  report["config"] = config_echo(config);
  report["context"] = context_json(ctx, default_detector_names());

  ordered_json inputs = ordered_json::array();
  std::vector<std::pair<Complex, Complex>> resolved = resolve_inputs(config);
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    // Each input gets its own trial stream family so two haar inputs never
    // replay the same trial sequence.
    std::uint64_t trial_master =
        config.seed ? derive_stream_seed(*config.seed,
                                         kTrialMasterStream + i)
                    : 0;
    inputs.push_back(input_json(ctx, resolved[i].first, resolved[i].second,
                                config.mode, config.trials, trial_master,
                                config.record_trials));
  }
  report["inputs"] = std::move(inputs);

  if (profile.pump_charge() == 0) {
    NegativeControlStats stats = negative_control(
        profile, config.control_inputs, config.seed.value_or(0));
    report["negative_control"] = control_json(stats);
  }
  return report.dump(2) + "\n";
}

std::string run_report(const dsl::LoweredBench& bench,
                       const BenchOverrides& overrides) {
  const Profile& profile = bench.profile;
  auto [alpha, beta] =
      normalized_input(bench.alpha, bench.beta, "bench prepare");
  int trials = overrides.trials.value_or(bench.trials);
  std::uint64_t seed = overrides.seed.value_or(bench.seed);
  MeasureMode mode = overrides.mode.value_or(bench.mode);

  ordered_json report;
  report["version"] = kVersionString;
  ordered_json echo;
  echo["profile"] = {{"kind", to_string(profile.kind())},
                     {"l", profile.pump_charge()},
                     {"K", profile.window().half_width()}};
  if (profile.width()) echo["profile"]["width"] = *profile.width();
  echo["alpha"] = json_complex(alpha);
  echo["beta"] = json_complex(beta);
  echo["trials"] = trials;
  echo["seed"] = seed;
  echo["mode"] = to_string(mode);
  report["config"] = std::move(echo);

  // A program whose sender side is not a four-detector bench only measures
  // arrival statistics; there is no Bell outcome to condition on.
  if (bench.stage_a && !bench.has_bell_stage()) {
    TwoPhotonState chi =
        prepare_input(make_biphoton(profile), alpha, beta);
    ordered_json stats = ordered_json::object();
    TwoPhotonState wide_a =
        chi.with_paths_a(bench.stage_a->op.space.n_paths);
    TwoPhotonState after_a =
        apply_to_photon(bench.stage_a->op, Photon::kA, wide_a);
    DensityMatrix rho_a = reduce_to_a(after_a);
    for (const auto& [name, path] : bench.stage_a->detectors) {
      stats[name] = rho_a.path_weight(path);
    }
    if (bench.stage_b && !bench.stage_b->detectors.empty()) {
      TwoPhotonState wide_b =
          chi.with_paths_b(bench.stage_b->op.space.n_paths);
      TwoPhotonState after_b =
          apply_to_photon(bench.stage_b->op, Photon::kB, wide_b);
      DensityMatrix rho_b = reduce_to_b(after_b);
      for (const auto& [name, path] : bench.stage_b->detectors) {
        stats[name] = rho_b.path_weight(path);
      }
    }
    report["detector_statistics"] = std::move(stats);
    return report.dump(2) + "\n";
  }

  // Full protocol run; a program-defined sender stage replaces the built-in
  // bench (its detector labelling re-derived, not assumed).
  ProtocolContext ctx = [&] {
    if (bench.has_bell_stage()) {
      BenchLayout layout = bench.bell_layout();
      Profile table_profile =
          profile.pump_charge() == 1
              ? profile
              : uniform_profile(profile.window(), 1);
      return ProtocolContext{profile,
                             derive_correction_table(table_profile), layout,
                             derive_detector_map(layout)};
    }
    return make_context(profile);
  }();

  std::array<std::string, 4> names = default_detector_names();
  if (bench.has_bell_stage()) {
    for (int d = 0; d < 4; ++d) {
      names[d] = bench.stage_a->detectors[d].first;
    }
  }
  report["context"] = context_json(ctx, names);
  report["inputs"] = ordered_json::array(
      {input_json(ctx, alpha, beta, mode, trials,
                  derive_stream_seed(seed, kTrialMasterStream),
                  /*record_trials=*/false)});

  if (bench.stage_b && !bench.stage_b->detectors.empty()) {
    report["swap"] = swap_json(ctx, *bench.stage_b, alpha, beta, mode);
  }
  if (profile.pump_charge() == 0) {
    NegativeControlStats stats =
        negative_control(profile, 2000, seed);
    report["negative_control"] = control_json(stats);
  }
  return report.dump(2) + "\n";
}

std::string sweep_csv(const RunConfig& config) {
  if (!config.sweep || config.sweep->values.empty()) {
    throw ConfigError("sweep: config has no sweep values");
  }
  if (!config.input.fixed) {
    throw ConfigError("sweep: a fixed input qubit is required");
  }
  const auto& [alpha, beta] = *config.input.fixed;

  std::string csv =
      "value,min_parity_fidelity,mean_parity_fidelity,"
      "mean_full_oam_fidelity,max_probability_deviation\n";
  for (double value : config.sweep->values) {
    ProfileSpec spec = config.profile;
    if (config.sweep->parameter == "K") {
      if (value < 1.0 || value != std::floor(value) || value > 64.0) {
        throw ConfigError("sweep: K values must be integers in [1, 64]");
      }
      spec.window_k = static_cast<int>(value);
    } else {
      if (spec.kind != ProfileKind::kGaussian) {
        throw ConfigError(
            "sweep: the width parameter needs a gaussian profile");
      }
      if (!(value > 0.0)) {
        throw ConfigError("sweep: width values must be positive");
      }
      spec.width = value;
    }
    Profile profile = [&] {
      try {
        return make_profile(spec);
      } catch (const Error& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
      }
    }();
    ProtocolContext ctx = make_context(profile, config.convention);
    ExhaustiveReport ex =
        teleport_exhaustive(ctx, alpha, beta, config.mode);
    check_integrity(ctx, ex);
    csv += format_double(value) + "," +
           format_double(ex.min_parity_fidelity_post()) + "," +
           format_double(ex.mean_parity_fidelity_post()) + "," +
           format_double(ex.mean_full_oam_fidelity_post()) + "," +
           format_double(ex.max_probability_deviation()) + "\n";
  }
  return csv;
}

}  // namespace spinorbit
