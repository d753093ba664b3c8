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

#include "spinorbit/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinorbit/errors.hpp"
#include "spinorbit/rng.hpp"

namespace spinorbit {

const char* to_string(CorrectionKind k) {
  switch (k) {
    case CorrectionKind::kIdentity:
      return "identity";
    case CorrectionKind::kDpSph:
      return "dp_sph";
    case CorrectionKind::kParityPhasePi:
      return "parity_phase_pi";
    case CorrectionKind::kDpSphThenParityPhasePi:
      return "dp_sph+parity_phase_pi";
  }
  return "?";
}

std::vector<std::string> correction_element_names(CorrectionKind k) {
  switch (k) {
    case CorrectionKind::kIdentity:
      return {"identity"};
    case CorrectionKind::kDpSph:
      return {"dp_sph"};
    case CorrectionKind::kParityPhasePi:
      return {"parity_phase_pi"};
    case CorrectionKind::kDpSphThenParityPhasePi:
      return {"dp_sph", "parity_phase_pi"};
  }
  return {};
}

ElementOp correction_op(CorrectionKind k, const ModeSpace& space) {
  switch (k) {
    case CorrectionKind::kIdentity:
      return identity_op(space);
    case CorrectionKind::kDpSph:
      return dp_sph(space);
    case CorrectionKind::kParityPhasePi:
      return parity_phase(space, M_PI);
    case CorrectionKind::kDpSphThenParityPhasePi:
      return compose({dp_sph(space), parity_phase(space, M_PI)});
  }
  throw InvalidArgumentError("unknown correction kind");
}

QubitMatrix induced_parity_action(CorrectionKind k, const OamWindow& window) {
  ModeSpace space(window, 1);
  ElementOp op = correction_op(k, space);
  int n = window.size();
  // The corrections act trivially on polarization; extract the OAM block
  // and check the factorization holds.
  Matrix u_oam(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int qi = window.charge_at(i);
      int qj = window.charge_at(j);
      u_oam(i, j) = op.u(space.index(qi, Pol::kH, 0),
                         space.index(qj, Pol::kH, 0));
      Complex v_entry = op.u(space.index(qi, Pol::kV, 0),
                             space.index(qj, Pol::kV, 0));
      Complex hv = op.u(space.index(qi, Pol::kH, 0),
                        space.index(qj, Pol::kV, 0));
      if (std::abs(v_entry - u_oam(i, j)) > kTol || std::abs(hv) > kTol) {
        throw ConventionError("correction is not polarization-trivial");
      }
    }
  }
  // Relabel OAM as parity (x) pair and peel off the qubit factor.
  int half = window.half_width();
  Matrix perm = pairing_permutation(window);
  Matrix w = perm * u_oam * perm.adjoint();
  QubitMatrix action;
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      action(s, t) = w(s * half, t * half);
    }
  }
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      for (int p = 0; p < half; ++p) {
        for (int r = 0; r < half; ++r) {
          Complex expected = p == r ? action(s, t) : Complex{0.0, 0.0};
          if (std::abs(w(s * half + p, t * half + r) - expected) > kTol) {
            throw ConventionError(
                "correction does not factor as qubit (x) pair identity");
          }
        }
      }
    }
  }
  return action;
}

const char* to_string(MeasureMode m) {
  return m == MeasureMode::kProjector ? "projector" : "apparatus";
}

MeasureMode measure_mode_from_string(const std::string& name) {
  if (name == "projector") return MeasureMode::kProjector;
  if (name == "apparatus") return MeasureMode::kApparatus;
  throw InvalidArgumentError("unknown measure mode '" + name + "'");
}

namespace {

// Parity-qubit fidelity of a photon state against the target qubit.
double parity_fidelity(const DensityMatrix& rho, const Qubit& target) {
  return fidelity(pairing_decomposition(rho).parity, target);
}

// Generic complex input pairs used to pin down the correction table; three
// is enough to exclude every wrong candidate.
const std::array<Qubit, 3> kProbeInputs = {
    Qubit(Complex{0.6, 0.0}, Complex{0.8, 0.0}),
    Qubit(Complex{0.48, -0.36}, Complex{0.64, 0.48}),
    Qubit(Complex{1.0 / std::sqrt(3.0), 0.0},
          Complex{0.0, std::sqrt(2.0 / 3.0)})};

}  // namespace

CorrectionTable derive_correction_table(const Profile& profile) {
  TwoPhotonState biphoton = make_biphoton(profile);
  ModeSpace space_b = biphoton.space_b;
  std::array<ElementOp, 4> candidates = {
      correction_op(CorrectionKind::kIdentity, space_b),
      correction_op(CorrectionKind::kDpSph, space_b),
      correction_op(CorrectionKind::kParityPhasePi, space_b),
      correction_op(CorrectionKind::kDpSphThenParityPhasePi, space_b)};

  CorrectionTable table{};
  for (BellOutcome o : kBellOutcomes) {
    int found = -1;
    for (int c = 0; c < 4; ++c) {
      bool works = true;
      for (const Qubit& probe : kProbeInputs) {
        TwoPhotonState chi = prepare_input(biphoton, probe(0), probe(1));
        DensityMatrix bob = collapse_b(chi, o);
        DensityMatrix corrected = apply(candidates[c], bob);
        if (parity_fidelity(corrected, probe) < 1.0 - kFidelityTol) {
          works = false;
          break;
        }
      }
      if (!works) continue;
      if (found != -1) {
        throw ProtocolIntegrityError(
            std::string("correction for ") + to_string(o) +
            " is not unique; profile breaks the protocol assumptions");
      }
      found = c;
    }
    if (found == -1) {
      throw ProtocolIntegrityError(
          std::string("no candidate correction restores the qubit for ") +
          to_string(o));
    }
    table.by_outcome[static_cast<int>(o)] = kCorrectionKinds[found];
  }
  return table;
}

ProtocolContext make_context(const Profile& profile,
                             BsConvention convention) {
  BenchLayout bench = build_bell_bench(profile.window(), convention);
  // The table is structural: it depends on the charge-1 pairing, not on
  // the particular profile. For control runs (pump charge != 1) it is
  // frozen from the uniform charge-1 source on the same window.
  Profile table_profile = profile.pump_charge() == 1
                              ? profile
                              : uniform_profile(profile.window(), 1);
  return ProtocolContext{profile, derive_correction_table(table_profile),
                         bench, derive_detector_map(bench)};
}

double ExhaustiveReport::probability_sum() const {
  double s = 0.0;
  for (const OutcomeReport& r : outcomes) s += r.probability;
  return s;
}

double ExhaustiveReport::min_parity_fidelity_post() const {
  double m = 1.0;
  for (const OutcomeReport& r : outcomes) {
    m = std::min(m, r.parity_fidelity_post);
  }
  return m;
}

double ExhaustiveReport::mean_parity_fidelity_post() const {
  double s = 0.0;
  for (const OutcomeReport& r : outcomes) {
    s += r.probability * r.parity_fidelity_post;
  }
  return s / probability_sum();
}

double ExhaustiveReport::mean_full_oam_fidelity_post() const {
  double s = 0.0;
  for (const OutcomeReport& r : outcomes) {
    s += r.probability * r.full_oam_fidelity_post;
  }
  return s / probability_sum();
}

double ExhaustiveReport::max_probability_deviation() const {
  double m = 0.0;
  for (const OutcomeReport& r : outcomes) {
    m = std::max(m, std::abs(r.probability - 0.25));
  }
  return m;
}

ExhaustiveReport teleport_exhaustive(const ProtocolContext& ctx,
                                     Complex alpha, Complex beta,
                                     MeasureMode mode) {
  TwoPhotonState biphoton = make_biphoton(ctx.profile);
  TwoPhotonState chi = prepare_input(biphoton, alpha, beta);
  ModeSpace space_b = chi.space_b;

  Qubit target(alpha, beta);
  ParityEnvelopes env = parity_envelopes(ctx.profile);
  SinglePhotonState full_target(space_b,
                                alpha * env.even.amps + beta * env.odd.amps);

  // Outcome probabilities and Bob's conditional states, from either model.
  std::array<double, 4> probs{};
  std::vector<DensityMatrix> bob;
  if (mode == MeasureMode::kProjector) {
    BellExpansion e = expand_in_bell(chi);
    for (BellOutcome o : kBellOutcomes) {
      int i = static_cast<int>(o);
      probs[i] = e.probability(o);
      bob.push_back(probs[i] > kTol ? e.conditional_b(o)
                                    : DensityMatrix(space_b));
    }
  } else {
    DetectorStats stats = detector_statistics(chi, ctx.bench);
    for (BellOutcome o : kBellOutcomes) {
      int d = ctx.detector_map.detector_of(o);
      probs[static_cast<int>(o)] = stats.probability[d];
      bob.push_back(stats.conditional_b[d]);
    }
  }

  ExhaustiveReport report{};
  for (BellOutcome o : kBellOutcomes) {
    int i = static_cast<int>(o);
    OutcomeReport& r = report.outcomes[i];
    r.outcome = o;
    r.probability = probs[i];
    r.correction = ctx.table.correction(o);
    if (probs[i] <= kTol) {
      // Outcome cannot occur for this input; nothing to score.
      continue;
    }
    PairingDecomposition pre = pairing_decomposition(bob[i]);
    r.parity_fidelity_pre = fidelity(pre.parity, target);

    // The receiver sees only the two classical bits; the correction is
    // looked up from the transmitted message, not from the outcome object.
    CorrectionKind kind =
        ctx.table.correction(outcome_from_bits(classical_bits(o)));
    DensityMatrix corrected = apply(correction_op(kind, space_b), bob[i]);
    PairingDecomposition post = pairing_decomposition(corrected);
    r.parity_fidelity_post = fidelity(post.parity, target);
    r.full_oam_fidelity_post = fidelity(corrected, full_target);
    r.parity_purity = post.parity.purity();
    r.full_state_purity = corrected.purity();
  }
  return report;
}

namespace {

struct PreparedRun {
  std::array<double, 4> probs;
  std::array<TrialRecord, 4> records;  // trial id filled per sample
};

PreparedRun prepare_run(const ProtocolContext& ctx, Complex alpha,
                        Complex beta, MeasureMode mode) {
  ExhaustiveReport ex = teleport_exhaustive(ctx, alpha, beta, mode);
  PreparedRun prep{};
  for (int i = 0; i < 4; ++i) {
    const OutcomeReport& r = ex.outcomes[i];
    prep.probs[i] = r.probability;
    prep.records[i] =
        TrialRecord{0, r.outcome, classical_bits(r.outcome),
                    r.parity_fidelity_pre, r.parity_fidelity_post,
                    r.full_oam_fidelity_post};
  }
  return prep;
}

TrialRecord sample_one(const PreparedRun& prep, std::uint64_t master_seed,
                       std::uint64_t stream) {
  TrialRng rng(master_seed, stream);
  int idx = rng.sample_index(prep.probs);
  TrialRecord rec = prep.records[idx];
  rec.trial = stream;
  return rec;
}

}  // namespace

TrialRecord run_trial(const ProtocolContext& ctx, Complex alpha, Complex beta,
                      std::uint64_t master_seed, std::uint64_t stream,
                      MeasureMode mode) {
  return sample_one(prepare_run(ctx, alpha, beta, mode), master_seed,
                    stream);
}

std::vector<TrialRecord> run_trials(const ProtocolContext& ctx, Complex alpha,
                                    Complex beta, int n,
                                    std::uint64_t master_seed,
                                    MeasureMode mode, int n_threads) {
  if (n < 0) {
    throw InvalidArgumentError("trial count must be >= 0");
  }
  std::vector<TrialRecord> records(static_cast<std::size_t>(n));
  if (n == 0) return records;
  PreparedRun prep = prepare_run(ctx, alpha, beta, mode);

  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  n_threads = std::clamp(n_threads, 1, n);

  // Each trial depends only on (master_seed, stream), so any chunking
  // produces identical records.
  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      records[static_cast<std::size_t>(i)] =
          sample_one(prep, master_seed, static_cast<std::uint64_t>(i));
    }
  };
  if (n_threads == 1) {
    worker(0, n);
    return records;
  }
  std::vector<std::thread> pool;
  int chunk = (n + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    int begin = t * chunk;
    int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(worker, begin, end);
  }
  for (std::thread& t : pool) t.join();
  return records;
}

SwapResult swap_parity_to_polarization(const DensityMatrix& bob) {
  if (bob.space.n_paths != 1) {
    throw ShapeMismatchError("swap input must live on a single path");
  }
  const OamWindow& window = bob.space.window;
  // Paths: 0 input, 1 even arm, 2 odd arm, 3 merged output, 4 spill.
  ModeSpace space(window, 5);
  ElementOp circuit = compose({
      parity_sorter(space, 0, 1, 2),
      dp_sph(space, 2),
      hwp(space, M_PI / 4.0, 2),
      pbs_junction(space, 1, 2, 3, 4),
  });

  // Embed onto path 0 of the widened space.
  DensityMatrix widened(space);
  int n = bob.space.dim();
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) {
    ModeSpace::Mode m = bob.space.mode_at(i);
    map[i] = space.index(m.q, m.pol, 0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      widened.mat(map[i], map[j]) = bob.mat(i, j);
    }
  }
  DensityMatrix out = apply(circuit, widened);

  // Read out the merged path: polarization qubit and OAM marginal.
  SwapResult result{};
  result.polarization.setZero();
  int n_oam = window.size();
  result.oam_marginal = Matrix::Zero(n_oam, n_oam);
  double weight = out.path_weight(3);
  result.leak_weight = 1.0 - weight;
  if (weight <= kTol) {
    return result;
  }
  for (int qi = 0; qi < n_oam; ++qi) {
    for (int qj = 0; qj < n_oam; ++qj) {
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          Complex v = out.mat(
              space.index(window.charge_at(qi), static_cast<Pol>(s), 3),
              space.index(window.charge_at(qj), static_cast<Pol>(t), 3));
          if (qi == qj) result.polarization(s, t) += v;
          if (s == t) result.oam_marginal(qi, qj) += v;
        }
      }
    }
  }
  result.polarization /= weight;
  result.oam_marginal /= weight;
  return result;
}

SwapResult swap_parity_to_polarization(const SinglePhotonState& bob) {
  return swap_parity_to_polarization(pure_density(bob));
}

Profile delta_l0_profile(const OamWindow& window) {
  std::vector<Complex> raw(window.size(), Complex{0.0, 0.0});
  raw[window.index_of(0)] = 1.0;
  return explicit_profile(window, raw, 0);
}

NegativeControlStats negative_control(const Profile& profile, int n_inputs,
                                      std::uint64_t seed) {
  if (profile.pump_charge() != 0) {
    throw InvalidArgumentError(
        "negative control needs a charge-0 pump profile");
  }
  if (n_inputs < 1) {
    throw InvalidArgumentError("negative control needs >= 1 inputs");
  }
  const OamWindow& window = profile.window();
  CorrectionTable table =
      derive_correction_table(uniform_profile(window, 1));

  TwoPhotonState biphoton = make_biphoton(profile);
  ModeSpace space_b = biphoton.space_b;
  // Bob's branch vectors are linear in the input (alpha, beta): expand the
  // two basis preparations once. For input t and correction c, the
  // post-correction parity fidelity contribution of one branch reduces,
  // per (pair, pol) slot, to |alpha <t|ga> + beta <t|gb>|^2 where ga/gb
  // are the slot's (even, odd) components of the corrected basis
  // branches. Precompute those 2-vectors so each sample is O(K).
  BellExpansion expansion_h =
      expand_in_bell(prepare_input(biphoton, 1.0, 0.0));
  BellExpansion expansion_v =
      expand_in_bell(prepare_input(biphoton, 0.0, 1.0));

  struct Slot {
    Qubit ga;
    Qubit gb;
  };
  std::vector<Slot> slots[4][4];  // [outcome][correction]
  for (int o = 0; o < 4; ++o) {
    const auto& branches_h = expansion_h.branches[o];
    const auto& branches_v = expansion_v.branches[o];
    for (int c = 0; c < 4; ++c) {
      const Matrix u = correction_op(kCorrectionKinds[c], space_b).u;
      for (std::size_t m = 0; m < branches_h.size(); ++m) {
        Vector wa = u * branches_h[m];
        Vector wb = u * branches_v[m];
        for (int p = 0; p < window.half_width(); ++p) {
          int even = window.even_charge_of_pair(p);
          int odd = OamWindow::partner(even);
          for (int pol = 0; pol < 2; ++pol) {
            Slot slot;
            slot.ga = Qubit(wa(space_b.index(even, static_cast<Pol>(pol), 0)),
                            wa(space_b.index(odd, static_cast<Pol>(pol), 0)));
            slot.gb = Qubit(wb(space_b.index(even, static_cast<Pol>(pol), 0)),
                            wb(space_b.index(odd, static_cast<Pol>(pol), 0)));
            if (slot.ga.norm() + slot.gb.norm() > 1e-15) {
              slots[o][c].push_back(slot);
            }
          }
        }
      }
    }
  }

  int frozen_of[4];
  for (int o = 0; o < 4; ++o) {
    frozen_of[o] = static_cast<int>(table.by_outcome[o]);
  }

  double sum_frozen = 0.0;
  double min_frozen = 1.0;
  double max_frozen = 0.0;
  // mean_weighted[o][c]: running sum of P_o * F_{o,c} over samples.
  double mean_weighted[4][4] = {};

  for (int i = 0; i < n_inputs; ++i) {
    TrialRng rng(seed, static_cast<std::uint64_t>(i));
    Qubit in = rng.haar_qubit();
    double frozen_i = 0.0;
    for (int o = 0; o < 4; ++o) {
      for (int c = 0; c < 4; ++c) {
        double g = 0.0;
        for (const Slot& slot : slots[o][c]) {
          g += std::norm(in(0) * in.dot(slot.ga) + in(1) * in.dot(slot.gb));
        }
        mean_weighted[o][c] += g;
        if (c == frozen_of[o]) frozen_i += g;
      }
    }
    sum_frozen += frozen_i;
    min_frozen = std::min(min_frozen, frozen_i);
    max_frozen = std::max(max_frozen, frozen_i);
  }

  NegativeControlStats stats{};
  stats.n_inputs = n_inputs;
  stats.mean_fidelity_frozen = sum_frozen / n_inputs;
  stats.min_fidelity_frozen = min_frozen;
  stats.max_fidelity_frozen = max_frozen;
  stats.mean_fidelity_best = 0.0;
  for (int o = 0; o < 4; ++o) {
    int best = 0;
    for (int c = 1; c < 4; ++c) {
      if (mean_weighted[o][c] > mean_weighted[o][best]) best = c;
    }
    stats.best_correction[o] = kCorrectionKinds[best];
    stats.mean_fidelity_best += mean_weighted[o][best] / n_inputs;
  }
  return stats;
}

}  // namespace spinorbit
