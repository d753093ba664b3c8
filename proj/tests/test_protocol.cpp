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

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "spinorbit/errors.hpp"
#include "spinorbit/protocol.hpp"
#include "spinorbit/rng.hpp"

using namespace spinorbit;

namespace {

// a == e^{i phase} b for some phase?
bool equal_up_to_phase(const QubitMatrix& a, const QubitMatrix& b,
                       double tol = 1e-12) {
  int bi = 0, bj = 0;
  double best = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(b(i, j)) > best) {
        best = std::abs(b(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  if (best < tol) return a.norm() < tol;
  Complex phase = a(bi, bj) / b(bi, bj);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return (a - phase * b).norm() < tol;
}

Profile random_symmetric_profile(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  OamWindow window(k);
  std::vector<Complex> raw(window.size());
  for (Complex& c : raw) c = Complex{gauss(rng), gauss(rng)};
  return explicit_profile(window, raw);
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("correction names and pipelines") {
  CHECK(to_string(CorrectionKind::kIdentity) == std::string("identity"));
  CHECK(to_string(CorrectionKind::kDpSphThenParityPhasePi) ==
        std::string("dp_sph+parity_phase_pi"));
  CHECK(correction_element_names(CorrectionKind::kIdentity) ==
        std::vector<std::string>{"identity"});
  CHECK(correction_element_names(CorrectionKind::kDpSphThenParityPhasePi) ==
        std::vector<std::string>{"dp_sph", "parity_phase_pi"});

  ModeSpace space(OamWindow(2), 1);
  ElementOp compound =
      correction_op(CorrectionKind::kDpSphThenParityPhasePi, space);
  Matrix expected = parity_phase(space, M_PI).u * dp_sph(space).u;
  CHECK((compound.u - expected).norm() < kTol);
  for (CorrectionKind k : kCorrectionKinds) {
    CHECK(is_unitary(correction_op(k, space)));
  }
}

TEST_CASE("corrections induce the four Pauli actions on parity") {
  QubitMatrix id_m, x_m, z_m, zx_m;
  id_m << 1, 0, 0, 1;
  x_m << 0, 1, 1, 0;
  z_m << 1, 0, 0, -1;
  zx_m = z_m * x_m;
  for (int k : {1, 2, 3, 5}) {
    OamWindow window(k);
    CHECK(equal_up_to_phase(
        induced_parity_action(CorrectionKind::kIdentity, window), id_m));
    CHECK(equal_up_to_phase(
        induced_parity_action(CorrectionKind::kDpSph, window), x_m));
    CHECK(equal_up_to_phase(
        induced_parity_action(CorrectionKind::kParityPhasePi, window), z_m));
    CHECK(equal_up_to_phase(
        induced_parity_action(CorrectionKind::kDpSphThenParityPhasePi,
                              window),
        zx_m));
  }
}

TEST_CASE("the derived correction table is the expected Pauli frame") {
  for (int k : {1, 2, 4}) {
    CorrectionTable table =
        derive_correction_table(uniform_profile(OamWindow(k)));
    CHECK(table.correction(BellOutcome::kPhiPlus) == CorrectionKind::kDpSph);
    CHECK(table.correction(BellOutcome::kPhiMinus) ==
          CorrectionKind::kDpSphThenParityPhasePi);
    CHECK(table.correction(BellOutcome::kPsiPlus) ==
          CorrectionKind::kIdentity);
    CHECK(table.correction(BellOutcome::kPsiMinus) ==
          CorrectionKind::kParityPhasePi);
  }
  // The table is structural: any pair-symmetric charge-1 profile gives the
  // same one.
  std::mt19937_64 rng(5);
  CorrectionTable generic =
      derive_correction_table(random_symmetric_profile(3, rng));
  CHECK(generic.correction(BellOutcome::kPhiPlus) == CorrectionKind::kDpSph);
  CHECK(generic.correction(BellOutcome::kPsiMinus) ==
        CorrectionKind::kParityPhasePi);
}

TEST_CASE("context freezes the charge-1 table for control pumps") {
  OamWindow window(2);
  ProtocolContext control = make_context(delta_l0_profile(window));
  CorrectionTable reference =
      derive_correction_table(uniform_profile(window));
  for (BellOutcome o : kBellOutcomes) {
    CHECK(control.table.correction(o) == reference.correction(o));
  }
  CHECK(control.profile.pump_charge() == 0);
}

TEST_CASE("exhaustive teleportation is exact for the charge-1 source") {
  for (int k : {1, 2, 3}) {
    ProtocolContext ctx = make_context(uniform_profile(OamWindow(k)));
    ExhaustiveReport report =
        teleport_exhaustive(ctx, Complex{0.6, 0.0}, Complex{0.0, 0.8});
    CHECK(report.probability_sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.max_probability_deviation() < 1e-12);
    for (const OutcomeReport& r : report.outcomes) {
      CHECK(r.parity_fidelity_post >= 1.0 - 1e-10);
      CHECK(r.parity_purity == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(report.min_parity_fidelity_post() >= 1.0 - 1e-10);
    CHECK(report.mean_parity_fidelity_post() ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("full-state quality depends on the window, parity does not") {
  // One pair: the bucket detector has nothing to erase, the corrected state
  // is the ideal envelope. Two uniform pairs: the pair label is mixed, the
  // full-OAM fidelity drops to 1/2 while the parity qubit stays perfect.
  ProtocolContext one_pair = make_context(uniform_profile(OamWindow(1)));
  ExhaustiveReport r1 =
      teleport_exhaustive(one_pair, Complex{0.6, 0.0}, Complex{0.8, 0.0});
  for (const OutcomeReport& r : r1.outcomes) {
    CHECK(r.full_oam_fidelity_post == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.full_state_purity == doctest::Approx(1.0).epsilon(1e-12));
  }

  ProtocolContext two_pairs = make_context(uniform_profile(OamWindow(2)));
  ExhaustiveReport r2 =
      teleport_exhaustive(two_pairs, Complex{0.6, 0.0}, Complex{0.8, 0.0});
  for (const OutcomeReport& r : r2.outcomes) {
    CHECK(r.full_oam_fidelity_post == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.full_state_purity == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.parity_fidelity_post == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("bench measurement reproduces the projector model") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  for (int k : {1, 2, 4}) {
    Profile profile = random_symmetric_profile(k, rng);
    ProtocolContext ctx = make_context(profile);
    for (int trial = 0; trial < 4; ++trial) {
      Complex a{gauss(rng), gauss(rng)}, b{gauss(rng), gauss(rng)};
      double n = std::sqrt(std::norm(a) + std::norm(b));
      a /= n;
      b /= n;
      ExhaustiveReport proj =
          teleport_exhaustive(ctx, a, b, MeasureMode::kProjector);
      ExhaustiveReport app =
          teleport_exhaustive(ctx, a, b, MeasureMode::kApparatus);
      for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(proj.outcomes[i].probability -
                       app.outcomes[i].probability) < 1e-12);
        CHECK(std::abs(proj.outcomes[i].parity_fidelity_post -
                       app.outcomes[i].parity_fidelity_post) < 1e-10);
        CHECK(std::abs(proj.outcomes[i].full_oam_fidelity_post -
                       app.outcomes[i].full_oam_fidelity_post) < 1e-10);
      }
    }
  }
}

TEST_CASE("trials are reproducible and batch-independent") {
  ProtocolContext ctx = make_context(uniform_profile(OamWindow(2)));
  Complex alpha{0.6, 0.0}, beta{0.8, 0.0};
  const int n = 2000;
  auto a = run_trials(ctx, alpha, beta, n, 7, MeasureMode::kProjector, 1);
  auto b = run_trials(ctx, alpha, beta, n, 7, MeasureMode::kProjector, 4);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < n; ++i) {
    CHECK(a[i].trial == b[i].trial);
    CHECK(a[i].outcome == b[i].outcome);
    CHECK(a[i].bits == classical_bits(a[i].outcome));
  }
  // One trial in isolation reproduces its record from the batch.
  TrialRecord solo =
      run_trial(ctx, alpha, beta, 7, 1234, MeasureMode::kProjector);
  CHECK(solo.outcome == a[1234].outcome);
  CHECK(solo.trial == 1234);

  // A different seed gives a different sequence (overwhelmingly likely).
  auto c = run_trials(ctx, alpha, beta, n, 8, MeasureMode::kProjector, 1);
  int differing = 0;
  for (int i = 0; i < n; ++i) {
    differing += (a[i].outcome != c[i].outcome);
  }
  CHECK(differing > 0);

  CHECK(run_trials(ctx, alpha, beta, 0, 7, MeasureMode::kProjector).empty());
  CHECK_THROWS_AS(
      run_trials(ctx, alpha, beta, -1, 7, MeasureMode::kProjector),
      InvalidArgumentError);
}

TEST_CASE("sampled records carry the exact per-outcome scores") {
  ProtocolContext ctx = make_context(gaussian_profile(OamWindow(2), 1.3));
  Complex alpha{0.48, -0.36}, beta{0.64, 0.48};
  ExhaustiveReport exact = teleport_exhaustive(ctx, alpha, beta);
  auto records =
      run_trials(ctx, alpha, beta, 500, 11, MeasureMode::kProjector);
  for (const TrialRecord& rec : records) {
    const OutcomeReport& r = exact.outcomes[static_cast<int>(rec.outcome)];
    CHECK(rec.parity_fidelity_pre == r.parity_fidelity_pre);
    CHECK(rec.parity_fidelity_post == r.parity_fidelity_post);
    CHECK(rec.full_oam_fidelity_post == r.full_oam_fidelity_post);
  }
}

TEST_CASE("sampled frequencies approach the equal-probability law") {
  ProtocolContext ctx = make_context(uniform_profile(OamWindow(2)));
  const int n = 40000;
  auto records = run_trials(ctx, Complex{0.6, 0.0}, Complex{0.8, 0.0}, n, 7,
                            MeasureMode::kProjector);
  std::array<int, 4> counts{};
  for (const TrialRecord& rec : records) {
    ++counts[static_cast<int>(rec.outcome)];
  }
  // 4 sigma for a fair four-sided coin at n = 40000.
  double bound = 4.0 * std::sqrt(0.25 * 0.75 / n);
  for (int c : counts) {
    CHECK(std::abs(static_cast<double>(c) / n - 0.25) < bound);
  }
}

TEST_CASE("the parity swap writes the envelope qubit onto polarization") {
  Profile profile = uniform_profile(OamWindow(2));
  ParityEnvelopes env = parity_envelopes(profile);
  Complex alpha{0.6, 0.0}, beta{0.0, 0.8};
  SinglePhotonState bob(env.even.space,
                        alpha * env.even.amps + beta * env.odd.amps);
  SwapResult swap = swap_parity_to_polarization(bob);
  CHECK(swap.leak_weight < 1e-12);
  Qubit target(alpha, beta);
  Complex f = (target.adjoint() * swap.polarization * target).value();
  CHECK(f.real() == doctest::Approx(1.0).epsilon(1e-12));
  // Whatever OAM remains is entirely even-parity: the odd support moved
  // through the mode matcher.
  const OamWindow& w = profile.window();
  for (int q = w.lowest(); q <= w.highest(); ++q) {
    if (q % 2 == 0) continue;
    CHECK(std::abs(swap.oam_marginal(w.index_of(q), w.index_of(q))) < 1e-12);
  }
}

TEST_CASE("a pure odd envelope leaves vertically polarized") {
  Profile profile = uniform_profile(OamWindow(2));
  ParityEnvelopes env = parity_envelopes(profile);
  SwapResult swap = swap_parity_to_polarization(env.odd);
  CHECK(swap.leak_weight < 1e-12);
  CHECK(std::abs(swap.polarization(1, 1) - Complex{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(swap.polarization(0, 0)) < 1e-12);
}

TEST_CASE("the swap recovers the qubit from mixed corrected states") {
  // End to end: teleport, correct, then swap parity onto polarization. The
  // output polarization must match the sent qubit even though the full OAM
  // state is mixed.
  ProtocolContext ctx = make_context(uniform_profile(OamWindow(2)));
  Complex alpha{0.48, -0.36}, beta{0.64, 0.48};
  TwoPhotonState chi =
      prepare_input(make_biphoton(ctx.profile), alpha, beta);
  Qubit target(alpha, beta);
  for (BellOutcome o : kBellOutcomes) {
    DensityMatrix bob = collapse_b(chi, o);
    DensityMatrix corrected =
        apply(correction_op(ctx.table.correction(o), bob.space), bob);
    CHECK(corrected.purity() < 0.75);  // genuinely mixed before the swap
    SwapResult swap = swap_parity_to_polarization(corrected);
    CHECK(swap.leak_weight < 1e-12);
    Complex f = (target.adjoint() * swap.polarization * target).value();
    CHECK(f.real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("a structureless pump breaks the protocol") {
  OamWindow window(2);
  ProtocolContext ctx = make_context(delta_l0_profile(window));
  Complex alpha{0.6, 0.0}, beta{0.8, 0.0};
  ExhaustiveReport report = teleport_exhaustive(ctx, alpha, beta);
  // Outcome probabilities collapse to |alpha|^2/2, |beta|^2/2 per class.
  CHECK(report.outcomes[0].probability == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(report.outcomes[1].probability == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(report.outcomes[2].probability == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(report.outcomes[3].probability == doctest::Approx(0.32).epsilon(1e-12));
  // Bob always holds the even delta state; the frozen corrections score
  // |beta|^2 on the phi outcomes (X lands on odd) and |alpha|^2 on psi.
  CHECK(report.outcomes[0].parity_fidelity_post ==
        doctest::Approx(0.64).epsilon(1e-12));
  CHECK(report.outcomes[1].parity_fidelity_post ==
        doctest::Approx(0.64).epsilon(1e-12));
  CHECK(report.outcomes[2].parity_fidelity_post ==
        doctest::Approx(0.36).epsilon(1e-12));
  CHECK(report.outcomes[3].parity_fidelity_post ==
        doctest::Approx(0.36).epsilon(1e-12));
  CHECK(report.mean_parity_fidelity_post() < 0.5);
}

TEST_CASE("the negative control stays below the classical bound") {
  NegativeControlStats stats =
      negative_control(delta_l0_profile(OamWindow(2)), 4000, 3);
  CHECK(stats.n_inputs == 4000);
  // Haar mean of the frozen table is 1/3; re-labelling per outcome as
  // favourably as possible reaches the classical bound 2/3, never more.
  CHECK(stats.mean_fidelity_frozen > 0.25);
  CHECK(stats.mean_fidelity_frozen < 0.42);
  CHECK(stats.mean_fidelity_best > 0.58);
  CHECK(stats.mean_fidelity_best < 0.75);
  CHECK(stats.min_fidelity_frozen <= stats.mean_fidelity_frozen);
  CHECK(stats.max_fidelity_frozen >= stats.mean_fidelity_frozen);
  CHECK(stats.min_fidelity_frozen >= 0.0);
  CHECK(stats.max_fidelity_frozen <= 1.0 + 1e-12);

  // Same seed, same numbers.
  NegativeControlStats again =
      negative_control(delta_l0_profile(OamWindow(2)), 4000, 3);
  CHECK(again.mean_fidelity_frozen == stats.mean_fidelity_frozen);
  CHECK(again.mean_fidelity_best == stats.mean_fidelity_best);
}

TEST_CASE("the control rejects pumps with pair structure") {
  CHECK_THROWS_AS(negative_control(uniform_profile(OamWindow(2)), 10, 1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(negative_control(delta_l0_profile(OamWindow(2)), 0, 1),
                  InvalidArgumentError);
}

TEST_CASE("trial seeds derive independently per stream") {
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(7, 1));
  CHECK(derive_stream_seed(7, 0) != derive_stream_seed(8, 0));
  CHECK(derive_stream_seed(7, 5) == derive_stream_seed(7, 5));
  TrialRng rng(7, 0);
  Qubit q = rng.haar_qubit();
  CHECK(q.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
