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

#ifndef SPINORBIT_SPDC_HPP_
#define SPINORBIT_SPDC_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/state.hpp"
#include "spinorbit/types.hpp"
#include "spinorbit/window.hpp"

namespace spinorbit {

enum class ProfileKind { kUniform, kGaussian, kExplicit };

const char* to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& name);

// Down-conversion amplitude profile c_m over the truncated window.
//
// c_m is the amplitude for the signal photon to carry charge m while the
// idler carries l - m, where l is the pump charge. Conservation of angular
// momentum makes the physical profile symmetric, c_m = c_{l-m}; every
// factory enforces that symmetry by averaging and then normalizes
// sum |c_m|^2 = 1. Pairs (m, l-m) with l - m outside the window are dropped
// (their amplitude set to zero) so that the two-photon state stays inside
// the truncation.
class Profile {
 public:
  const OamWindow& window() const { return window_; }
  int pump_charge() const { return l_; }
  ProfileKind kind() const { return kind_; }
  // Width parameter of a Gaussian profile, if any.
  std::optional<double> width() const { return width_; }

  // c_m; zero for m outside the window.
  Complex coeff(int m) const;
  // All 2K coefficients in window (ascending charge) order.
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  // Probability that the signal photon carries an even charge,
  // sum_m |c_{2m}|^2. For l = 1 this is exactly 1/2 by symmetry.
  double even_weight() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  friend Profile finalize_profile(const OamWindow&, int l, ProfileKind,
                                  std::optional<double>,
                                  std::vector<Complex>);
  // Deserialization restores already-finalized coefficients verbatim.
  friend Profile profile_from_json(const std::string& text);

  OamWindow window_{1};
  int l_ = 1;
  ProfileKind kind_ = ProfileKind::kUniform;
  std::optional<double> width_;
  std::vector<Complex> coeffs_;
};

// Equal weight on every pair kept by the window.
Profile uniform_profile(const OamWindow& window, int l = 1);

// c_m proportional to exp(-(m - l/2)^2 / (2 width^2)), centred on the
// symmetry point of the pair spectrum. Throws unless width > 0.
Profile gaussian_profile(const OamWindow& window, double width, int l = 1);

// Caller-supplied coefficients in window order (ascending charge),
// symmetrized and normalized like every other profile. Throws
// DegenerateProfileError if the symmetrized vector vanishes.
Profile explicit_profile(const OamWindow& window,
                         std::span<const Complex> window_coeffs, int l = 1);

// Declarative description of a profile, as found in config files and bench
// programs. `coeffs` holds (charge, amplitude) entries for kExplicit.
struct ProfileSpec {
  ProfileKind kind = ProfileKind::kUniform;
  int l = 1;
  int window_k = 3;
  std::optional<double> width;
  std::vector<std::pair<int, Complex>> coeffs;

  friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

Profile make_profile(const ProfileSpec& spec);

// The two-photon down-conversion state
//   sum_m c_m |m, H>_A |l-m, H>_B
// on a pair of single-path spaces sharing the profile's window.
TwoPhotonState make_biphoton(const Profile& profile);

// Normalized even / odd parity superpositions of the signal photon,
//   |even> ~ sum_m c_{2m} |2m>,  |odd> ~ sum_m c_{2m} |1-2m>,
// horizontal polarization, single path. Both envelopes carry the
// even-charge amplitudes, transported along the (2m, 1-2m) pairing; for a
// charge-1 pump they coincide with the even/odd halves of the profile.
// Throws DegenerateProfileError when the even-charge weight vanishes.
struct ParityEnvelopes {
  SinglePhotonState even;
  SinglePhotonState odd;
};
ParityEnvelopes parity_envelopes(const Profile& profile);

// Apply |H> -> alpha|H> + beta|V> to photon A of the biphoton: the sender's
// input qubit, written onto polarization while OAM stays entangled.
TwoPhotonState prepare_input(const TwoPhotonState& biphoton, Complex alpha,
                             Complex beta);

// Wave-plate angles (half-wave then quarter-wave) that realize the same
// preparation from |H> up to a global phase.
struct WaveplateAngles {
  double hwp_theta;
  double qwp_theta;
};
WaveplateAngles preparation_waveplates(Complex alpha, Complex beta);

}  // namespace spinorbit

#endif  // SPINORBIT_SPDC_HPP_
