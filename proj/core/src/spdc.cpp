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

#include "spinorbit/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/elements.hpp"
#include "spinorbit/errors.hpp"

namespace spinorbit {

const char* to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::kUniform:
      return "uniform";
    case ProfileKind::kGaussian:
      return "gaussian";
    case ProfileKind::kExplicit:
      return "explicit";
  }
  return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "uniform") return ProfileKind::kUniform;
  if (name == "gaussian") return ProfileKind::kGaussian;
  if (name == "explicit") return ProfileKind::kExplicit;
  throw InvalidArgumentError("unknown profile kind '" + name + "'");
}

// Shared tail of every factory: enforce the pair symmetry c_m = c_{l-m}
// by averaging, zero out amplitudes whose partner charge l-m falls outside
// the window (the pair would not fit the truncation), and normalize.
Profile finalize_profile(const OamWindow& window, int l, ProfileKind kind,
                         std::optional<double> width,
                         std::vector<Complex> raw) {
  std::vector<Complex> sym(raw.size());
  for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
    int m = window.charge_at(i);
    int partner = l - m;
    if (!window.contains(partner)) {
      sym[i] = 0.0;
      continue;
    }
    sym[i] = 0.5 * (raw[i] + raw[window.index_of(partner)]);
  }
  double norm2 = 0.0;
  for (const Complex& c : sym) norm2 += std::norm(c);
  if (norm2 < kTol) {
    throw DegenerateProfileError(
        "profile vanishes after pair symmetrization (l=" + std::to_string(l) +
        ", K=" + std::to_string(window.half_width()) + ")");
  }
  double scale = 1.0 / std::sqrt(norm2);
  for (Complex& c : sym) c *= scale;

  Profile profile;
  profile.window_ = window;
  profile.l_ = l;
  profile.kind_ = kind;
  profile.width_ = width;
  profile.coeffs_ = std::move(sym);
  return profile;
}

Complex Profile::coeff(int m) const {
  if (!window_.contains(m)) return 0.0;
  return coeffs_[window_.index_of(m)];
}

double Profile::even_weight() const {
  double w = 0.0;
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
    if (window_.charge_at(i) % 2 == 0) w += std::norm(coeffs_[i]);
  }
  return w;
}

Profile uniform_profile(const OamWindow& window, int l) {
  std::vector<Complex> raw(window.size(), Complex{1.0, 0.0});
  return finalize_profile(window, l, ProfileKind::kUniform, std::nullopt,
                          std::move(raw));
}

Profile gaussian_profile(const OamWindow& window, double width, int l) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw InvalidArgumentError("gaussian profile width must be positive");
  }
  // Centred on l/2, the fixed point of m <-> l-m, so the envelope is
  // already symmetric.
  double centre = 0.5 * l;
  std::vector<Complex> raw(window.size());
  for (int i = 0; i < window.size(); ++i) {
    double d = window.charge_at(i) - centre;
    raw[i] = std::exp(-d * d / (2.0 * width * width));
  }
  return finalize_profile(window, l, ProfileKind::kGaussian, width,
                          std::move(raw));
}

Profile explicit_profile(const OamWindow& window,
                         std::span<const Complex> window_coeffs, int l) {
  if (static_cast<int>(window_coeffs.size()) != window.size()) {
    throw InvalidArgumentError(
        "explicit profile needs one coefficient per window charge (" +
        std::to_string(window.size()) + "), got " +
        std::to_string(window_coeffs.size()));
  }
  return finalize_profile(
      window, l, ProfileKind::kExplicit, std::nullopt,
      std::vector<Complex>(window_coeffs.begin(), window_coeffs.end()));
}

Profile make_profile(const ProfileSpec& spec) {
  OamWindow window(spec.window_k);
  switch (spec.kind) {
    case ProfileKind::kUniform:
      return uniform_profile(window, spec.l);
    case ProfileKind::kGaussian:
      if (!spec.width) {
        throw InvalidArgumentError("gaussian profile spec needs a width");
      }
      return gaussian_profile(window, *spec.width, spec.l);
    case ProfileKind::kExplicit: {
      std::vector<Complex> raw(window.size(), Complex{0.0, 0.0});
      for (const auto& [m, c] : spec.coeffs) {
        raw[window.index_of(m)] = c;
      }
      return explicit_profile(window, raw, spec.l);
    }
  }
  throw InvalidArgumentError("unknown profile kind");
}

TwoPhotonState make_biphoton(const Profile& profile) {
  const OamWindow& window = profile.window();
  ModeSpace one(window, 1);
  TwoPhotonState chi(one, one);
  int l = profile.pump_charge();
  for (int i = 0; i < window.size(); ++i) {
    int m = window.charge_at(i);
    int partner = l - m;
    if (!window.contains(partner)) continue;  // coefficient is zero anyway
    chi.amp(one.index(m, Pol::kH, 0), one.index(partner, Pol::kH, 0)) =
        profile.coeff(m);
  }
  return chi;
}

ParityEnvelopes parity_envelopes(const Profile& profile) {
  const OamWindow& window = profile.window();
  double even_w = profile.even_weight();
  if (even_w < kTol) {
    throw DegenerateProfileError(
        "profile has no even-charge weight; parity envelopes undefined");
  }
  ModeSpace one(window, 1);
  ParityEnvelopes env{SinglePhotonState(one), SinglePhotonState(one)};
  double scale = 1.0 / std::sqrt(even_w);
  for (int even : window.even_charges()) {
    Complex c = scale * profile.coeff(even);
    env.even.amp(even, Pol::kH) = c;
    env.odd.amp(OamWindow::partner(even), Pol::kH) = c;
  }
  return env;
}

TwoPhotonState prepare_input(const TwoPhotonState& biphoton, Complex alpha,
                             Complex beta) {
  ElementOp prep = pol_rotation(biphoton.space_a, alpha, beta);
  return apply_to_photon(prep, Photon::kA, biphoton);
}

WaveplateAngles preparation_waveplates(Complex alpha, Complex beta) {
  double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > kTol) {
    throw InvalidArgumentError(
        "input amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
  // Poincare-sphere coordinates of the target state.
  double s1 = std::norm(alpha) - std::norm(beta);
  double s2 = 2.0 * (std::conj(alpha) * beta).real();
  double s3 = 2.0 * (std::conj(alpha) * beta).imag();
  double orientation = 0.5 * std::atan2(s2, s1);
  double ellipticity = 0.5 * std::asin(std::clamp(s3, -1.0, 1.0));
  // A half-wave plate takes |H> to the linear state at angle 2*theta; the
  // quarter-wave plate along the ellipse axis then supplies the
  // ellipticity.
  return WaveplateAngles{0.5 * (orientation + ellipticity), orientation};
}

}  // namespace spinorbit
