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

#include "spinorbit/serialize.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spinorbit/errors.hpp"
#include "spinorbit/window.hpp"

namespace spinorbit {

namespace {

using nlohmann::ordered_json;

ordered_json parse_object(const std::string& text, const char* what) {
  ordered_json j = ordered_json::parse(text, /*cb=*/nullptr,
                                       /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw InvalidArgumentError(std::string(what) +
                               ": input is not a JSON object");
  }
  return j;
}

double number_at(const ordered_json& j, const char* what) {
  if (!j.is_number()) {
    throw InvalidArgumentError(std::string(what) + ": expected a number");
  }
  return j.get<double>();
}

int int_field(const ordered_json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidArgumentError(std::string(what) + ": missing integer '" +
                               key + "'");
  }
  return j[key].get<int>();
}

}  // namespace

std::string to_json(const SinglePhotonState& psi) {
  ordered_json j;
  j["window_K"] = psi.space.window.half_width();
  j["n_paths"] = psi.space.n_paths;
  ordered_json amps = ordered_json::array();
  for (int i = 0; i < psi.space.dim(); ++i) {
    amps.push_back({psi.amps(i).real(), psi.amps(i).imag()});
  }
  j["amps"] = std::move(amps);
  return j.dump();
}

SinglePhotonState single_photon_from_json(const std::string& text) {
  ordered_json j = parse_object(text, "single photon state");
  int k = int_field(j, "window_K", "single photon state");
  int n_paths = int_field(j, "n_paths", "single photon state");
  if (k < 1 || n_paths < 1) {
    throw InvalidArgumentError(
        "single photon state: window_K and n_paths must be >= 1");
  }
  ModeSpace space(OamWindow(k), n_paths);
  if (!j.contains("amps") || !j["amps"].is_array() ||
      static_cast<int>(j["amps"].size()) != space.dim()) {
    throw InvalidArgumentError(
        "single photon state: 'amps' must hold one [re, im] pair per mode (" +
        std::to_string(space.dim()) + ")");
  }
  SinglePhotonState psi(space);
  for (int i = 0; i < space.dim(); ++i) {
    const ordered_json& pair = j["amps"][i];
    if (!pair.is_array() || pair.size() != 2) {
      throw InvalidArgumentError(
          "single photon state: each amplitude must be an [re, im] pair");
    }
    psi.amps(i) = Complex{number_at(pair[0], "single photon state"),
                          number_at(pair[1], "single photon state")};
  }
  return psi;
}

std::string to_json(const Profile& profile) {
  ordered_json j;
  j["l"] = profile.pump_charge();
  j["K"] = profile.window().half_width();
  j["kind"] = to_string(profile.kind());
  ordered_json params = ordered_json::object();
  if (profile.width()) params["width"] = *profile.width();
  j["params"] = std::move(params);
  ordered_json coeffs = ordered_json::array();
  for (int i = 0; i < profile.window().size(); ++i) {
    const Complex& c = profile.coeffs()[i];
    coeffs.push_back(
        {profile.window().charge_at(i), c.real(), c.imag()});
  }
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

Profile profile_from_json(const std::string& text) {
  ordered_json j = parse_object(text, "profile");
  int l = int_field(j, "l", "profile");
  int k = int_field(j, "K", "profile");
  if (k < 1) throw InvalidArgumentError("profile: K must be >= 1");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidArgumentError("profile: missing string 'kind'");
  }
  ProfileKind kind = profile_kind_from_string(j["kind"].get<std::string>());

  std::optional<double> width;
  if (j.contains("params") && j["params"].is_object() &&
      j["params"].contains("width")) {
    width = number_at(j["params"]["width"], "profile width");
  }
  if (kind == ProfileKind::kGaussian &&
      (!width || !(*width > 0.0) || !std::isfinite(*width))) {
    throw InvalidArgumentError(
        "profile: gaussian kind needs params.width > 0");
  }

  OamWindow window(k);
  if (!j.contains("coeffs") || !j["coeffs"].is_array() ||
      static_cast<int>(j["coeffs"].size()) != window.size()) {
    throw InvalidArgumentError(
        "profile: 'coeffs' must hold one [m, re, im] entry per window "
        "charge (" +
        std::to_string(window.size()) + ")");
  }
  std::vector<Complex> coeffs(window.size());
  std::vector<bool> seen(window.size(), false);
  for (const ordered_json& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 3 ||
        !entry[0].is_number_integer()) {
      throw InvalidArgumentError(
          "profile: each coefficient must be an [m, re, im] entry");
    }
    int m = entry[0].get<int>();
    if (!window.contains(m)) {
      throw InvalidArgumentError("profile: charge " + std::to_string(m) +
                                 " is outside the window");
    }
    int idx = window.index_of(m);
    if (seen[idx]) {
      throw InvalidArgumentError("profile: duplicate coefficient for charge " +
                                 std::to_string(m));
    }
    seen[idx] = true;
    coeffs[idx] = Complex{number_at(entry[1], "profile coefficient"),
                          number_at(entry[2], "profile coefficient")};
  }

  // The stored coefficients are already symmetrized and normalized; verify
  // instead of re-deriving so the round trip is bit-exact.
  double norm2 = 0.0;
  for (int i = 0; i < window.size(); ++i) {
    norm2 += std::norm(coeffs[i]);
    int m = window.charge_at(i);
    int partner = l - m;
    if (!window.contains(partner)) {
      if (std::abs(coeffs[i]) > 1e-9) {
        throw InvalidArgumentError(
            "profile: charge " + std::to_string(m) +
            " has weight but its pair partner lies outside the window");
      }
      continue;
    }
    if (std::abs(coeffs[i] - coeffs[window.index_of(partner)]) > 1e-9) {
      throw InvalidArgumentError(
          "profile: coefficients break the pair symmetry c_m = c_{l-m}");
    }
  }
  if (std::abs(norm2 - 1.0) > 1e-6) {
    throw InvalidArgumentError("profile: coefficients are not normalized");
  }

  Profile profile;
  profile.window_ = window;
  profile.l_ = l;
  profile.kind_ = kind;
  profile.width_ = width;
  profile.coeffs_ = std::move(coeffs);
  return profile;
}

}  // namespace spinorbit
