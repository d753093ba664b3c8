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

#ifndef SPINORBIT_SERIALIZE_HPP_
#define SPINORBIT_SERIALIZE_HPP_

#include <string>

#include "spinorbit/spdc.hpp"
#include "spinorbit/state.hpp"

namespace spinorbit {

// JSON forms round-trip losslessly (doubles as shortest-round-trip
// decimals) and are byte-stable: serializing the same value twice gives
// identical text.

// {"window_K": K, "n_paths": n, "amps": [[re, im], ...]}
std::string to_json(const SinglePhotonState& psi);
SinglePhotonState single_photon_from_json(const std::string& text);

// {"l": l, "K": K, "kind": "...", "params": {...},
//  "coeffs": [[m, re, im], ...]}
std::string to_json(const Profile& profile);
Profile profile_from_json(const std::string& text);

}  // namespace spinorbit

#endif  // SPINORBIT_SERIALIZE_HPP_
