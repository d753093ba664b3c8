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

#include "spinorbit/rng.hpp"

#include <algorithm>
#include <cmath>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

// splitmix64: tiny, well-mixed step function; used only to expand
// (master seed, stream index) into engine seeds.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream) {
  std::uint64_t state = master_seed;
  std::uint64_t a = splitmix64(state);
  state ^= stream * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(state);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t stream)
    : engine_(derive_stream_seed(master_seed, stream)) {}

double TrialRng::uniform() {
  // 53 high bits -> [0, 1) on the standard double grid.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double TrialRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 is bounded away from zero so the log stays finite.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Qubit TrialRng::haar_qubit() {
  // Four unit normals, one per real/imaginary component, normalized.
  while (true) {
    Complex a{gaussian(), gaussian()};
    Complex b{gaussian(), gaussian()};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n > 1e-6) {
      return Qubit(a / n, b / n);
    }
  }
}

int TrialRng::sample_index(std::span<const double> weights) {
  if (weights.empty()) {
    throw InvalidArgumentError("cannot sample from an empty distribution");
  }
  double u = uniform();
  double acc = 0.0;
  for (int i = 0; i < static_cast<int>(weights.size()) - 1; ++i) {
    acc += std::max(weights[i], 0.0);
    if (u < acc) return i;
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace spinorbit
