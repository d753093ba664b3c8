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

#ifndef SPINORBIT_RNG_HPP_
#define SPINORBIT_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

#include "spinorbit/types.hpp"

namespace spinorbit {

// Counter-based derivation of independent per-stream seeds from one master
// seed. Used so that trial i of a run is reproducible in isolation and
// independent of how trials are batched across threads.
std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream);

// Deterministic random source for one trial (or one sampled input).
// All distributions are implemented in-library so that sequences are
// identical across standard library implementations.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t stream);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Standard normal.
  double gaussian();

  // Amplitudes (alpha, beta) of a Haar-random polarization qubit.
  Qubit haar_qubit();

  // Index sampled from a discrete distribution by inverse CDF; weights are
  // clamped at 0 and the last bin absorbs any rounding remainder.
  int sample_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spinorbit

#endif  // SPINORBIT_RNG_HPP_
