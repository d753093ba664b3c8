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

#ifndef SPINORBIT_WINDOW_HPP_
#define SPINORBIT_WINDOW_HPP_

#include <vector>

namespace spinorbit {

// Truncated ladder of orbital angular momentum (OAM) modes.
//
// The window of half-width K keeps the 2K charges {1-K, ..., K}. This range
// is closed under the reflection q -> 1-q that exchanges the members of a
// down-conversion pair, so every even charge 2m in the window has its odd
// partner 1-2m in the window as well. The K (even, odd) partner pairs are
// indexed 0..K-1 in order of ascending even charge.
class OamWindow {
 public:
  // Throws InvalidArgumentError unless k >= 1.
  explicit OamWindow(int k);

  int half_width() const { return k_; }
  int size() const { return 2 * k_; }
  int lowest() const { return 1 - k_; }
  int highest() const { return k_; }

  bool contains(int q) const { return q >= lowest() && q <= highest(); }

  // Dense index of charge q in ascending order; throws if q is outside.
  int index_of(int q) const;
  int charge_at(int index) const;

  // The partner charge under q -> 1-q (always inside the window).
  static int partner(int q) { return 1 - q; }

  // Pair index of the (2m, 1-2m) pair containing q, in {0, ..., K-1}.
  int pair_index_of(int q) const;
  // The even charge of pair p, ascending in p.
  int even_charge_of_pair(int p) const;

  std::vector<int> even_charges() const;

  friend bool operator==(const OamWindow&, const OamWindow&) = default;

 private:
  int k_;
};

}  // namespace spinorbit

#endif  // SPINORBIT_WINDOW_HPP_
