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

#include "spinorbit/window.hpp"

#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {
namespace {

bool is_even(int q) { return (q % 2) == 0; }

}  // namespace

OamWindow::OamWindow(int k) : k_(k) {
  if (k < 1) {
    throw InvalidArgumentError("OAM window half-width must be >= 1, got " +
                               std::to_string(k));
  }
}

int OamWindow::index_of(int q) const {
  if (!contains(q)) {
    throw InvalidArgumentError("OAM charge " + std::to_string(q) +
                               " outside window [" + std::to_string(lowest()) +
                               ", " + std::to_string(highest()) + "]");
  }
  return q - lowest();
}

int OamWindow::charge_at(int index) const {
  if (index < 0 || index >= size()) {
    throw InvalidArgumentError("OAM index " + std::to_string(index) +
                               " outside window of size " +
                               std::to_string(size()));
  }
  return lowest() + index;
}

int OamWindow::pair_index_of(int q) const {
  int even = is_even(q) ? q : partner(q);
  if (!contains(q) || !contains(even)) {
    throw InvalidArgumentError("charge " + std::to_string(q) +
                               " has no pair inside the window");
  }
  return (even - even_charge_of_pair(0)) / 2;
}

int OamWindow::even_charge_of_pair(int p) const {
  if (p < 0 || p >= k_) {
    throw InvalidArgumentError("pair index " + std::to_string(p) +
                               " outside [0, " + std::to_string(k_) + ")");
  }
  // Lowest even charge in {1-K, ..., K}: 1-K itself when even, else 2-K.
  int lowest_even = is_even(lowest()) ? lowest() : lowest() + 1;
  return lowest_even + 2 * p;
}

std::vector<int> OamWindow::even_charges() const {
  std::vector<int> out;
  out.reserve(k_);
  for (int p = 0; p < k_; ++p) {
    out.push_back(even_charge_of_pair(p));
  }
  return out;
}

}  // namespace spinorbit
