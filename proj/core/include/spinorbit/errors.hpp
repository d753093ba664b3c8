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

#ifndef SPINORBIT_ERRORS_HPP_
#define SPINORBIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace spinorbit {

// Base class for every error raised by the library. All failures are
// reported by throwing; no error codes are returned through the API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed a value that is out of range or inconsistent
// (non-positive mode window, angle that is not finite, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Two objects that must live on the same mode space do not
// (different windows, different path counts, mismatched dimensions).
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

// A state carried non-negligible amplitude on a mode for which an optical
// element has no physical action inside the truncated window. The element
// still acts unitarily there (so invariants hold), but the result would be
// an artifact of the truncation, so the library refuses to proceed.
class SupportOverflowError : public Error {
 public:
  using Error::Error;
};

// A pump/profile combination produced an all-zero amplitude vector after
// symmetrization, leaving nothing to normalize.
class DegenerateProfileError : public Error {
 public:
  using Error::Error;
};

// A conditional state was requested for a measurement outcome whose
// probability is (numerically) zero.
class ImpossibleOutcomeError : public Error {
 public:
  using Error::Error;
};

// No candidate correction (or no consistent detector labelling) reproduced
// the expected behaviour. This signals an internal inconsistency, never a
// bad user input.
class ConventionError : public Error {
 public:
  using Error::Error;
};

// A run of the full protocol failed one of its own guarantees, e.g. a
// post-correction fidelity fell below 1 for an input where the transfer is
// exact. Indicates a bug, not a property of the model.
class ProtocolIntegrityError : public Error {
 public:
  using Error::Error;
};

// Malformed run configuration (JSON config file or command line).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinorbit

#endif  // SPINORBIT_ERRORS_HPP_
