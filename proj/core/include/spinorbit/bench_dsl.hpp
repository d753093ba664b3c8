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

#ifndef SPINORBIT_BENCH_DSL_HPP_
#define SPINORBIT_BENCH_DSL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinorbit/apparatus.hpp"
#include "spinorbit/elements.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/protocol.hpp"
#include "spinorbit/spdc.hpp"
#include "spinorbit/types.hpp"

namespace spinorbit::dsl {

// Line-oriented bench description language.
//
//   program    := line* ;
//   line       := source | prep | element | detect | run ;
//   source     := "source" "spdc" "l=" INT "K=" INT "profile=" profspec ;
//   profspec   := "uniform" | "gaussian(" FLOAT ")" | "explicit(" clist ")" ;
//   prep       := "prepare" "A" "alpha=" COMPLEX "beta=" COMPLEX ;
//   element    := "element" ARM KIND args ("->" PATH+)? ;   ARM := "A" | "B" | PATH
//   KIND       := "sorter" | "pbs" | "bs" | "dove" | "sph" | "hwp" | "qwp" | "delay" ;
//   detect     := "detect" DETID PATH ;
//   run        := "run" "trials=" INT "seed=" INT "mode=" ("projector"|"apparatus") ;
//   COMPLEX    := FLOAT ("+"|"-") FLOAT "i" ;
//
// '#' starts a comment; blank lines are ignored. Per-kind arguments:
// hwp/qwp/delay take one FLOAT (angle/phase in radians), sph an optional
// signed INT charge (default +1), bs and pbs an optional partner PATH.
// sorter and pbs (single-input form) declare two fresh output paths; bs and
// two-input pbs act in place when no outputs are given.

enum class ErrorCategory { kLexical, kSyntax, kSemantic, kLowering };

const char* to_string(ErrorCategory c);

// Parse or lowering failure, positioned at 1-based (line, column).
class DslError : public Error {
 public:
  DslError(ErrorCategory category, int line, int column,
           const std::string& what);

  ErrorCategory category() const { return category_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorCategory category_;
  int line_;
  int column_;
};

enum class ElementKind { kSorter, kPbs, kBs, kDove, kSph, kHwp, kQwp, kDelay };

const char* to_string(ElementKind k);

struct SourceStmt {
  int l = 1;
  int window_k = 1;
  ProfileSpec profile;

  friend bool operator==(const SourceStmt&, const SourceStmt&) = default;
};

struct PrepareStmt {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  friend bool operator==(const PrepareStmt&, const PrepareStmt&) = default;
};

struct ElementStmt {
  std::string arm;                   // input path name ("A"/"B" are roots)
  ElementKind kind;
  std::optional<double> param;       // hwp/qwp angle, delay phase
  std::optional<int> charge;         // sph step
  std::optional<std::string> partner;  // second input of bs / pbs
  std::vector<std::string> outputs;  // fresh paths after "->"

  friend bool operator==(const ElementStmt&, const ElementStmt&) = default;
};

struct DetectStmt {
  std::string detector;
  std::string path;

  friend bool operator==(const DetectStmt&, const DetectStmt&) = default;
};

struct RunStmt {
  int trials = 0;
  std::uint64_t seed = 0;
  MeasureMode mode = MeasureMode::kProjector;

  friend bool operator==(const RunStmt&, const RunStmt&) = default;
};

// A validated program: one source, paths declared before use and never
// re-wired, at least one detector.
struct BenchProgram {
  SourceStmt source;
  std::optional<PrepareStmt> prepare;
  std::vector<ElementStmt> elements;
  std::vector<DetectStmt> detectors;
  std::optional<RunStmt> run;

  friend bool operator==(const BenchProgram&, const BenchProgram&) = default;
};

// Throws DslError (lexical/syntax/semantic) with line and column.
BenchProgram parse(std::string_view text);

// Canonical text form: one statement per line, shortest round-trip float
// literals, stable output (parse(pretty_print(p)) == p byte-for-byte on a
// second print).
std::string pretty_print(const BenchProgram& program);

// One photon's side of a lowered program: a composed unitary over the
// side's path space plus the detector assignments on it. Path 0 is the
// photon's root; `path_names` maps indices to program names.
struct LoweredStage {
  ElementOp op;
  std::vector<std::string> path_names;
  std::vector<std::pair<std::string, int>> detectors;  // (name, path)
};

// Executable form of a program: the source profile, the prepared input,
// per-photon stages, and run parameters.
struct LoweredBench {
  Profile profile;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  std::optional<LoweredStage> stage_a;
  std::optional<LoweredStage> stage_b;
  int trials = 0;
  std::uint64_t seed = 0;
  MeasureMode mode = MeasureMode::kProjector;

  // True when stage A terminates in exactly four detectors and can serve
  // as the Bell-measurement bench.
  bool has_bell_stage() const;
  // That stage as a BenchLayout (detectors in declaration order D1..D4).
  BenchLayout bell_layout() const;
};

// Adjacent dove+sph statements on one path are fused into the closed
// involution dp_sph; any guard that survives composition (an element whose
// action would leave the window on a reachable mode) is a lowering error.
LoweredBench lower(const BenchProgram& program);

}  // namespace spinorbit::dsl

#endif  // SPINORBIT_BENCH_DSL_HPP_
