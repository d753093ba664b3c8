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

#include "spinorbit/bench_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinorbit::dsl {

namespace {

constexpr int kMaxWindowHalfWidth = 64;

bool is_ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), is_ident_char);
}

std::optional<double> parse_double(std::string_view s) {
  // from_chars accepts a leading '-' but not '+'.
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s[0] == '+') s.remove_prefix(1);
  Int value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

// FLOAT ("+"|"-") FLOAT "i", no spaces; the split sign is the first +/-
// beyond position 0 that is not an exponent sign.
std::optional<Complex> parse_complex(std::string_view s) {
  if (s.size() < 2 || s.back() != 'i') return std::nullopt;
  std::size_t split = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == 0) return std::nullopt;
  auto re = parse_double(s.substr(0, split));
  auto im = parse_double(s.substr(split, s.size() - split - 1));
  if (!re || !im) return std::nullopt;
  return Complex{*re, *im};
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_complex(Complex c) {
  std::string out = format_double(c.real());
  out += std::signbit(c.imag()) ? '-' : '+';
  out += format_double(std::abs(c.imag()));
  out += 'i';
  return out;
}

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number;  // 1-based
  std::vector<Token> tokens;
};

// Splits the input into comment-stripped, tokenized lines. Throws on
// control or non-ASCII bytes (the only lexing that can fail here; literal
// validity is checked by the statement parsers).
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw = text.substr(
        start, nl == std::string_view::npos ? text.size() - start
                                            : nl - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (c == '#') break;  // comment to end of line
      if (c == ' ' || c == '\t') {
        ++i;
        continue;
      }
      if (static_cast<unsigned char>(c) < 0x20 ||
          static_cast<unsigned char>(c) > 0x7e) {
        throw DslError(ErrorCategory::kLexical, line_no,
                       static_cast<int>(i) + 1,
                       "invalid byte in input");
      }
      std::size_t begin = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
             raw[i] != '#') {
        char t = raw[i];
        if (static_cast<unsigned char>(t) < 0x20 ||
            static_cast<unsigned char>(t) > 0x7e) {
          throw DslError(ErrorCategory::kLexical, line_no,
                         static_cast<int>(i) + 1,
                         "invalid byte in input");
        }
        ++i;
      }
      line.tokens.push_back(
          {std::string(raw.substr(begin, i - begin)),
           static_cast<int>(begin) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
    ++line_no;
  }
  return lines;
}

// Cursor over one statement line with positioned failure helpers.
class Cursor {
 public:
  explicit Cursor(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }

  int line_number() const { return line_.number; }

  int end_column() const {
    if (line_.tokens.empty()) return 1;
    const Token& last = line_.tokens.back();
    return last.column + static_cast<int>(last.text.size());
  }

  const Token& peek() const {
    if (done()) {
      throw DslError(ErrorCategory::kSyntax, line_.number, end_column(),
                     "unexpected end of line");
    }
    return line_.tokens[pos_];
  }

  Token take() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

  Token take_keyword(std::string_view expected) {
    const Token& t = peek();
    if (t.text != expected) {
      throw DslError(ErrorCategory::kSyntax, line_.number, t.column,
                     "expected '" + std::string(expected) + "', got '" +
                         t.text + "'");
    }
    return take();
  }

  // "key=value" field; returns the value with its column.
  Token take_field(std::string_view key) {
    const Token& t = peek();
    std::string prefix = std::string(key) + "=";
    if (t.text.rfind(prefix, 0) != 0) {
      throw DslError(ErrorCategory::kSyntax, line_.number, t.column,
                     "expected '" + prefix + "...', got '" + t.text + "'");
    }
    Token value{t.text.substr(prefix.size()),
                t.column + static_cast<int>(prefix.size())};
    take();
    return value;
  }

  Token take_identifier(const char* what) {
    const Token& t = peek();
    if (!is_identifier(t.text)) {
      throw DslError(ErrorCategory::kLexical, line_.number, t.column,
                     std::string("malformed ") + what + " '" + t.text + "'");
    }
    return take();
  }

  void expect_done() const {
    if (!done()) {
      const Token& t = line_.tokens[pos_];
      throw DslError(ErrorCategory::kSyntax, line_.number, t.column,
                     "unexpected trailing token '" + t.text + "'");
    }
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

double parse_float_token(const Cursor& cursor, const Token& t,
                         const char* what) {
  auto v = parse_double(t.text);
  if (!v) {
    throw DslError(ErrorCategory::kLexical, cursor.line_number(), t.column,
                   std::string("malformed ") + what + " '" + t.text + "'");
  }
  return *v;
}

Complex parse_complex_token(const Cursor& cursor, const Token& t,
                            const char* what) {
  auto v = parse_complex(t.text);
  if (!v) {
    throw DslError(ErrorCategory::kLexical, cursor.line_number(), t.column,
                   std::string("malformed ") + what + " '" + t.text +
                       "' (expected FLOAT(+|-)FLOATi)");
  }
  return *v;
}

// Semantic bookkeeping: which paths exist, whether they are still open for
// wiring, and which photon each one belongs to.
struct PathState {
  char root;  // 'A' or 'B'
  bool live;
};

class Parser {
 public:
  BenchProgram parse(std::string_view text) {
    std::vector<Line> lines = tokenize(text);
    for (const Line& line : lines) {
      Cursor cursor(line);
      const Token& head = cursor.peek();
      if (head.text == "source") {
        parse_source(cursor);
      } else if (head.text == "prepare") {
        parse_prepare(cursor);
      } else if (head.text == "element") {
        parse_element(cursor);
      } else if (head.text == "detect") {
        parse_detect(cursor);
      } else if (head.text == "run") {
        parse_run(cursor);
      } else {
        throw DslError(ErrorCategory::kSyntax, line.number, head.column,
                       "unknown statement '" + head.text + "'");
      }
    }
    int end_line = lines.empty() ? 1 : lines.back().number;
    if (!have_source_) {
      throw DslError(ErrorCategory::kSemantic, end_line, 1,
                     "program has no source statement");
    }
    if (program_.detectors.empty()) {
      throw DslError(ErrorCategory::kSemantic, end_line, 1,
                     "program declares no detector");
    }
    return std::move(program_);
  }

 private:
  void parse_source(Cursor& cursor) {
    Token head = cursor.take();
    if (have_source_) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     head.column, "duplicate source statement");
    }
    cursor.take_keyword("spdc");
    Token l_tok = cursor.take_field("l");
    auto l = parse_int<int>(l_tok.text);
    if (!l) {
      throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                     l_tok.column, "malformed pump charge '" + l_tok.text +
                                       "'");
    }
    Token k_tok = cursor.take_field("K");
    auto k = parse_int<int>(k_tok.text);
    if (!k) {
      throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                     k_tok.column,
                     "malformed window half-width '" + k_tok.text + "'");
    }
    if (*k < 1 || *k > kMaxWindowHalfWidth) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     k_tok.column, "window half-width must be in [1, " +
                                       std::to_string(kMaxWindowHalfWidth) +
                                       "]");
    }
    Token p_tok = cursor.take_field("profile");
    SourceStmt source;
    source.l = *l;
    source.window_k = *k;
    source.profile = parse_profile_spec(cursor, p_tok, *l, *k);
    cursor.expect_done();
    program_.source = source;
    have_source_ = true;
  }

  ProfileSpec parse_profile_spec(const Cursor& cursor, const Token& t,
                                 int l, int k) {
    ProfileSpec spec;
    spec.l = l;
    spec.window_k = k;
    const std::string& s = t.text;
    if (s == "uniform") {
      spec.kind = ProfileKind::kUniform;
      return spec;
    }
    auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
      std::string_view v = s;
      if (v.rfind(prefix, 0) != 0 || v.back() != ')') return std::nullopt;
      return v.substr(prefix.size(), v.size() - prefix.size() - 1);
    };
    if (auto arg = inner("gaussian(")) {
      auto width = parse_double(*arg);
      if (!width) {
        throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                       t.column, "malformed gaussian width");
      }
      if (!(*width > 0.0)) {
        throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                       t.column, "gaussian width must be positive");
      }
      spec.kind = ProfileKind::kGaussian;
      spec.width = *width;
      return spec;
    }
    if (auto arg = inner("explicit(")) {
      spec.kind = ProfileKind::kExplicit;
      std::vector<Complex> coeffs;
      std::string_view rest = *arg;
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        auto c = parse_complex(item);
        if (!c) {
          throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                         t.column,
                         "malformed coefficient '" + std::string(item) +
                             "' in explicit profile");
        }
        coeffs.push_back(*c);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
        if (rest.empty()) {
          throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                         t.column, "trailing comma in explicit profile");
        }
      }
      if (static_cast<int>(coeffs.size()) != 2 * k) {
        throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                       t.column,
                       "explicit profile needs one coefficient per window "
                       "charge (" +
                           std::to_string(2 * k) + "), got " +
                           std::to_string(coeffs.size()));
      }
      // Coefficients are listed in window order, charges 1-K .. K.
      for (int i = 0; i < 2 * k; ++i) {
        spec.coeffs.emplace_back(1 - k + i, coeffs[i]);
      }
      return spec;
    }
    throw DslError(ErrorCategory::kSyntax, cursor.line_number(), t.column,
                   "unknown profile '" + s + "'");
  }

  void parse_prepare(Cursor& cursor) {
    Token head = cursor.take();
    if (program_.prepare) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     head.column, "duplicate prepare statement");
    }
    cursor.take_keyword("A");
    Token a_tok = cursor.take_field("alpha");
    Complex alpha = parse_complex_token(cursor, a_tok, "amplitude");
    Token b_tok = cursor.take_field("beta");
    Complex beta = parse_complex_token(cursor, b_tok, "amplitude");
    cursor.expect_done();
    double n = std::norm(alpha) + std::norm(beta);
    if (std::abs(n - 1.0) > 1e-9) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     a_tok.column,
                     "input amplitudes must satisfy |alpha|^2 + |beta|^2 = "
                     "1");
    }
    program_.prepare = PrepareStmt{alpha, beta};
  }

  // The wired-path rules live here: arms must be declared and still open,
  // outputs must be fresh names, and junction partners must belong to the
  // same photon.
  Token take_live_path(Cursor& cursor, const char* what) {
    Token t = cursor.take_identifier(what);
    auto it = paths_.find(t.text);
    if (it == paths_.end()) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     t.column,
                     std::string("undeclared path '") + t.text + "'");
    }
    if (!it->second.live) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     t.column, "path reused: '" + t.text +
                                   "' was already routed or detected");
    }
    return t;
  }

  void declare_output(Cursor& cursor, const Token& t, char root) {
    if (paths_.count(t.text) != 0) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     t.column,
                     "path reused: '" + t.text + "' is already declared");
    }
    paths_.emplace(t.text, PathState{root, true});
  }

  void parse_element(Cursor& cursor) {
    cursor.take();
    Token arm = take_live_path(cursor, "path");
    char root = paths_[arm.text].root;

    Token kind_tok = cursor.take_identifier("element kind");
    static const std::map<std::string, ElementKind> kKinds = {
        {"sorter", ElementKind::kSorter}, {"pbs", ElementKind::kPbs},
        {"bs", ElementKind::kBs},         {"dove", ElementKind::kDove},
        {"sph", ElementKind::kSph},       {"hwp", ElementKind::kHwp},
        {"qwp", ElementKind::kQwp},       {"delay", ElementKind::kDelay}};
    auto kind_it = kKinds.find(kind_tok.text);
    if (kind_it == kKinds.end()) {
      throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                     kind_tok.column,
                     "unknown element kind '" + kind_tok.text + "'");
    }
    ElementKind kind = kind_it->second;

    ElementStmt stmt;
    stmt.arm = arm.text;
    stmt.kind = kind;

    // Per-kind arguments (before any "->").
    switch (kind) {
      case ElementKind::kHwp:
      case ElementKind::kQwp:
      case ElementKind::kDelay: {
        Token p = cursor.take();
        stmt.param = parse_float_token(cursor, p, "angle");
        break;
      }
      case ElementKind::kSph: {
        if (!cursor.done() && cursor.peek().text != "->") {
          Token c = cursor.take();
          auto charge = parse_int<int>(c.text);
          if (!charge) {
            throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                           c.column,
                           "malformed charge step '" + c.text + "'");
          }
          if (*charge != 1 && *charge != -1) {
            throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                           c.column, "charge step must be +1 or -1");
          }
          stmt.charge = *charge;
        }
        break;
      }
      case ElementKind::kBs: {
        Token partner = take_live_path(cursor, "path");
        if (partner.text == arm.text) {
          throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                         partner.column, "bs ports must differ");
        }
        if (paths_[partner.text].root != root) {
          throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                         partner.column,
                         "paths belong to different photons");
        }
        stmt.partner = partner.text;
        break;
      }
      case ElementKind::kPbs: {
        if (!cursor.done() && cursor.peek().text != "->") {
          Token partner = take_live_path(cursor, "path");
          if (partner.text == arm.text) {
            throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                           partner.column, "pbs ports must differ");
          }
          if (paths_[partner.text].root != root) {
            throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                           partner.column,
                           "paths belong to different photons");
          }
          stmt.partner = partner.text;
        }
        break;
      }
      default:
        break;
    }

    // Optional output list.
    bool have_outputs = false;
    if (!cursor.done()) {
      Token arrow = cursor.take();
      if (arrow.text != "->") {
        throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                       arrow.column,
                       "expected '->' or end of line, got '" + arrow.text +
                           "'");
      }
      if (cursor.done()) {
        throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                       arrow.column, "'->' needs at least one output path");
      }
      while (!cursor.done()) {
        Token out = cursor.take_identifier("path");
        stmt.outputs.push_back(out.text);
        declare_output(cursor, out, root);
      }
      have_outputs = true;
    }

    // Output arity per kind.
    int n_out = static_cast<int>(stmt.outputs.size());
    switch (kind) {
      case ElementKind::kSorter:
        if (n_out != 2) {
          throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                         cursor.end_column(),
                         "sorter needs exactly two output paths");
        }
        break;
      case ElementKind::kPbs:
        if (stmt.partner ? (n_out != 0 && n_out != 2) : (n_out != 2)) {
          throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                         cursor.end_column(),
                         stmt.partner
                             ? "two-input pbs takes zero or two outputs"
                             : "pbs needs exactly two output paths");
        }
        break;
      default:
        if (have_outputs) {
          throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                         cursor.end_column(),
                         std::string(to_string(kind)) + " acts in place and "
                                                        "takes no outputs");
        }
        break;
    }

    // Splitting elements consume their inputs; in-place ones keep them.
    bool splits = kind == ElementKind::kSorter ||
                  (kind == ElementKind::kPbs &&
                   (!stmt.partner || n_out == 2));
    if (splits) {
      paths_[arm.text].live = false;
      if (stmt.partner) paths_[*stmt.partner].live = false;
    }
    program_.elements.push_back(std::move(stmt));
  }

  void parse_detect(Cursor& cursor) {
    cursor.take();
    Token name = cursor.take_identifier("detector name");
    for (const DetectStmt& d : program_.detectors) {
      if (d.detector == name.text) {
        throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                       name.column,
                       "duplicate detector '" + name.text + "'");
      }
    }
    Token path = take_live_path(cursor, "path");
    cursor.expect_done();
    paths_[path.text].live = false;  // a detector terminates the path
    program_.detectors.push_back(DetectStmt{name.text, path.text});
  }

  void parse_run(Cursor& cursor) {
    Token head = cursor.take();
    if (program_.run) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     head.column, "duplicate run statement");
    }
    Token t_tok = cursor.take_field("trials");
    auto trials = parse_int<int>(t_tok.text);
    if (!trials) {
      throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                     t_tok.column,
                     "malformed trial count '" + t_tok.text + "'");
    }
    if (*trials < 0) {
      throw DslError(ErrorCategory::kSemantic, cursor.line_number(),
                     t_tok.column, "trial count must be >= 0");
    }
    Token s_tok = cursor.take_field("seed");
    auto seed = parse_int<std::uint64_t>(s_tok.text);
    if (!seed) {
      throw DslError(ErrorCategory::kLexical, cursor.line_number(),
                     s_tok.column, "malformed seed '" + s_tok.text + "'");
    }
    Token m_tok = cursor.take_field("mode");
    MeasureMode mode;
    if (m_tok.text == "projector") {
      mode = MeasureMode::kProjector;
    } else if (m_tok.text == "apparatus") {
      mode = MeasureMode::kApparatus;
    } else {
      throw DslError(ErrorCategory::kSyntax, cursor.line_number(),
                     m_tok.column,
                     "mode must be 'projector' or 'apparatus'");
    }
    cursor.expect_done();
    program_.run = RunStmt{*trials, *seed, mode};
  }

  BenchProgram program_;
  bool have_source_ = false;
  std::map<std::string, PathState> paths_ = {
      {"A", PathState{'A', true}}, {"B", PathState{'B', true}}};
};

}  // namespace

const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kLexical:
      return "lexical";
    case ErrorCategory::kSyntax:
      return "syntax";
    case ErrorCategory::kSemantic:
      return "semantic";
    case ErrorCategory::kLowering:
      return "lowering";
  }
  return "?";
}

const char* to_string(ElementKind k) {
  switch (k) {
    case ElementKind::kSorter:
      return "sorter";
    case ElementKind::kPbs:
      return "pbs";
    case ElementKind::kBs:
      return "bs";
    case ElementKind::kDove:
      return "dove";
    case ElementKind::kSph:
      return "sph";
    case ElementKind::kHwp:
      return "hwp";
    case ElementKind::kQwp:
      return "qwp";
    case ElementKind::kDelay:
      return "delay";
  }
  return "?";
}

DslError::DslError(ErrorCategory category, int line, int column,
                   const std::string& what)
    : Error(std::string(to_string(category)) + " error at " +
            std::to_string(line) + ":" + std::to_string(column) + ": " +
            what),
      category_(category),
      line_(line),
      column_(column) {}

BenchProgram parse(std::string_view text) { return Parser().parse(text); }

std::string pretty_print(const BenchProgram& program) {
  std::string out;
  const SourceStmt& src = program.source;
  out += "source spdc l=" + std::to_string(src.l) +
         " K=" + std::to_string(src.window_k) + " profile=";
  switch (src.profile.kind) {
    case ProfileKind::kUniform:
      out += "uniform";
      break;
    case ProfileKind::kGaussian:
      out += "gaussian(" + format_double(src.profile.width.value_or(1.0)) +
             ")";
      break;
    case ProfileKind::kExplicit: {
      out += "explicit(";
      for (std::size_t i = 0; i < src.profile.coeffs.size(); ++i) {
        if (i) out += ",";
        out += format_complex(src.profile.coeffs[i].second);
      }
      out += ")";
      break;
    }
  }
  out += "\n";
  if (program.prepare) {
    out += "prepare A alpha=" + format_complex(program.prepare->alpha) +
           " beta=" + format_complex(program.prepare->beta) + "\n";
  }
  for (const ElementStmt& e : program.elements) {
    out += "element " + e.arm + " " + to_string(e.kind);
    if (e.param) out += " " + format_double(*e.param);
    if (e.charge) out += " " + std::to_string(*e.charge);
    if (e.partner) out += " " + *e.partner;
    if (!e.outputs.empty()) {
      out += " ->";
      for (const std::string& o : e.outputs) out += " " + o;
    }
    out += "\n";
  }
  for (const DetectStmt& d : program.detectors) {
    out += "detect " + d.detector + " " + d.path + "\n";
  }
  if (program.run) {
    out += "run trials=" + std::to_string(program.run->trials) +
           " seed=" + std::to_string(program.run->seed) +
           " mode=" + std::string(to_string(program.run->mode)) + "\n";
  }
  return out;
}

namespace {

// Lowering of one photon's statements onto a concrete path space.
std::optional<LoweredStage> lower_stage(
    const BenchProgram& program, char root, const OamWindow& window) {
  // Replay the declarations to find this photon's paths, in order.
  std::map<std::string, char> roots = {{"A", 'A'}, {"B", 'B'}};
  std::vector<std::string> names = {std::string(1, root)};
  std::map<std::string, int> index = {{std::string(1, root), 0}};
  std::vector<const ElementStmt*> mine;
  for (const ElementStmt& e : program.elements) {
    char r = roots.at(e.arm);
    for (const std::string& o : e.outputs) roots.emplace(o, r);
    if (r != root) continue;
    mine.push_back(&e);
    for (const std::string& o : e.outputs) {
      index.emplace(o, static_cast<int>(names.size()));
      names.push_back(o);
    }
  }
  std::vector<std::pair<std::string, int>> detectors;
  for (const DetectStmt& d : program.detectors) {
    auto it = index.find(d.path);
    if (it != index.end()) detectors.emplace_back(d.detector, it->second);
  }
  if (mine.empty() && detectors.empty()) return std::nullopt;

  ModeSpace space(window, static_cast<int>(names.size()));
  std::vector<ElementOp> ops;
  for (std::size_t i = 0; i < mine.size(); ++i) {
    const ElementStmt& e = *mine[i];
    int arm = index.at(e.arm);
    switch (e.kind) {
      case ElementKind::kSorter:
        ops.push_back(parity_sorter(space, arm, index.at(e.outputs[0]),
                                    index.at(e.outputs[1])));
        break;
      case ElementKind::kPbs:
        if (e.partner) {
          int partner = index.at(*e.partner);
          int out1 = e.outputs.empty() ? arm : index.at(e.outputs[0]);
          int out2 = e.outputs.empty() ? partner : index.at(e.outputs[1]);
          ops.push_back(pbs_junction(space, arm, partner, out1, out2));
        } else {
          ops.push_back(pbs(space, arm, index.at(e.outputs[0]),
                            index.at(e.outputs[1])));
        }
        break;
      case ElementKind::kBs:
        ops.push_back(bs_5050(space, arm, index.at(*e.partner)));
        break;
      case ElementKind::kDove: {
        // A dove immediately followed by a sph(+1) on the same arm is the
        // closed window involution; fuse so no guard is left behind.
        if (i + 1 < mine.size() && mine[i + 1]->kind == ElementKind::kSph &&
            mine[i + 1]->arm == e.arm &&
            mine[i + 1]->charge.value_or(1) == 1) {
          ops.push_back(dp_sph(space, arm));
          ++i;
        } else {
          ops.push_back(dove_prism(space, arm));
        }
        break;
      }
      case ElementKind::kSph:
        ops.push_back(spiral_phase(space, e.charge.value_or(1), arm));
        break;
      case ElementKind::kHwp:
        ops.push_back(hwp(space, *e.param, arm));
        break;
      case ElementKind::kQwp:
        ops.push_back(qwp(space, *e.param, arm));
        break;
      case ElementKind::kDelay:
        ops.push_back(path_phase(space, arm, *e.param));
        break;
    }
  }
  ElementOp op = ops.empty() ? identity_op(space) : compose(ops);
  if (!op.guarded.empty()) {
    const ModeSpace::Mode m = space.mode_at(op.guarded.front());
    throw DslError(
        ErrorCategory::kLowering, 0, 0,
        "element pipeline '" + op.label +
            "' leaves the OAM window on reachable modes (first: q=" +
            std::to_string(m.q) + ", path '" + names[m.path] +
            "'); a bare reflection or charge shift must be paired into the "
            "dove+sph compound");
  }
  return LoweredStage{std::move(op), std::move(names),
                      std::move(detectors)};
}

}  // namespace

bool LoweredBench::has_bell_stage() const {
  return stage_a && stage_a->detectors.size() == 4;
}

BenchLayout LoweredBench::bell_layout() const {
  if (!has_bell_stage()) {
    throw InvalidArgumentError(
        "program's A side does not form a four-detector bench");
  }
  BenchLayout layout{stage_a->op.space, 0,
                     {stage_a->detectors[0].second,
                      stage_a->detectors[1].second,
                      stage_a->detectors[2].second,
                      stage_a->detectors[3].second},
                     stage_a->op, BsConvention::kSymmetricI};
  return layout;
}

LoweredBench lower(const BenchProgram& program) {
  Profile profile = [&] {
    try {
      return make_profile(program.source.profile);
    } catch (const Error& e) {
      throw DslError(ErrorCategory::kLowering, 0, 0, e.what());
    }
  }();
  const OamWindow window = profile.window();

  LoweredBench bench{profile};
  if (program.prepare) {
    bench.alpha = program.prepare->alpha;
    bench.beta = program.prepare->beta;
  }
  bench.stage_a = lower_stage(program, 'A', window);
  bench.stage_b = lower_stage(program, 'B', window);
  if (program.run) {
    bench.trials = program.run->trials;
    bench.seed = program.run->seed;
    bench.mode = program.run->mode;
  }
  return bench;
}

}  // namespace spinorbit::dsl
