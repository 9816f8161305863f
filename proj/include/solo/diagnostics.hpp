// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SOLO_DIAGNOSTICS_HPP
#define SOLO_DIAGNOSTICS_HPP

#include <stdexcept>
#include <string>

namespace solo {

// Position of a token or AST node in a source file (1-based; 0 = unknown).
struct SourcePos {
  int line = 0;
  int col = 0;
};

// Stable machine-readable diagnostic codes, one per failure class.
// The full list is documented in docs/diagnostics.md.
enum class Code {
  kParse,
  kUnbound,
  kTypeMismatch,
  kMetricMismatch,
  kBranchEnvMismatch,
  kSensitiveBranch,
  kEnvEscape,
  kInfiniteSensitivity,
  kUnification,
  kNotPrivate,
  kAlphaMismatch,
  kPrecondition,
  kDomain,
  kDivideByZero,
  kInvalidScale,
  kEmptyScores,
  kGridTooNarrow,
  kMissingSource,
  kShapeMismatch,
  kOutOfFuel,
  kStuckTerm,
  kUnsupportedExact,
  kNotDeterministic,
  kUnboundedSpec,
  kArity,
  kInternal,
};

inline const char* code_name(Code c) {
  switch (c) {
    case Code::kParse: return "PARSE";
    case Code::kUnbound: return "UNBOUND_VARIABLE";
    case Code::kTypeMismatch: return "TYPE_MISMATCH";
    case Code::kMetricMismatch: return "METRIC_MISMATCH";
    case Code::kBranchEnvMismatch: return "BRANCH_ENV_MISMATCH";
    case Code::kSensitiveBranch: return "SENSITIVE_BRANCH";
    case Code::kEnvEscape: return "ENV_ESCAPE";
    case Code::kInfiniteSensitivity: return "INFINITE_SENSITIVITY";
    case Code::kUnification: return "UNIFICATION_FAILURE";
    case Code::kNotPrivate: return "NOT_A_PRIVATE_PROGRAM";
    case Code::kAlphaMismatch: return "ALPHA_MISMATCH";
    case Code::kPrecondition: return "PRECONDITION_VIOLATION";
    case Code::kDomain: return "DOMAIN_ERROR";
    case Code::kDivideByZero: return "DIVIDE_BY_ZERO";
    case Code::kInvalidScale: return "INVALID_SCALE";
    case Code::kEmptyScores: return "EMPTY_SCORES";
    case Code::kGridTooNarrow: return "GRID_TOO_NARROW";
    case Code::kMissingSource: return "MISSING_SOURCE";
    case Code::kShapeMismatch: return "SHAPE_MISMATCH";
    case Code::kOutOfFuel: return "OUT_OF_FUEL";
    case Code::kStuckTerm: return "STUCK_TERM";
    case Code::kUnsupportedExact: return "UNSUPPORTED_EXACT_PROGRAM";
    case Code::kNotDeterministic: return "NOT_DETERMINISTIC_FRAGMENT";
    case Code::kUnboundedSpec: return "UNBOUNDED_SPEC";
    case Code::kArity: return "ARITY_MISMATCH";
    case Code::kInternal: return "INTERNAL";
  }
  return "INTERNAL";
}

// Base for every error this library reports. Carries a code and a source
// position so the CLI can emit `file:line:col: CODE: message` lines.
class SoloError : public std::runtime_error {
 public:
  SoloError(Code code, std::string message, SourcePos pos = {})
      : std::runtime_error(std::move(message)), code_(code), pos_(pos) {}

  Code code() const { return code_; }
  SourcePos pos() const { return pos_; }

  std::string render(const std::string& file) const {
    return file + ":" + std::to_string(pos_.line) + ":" +
           std::to_string(pos_.col) + ": " + code_name(code_) + ": " + what();
  }

 private:
  Code code_;
  SourcePos pos_;
};

// Thrown by the lexer/parser; CLI exit status 2.
class ParseError : public SoloError {
 public:
  ParseError(std::string message, SourcePos pos)
      : SoloError(Code::kParse, std::move(message), pos) {}
};

// Thrown by the typechecker; CLI exit status 1.
class TypeError : public SoloError {
 public:
  using SoloError::SoloError;
};

// Thrown by the evaluator and the mechanisms at runtime.
class EvalError : public SoloError {
 public:
  using SoloError::SoloError;
};

// Thrown by the verifier when a check cannot be set up (not when it fails;
// a failing check produces a report, not an exception).
class VerifyError : public SoloError {
 public:
  using SoloError::SoloError;
};

}  // namespace solo

#endif  // SOLO_DIAGNOSTICS_HPP
