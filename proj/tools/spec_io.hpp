// Copyright 2026 The covkit Authors
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

// Self-describing JSON documents for groups, kernels, CP maps, observables,
// instruments, phase-space seeds and states. See docs/format.md.

#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covkit/instruments.hpp"

namespace covkit::io {

using Json = nlohmann::json;

inline constexpr const char* format_version = "1";

struct GroupDoc {
  FiniteGroup group;
};

struct KernelDoc {
  CovariantKernelSpec spec;
  /// Pairs on which competitors must agree; used by `extremal`.
  std::vector<std::pair<int, int>> z;
};

struct PhaseSpaceDoc {
  int d = 1;
  /// Trace-one seed S; when present the Kraus family is its spectral one.
  std::optional<CMatrix> seed;
  std::vector<CMatrix> kraus;

  InstrumentSpec instrument(const Tolerances& tol = {}) const;
};

struct StateDoc {
  CMatrix rho;
};

using Document = std::variant<GroupDoc, KernelDoc, CPMapSpec, ObservableSpec, InstrumentSpec, PhaseSpaceDoc, StateDoc>;

std::string kind_of(const Document& doc);

/// Syntax and schema problems raise ParseError; inconsistent mathematics raises the library's errors.
Document parse_document(const std::string& text);
Document read_document(const std::string& path);

Json to_json(const Document& doc);
/// Pretty-printed, newline-terminated; byte-stable for a fixed document.
std::string serialize(const Document& doc);

Json complex_json(Complex z);
Json matrix_json(const CMatrix& m);
Json matrices_json(const std::vector<CMatrix>& ms);
CMatrix parse_matrix(const Json& j, const std::string& where);

}  // namespace covkit::io
