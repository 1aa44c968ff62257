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

// Engines behind the covkit subcommands. Each returns a report instead of printing,
// so the same code serves the binary and the tests.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spec_io.hpp"

namespace covkit::cli {

using io::Json;

struct Options {
  Tolerances tol;
  std::uint64_t seed = 0;
};

/// Verdicts carry their residuals; artifacts carry a note saying where they came from.
class Report {
 public:
  Report(std::string command, std::string kind) : command_(std::move(command)), kind_(std::move(kind)) {}

  void verdict(const std::string& name, bool ok, double residual, std::string detail = {});
  void verdict(const Check& c) { verdict(c.name, c.ok, c.residual, c.detail); }
  void artifact(const std::string& name, std::string note, Json value);

  bool ok() const;
  const std::string& kind() const noexcept { return kind_; }
  /// The first failing verdict, for diagnostics.
  std::optional<std::string> first_failure() const;
  Json to_json(const Tolerances& tol, std::optional<double> wall_time_s = std::nullopt) const;

 private:
  struct Verdict {
    bool ok;
    double residual;
    std::string detail;
  };
  struct Artifact {
    std::string note;
    Json value;
  };
  std::string command_, kind_;
  std::map<std::string, Verdict> verdicts_;
  std::map<std::string, Artifact> artifacts_;
};

/// A command that does not accept the document's kind; the binary maps it to a parse failure.
class KindMismatch : public Error {
 public:
  KindMismatch(const std::string& command, const std::string& kind)
      : Error(command + " does not accept documents of kind \"" + kind + "\"") {}
};

Report cmd_validate(const io::Document& doc, const Options& opt);
Report cmd_dilate(const io::Document& doc, const Options& opt);
Report cmd_extremal(const io::Document& doc, const Options& opt);
Report cmd_kraus(const io::Document& doc, const Options& opt);

/// The covariant instrument of a phase-space seed, as an instrument document.
InstrumentSpec cmd_phase_space(const io::PhaseSpaceDoc& seed, const Options& opt);

/// Line-delimited records {draw, outcome, probability, post_state} from one seeded stream.
std::vector<Json> cmd_sample(const io::Document& doc, const CMatrix& state, int n, const Options& opt);

}  // namespace covkit::cli
