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

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "commands.hpp"

namespace {

using namespace covkit;

enum Exit : int { ok = 0, validation = 1, parse = 2, tolerance = 3 };

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
  }
};

int emit_report(const cli::Report& r, const cli::Options& opt, const Output& out, std::optional<double> wall) {
  out.write(r.to_json(opt.tol, wall).dump(2) + "\n");
  if (r.ok()) return ok;
  std::cerr << "covkit: verdict failed: " << *r.first_failure() << "\n";
  return validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covkit: covariant kernels, CP maps, observables and instruments"};
  app.require_subcommand(1);
  cli::Options opt;
  Output out;
  bool timing = false;
  app.add_option("--tol-psd-eig", opt.tol.psd_eig, "Eigenvalue slack for positivity")->capture_default_str();
  app.add_option("--tol-rank-rel", opt.tol.rank_rel, "Relative cutoff for numerical rank")->capture_default_str();
  app.add_option("--tol-unitary-fro", opt.tol.unitary_fro, "Frobenius bound for unitarity defects")
      ->capture_default_str();
  app.add_option("--tol-recon-fro", opt.tol.recon_fro, "Frobenius bound for reconstruction residuals")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for randomized decompositions and sampling")->capture_default_str();
  app.add_option("--json-out", out.path, "Write the report to this file instead of standard output");
  app.add_flag("--timing", timing, "Add wall_time_s to reports (breaks byte stability)");

  std::string file, state_file;
  int draws = 1, d = 0, basis = 0;
  bool mixed = false;
  std::function<int()> run;

  const auto report_command = [&](const char* name, const char* help, auto engine) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "Document to read")->required();
    sub->callback([&, engine] {
      run = [&, engine] {
        const auto doc = io::read_document(file);
        const auto start = std::chrono::steady_clock::now();
        const auto r = engine(doc, opt);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        return emit_report(r, opt, out, timing ? std::optional(elapsed.count()) : std::nullopt);
      };
    });
  };
  report_command("validate", "Check every defining identity of a document", cli::cmd_validate);
  report_command("dilate", "Kolmogorov, KSGNS or Naimark dilation with certificates", cli::cmd_dilate);
  report_command("extremal", "Decide extremality; emit a witness and a split when not extreme", cli::cmd_extremal);
  report_command("kraus", "Kraus operators of a CP map or instrument", cli::cmd_kraus);

  auto* ps = app.add_subcommand("phase-space", "Covariant phase-space instrument as an instrument document");
  ps->add_option("file", file, "phase_space document (overrides --d)");
  ps->add_option("--d", d, "Dimension; the seed is |basis><basis| unless --mixed")->check(CLI::PositiveNumber);
  ps->add_option("--basis", basis, "Basis vector of a pure seed")->capture_default_str();
  ps->add_flag("--mixed", mixed, "Use the maximally mixed seed I/d");
  ps->callback([&] {
    run = [&] {
      io::PhaseSpaceDoc seed;
      if (!file.empty()) {
        const auto doc = io::read_document(file);
        const auto* p = std::get_if<io::PhaseSpaceDoc>(&doc);
        if (!p) throw cli::KindMismatch("phase-space", io::kind_of(doc));
        seed = *p;
      } else {
        if (d < 1) throw CLI::RequiredError("--d or a file");
        if (basis < 0 || basis >= d) throw DomainError("phase-space: --basis must lie in [0, d)");
        CMatrix s = CMatrix::Zero(d, d);
        if (mixed)
          s.diagonal().setConstant(1.0 / d);
        else
          s(basis, basis) = 1;
        seed.d = d;
        seed.seed = s;
      }
      out.write(io::serialize(cli::cmd_phase_space(seed, opt)));
      return int(ok);
    };
  });

  auto* sm = app.add_subcommand("sample", "Draw outcomes of an instrument on a state, one JSON record per line");
  sm->add_option("file", file, "instrument or phase_space document")->required();
  sm->add_option("state", state_file, "state document")->required();
  sm->add_option("-n", draws, "Number of draws")->capture_default_str()->check(CLI::NonNegativeNumber);
  sm->callback([&] {
    run = [&] {
      const auto doc = io::read_document(file);
      const auto state = io::read_document(state_file);
      const auto* rho = std::get_if<io::StateDoc>(&state);
      if (!rho) throw cli::KindMismatch("sample", io::kind_of(state));
      std::string lines;
      for (const auto& rec : cli::cmd_sample(doc, rho->rho, draws, opt)) lines += rec.dump() + "\n";
      out.write(lines);
      return int(ok);
    };
  });

  try {
    app.parse(argc, argv);
    opt.tol.validate();
    return run();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return parse;
  } catch (const ParseError& e) {
    std::cerr << "covkit: parse error: " << e.what() << "\n";
    return parse;
  } catch (const cli::KindMismatch& e) {
    std::cerr << "covkit: " << e.what() << "\n";
    return parse;
  } catch (const ToleranceError& e) {
    std::cerr << "covkit: tolerance failure: " << e.what() << "\n";
    return tolerance;
  } catch (const Error& e) {
    std::cerr << "covkit: validation failure: " << e.what() << "\n";
    return validation;
  }
}
