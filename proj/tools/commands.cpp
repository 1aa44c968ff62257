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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace covkit::cli {
namespace {

using io::matrices_json;
using io::matrix_json;

double limit(const Tolerances& tol, double scale = 1) { return tol.recon_fro * std::max(1.0, scale); }

// Residuals are emitted as numbers; a non-finite one becomes a string so the report stays valid JSON.
Json residual_json(double r) {
  if (std::isfinite(r)) return r + 0.0;  // no "-0.0" in reports
  return std::isnan(r) ? "nan" : (r > 0 ? "inf" : "-inf");
}

void add_checks(Report& r, const ValidationReport& v, const std::string& prefix = {}) {
  for (const auto& c : v.checks) r.verdict(prefix + c.name, c.ok, c.residual, c.detail);
}

void add_bound(Report& r, const std::string& name, double residual, double bound) {
  r.verdict(name, residual <= bound, residual);
}

double negativity(double min_eig) { return std::max(0.0, -min_eig); }

InstrumentSpec as_instrument(const io::Document& doc, const Options& opt, const std::string& command) {
  if (const auto* g = std::get_if<InstrumentSpec>(&doc)) return *g;
  if (const auto* p = std::get_if<io::PhaseSpaceDoc>(&doc)) return p->instrument(opt.tol);
  throw KindMismatch(command, io::kind_of(doc));
}

// ---- validate ----

void validate_kernel_doc(Report& r, const io::KernelDoc& doc, const Tolerances& tol) {
  const auto& s = doc.spec;
  r.verdict(s.action.validate());
  r.verdict(s.sigma.validate());
  r.verdict(s.rep.validate(tol));
  const auto k = validate_kernel(s, tol);
  r.verdict("kernel shapes", k.shapes, 0, k.shapes ? "" : k.first_violation);
  r.verdict("kernel positive", k.positive, negativity(k.min_eigenvalue));
  r.verdict("kernel covariant", k.covariant, k.covariance_residual);
  r.verdict("kernel multiplier", k.alpha_ok, k.alpha_residual);
}

void validate_cpmap(Report& r, const CPMapSpec& s, const Tolerances& tol) {
  if (s.symmetry) r.verdict(s.symmetry->rep.validate(tol));
  const auto c = cp_validate(s, tol);
  r.verdict("cp shapes", c.shapes, 0, c.shapes ? "" : c.detail);
  r.verdict("completely positive", c.completely_positive, negativity(c.min_eigenvalue));
  r.verdict("cp covariant", c.covariant, c.covariance_residual);
}

void validate_state(Report& r, const CMatrix& rho, const Tolerances& tol) {
  const bool square = rho.rows() == rho.cols();
  r.verdict("state square", square, 0);
  if (!square) return;
  add_bound(r, "state hermitian", (rho - rho.adjoint()).norm(), limit(tol));
  r.verdict("state positive", psd_check(rho, tol), negativity(min_eigenvalue(hermitian_part(rho))));
  add_bound(r, "state trace", std::abs(rho.trace() - Complex(1)), limit(tol));
}

// ---- dilate ----

void dilate_kernel(Report& r, const io::KernelDoc& doc, const Tolerances& tol) {
  const auto d = kolmogorov_decompose(doc.spec, tol);
  const auto res = decomposition_residuals(doc.spec, d);
  const double scale = double(doc.spec.x_size() * doc.spec.fiber());
  add_bound(r, "reconstruction", res.reconstruction, limit(tol, scale));
  add_bound(r, "minimality", res.minimality_defect, tol.rank_rel * std::max(1, d.rank));
  add_bound(r, "intertwiner unitarity", res.unitarity, tol.unitary_fro * std::max(1, d.rank));
  add_bound(r, "intertwiner cocycle", res.cocycle, tol.unitary_fro * std::max(1, d.rank));
  add_bound(r, "covariant intertwining", res.intertwining, limit(tol, scale));
  r.artifact("rank", "dimension N of the minimal Kolmogorov decomposition", d.rank);
  r.artifact("factors", "F_x with T_{x,y} = F_x^* F_y, one per point", matrices_json(d.factors));
  r.artifact("intertwiner", "multiplier representation on the dilation space, one matrix per group element",
             matrices_json(d.utilde.matrices()));
  io::KernelDoc rebuilt = doc;
  for (int x = 0; x < doc.spec.x_size(); ++x)
    for (int y = 0; y < doc.spec.x_size(); ++y)
      rebuilt.spec.blocks[std::size_t(x) * doc.spec.x_size() + y] = d.factors[x].adjoint() * d.factors[y];
  r.artifact("reconstructed", "kernel rebuilt from the factors", io::to_json(rebuilt));
}

KSGNSDilation dilate_cpmap(Report& r, const CPMapSpec& s, const Tolerances& tol) {
  const auto d = ksgns(s, tol);
  const auto res = dilation_residuals(s, d);
  const double scale = double(s.algebra.dim());
  add_bound(r, "reconstruction", res.reconstruction, limit(tol, scale));
  add_bound(r, "multiplicativity", res.multiplicativity, limit(tol, scale));
  add_bound(r, "adjoint", res.adjoint, limit(tol, scale));
  add_bound(r, "unitality", res.unitality, limit(tol, d.rank));
  add_bound(r, "minimality", res.minimality_defect, tol.rank_rel * std::max(1, d.rank));
  add_bound(r, "J intertwining", res.j_intertwining, limit(tol, scale));
  if (s.symmetry) {
    add_bound(r, "covariance", res.covariance, limit(tol, scale));
    add_bound(r, "twisted commutation", res.ubar_commutation, limit(tol, scale));
    add_bound(r, "twisted cocycle", res.ubar_cocycle, tol.unitary_fro * std::max(1, d.rank));
  }
  r.artifact("rank", "dimension N of the minimal dilation space", d.rank);
  r.artifact("J", "N x fiber map with S_b = J^* pi(b) J", matrix_json(d.j));
  r.artifact("pi", "pi on the matrix units of the algebra", matrices_json(d.pi_units));
  if (d.utilde) r.artifact("intertwiner", "U~ with U~ pi(b) = pi(beta(b)) U~", matrices_json(d.utilde->matrices()));
  if (d.ubar) r.artifact("twisted intertwiner", "pi(u_g^*) U~(g), commuting with pi", matrices_json(d.ubar->matrices()));
  CPMapSpec rebuilt = s;
  for (int x = 0; x < s.algebra.dim(); ++x) rebuilt.values[x] = d.j.adjoint() * d.pi_units[x] * d.j;
  r.artifact("reconstructed", "CP map rebuilt as J^* pi(b) J", io::to_json(rebuilt));
  return d;
}

void dilate_observable(Report& r, const ObservableSpec& m, const Tolerances& tol) {
  const auto n = naimark(m, tol);
  const CMatrix& v = n.isometry;
  add_bound(r, "isometry", (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm(),
            tol.unitary_fro * std::max<double>(1, double(v.cols())));
  double recon = 0;
  ObservableSpec rebuilt = m;
  for (int w = 0; w < m.outcomes(); ++w) {
    rebuilt.effects[w] = v.adjoint() * n.projection(w) * v;
    recon = std::max(recon, (rebuilt.effects[w] - m.effects[w]).norm());
  }
  add_bound(r, "reconstruction", recon, limit(tol, m.dim));
  if (!n.cocycle.empty()) {
    double imprimitivity = 0, unitarity = 0;
    const auto& sym = *m.symmetry;
    for (int g = 0; g < int(n.cocycle.size()); ++g) {
      const CMatrix y = n.cocycle[g].assemble();
      unitarity = std::max(unitarity, unitarity_defect(y));
      for (int w = 0; w < m.outcomes(); ++w)
        imprimitivity = std::max(
            imprimitivity, (y * n.projection(w) * y.adjoint() - n.projection(sym.cosets.act(g, w))).norm());
    }
    add_bound(r, "imprimitivity unitarity", unitarity, tol.unitary_fro * std::max(1, n.total()));
    add_bound(r, "imprimitivity", imprimitivity, limit(tol, n.total()));
  }
  r.artifact("rank", "dimension of the Naimark space", n.total());
  r.artifact("fibers", "rank of each outcome's projection", n.fibers);
  r.artifact("isometry", "V with M_w = V^* P_w V", matrix_json(v));
  r.artifact("reconstructed", "observable rebuilt from the isometry", io::to_json(rebuilt));
}

// ---- extremal ----

void extremal_observable(Report& r, const ObservableSpec& m, const Options& opt) {
  const auto v = observable_verdicts(m, opt.seed, opt.tol);
  r.verdict("verdicts agree", v.agree(), 0);
  r.artifact("extreme", "kernel-level verdict", v.kernel_level);
  Json paths{{"kernel", v.kernel_level}, {"cp", v.cp_level}, {"cp twisted", v.cp_level_twisted}};
  if (v.lambda_level) paths["lambda"] = *v.lambda_level;
  r.artifact("paths", "verdict of every decision route", std::move(paths));

  std::optional<CMatrix> witness;
  std::optional<std::pair<ObservableSpec, ObservableSpec>> split;
  int dim = 0;
  if (m.symmetry) {
    const auto e = observable_extremal(lambda_from_observable(m, opt.seed, opt.tol), opt.tol);
    witness = e.witness;
    split = e.split;
    dim = e.solution_dim;
  } else {
    // Effects are the values of the CP map on the diagonal algebra's units.
    const auto s = observable_as_cpmap(m);
    const auto e = cp_extremal(s, ksgns(s, opt.tol), opt.tol);
    witness = e.witness;
    dim = e.solution_dim;
    if (e.split) {
      ObservableSpec plus = m, minus = m;
      plus.effects = e.split->first.values;
      minus.effects = e.split->second.values;
      split.emplace(std::move(plus), std::move(minus));
    }
  }
  r.artifact("solution_dim", "dimension of the space of admissible perturbations", dim);
  if (witness) r.artifact("witness", "nonzero perturbation certifying a proper convex split", matrix_json(*witness));
  if (split) {
    double avg = 0;
    for (int w = 0; w < m.outcomes(); ++w)
      avg = std::max(avg, (0.5 * (split->first.effects[w] + split->second.effects[w]) - m.effects[w]).norm());
    add_bound(r, "split average", avg, limit(opt.tol, m.dim));
    add_checks(r, validate_observable(split->first, opt.tol), "split+ ");
    add_checks(r, validate_observable(split->second, opt.tol), "split- ");
    r.artifact("split_plus", "first half of M = (M+ + M-)/2", io::to_json(split->first));
    r.artifact("split_minus", "second half of M = (M+ + M-)/2", io::to_json(split->second));
  }
}

void extremal_instrument(Report& r, const InstrumentSpec& g, const Options& opt) {
  const auto e = instrument_extremal(g, opt.tol);
  r.verdict("verdicts agree", e.agree(), 0);
  r.artifact("extreme", "CP-level verdict", e.extreme);
  r.artifact("paths", "verdict of every decision route",
             Json{{"cp", e.extreme}, {"cp twisted", e.extreme_twisted}, {"kraus", e.extreme_kraus}});
  r.artifact("solution_dim", "dimension of the space of admissible perturbations", e.solution_dim);
  if (e.witness) r.artifact("witness", "nonzero perturbation certifying a proper convex split", matrix_json(*e.witness));
  if (e.split) {
    double avg = 0;
    for (int w = 0; w < g.outcomes(); ++w)
      avg = std::max(avg, (0.5 * (e.split->first.choi[w] + e.split->second.choi[w]) - g.choi[w]).norm());
    add_bound(r, "split average", avg, limit(opt.tol, g.k_dim * g.v_dim));
    add_checks(r, validate_instrument(e.split->first, opt.tol), "split+ ");
    add_checks(r, validate_instrument(e.split->second, opt.tol), "split- ");
    r.artifact("split_plus", "first half of the convex split", io::to_json(e.split->first));
    r.artifact("split_minus", "second half of the convex split", io::to_json(e.split->second));
  }
}

void extremal_kernel(Report& r, const io::KernelDoc& doc, const Tolerances& tol) {
  auto z = doc.z;
  if (z.empty())
    for (int x = 0; x < doc.spec.x_size(); ++x) z.emplace_back(x, x);
  const auto e = kernel_extremal(doc.spec, z, kolmogorov_decompose(doc.spec, tol), tol);
  r.artifact("extreme", "kernel-level verdict", e.extreme);
  r.artifact("solution_dim", e.hermitian_search ? "real dimension of Hermitian perturbations"
                                                : "complex dimension of perturbations",
             e.solution_dim);
  if (e.witness) r.artifact("witness", "nonzero perturbation certifying a proper convex split", matrix_json(*e.witness));
  if (e.split) {
    double avg = 0;
    for (std::size_t i = 0; i < doc.spec.blocks.size(); ++i)
      avg = std::max(avg, (0.5 * (e.split->first.blocks[i] + e.split->second.blocks[i]) - doc.spec.blocks[i]).norm());
    add_bound(r, "split average", avg, limit(tol, doc.spec.x_size() * doc.spec.fiber()));
    for (const auto& [name, half] : {std::pair{"split+ ", &e.split->first}, std::pair{"split- ", &e.split->second}}) {
      const auto k = validate_kernel(*half, tol);
      r.verdict(std::string(name) + "valid", k.ok(), std::max(negativity(k.min_eigenvalue), k.covariance_residual));
    }
    r.artifact("split_plus", "first half of the convex split", io::to_json(io::KernelDoc{e.split->first, doc.z}));
    r.artifact("split_minus", "second half of the convex split", io::to_json(io::KernelDoc{e.split->second, doc.z}));
  }
}

void extremal_cpmap(Report& r, const CPMapSpec& s, const Tolerances& tol) {
  const auto e = cp_extremal(s, ksgns(s, tol), tol);
  r.verdict("verdicts agree", e.extreme == e.extreme_ubar, 0);
  r.artifact("extreme", "CP-level verdict", e.extreme);
  r.artifact("paths", "verdict of every decision route", Json{{"cp", e.extreme}, {"cp twisted", e.extreme_ubar}});
  r.artifact("solution_dim", "dimension of the space of admissible perturbations", e.solution_dim);
  if (e.witness) r.artifact("witness", "nonzero perturbation certifying a proper convex split", matrix_json(*e.witness));
  if (e.split) {
    double avg = 0;
    for (int x = 0; x < s.algebra.dim(); ++x)
      avg = std::max(avg, (0.5 * (e.split->first.values[x] + e.split->second.values[x]) - s.values[x]).norm());
    add_bound(r, "split average", avg, limit(tol, s.algebra.dim()));
    for (const auto& [name, half] : {std::pair{"split+ ", &e.split->first}, std::pair{"split- ", &e.split->second}}) {
      const auto c = cp_validate(*half, tol);
      r.verdict(std::string(name) + "valid", c.ok(), std::max(negativity(c.min_eigenvalue), c.covariance_residual));
    }
    r.artifact("split_plus", "first half of the convex split", io::to_json(e.split->first));
    r.artifact("split_minus", "second half of the convex split", io::to_json(e.split->second));
  }
}

// ---- kraus ----

void kraus_cpmap(Report& r, const CPMapSpec& s, const Tolerances& tol) {
  if (s.algebra.num_blocks() != 1) throw DomainError("kraus: the algebra must be a single matrix block");
  const auto d = ksgns(s, tol);
  const auto kraus = kraus_extract(s, d, tol);
  const auto rebuilt = CPMapSpec::from_kraus(s.algebra.blocks().front(), kraus, s.k);
  double recon = 0;
  for (int x = 0; x < s.algebra.dim(); ++x) recon = std::max(recon, (rebuilt.values[x] - s.values[x]).norm());
  add_bound(r, "kraus reconstruction", recon, limit(tol, s.algebra.dim()));
  const auto choi_rank = numerical_rank(s.choi_block(0), tol);
  r.verdict("kraus count equals choi rank", Index(kraus.size()) == choi_rank,
            double(std::abs(Index(kraus.size()) - choi_rank)));
  r.artifact("kraus", "A_l with S_b = sum_l A_l^* b A_l", matrices_json(kraus));
}

void kraus_instrument(Report& r, const InstrumentSpec& g, const Tolerances& tol) {
  Json per_outcome = Json::array();
  std::vector<std::vector<CMatrix>> all;
  for (int w = 0; w < g.outcomes(); ++w) {
    all.push_back(outcome_kraus(g, w, tol));
    per_outcome.push_back(matrices_json(all.back()));
  }
  const auto rebuilt = InstrumentSpec::from_kraus(g.k_dim, all);
  double recon = 0;
  for (int w = 0; w < g.outcomes(); ++w) recon = std::max(recon, (rebuilt.choi[w] - g.choi[w]).norm());
  add_bound(r, "kraus reconstruction", recon, limit(tol, g.k_dim * g.v_dim));
  r.artifact("kraus", "per outcome, C_j with Gamma_w(b) = sum_j C_j^* b C_j", std::move(per_outcome));
  if (!g.symmetry) return;
  const auto& sym = *g.symmetry;
  const auto b = B_from_instrument(g, tol);
  std::vector<int> section;
  for (int w = 0; w < sym.cosets.num_cosets(); ++w) section.push_back(sym.cosets.section(w));
  const auto res = structure_residuals(b, sym, section);
  add_bound(r, "subgroup invariance", res.h_invariance, limit(tol, g.k_dim * g.v_dim));
  add_bound(r, "normalization", res.normalization, limit(tol, g.v_dim));
  const auto again = instrument_from_B(b, sym, tol);
  double round = 0;
  for (int w = 0; w < g.outcomes(); ++w) round = std::max(round, (again.choi[w] - g.choi[w]).norm());
  add_bound(r, "covariant round trip", round, limit(tol, g.k_dim * g.v_dim));
  r.artifact("covariant_kraus", "B_j at the base point; the instrument is u_s B_j U(s)^* translated over cosets",
             matrices_json(b.kraus));
}

}  // namespace

void Report::verdict(const std::string& name, bool ok, double residual, std::string detail) {
  verdicts_.insert_or_assign(name, Verdict{ok, residual, std::move(detail)});
}

void Report::artifact(const std::string& name, std::string note, Json value) {
  artifacts_.insert_or_assign(name, Artifact{std::move(note), std::move(value)});
}

bool Report::ok() const {
  return std::all_of(verdicts_.begin(), verdicts_.end(), [](const auto& v) { return v.second.ok; });
}

std::optional<std::string> Report::first_failure() const {
  for (const auto& [name, v] : verdicts_)
    if (!v.ok) return name + ": residual " + residual_json(v.residual).dump() + (v.detail.empty() ? "" : " (" + v.detail + ")");
  return std::nullopt;
}

Json Report::to_json(const Tolerances& tol, std::optional<double> wall_time_s) const {
  Json verdicts = Json::object(), artifacts = Json::object();
  for (const auto& [name, v] : verdicts_) {
    Json entry{{"ok", v.ok}, {"residual", residual_json(v.residual)}};
    if (!v.ok && !v.detail.empty()) entry["detail"] = v.detail;
    verdicts[name] = std::move(entry);
  }
  for (const auto& [name, a] : artifacts_) artifacts[name] = {{"note", a.note}, {"value", a.value}};
  Json j{{"command", command_},
         {"kind", kind_},
         {"ok", ok()},
         {"verdicts", std::move(verdicts)},
         {"artifacts", std::move(artifacts)},
         {"tolerances",
          {{"psd_eig", tol.psd_eig}, {"rank_rel", tol.rank_rel}, {"unitary_fro", tol.unitary_fro},
           {"recon_fro", tol.recon_fro}}}};
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  return j;
}

Report cmd_validate(const io::Document& doc, const Options& opt) {
  Report r("validate", io::kind_of(doc));
  const auto& tol = opt.tol;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, io::GroupDoc>) {
          const auto irreps = irreps_of(d.group, opt.seed, tol);
          const int total = std::accumulate(irreps.begin(), irreps.end(), 0,
                                            [](int acc, const MultiplierRep& u) { return acc + u.dim() * u.dim(); });
          r.verdict("irrep completeness", total == d.group.order(), double(std::abs(total - d.group.order())));
          r.artifact("order", "number of group elements", d.group.order());
          std::vector<int> dims;
          for (const auto& u : irreps) dims.push_back(u.dim());
          r.artifact("irrep_dims", "dimensions of the irreducible representations", dims);
        } else if constexpr (std::is_same_v<T, io::KernelDoc>) {
          validate_kernel_doc(r, d, tol);
        } else if constexpr (std::is_same_v<T, CPMapSpec>) {
          validate_cpmap(r, d, tol);
        } else if constexpr (std::is_same_v<T, ObservableSpec>) {
          if (d.symmetry) r.verdict(d.symmetry->rep.validate(tol));
          add_checks(r, validate_observable(d, tol));
        } else if constexpr (std::is_same_v<T, InstrumentSpec>) {
          if (d.symmetry) {
            r.verdict(d.symmetry->rep.validate(tol));
            auto out = d.symmetry->out_rep.validate(tol);
            out.name = "output " + out.name;
            r.verdict(out);
          }
          add_checks(r, validate_instrument(d, tol));
        } else if constexpr (std::is_same_v<T, io::PhaseSpaceDoc>) {
          const auto g = d.instrument(tol);
          add_checks(r, validate_instrument(g, tol));
          const auto s = sq_structure(g, tol);
          add_bound(r, "seed trace", s.trace_residual, limit(tol));
          add_bound(r, "seed invariance", s.invariance_residual, limit(tol, g.v_dim));
          add_bound(r, "effects from seed", s.effect_residual, limit(tol, g.v_dim));
          r.artifact("d", "square-integrability constant", s.d);
          r.artifact("seed", "S = d sum_j B_j^* B_j", matrix_json(s.seed));
        } else {
          validate_state(r, d.rho, tol);
        }
      },
      doc);
  return r;
}

Report cmd_dilate(const io::Document& doc, const Options& opt) {
  Report r("dilate", io::kind_of(doc));
  if (const auto* k = std::get_if<io::KernelDoc>(&doc))
    dilate_kernel(r, *k, opt.tol);
  else if (const auto* s = std::get_if<CPMapSpec>(&doc))
    dilate_cpmap(r, *s, opt.tol);
  else if (const auto* m = std::get_if<ObservableSpec>(&doc))
    dilate_observable(r, *m, opt.tol);
  else
    dilate_cpmap(r, instrument_as_cpmap(as_instrument(doc, opt, "dilate")), opt.tol);
  return r;
}

Report cmd_extremal(const io::Document& doc, const Options& opt) {
  Report r("extremal", io::kind_of(doc));
  if (const auto* k = std::get_if<io::KernelDoc>(&doc))
    extremal_kernel(r, *k, opt.tol);
  else if (const auto* s = std::get_if<CPMapSpec>(&doc))
    extremal_cpmap(r, *s, opt.tol);
  else if (const auto* m = std::get_if<ObservableSpec>(&doc))
    extremal_observable(r, *m, opt);
  else
    extremal_instrument(r, as_instrument(doc, opt, "extremal"), opt);
  return r;
}

Report cmd_kraus(const io::Document& doc, const Options& opt) {
  Report r("kraus", io::kind_of(doc));
  if (const auto* s = std::get_if<CPMapSpec>(&doc))
    kraus_cpmap(r, *s, opt.tol);
  else
    kraus_instrument(r, as_instrument(doc, opt, "kraus"), opt.tol);
  return r;
}

InstrumentSpec cmd_phase_space(const io::PhaseSpaceDoc& seed, const Options& opt) { return seed.instrument(opt.tol); }

std::vector<Json> cmd_sample(const io::Document& doc, const CMatrix& state, int n, const Options& opt) {
  if (n < 0) throw DomainError("sample: the number of draws must be nonnegative");
  const auto g = as_instrument(doc, opt, "sample");
  const auto dist = outcome_distribution(g, state, opt.tol);
  std::vector<Json> records;
  records.reserve(std::size_t(n));
  const auto outcomes = sample_outcomes(dist, n, opt.seed);
  for (int i = 0; i < n; ++i) {
    const int w = outcomes[i];
    records.push_back(Json{{"draw", i},
                           {"outcome", w},
                           {"probability", dist.probabilities[w]},
                           {"post_state", matrix_json(dist.post_states[w])}});
  }
  return records;
}

}  // namespace covkit::cli
