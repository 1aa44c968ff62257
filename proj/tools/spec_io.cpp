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

#include "spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace covkit::io {
namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& object(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : j.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      schema_error(where, "unknown field \"" + key + "\"");
  return j;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

Complex complex_value(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  schema_error(where, "expected a complex number [re, im]");
}

std::vector<int> int_list(const Json& j, const std::string& where) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(integer(j[i], child(where, i)));
  return out;
}

std::vector<CMatrix> matrix_list(const Json& j, const std::string& where) {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(parse_matrix(j[i], child(where, i)));
  return out;
}

Json int_table(const std::vector<int>& flat, int width) {
  Json rows = Json::array();
  for (std::size_t r = 0; r * width < flat.size(); ++r)
    rows.push_back(std::vector<int>(flat.begin() + r * width, flat.begin() + (r + 1) * width));
  return rows;
}

// ---- groups, representations, actions ----

FiniteGroup parse_group(const Json& j, const std::string& where) {
  object(j, where, {"type", "n", "d", "table", "factors"});
  const std::string type = text(field(j, "type", where), child(where, "type"));
  const auto param = [&](const char* key) { return integer(field(j, key, where), child(where, key)); };
  if (type == "trivial") return FiniteGroup();
  if (type == "cyclic") return FiniteGroup::cyclic(param("n"));
  if (type == "dihedral") return FiniteGroup::dihedral(param("n"));
  if (type == "symmetric") return FiniteGroup::symmetric(param("n"));
  if (type == "heisenberg") return FiniteGroup::heisenberg(param("d"));
  if (type == "product") {
    const auto& f = array(field(j, "factors", where), child(where, "factors"));
    if (f.size() != 2) schema_error(child(where, "factors"), "expected two groups");
    return FiniteGroup::direct_product(parse_group(f[0], child(where, "factors/0")),
                                       parse_group(f[1], child(where, "factors/1")));
  }
  if (type == "table") {
    const std::string tw = child(where, "table");
    const auto& rows = array(field(j, "table", where), tw);
    std::vector<int> flat;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto row = int_list(rows[r], child(tw, r));
      if (row.size() != rows.size()) schema_error(child(tw, r), "multiplication table must be square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return FiniteGroup(int(rows.size()), std::move(flat), "table");
  }
  schema_error(child(where, "type"), "unknown group type \"" + type + "\"");
}

Json group_json(const FiniteGroup& g) {
  std::istringstream name(g.name());
  std::string type;
  int param = 0;
  name >> type >> param;
  const auto matches = [&](const FiniteGroup& candidate) { return candidate == g; };
  if (g.order() == 1) return {{"type", "trivial"}};
  if (param > 0) {
    if (type == "cyclic" && matches(FiniteGroup::cyclic(param))) return {{"type", type}, {"n", param}};
    if (type == "dihedral" && matches(FiniteGroup::dihedral(param))) return {{"type", type}, {"n", param}};
    if (type == "symmetric" && param <= 4 && matches(FiniteGroup::symmetric(param)))
      return {{"type", type}, {"n", param}};
    if (type == "heisenberg" && matches(FiniteGroup::heisenberg(param))) return {{"type", type}, {"d", param}};
  }
  return {{"type", "table"}, {"table", int_table(g.table(), g.order())}};
}

MultiplierRep parse_rep(const Json& j, const FiniteGroup& g, const std::string& where) {
  object(j, where, {"type", "dim", "matrices"});
  const std::string type = text(field(j, "type", where), child(where, "type"));
  if (type == "trivial") return MultiplierRep::trivial(g, integer(field(j, "dim", where), child(where, "dim")));
  if (type == "regular") return regular_rep(g);
  if (type == "heisenberg") {
    int d = 1;
    while (d * d < g.order()) ++d;
    const auto h = heisenberg_rep(d);
    if (!(h.group == g)) schema_error(child(where, "type"), "the heisenberg representation needs the heisenberg group");
    return h.rep;
  }
  if (type == "matrices") {
    auto ms = matrix_list(field(j, "matrices", where), child(where, "matrices"));
    if (int(ms.size()) != g.order()) schema_error(child(where, "matrices"), "expected one matrix per group element");
    return MultiplierRep::from_matrices(g, std::move(ms));
  }
  schema_error(child(where, "type"), "unknown representation type \"" + type + "\"");
}

Json rep_json(const MultiplierRep& r) { return {{"type", "matrices"}, {"matrices", matrices_json(r.matrices())}}; }

GroupAction parse_action(const Json& j, const FiniteGroup& g, const std::string& where) {
  object(j, where, {"type", "size", "subgroup", "table"});
  const std::string type = text(field(j, "type", where), child(where, "type"));
  if (type == "regular") return GroupAction::regular(g);
  if (type == "trivial") return GroupAction::trivial(g, integer(field(j, "size", where), child(where, "size")));
  if (type == "cosets")
    return SubgroupData(g, int_list(field(j, "subgroup", where), child(where, "subgroup"))).action();
  if (type == "table") {
    const int size = integer(field(j, "size", where), child(where, "size"));
    const std::string tw = child(where, "table");
    const auto& rows = array(field(j, "table", where), tw);
    if (int(rows.size()) != g.order()) schema_error(tw, "expected one row per group element");
    std::vector<int> flat;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto row = int_list(rows[r], child(tw, r));
      if (int(row.size()) != size) schema_error(child(tw, r), "row length must equal the set size");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return GroupAction(g, size, std::move(flat));
  }
  schema_error(child(where, "type"), "unknown action type \"" + type + "\"");
}

Json action_json(const GroupAction& a) {
  return {{"type", "table"}, {"size", a.set_size()}, {"table", int_table(a.table(), a.set_size())}};
}

// ---- kinds ----

KernelDoc parse_kernel(const Json& j) {
  object(j, "", {"kind", "version", "group", "action", "rep", "alpha", "sigma", "k", "blocks", "z"});
  const auto& bj = array(field(j, "blocks", ""), "/blocks");
  const int nx = int(bj.size());
  if (nx == 0) schema_error("/blocks", "a kernel needs at least one point");
  std::vector<CMatrix> blocks;
  for (int x = 0; x < nx; ++x) {
    const auto& row = array(bj[x], child("/blocks", x));
    if (int(row.size()) != nx) schema_error(child("/blocks", x), "expected one block per point");
    for (int y = 0; y < nx; ++y) blocks.push_back(parse_matrix(row[y], child(child("/blocks", x), y)));
  }
  const FiniteGroup g = optional_field(j, "group") ? parse_group(j["group"], "/group") : FiniteGroup();
  GroupAction action = optional_field(j, "action") ? parse_action(j["action"], g, "/action")
                                                   : GroupAction::trivial(g, nx);
  MultiplierRep rep = optional_field(j, "rep") ? parse_rep(j["rep"], g, "/rep")
                                               : MultiplierRep::trivial(g, int(blocks.front().rows()));
  const int k = optional_field(j, "k") ? integer(j["k"], "/k") : 1;
  KernelDoc doc{CovariantKernelSpec::untwisted(std::move(action), std::move(rep), std::move(blocks), k), {}};
  auto& s = doc.spec;
  if (s.action.set_size() != nx) schema_error("/action", "the action must move exactly the kernel's points");
  if (const Json* a = optional_field(j, "alpha")) {
    const auto& rows = array(*a, "/alpha");
    if (int(rows.size()) != g.order()) schema_error("/alpha", "expected one row per group element");
    s.alpha.clear();
    for (int r = 0; r < g.order(); ++r) {
      const auto& row = array(rows[r], child("/alpha", r));
      if (int(row.size()) != nx) schema_error(child("/alpha", r), "expected one value per point");
      for (int x = 0; x < nx; ++x) s.alpha.push_back(complex_value(row[x], child(child("/alpha", r), x)));
    }
  }
  if (const Json* sj = optional_field(j, "sigma")) {
    const CMatrix m = parse_matrix(*sj, "/sigma");
    if (m.rows() != g.order() || m.cols() != g.order()) schema_error("/sigma", "expected an order x order table");
    std::vector<Complex> v;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) v.push_back(m(a, b));
    s.sigma = TwoCocycle(g, std::move(v));
  } else if (optional_field(j, "alpha")) {
    // σ(g,h) = α(gh,x) / (α(h,x) α(g,hx)) read at the first point.
    std::vector<Complex> v;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        v.push_back(s.alpha_at(g.mul(a, b), 0) / (s.alpha_at(b, 0) * s.alpha_at(a, s.action.act(b, 0))));
    s.sigma = TwoCocycle(g, std::move(v));
  }
  if (const Json* z = optional_field(j, "z"))
    for (std::size_t i = 0; i < array(*z, "/z").size(); ++i) {
      const auto pair = int_list((*z)[i], child("/z", i));
      if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0 || pair[0] >= nx || pair[1] >= nx)
        schema_error(child("/z", i), "expected a pair of point indices");
      doc.z.emplace_back(pair[0], pair[1]);
    }
  return doc;
}

Json kernel_json(const KernelDoc& doc) {
  const auto& s = doc.spec;
  const int nx = s.x_size(), ng = s.action.group().order();
  Json blocks = Json::array(), alpha = Json::array();
  for (int x = 0; x < nx; ++x) {
    Json row = Json::array();
    for (int y = 0; y < nx; ++y) row.push_back(matrix_json(s.block(x, y)));
    blocks.push_back(std::move(row));
  }
  CMatrix sigma(ng, ng);
  for (int a = 0; a < ng; ++a) {
    Json row = Json::array();
    for (int x = 0; x < nx; ++x) row.push_back(complex_json(s.alpha_at(a, x)));
    alpha.push_back(std::move(row));
    for (int b = 0; b < ng; ++b) sigma(a, b) = s.sigma(a, b);
  }
  Json j{{"kind", "kernel"},          {"version", format_version}, {"group", group_json(s.action.group())},
         {"action", action_json(s.action)}, {"rep", rep_json(s.rep)},   {"alpha", std::move(alpha)},
         {"sigma", matrix_json(sigma)}, {"k", s.k},                  {"blocks", std::move(blocks)}};
  if (!doc.z.empty()) {
    Json z = Json::array();
    for (const auto& [x, y] : doc.z) z.push_back({x, y});
    j["z"] = std::move(z);
  }
  return j;
}

BlockAction parse_block_action(const Json& j, const FiniteCStarAlgebra& alg, const FiniteGroup& g,
                               const std::string& where) {
  object(j, where, {"type", "rep", "subgroup", "unitaries"});
  const std::string type = text(field(j, "type", where), child(where, "type"));
  if (type == "inner") return BlockAction::inner(alg, parse_rep(field(j, "rep", where), g, child(where, "rep")));
  if (type == "translation") {
    const SubgroupData cosets(g, int_list(field(j, "subgroup", where), child(where, "subgroup")));
    auto beta = BlockAction::translation(cosets.action(), parse_rep(field(j, "rep", where), g, child(where, "rep")));
    if (!(beta.algebra() == alg)) throw DimensionError("cpmap: the translation action lives on a different algebra");
    return beta;
  }
  if (type == "unitaries") {
    auto us = matrix_list(field(j, "unitaries", where), child(where, "unitaries"));
    if (int(us.size()) != g.order()) schema_error(child(where, "unitaries"), "expected one unitary per group element");
    return BlockAction(alg, g, std::move(us));
  }
  schema_error(child(where, "type"), "unknown action type \"" + type + "\"");
}

CPMapSpec parse_cpmap(const Json& j) {
  object(j, "", {"kind", "version", "algebra", "fiber", "k", "values", "kraus", "symmetry"});
  const FiniteCStarAlgebra alg(int_list(field(j, "algebra", ""), "/algebra"));
  const int k = optional_field(j, "k") ? integer(j["k"], "/k") : 1;
  CPMapSpec s;
  if (optional_field(j, "values") && optional_field(j, "kraus")) schema_error("", "give either values or kraus");
  if (const Json* v = optional_field(j, "values")) {
    s.algebra = alg;
    s.k = k;
    s.fiber = integer(field(j, "fiber", ""), "/fiber");
    s.values = matrix_list(*v, "/values");
    if (int(s.values.size()) != alg.dim()) schema_error("/values", "expected one value per matrix unit");
  } else if (const Json* kr = optional_field(j, "kraus")) {
    if (alg.num_blocks() != 1) schema_error("/kraus", "Kraus input needs a single-block algebra");
    s = CPMapSpec::from_kraus(alg.blocks().front(), matrix_list(*kr, "/kraus"), k);
    if (const Json* f = optional_field(j, "fiber"); f && integer(*f, "/fiber") != s.fiber)
      schema_error("/fiber", "does not match the Kraus operators");
  } else {
    schema_error("", "missing field \"values\" or \"kraus\"");
  }
  if (const Json* sym = optional_field(j, "symmetry")) {
    object(*sym, "/symmetry", {"group", "action", "rep"});
    const FiniteGroup g = parse_group(field(*sym, "group", "/symmetry"), "/symmetry/group");
    auto beta = parse_block_action(field(*sym, "action", "/symmetry"), alg, g, "/symmetry/action");
    s.symmetry = CPSymmetry{std::move(beta), parse_rep(field(*sym, "rep", "/symmetry"), g, "/symmetry/rep")};
  }
  return s;
}

Json cpmap_json(const CPMapSpec& s) {
  Json j{{"kind", "cpmap"},   {"version", format_version}, {"algebra", s.algebra.blocks()},
         {"fiber", s.fiber},  {"k", s.k},                  {"values", matrices_json(s.values)}};
  if (s.symmetry) {
    std::vector<CMatrix> us;
    for (int g = 0; g < s.symmetry->beta.group().order(); ++g) us.push_back(s.symmetry->beta.unitary(g));
    j["symmetry"] = {{"group", group_json(s.symmetry->beta.group())},
                     {"action", {{"type", "unitaries"}, {"unitaries", matrices_json(us)}}},
                     {"rep", rep_json(s.symmetry->rep)}};
  }
  return j;
}

std::pair<FiniteGroup, SubgroupData> parse_cosets(const Json& sym, const std::string& where) {
  FiniteGroup g = parse_group(field(sym, "group", where), child(where, "group"));
  const Json* sub = optional_field(sym, "subgroup");
  SubgroupData cosets(g, sub ? int_list(*sub, child(where, "subgroup")) : std::vector<int>{g.identity()});
  return {std::move(g), std::move(cosets)};
}

Json cosets_json(const SubgroupData& c) { return {{"group", group_json(c.parent())}, {"subgroup", c.members()}}; }

ObservableSpec parse_observable(const Json& j) {
  object(j, "", {"kind", "version", "dim", "effects", "symmetry"});
  ObservableSpec m;
  m.dim = integer(field(j, "dim", ""), "/dim");
  m.effects = matrix_list(field(j, "effects", ""), "/effects");
  if (const Json* sym = optional_field(j, "symmetry")) {
    object(*sym, "/symmetry", {"group", "subgroup", "rep"});
    auto [g, cosets] = parse_cosets(*sym, "/symmetry");
    m.symmetry = OutcomeSymmetry{std::move(cosets), parse_rep(field(*sym, "rep", "/symmetry"), g, "/symmetry/rep")};
  }
  return m;
}

Json observable_json(const ObservableSpec& m) {
  Json j{{"kind", "observable"}, {"version", format_version}, {"dim", m.dim}, {"effects", matrices_json(m.effects)}};
  if (m.symmetry) {
    Json sym = cosets_json(m.symmetry->cosets);
    sym["rep"] = rep_json(m.symmetry->rep);
    j["symmetry"] = std::move(sym);
  }
  return j;
}

InstrumentSpec parse_instrument(const Json& j) {
  object(j, "", {"kind", "version", "k_dim", "v_dim", "choi", "kraus", "covariant_kraus", "symmetry"});
  const int k = integer(field(j, "k_dim", ""), "/k_dim");
  const int v = integer(field(j, "v_dim", ""), "/v_dim");
  std::optional<InstrumentSymmetry> sym;
  if (const Json* sj = optional_field(j, "symmetry")) {
    object(*sj, "/symmetry", {"group", "subgroup", "rep", "out_rep"});
    auto [g, cosets] = parse_cosets(*sj, "/symmetry");
    auto rep = parse_rep(field(*sj, "rep", "/symmetry"), g, "/symmetry/rep");
    auto out = parse_rep(field(*sj, "out_rep", "/symmetry"), g, "/symmetry/out_rep");
    sym = InstrumentSymmetry{std::move(cosets), std::move(rep), std::move(out)};
  }
  const int given = int(bool(optional_field(j, "choi"))) + int(bool(optional_field(j, "kraus"))) +
                    int(bool(optional_field(j, "covariant_kraus")));
  if (given != 1) schema_error("", "give exactly one of choi, kraus, covariant_kraus");
  InstrumentSpec g;
  if (const Json* c = optional_field(j, "choi")) {
    g.k_dim = k;
    g.v_dim = v;
    g.choi = matrix_list(*c, "/choi");
    g.symmetry = sym;
  } else if (const Json* kr = optional_field(j, "kraus")) {
    std::vector<std::vector<CMatrix>> kraus;
    for (std::size_t w = 0; w < array(*kr, "/kraus").size(); ++w)
      kraus.push_back(matrix_list((*kr)[w], child("/kraus", w)));
    g = InstrumentSpec::from_kraus(k, kraus);
    if (g.v_dim != v) schema_error("/v_dim", "does not match the Kraus operators");
    g.symmetry = sym;
  } else {
    if (!sym) schema_error("/covariant_kraus", "a covariant Kraus family needs a symmetry");
    g = instrument_from_B({matrix_list(j["covariant_kraus"], "/covariant_kraus")}, *sym);
    if (g.k_dim != k || g.v_dim != v) schema_error("", "k_dim and v_dim do not match the symmetry");
  }
  return g;
}

Json instrument_json(const InstrumentSpec& g) {
  Json j{{"kind", "instrument"}, {"version", format_version}, {"k_dim", g.k_dim},
         {"v_dim", g.v_dim},     {"choi", matrices_json(g.choi)}};
  if (g.symmetry) {
    Json sym = cosets_json(g.symmetry->cosets);
    sym["rep"] = rep_json(g.symmetry->rep);
    sym["out_rep"] = rep_json(g.symmetry->out_rep);
    j["symmetry"] = std::move(sym);
  }
  return j;
}

PhaseSpaceDoc parse_phase_space(const Json& j) {
  object(j, "", {"kind", "version", "d", "seed", "kraus"});
  PhaseSpaceDoc p;
  p.d = integer(field(j, "d", ""), "/d");
  if (bool(optional_field(j, "seed")) == bool(optional_field(j, "kraus")))
    schema_error("", "give exactly one of seed, kraus");
  if (const Json* s = optional_field(j, "seed"))
    p.seed = parse_matrix(*s, "/seed");
  else
    p.kraus = matrix_list(j["kraus"], "/kraus");
  return p;
}

Json phase_space_json(const PhaseSpaceDoc& p) {
  Json j{{"kind", "phase_space"}, {"version", format_version}, {"d", p.d}};
  if (p.seed)
    j["seed"] = matrix_json(*p.seed);
  else
    j["kraus"] = matrices_json(p.kraus);
  return j;
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

InstrumentSpec PhaseSpaceDoc::instrument(const Tolerances& tol) const {
  return phase_space(d, seed ? spectral_kraus(*seed, d, tol) : kraus, tol);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrices_json(const std::vector<CMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

CMatrix parse_matrix(const Json& j, const std::string& where) {
  const auto& rows = array(j, where);
  if (rows.empty()) schema_error(where, "expected a nonempty matrix");
  const std::size_t cols = array(rows[0], child(where, 0)).size();
  CMatrix m(Index(rows.size()), Index(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = array(rows[r], child(where, r));
    if (row.size() != cols) schema_error(child(where, r), "rows of a matrix must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m(Index(r), Index(c)) = complex_value(row[c], child(child(where, r), c));
  }
  return m;
}

std::string kind_of(const Document& doc) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GroupDoc>) return "group";
        if constexpr (std::is_same_v<T, KernelDoc>) return "kernel";
        if constexpr (std::is_same_v<T, CPMapSpec>) return "cpmap";
        if constexpr (std::is_same_v<T, ObservableSpec>) return "observable";
        if constexpr (std::is_same_v<T, InstrumentSpec>) return "instrument";
        if constexpr (std::is_same_v<T, PhaseSpaceDoc>) return "phase_space";
        if constexpr (std::is_same_v<T, StateDoc>) return "state";
      },
      doc);
}

Document parse_document(const std::string& source) {
  Json j;
  try {
    j = Json::parse(source);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_and_column(source, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, col);
  }
  if (!j.is_object()) schema_error("", "expected an object");
  const std::string kind = text(field(j, "kind", ""), "/kind");
  const std::string version = text(field(j, "version", ""), "/version");
  if (version != format_version) schema_error("/version", "unsupported version \"" + version + "\"");
  if (kind == "group") {
    object(j, "", {"kind", "version", "group"});
    return GroupDoc{parse_group(field(j, "group", ""), "/group")};
  }
  if (kind == "kernel") return parse_kernel(j);
  if (kind == "cpmap") return parse_cpmap(j);
  if (kind == "observable") return parse_observable(j);
  if (kind == "instrument") return parse_instrument(j);
  if (kind == "phase_space") return parse_phase_space(j);
  if (kind == "state") {
    object(j, "", {"kind", "version", "matrix"});
    return StateDoc{parse_matrix(field(j, "matrix", ""), "/matrix")};
  }
  schema_error("/kind", "unknown kind \"" + kind + "\"");
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json to_json(const Document& doc) {
  return std::visit(
      [](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, GroupDoc>)
          return {{"kind", "group"}, {"version", format_version}, {"group", group_json(d.group)}};
        if constexpr (std::is_same_v<T, KernelDoc>) return kernel_json(d);
        if constexpr (std::is_same_v<T, CPMapSpec>) return cpmap_json(d);
        if constexpr (std::is_same_v<T, ObservableSpec>) return observable_json(d);
        if constexpr (std::is_same_v<T, InstrumentSpec>) return instrument_json(d);
        if constexpr (std::is_same_v<T, PhaseSpaceDoc>) return phase_space_json(d);
        if constexpr (std::is_same_v<T, StateDoc>)
          return {{"kind", "state"}, {"version", format_version}, {"matrix", matrix_json(d.rho)}};
      },
      doc);
}

std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

}  // namespace covkit::io
