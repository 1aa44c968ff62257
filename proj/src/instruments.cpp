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

#include "covkit/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace covkit {
namespace {

double lim(const Tolerances& tol, double scale) { return tol.recon_fro * std::max(1.0, scale); }

CMatrix unit_matrix(int n, int a, int b) {
  CMatrix e = CMatrix::Zero(n, n);
  e(a, b) = 1;
  return e;
}

// ‖V†V − I‖_F, also for tall V.
double isometry_defect(const CMatrix& v) { return (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).norm(); }

int base_point(const SubgroupData& cosets) { return cosets.coset_of(cosets.parent().identity()); }

void require_symmetry_shapes(const SubgroupData& cosets, const MultiplierRep& rep, int outcomes, int dim,
                             const char* where) {
  if (!(rep.group() == cosets.parent())) throw DimensionError(std::string(where) + ": representation is not of G");
  if (cosets.num_cosets() != outcomes)
    throw DimensionError(std::string(where) + ": number of outcomes differs from |G/H|");
  if (rep.dim() != dim) throw DimensionError(std::string(where) + ": representation has the wrong dimension");
}

std::string at(int g, int omega) { return " at g=" + std::to_string(g) + ", omega=" + std::to_string(omega); }

// Γ(b) = Σ A_j† b A_j from one Choi matrix.
std::vector<CMatrix> kraus_from_choi(const CMatrix& choi, int k, int v, const Tolerances& tol) {
  const auto f = psd_factor(choi, tol);
  std::vector<CMatrix> out;
  for (Index j = 0; j < f.rank; ++j) {
    CMatrix a(k, v);
    for (int r = 0; r < k; ++r) a.row(r) = f.factor.row(j).segment(Index(r) * v, v);
    out.push_back(std::move(a));
  }
  return out;
}

CMatrix choi_from_kraus(const std::vector<CMatrix>& kraus, int k, int v) {
  CMatrix c = CMatrix::Zero(Index(k) * v, Index(k) * v);
  for (const auto& a : kraus) {
    CVector row(Index(k) * v);
    for (int r = 0; r < k; ++r) row.segment(Index(r) * v, v) = a.row(r).transpose();
    c += row.conjugate() * row.transpose();
  }
  return c;
}

double max_choi_difference(const InstrumentSpec& a, const InstrumentSpec& b) {
  double d = 0;
  for (int w = 0; w < a.outcomes(); ++w) d = std::max(d, (a.choi[w] - b.choi[w]).norm());
  return d;
}

}  // namespace

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
  return {};
}

void ValidationReport::add(std::string name, bool ok, double residual, std::string detail) {
  checks.push_back({std::move(name), ok, residual, std::move(detail)});
}

CMatrix InstrumentSpec::apply(int omega, const CMatrix& b) const {
  if (b.rows() != k_dim || b.cols() != k_dim) throw DimensionError("instrument: argument has the wrong size");
  const CMatrix& c = choi.at(omega);
  CMatrix out = CMatrix::Zero(v_dim, v_dim);
  for (int a = 0; a < k_dim; ++a)
    for (int e = 0; e < k_dim; ++e)
      if (b(a, e) != Complex(0)) out += b(a, e) * c.block(Index(a) * v_dim, Index(e) * v_dim, v_dim, v_dim);
  return out;
}

CMatrix InstrumentSpec::predual(int omega, const CMatrix& rho) const {
  if (rho.rows() != v_dim || rho.cols() != v_dim) throw DimensionError("instrument: state has the wrong size");
  const CMatrix& c = choi.at(omega);
  CMatrix out(k_dim, k_dim);
  for (int a = 0; a < k_dim; ++a)
    for (int e = 0; e < k_dim; ++e)
      out(e, a) = (rho * c.block(Index(a) * v_dim, Index(e) * v_dim, v_dim, v_dim)).trace();
  return out;
}

InstrumentSpec InstrumentSpec::from_kraus(int k_dim, const std::vector<std::vector<CMatrix>>& kraus) {
  if (kraus.empty()) throw DimensionError("instrument from Kraus: no outcomes");
  InstrumentSpec s;
  s.k_dim = k_dim;
  s.v_dim = -1;
  for (const auto& family : kraus) {
    for (const auto& a : family) {
      if (s.v_dim < 0) s.v_dim = int(a.cols());
      if (a.rows() != k_dim || a.cols() != s.v_dim)
        throw DimensionError("instrument from Kraus: Kraus operators differ in shape");
    }
  }
  if (s.v_dim < 0) throw DimensionError("instrument from Kraus: every outcome is empty");
  for (const auto& family : kraus) s.choi.push_back(choi_from_kraus(family, k_dim, s.v_dim));
  return s;
}

std::vector<CMatrix> outcome_kraus(const InstrumentSpec& g, int omega, const Tolerances& tol) {
  return kraus_from_choi(g.choi.at(omega), g.k_dim, g.v_dim, tol);
}

ValidationReport validate_observable(const ObservableSpec& m, const Tolerances& tol) {
  tol.validate();
  ValidationReport r;
  bool shapes = m.dim >= 1 && !m.effects.empty();
  for (const auto& e : m.effects) shapes = shapes && e.rows() == m.dim && e.cols() == m.dim;
  r.add("shapes", shapes, 0, shapes ? "" : "effects must be dim x dim and nonempty");
  if (!shapes) return r;

  CMatrix total = CMatrix::Zero(m.dim, m.dim);
  double worst = 0;
  int worst_at = -1;
  for (int w = 0; w < m.outcomes(); ++w) {
    total += m.effects[w];
    if (!psd_check(m.effects[w], tol) && worst_at < 0) {
      worst_at = w;
      worst = min_eigenvalue(hermitian_part(m.effects[w]));
    }
  }
  r.add("positive", worst_at < 0, -worst, worst_at < 0 ? "" : "effect " + std::to_string(worst_at) + " is not positive");
  const double norm_res = (total - CMatrix::Identity(m.dim, m.dim)).norm();
  r.add("normalized", norm_res <= lim(tol, m.dim), norm_res, "effects do not sum to the identity");

  if (m.symmetry) {
    const auto& s = *m.symmetry;
    try {
      require_symmetry_shapes(s.cosets, s.rep, m.outcomes(), m.dim, "observable");
    } catch (const DimensionError& e) {
      r.add("symmetry shapes", false, 0, e.what());
      return r;
    }
    double res = 0;
    std::string where;
    for (int g = 0; g < s.rep.group().order(); ++g)
      for (int w = 0; w < m.outcomes(); ++w) {
        const double d =
            (s.rep(g) * m.effects[w] * s.rep(g).adjoint() - m.effects[s.cosets.act(g, w)]).norm();
        if (d > res) {
          res = d;
          where = at(g, w);
        }
      }
    const bool ok = res <= lim(tol, m.dim);
    r.add("covariant", ok, res, ok ? "" : "U(g) M_w U(g)^* differs from M_gw" + where);
  }
  return r;
}

ValidationReport validate_instrument(const InstrumentSpec& g, const Tolerances& tol) {
  tol.validate();
  ValidationReport r;
  const Index n = Index(g.k_dim) * g.v_dim;
  bool shapes = g.k_dim >= 1 && g.v_dim >= 1 && !g.choi.empty();
  for (const auto& c : g.choi) shapes = shapes && c.rows() == n && c.cols() == n;
  r.add("shapes", shapes, 0, shapes ? "" : "each Choi matrix must be (k*v) square");
  if (!shapes) return r;

  int bad = -1;
  double worst = 0;
  for (int w = 0; w < g.outcomes() && bad < 0; ++w)
    if (!psd_check(g.choi[w], tol)) {
      bad = w;
      worst = min_eigenvalue(hermitian_part(g.choi[w]));
    }
  r.add("completely positive", bad < 0, -worst,
        bad < 0 ? "" : "outcome " + std::to_string(bad) + " is not completely positive");

  CMatrix total = CMatrix::Zero(g.v_dim, g.v_dim);
  for (int w = 0; w < g.outcomes(); ++w) total += g.effect(w);
  const double norm_res = (total - CMatrix::Identity(g.v_dim, g.v_dim)).norm();
  r.add("normalized", norm_res <= lim(tol, g.v_dim), norm_res, "sum of effects is not the identity");

  if (g.symmetry) {
    const auto& s = *g.symmetry;
    try {
      require_symmetry_shapes(s.cosets, s.rep, g.outcomes(), g.v_dim, "instrument");
      if (!(s.out_rep.group() == s.cosets.parent()) || s.out_rep.dim() != g.k_dim)
        throw DimensionError("instrument: output representation does not fit");
    } catch (const DimensionError& e) {
      r.add("symmetry shapes", false, 0, e.what());
      return r;
    }
    double res = 0;
    std::string where;
    for (int h = 0; h < s.rep.group().order(); ++h)
      for (int w = 0; w < g.outcomes(); ++w)
        for (int a = 0; a < g.k_dim; ++a)
          for (int b = 0; b < g.k_dim; ++b) {
            const CMatrix e = unit_matrix(g.k_dim, a, b);
            const CMatrix lhs = g.apply(s.cosets.act(h, w), s.out_rep(h) * e * s.out_rep(h).adjoint());
            const double d = (lhs - s.rep(h) * g.apply(w, e) * s.rep(h).adjoint()).norm();
            if (d > res) {
              res = d;
              where = at(h, w);
            }
          }
    const bool ok = res <= lim(tol, g.v_dim);
    r.add("covariant", ok, res, ok ? "" : "instrument covariance fails" + where);
  }
  return r;
}

ObservableSpec marginal_observable(const InstrumentSpec& g) {
  ObservableSpec m;
  m.dim = g.v_dim;
  for (int w = 0; w < g.outcomes(); ++w) m.effects.push_back(g.effect(w));
  if (g.symmetry) m.symmetry = OutcomeSymmetry{g.symmetry->cosets, g.symmetry->rep};
  return m;
}

CPMapSpec marginal_channel(const InstrumentSpec& g) {
  CPMapSpec s;
  s.algebra = FiniteCStarAlgebra::full(g.k_dim);
  s.fiber = g.v_dim;
  for (int x = 0; x < s.algebra.dim(); ++x) {
    const auto u = s.algebra.unit(x);
    CMatrix v = CMatrix::Zero(g.v_dim, g.v_dim);
    for (int w = 0; w < g.outcomes(); ++w)
      v += g.choi[w].block(Index(u.row) * g.v_dim, Index(u.col) * g.v_dim, g.v_dim, g.v_dim);
    s.values.push_back(std::move(v));
  }
  if (g.symmetry) s.symmetry = CPSymmetry{BlockAction::inner(s.algebra, g.symmetry->out_rep), g.symmetry->rep};
  return s;
}

CPMapSpec observable_as_cpmap(const ObservableSpec& m) {
  CPMapSpec s;
  s.algebra = FiniteCStarAlgebra::diagonal(m.outcomes());
  s.fiber = m.dim;
  s.values = m.effects;
  if (m.symmetry) {
    const auto& sym = *m.symmetry;
    s.symmetry = CPSymmetry{
        BlockAction::translation(sym.cosets.action(), MultiplierRep::trivial(sym.cosets.parent(), 1)), sym.rep};
  }
  return s;
}

CPMapSpec instrument_as_cpmap(const InstrumentSpec& g) {
  CPMapSpec s;
  s.algebra = FiniteCStarAlgebra(std::vector<int>(g.outcomes(), g.k_dim));
  s.fiber = g.v_dim;
  for (int x = 0; x < s.algebra.dim(); ++x) {
    const auto u = s.algebra.unit(x);
    s.values.push_back(g.choi[u.block].block(Index(u.row) * g.v_dim, Index(u.col) * g.v_dim, g.v_dim, g.v_dim));
  }
  if (g.symmetry) {
    const auto& sym = *g.symmetry;
    s.symmetry = CPSymmetry{BlockAction::translation(sym.cosets.action(), sym.out_rep), sym.rep};
  }
  return s;
}

InstrumentSpec instrument_from_cpmap(const CPMapSpec& s, int k_dim, const std::optional<InstrumentSymmetry>& sym) {
  const auto& alg = s.algebra;
  for (int n : alg.blocks())
    if (n != k_dim) throw DimensionError("instrument from CP map: algebra is not Fun(Omega) x M_k");
  InstrumentSpec g;
  g.k_dim = k_dim;
  g.v_dim = s.fiber;
  g.symmetry = sym;
  g.choi.assign(alg.num_blocks(), CMatrix::Zero(Index(k_dim) * s.fiber, Index(k_dim) * s.fiber));
  for (int x = 0; x < alg.dim(); ++x) {
    const auto u = alg.unit(x);
    g.choi[u.block].block(Index(u.row) * s.fiber, Index(u.col) * s.fiber, s.fiber, s.fiber) = s.values[x];
  }
  return g;
}

std::vector<int> fiber_offsets(const std::vector<int>& fibers) {
  std::vector<int> off(fibers.size() + 1, 0);
  for (std::size_t i = 0; i < fibers.size(); ++i) off[i + 1] = off[i] + fibers[i];
  return off;
}

namespace {
std::vector<int> inverse_map(const std::vector<int>& map) {
  std::vector<int> inv(map.size(), -1);
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] < 0 || map[i] >= int(map.size()) || inv[map[i]] >= 0)
      throw DimensionError("decomposable operator: map is not a permutation");
    inv[map[i]] = int(i);
  }
  return inv;
}
}  // namespace

CMatrix DecomposableOp::assemble() const {
  const auto off = fiber_offsets(fibers);
  const auto inv = inverse_map(map);
  CMatrix out = CMatrix::Zero(off.back(), off.back());
  for (std::size_t w = 0; w < fibers.size(); ++w)
    out.block(off[w], off[inv[w]], fibers[w], fibers[inv[w]]) = blocks[w];
  return out;
}

bool DecomposableOp::blocks_unitary(const Tolerances& tol) const {
  return std::all_of(blocks.begin(), blocks.end(), [&](const CMatrix& b) {
    return b.rows() == b.cols() && unitarity_defect(b) <= tol.unitary_fro;
  });
}

DecomposableOp decomposable_extract(const CMatrix& b, const std::vector<int>& fibers, const std::vector<int>& map,
                                    const Tolerances& tol) {
  if (fibers.size() != map.size()) throw DimensionError("decomposable_extract: one fiber per point");
  const auto off = fiber_offsets(fibers);
  if (b.rows() != off.back() || b.cols() != off.back()) throw DimensionError("decomposable_extract: wrong size");
  const auto inv = inverse_map(map);
  DecomposableOp d{fibers, map, {}};
  for (std::size_t w = 0; w < fibers.size(); ++w) {
    if (fibers[w] != fibers[inv[w]] && b.block(off[w], off[inv[w]], fibers[w], fibers[inv[w]]).norm() > 0)
      throw DomainError("decomposable_extract: map connects fibers of different size");
    d.blocks.push_back(b.block(off[w], off[inv[w]], fibers[w], fibers[inv[w]]));
  }
  const CMatrix a = d.assemble();
  certify("decomposable block structure", (a - b).norm(), lim(tol, b.norm()));
  // (B†ψ)(ω) = B_{Tω}† ψ(Tω)
  CMatrix adj = CMatrix::Zero(off.back(), off.back());
  for (std::size_t w = 0; w < fibers.size(); ++w)
    adj.block(off[w], off[map[w]], fibers[w], fibers[map[w]]) = d.blocks[map[w]].adjoint();
  certify("decomposable adjoint", (adj - b.adjoint()).norm(), lim(tol, b.norm()));
  return d;
}

int NaimarkData::total() const { return fiber_offsets(fibers).back(); }

CMatrix NaimarkData::projection(int omega) const {
  const auto off = fiber_offsets(fibers);
  CMatrix p = CMatrix::Zero(off.back(), off.back());
  p.block(off[omega], off[omega], fibers[omega], fibers[omega]).setIdentity();
  return p;
}

NaimarkData naimark(const ObservableSpec& m, const Tolerances& tol) {
  const auto report = validate_observable(m, tol);
  if (!report.ok()) throw ValidationError("naimark: " + report.first_failure());
  const auto spec = observable_as_cpmap(m);
  const auto d = ksgns(spec, tol);

  NaimarkData out;
  CMatrix q(d.rank, 0);
  for (int w = 0; w < m.outcomes(); ++w) {
    const CMatrix qw = range_basis(d.pi_units[w], tol);
    out.fibers.push_back(int(qw.cols()));
    q.conservativeResize(d.rank, q.cols() + qw.cols());
    q.rightCols(qw.cols()) = qw;
  }
  certify("naimark fiber basis unitarity", unitarity_defect(q), tol.unitary_fro);
  out.isometry = q.adjoint() * d.j;

  const int n = out.total();
  double res = isometry_defect(out.isometry);
  for (int w = 0; w < m.outcomes(); ++w)
    res = std::max(res, (out.isometry.adjoint() * out.projection(w) * out.isometry - m.effects[w]).norm());
  certify("naimark isometry and effects", res, lim(tol, n));

  if (m.symmetry) {
    const auto& s = *m.symmetry;
    const FiniteGroup& grp = s.cosets.parent();
    for (int g = 0; g < grp.order(); ++g) {
      std::vector<int> map(m.outcomes());
      for (int w = 0; w < m.outcomes(); ++w) map[w] = s.cosets.act(g, w);
      const CMatrix y = q.adjoint() * (*d.utilde)(g) * q;
      out.cocycle.push_back(decomposable_extract(y, out.fibers, map, tol));
      certify("naimark intertwining at g=" + std::to_string(g),
              (y * out.isometry - out.isometry * s.rep(g)).norm(), lim(tol, n));
    }
  }
  return out;
}

WignerRotation wigner_rotation(const SubgroupData& cosets, const MultiplierRep& rho, const Tolerances& tol) {
  if (!(rho.group() == cosets.subgroup())) throw DimensionError("wigner_rotation: representation is not of H");
  const FiniteGroup& grp = cosets.parent();
  const int nw = cosets.num_cosets();
  WignerRotation out;
  for (int g = 0; g < grp.order(); ++g)
    for (int w = 0; w < nw; ++w) {
      const int back = cosets.act(grp.inverse(g), w);
      const int h = grp.mul(grp.inverse(cosets.section(w)), grp.mul(g, cosets.section(back)));
      out.elements.push_back(h);
      out.values.push_back(rho(cosets.subgroup_index(h)));
    }
  const auto& sigma = rho.cocycle();
  double res = 0;
  for (int g1 = 0; g1 < grp.order(); ++g1)
    for (int g2 = 0; g2 < grp.order(); ++g2)
      for (int w = 0; w < nw; ++w) {
        const int back = cosets.act(grp.inverse(g1), w);
        const int h1 = cosets.subgroup_index(out.elements[std::size_t(g1) * nw + w]);
        const int h2 = cosets.subgroup_index(out.elements[std::size_t(g2) * nw + back]);
        res = std::max(res, (out(g1, w, nw) * out(g2, back, nw) -
                             sigma(h1, h2) * out(grp.mul(g1, g2), w, nw)).norm());
      }
  out.strictness_residual = res;
  certify("wigner rotation cocycle identity", res, lim(tol, rho.dim()));
  return out;
}

CanonicalSystem canonical_system(const SubgroupData& cosets, const MultiplierRep& rho, const Tolerances& tol) {
  if (!rho.cocycle().is_trivial(1e-12))
    throw DomainError("canonical_system: the representation of H must be an ordinary representation");
  if (!(rho.group() == cosets.subgroup())) throw DimensionError("canonical_system: representation is not of H");
  const FiniteGroup& grp = cosets.parent();
  const int m = rho.dim(), nw = cosets.num_cosets(), ng = grp.order();
  const double hs = double(cosets.members().size());
  CanonicalSystem cs;
  cs.fiber = m;
  cs.dim = nw * m;
  cs.functions = CMatrix::Zero(Index(ng) * m, Index(nw) * m);
  for (int w = 0; w < nw; ++w)
    for (int h : cosets.members())
      cs.functions.block(Index(grp.mul(cosets.section(w), h)) * m, Index(w) * m, m, m) =
          rho(cosets.subgroup_index(h)).adjoint();
  const auto rows = [&](int g) { return cs.functions.middleRows(Index(g) * m, m); };

  std::vector<CMatrix> theta;
  for (int g = 0; g < ng; ++g) {
    CMatrix t = CMatrix::Zero(cs.dim, cs.dim);
    for (int x = 0; x < ng; ++x) t += rows(x).adjoint() * rows(grp.mul(grp.inverse(g), x));
    theta.push_back(t / hs);
  }
  cs.translation = MultiplierRep(TwoCocycle::trivial(grp), std::move(theta));
  for (int w = 0; w < nw; ++w) {
    CMatrix p = CMatrix::Zero(cs.dim, cs.dim);
    for (int x = 0; x < ng; ++x)
      if (cosets.coset_of(x) == w) p += rows(x).adjoint() * rows(x);
    cs.projections.push_back(p / hs);
  }

  const auto y = wigner_rotation(cosets, rho, tol);
  const auto alt = cosets.alternative_section();
  cs.to_induced = CMatrix::Zero(cs.dim, cs.dim);
  for (int w = 0; w < nw; ++w) cs.to_induced.middleRows(Index(w) * m, m) = y(alt[w], w, nw) * rows(alt[w]);
  std::vector<CMatrix> induced;
  for (int g = 0; g < ng; ++g) {
    CMatrix t = CMatrix::Zero(cs.dim, cs.dim);
    for (int w = 0; w < nw; ++w)
      t.block(Index(w) * m, Index(cosets.act(grp.inverse(g), w)) * m, m, m) = y(g, w, nw);
    induced.push_back(std::move(t));
  }
  cs.induced = MultiplierRep(TwoCocycle::trivial(grp), std::move(induced));

  const CMatrix& v = cs.to_induced;
  double res = std::max(unitarity_defect(v), isometry_defect(cs.functions / std::sqrt(hs)));
  for (int g = 0; g < ng; ++g) res = std::max(res, (v * cs.translation(g) * v.adjoint() - cs.induced(g)).norm());
  for (int w = 0; w < nw; ++w) {
    CMatrix p = CMatrix::Zero(cs.dim, cs.dim);
    p.block(Index(w) * m, Index(w) * m, m, m).setIdentity();
    res = std::max(res, (v * cs.projections[w] * v.adjoint() - p).norm());
    for (int g = 0; g < ng; ++g)
      res = std::max(res, (cs.translation(g) * cs.projections[w] * cs.translation(g).adjoint() -
                           cs.projections[cosets.act(g, w)]).norm());
  }
  cs.residual = res;
  certify("canonical system identities", res, lim(tol, cs.dim));
  return cs;
}

namespace {
double mu(const CovariantObservableData& data, int tau) {
  const auto& c = data.symmetry.cosets;
  return double(data.decomposition.blocks[tau].dim) * double(c.members().size()) / double(c.parent().order());
}

double lambda_normalization(const CovariantObservableData& data) {
  double res = 0;
  for (std::size_t t = 0; t < data.lambda.size(); ++t) {
    const int mult = data.decomposition.blocks[t].multiplicity;
    CMatrix s = CMatrix::Zero(mult, mult);
    for (const auto& l : data.lambda[t]) s += l.adjoint() * l;
    res = std::max(res, (s - CMatrix::Identity(mult, mult)).norm());
  }
  return res;
}
}  // namespace

CMatrix CovariantObservableData::standard() const {
  const auto& blocks = decomposition.blocks;
  if (lambda.size() != blocks.size()) throw DimensionError("Lambda data: one family per irreducible block");
  const int v = symmetry.rep.dim();
  CMatrix out = CMatrix::Zero(fiber(), v);
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    const auto& b = blocks[t];
    if (int(lambda[t].size()) != b.dim) throw DimensionError("Lambda data: one operator per irrep basis vector");
    CMatrix joined(fiber(), Index(b.dim) * b.multiplicity);
    for (int a = 0; a < b.dim; ++a) {
      if (lambda[t][a].rows() != fiber() || lambda[t][a].cols() != b.multiplicity)
        throw DimensionError("Lambda data: operator has the wrong shape");
      joined.middleCols(Index(a) * b.multiplicity, b.multiplicity) = lambda[t][a];
    }
    out += std::sqrt(mu(*this, int(t))) * joined * b.columns.adjoint();
  }
  return out;
}

ObservableSpec observable_from_lambda(const CovariantObservableData& data, const Tolerances& tol) {
  const auto& sym = data.symmetry;
  const double norm_res = lambda_normalization(data);
  if (norm_res > lim(tol, data.fiber()))
    throw ValidationError("observable_from_lambda: rejected, sum of Lambda_j^* Lambda_j is not the identity (residual " +
                          std::to_string(norm_res) + ")");
  const CMatrix l = data.standard();
  if (!(data.rho.group() == sym.cosets.subgroup())) throw DimensionError("observable_from_lambda: rho is not of H");
  for (int h : sym.cosets.members())
    if ((l * sym.rep(h) - data.rho(sym.cosets.subgroup_index(h)) * l).norm() > lim(tol, l.norm()))
      throw ValidationError("observable_from_lambda: rejected, Lambda does not intertwine U and rho on H");
  ObservableSpec m;
  m.dim = sym.rep.dim();
  m.symmetry = sym;
  const CMatrix base = l.adjoint() * l;
  for (int w = 0; w < sym.cosets.num_cosets(); ++w) {
    const CMatrix& u = sym.rep(sym.cosets.section(w));
    m.effects.push_back(u * base * u.adjoint());
  }
  const auto r = validate_observable(m, tol);
  if (!r.ok()) throw ToleranceError("observable_from_lambda: " + r.first_failure(), 0, 0);
  return m;
}

CovariantObservableData lambda_from_observable(const ObservableSpec& m, std::uint64_t seed, const Tolerances& tol) {
  if (!m.symmetry) throw DomainError("lambda_from_observable: the observable carries no symmetry");
  const auto& sym = *m.symmetry;
  const auto nd = naimark(m, tol);
  const int w0 = base_point(sym.cosets);
  const auto off = fiber_offsets(nd.fibers);
  const int m0 = nd.fibers[w0];

  CovariantObservableData data;
  data.symmetry = sym;
  std::vector<CMatrix> rho;
  for (int h : sym.cosets.members()) rho.push_back(nd.cocycle[h].blocks[w0]);
  data.rho = MultiplierRep::from_matrices(sym.cosets.subgroup(), std::move(rho));
  data.decomposition = irrep_decompose(sym.rep, seed, tol);
  const CMatrix l = nd.isometry.middleRows(off[w0], m0);
  for (std::size_t t = 0; t < data.decomposition.blocks.size(); ++t) {
    const auto& b = data.decomposition.blocks[t];
    const CMatrix joined = l * b.columns / std::sqrt(mu(data, int(t)));
    std::vector<CMatrix> family;
    for (int a = 0; a < b.dim; ++a) family.push_back(joined.middleCols(Index(a) * b.multiplicity, b.multiplicity));
    data.lambda.push_back(std::move(family));
  }
  certify("Lambda normalization", lambda_normalization(data), lim(tol, m0));
  certify("Lambda reconstruction", (data.standard() - l).norm(), lim(tol, m0));
  return data;
}

ObservableExtremality observable_extremal(const CovariantObservableData& data, const Tolerances& tol) {
  const auto& sym = data.symmetry;
  const CMatrix l = data.standard();
  const int m0 = data.fiber();
  if (numerical_rank(l, tol) != m0)
    throw DomainError("observable_extremal: Lambda must map onto the whole fiber");
  std::vector<CMatrix> gens = data.rho.matrices();
  std::vector<CMatrix> cons;
  for (std::size_t t = 0; t < data.lambda.size(); ++t) {
    const int mult = data.decomposition.blocks[t].multiplicity;
    for (int r = 0; r < mult; ++r)
      for (int r2 = 0; r2 < mult; ++r2) {
        CMatrix c = CMatrix::Zero(m0, m0);
        for (const auto& lj : data.lambda[t]) c += lj.col(r) * lj.col(r2).adjoint();
        if (c.norm() > 0) cons.push_back(std::move(c));
      }
  }
  ObservableExtremality out;
  const auto basis = constrained_commutant<double>(gens, cons, true, tol);
  out.solution_dim = int(basis.size());
  out.extreme = basis.empty();
  if (out.extreme) return out;
  const CMatrix d = hermitian_witness(basis.front());
  out.witness = d;
  ObservableSpec plus{sym.rep.dim(), {}, sym}, minus = plus;
  const CMatrix id = CMatrix::Identity(m0, m0);
  const CMatrix bp = l.adjoint() * (id + d) * l, bm = l.adjoint() * (id - d) * l;
  for (int w = 0; w < sym.cosets.num_cosets(); ++w) {
    const CMatrix& u = sym.rep(sym.cosets.section(w));
    plus.effects.push_back(u * bp * u.adjoint());
    minus.effects.push_back(u * bm * u.adjoint());
  }
  out.split.emplace(std::move(plus), std::move(minus));
  return out;
}

ObservableKernel observable_kernel(const ObservableSpec& m) {
  const int nw = m.outcomes(), nx = nw + 1;
  std::vector<CMatrix> blocks(std::size_t(nx) * nx, CMatrix::Zero(m.dim, m.dim));
  for (int w = 0; w < nw; ++w) {
    blocks[std::size_t(w) * nx + w] = m.effects[w];
    blocks[std::size_t(w) * nx + nw] = m.effects[w];
    blocks[std::size_t(nw) * nx + w] = m.effects[w];
  }
  blocks[std::size_t(nw) * nx + nw] = CMatrix::Identity(m.dim, m.dim);
  ObservableKernel out;
  if (m.symmetry) {
    const auto& s = *m.symmetry;
    auto action = GroupAction::disjoint_union(s.cosets.action(), GroupAction::trivial(s.cosets.parent(), 1));
    out.kernel = CovariantKernelSpec::untwisted(std::move(action), s.rep, std::move(blocks));
  } else {
    out.kernel = CovariantKernelSpec::plain(nx, m.dim, std::move(blocks));
  }
  for (int w = 0; w < nw; ++w)
    for (int w2 = 0; w2 < nw; ++w2)
      if (w != w2) out.z.emplace_back(w, w2);
  out.z.emplace_back(nw, nw);
  return out;
}

ObservableVerdicts observable_verdicts(const ObservableSpec& m, std::uint64_t seed, const Tolerances& tol) {
  ObservableVerdicts v;
  const auto k = observable_kernel(m);
  v.kernel_level = kernel_extremal(k.kernel, k.z, kolmogorov_decompose(k.kernel, tol), tol).extreme;
  const auto s = observable_as_cpmap(m);
  const auto ce = cp_extremal(s, ksgns(s, tol), tol);
  v.cp_level = ce.extreme;
  v.cp_level_twisted = m.symmetry ? ce.extreme_ubar : ce.extreme;
  if (m.symmetry) v.lambda_level = observable_extremal(lambda_from_observable(m, seed, tol), tol).extreme;
  return v;
}

StructureResiduals structure_residuals(const CovariantInstrumentData& b, const InstrumentSymmetry& sym,
                                       const std::vector<int>& section) {
  const int k = sym.out_rep.dim(), v = sym.rep.dim();
  for (const auto& x : b.kraus)
    if (x.rows() != k || x.cols() != v) throw DimensionError("Kraus family: B_j must be k x v");
  const auto phi = [&](const CMatrix& e) {
    CMatrix out = CMatrix::Zero(v, v);
    for (const auto& x : b.kraus) out += x.adjoint() * e * x;
    return out;
  };
  StructureResiduals r;
  for (int h : sym.cosets.members())
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) {
        const CMatrix e = unit_matrix(k, a, c);
        r.h_invariance = std::max(r.h_invariance, (phi(sym.out_rep(h) * e * sym.out_rep(h).adjoint()) -
                                                   sym.rep(h) * phi(e) * sym.rep(h).adjoint()).norm());
      }
  const CMatrix base = phi(CMatrix::Identity(k, k));
  CMatrix total = CMatrix::Zero(v, v);
  for (int s : section) total += sym.rep(s) * base * sym.rep(s).adjoint();
  r.normalization = (total - CMatrix::Identity(v, v)).norm();
  return r;
}

namespace {
InstrumentSpec build_from_b(const CovariantInstrumentData& b, const InstrumentSymmetry& sym,
                            const std::vector<int>& section) {
  std::vector<std::vector<CMatrix>> kraus;
  for (int s : section) {
    std::vector<CMatrix> family;
    for (const auto& x : b.kraus) family.push_back(sym.out_rep(s) * x * sym.rep(s).adjoint());
    kraus.push_back(std::move(family));
  }
  auto g = InstrumentSpec::from_kraus(sym.out_rep.dim(), kraus);
  g.symmetry = sym;
  return g;
}

std::vector<int> canonical_section(const SubgroupData& c) {
  std::vector<int> s;
  for (int w = 0; w < c.num_cosets(); ++w) s.push_back(c.section(w));
  return s;
}
}  // namespace

InstrumentSpec instrument_from_B(const CovariantInstrumentData& b, const InstrumentSymmetry& sym,
                                 const Tolerances& tol) {
  if (b.kraus.empty()) throw DimensionError("instrument_from_B: empty Kraus family");
  const auto section = canonical_section(sym.cosets);
  const auto r = structure_residuals(b, sym, section);
  const int v = sym.rep.dim();
  if (r.h_invariance > lim(tol, v))
    throw ValidationError("instrument_from_B: Kraus family is not H-invariant (residual " +
                          std::to_string(r.h_invariance) + ")");
  if (r.normalization > lim(tol, v))
    throw ValidationError("instrument_from_B: effects do not sum to the identity (residual " +
                          std::to_string(r.normalization) + ")");
  auto g = build_from_b(b, sym, section);
  const auto alt = build_from_b(b, sym, sym.cosets.alternative_section());
  certify("instrument_from_B section independence", max_choi_difference(g, alt), lim(tol, v));
  const auto report = validate_instrument(g, tol);
  if (!report.ok()) throw ToleranceError("instrument_from_B: " + report.first_failure(), 0, 0);
  return g;
}

CovariantInstrumentData B_from_instrument(const InstrumentSpec& g, const Tolerances& tol) {
  if (!g.symmetry) throw DomainError("B_from_instrument: the instrument carries no symmetry");
  const auto report = validate_instrument(g, tol);
  if (!report.ok()) throw ValidationError("B_from_instrument: " + report.first_failure());
  CovariantInstrumentData b{kraus_from_choi(g.choi[base_point(g.symmetry->cosets)], g.k_dim, g.v_dim, tol)};
  const auto back = instrument_from_B(b, *g.symmetry, tol);
  certify("B_from_instrument reconstruction", max_choi_difference(back, g), lim(tol, g.v_dim));
  return b;
}

CovariantInstrumentData B_from_instrument_chain(const InstrumentSpec& g, const Tolerances& tol) {
  if (!g.symmetry) throw DomainError("B_from_instrument_chain: the instrument carries no symmetry");
  const auto& sym = *g.symmetry;
  const auto report = validate_instrument(g, tol);
  if (!report.ok()) throw ValidationError("B_from_instrument_chain: " + report.first_failure());

  const auto observable = observable_as_cpmap(marginal_observable(g));
  const auto left = ksgns(observable, tol);
  const auto split = tensor(FiniteCStarAlgebra::diagonal(g.outcomes()), FiniteCStarAlgebra::full(g.k_dim));
  const auto right_action = BlockAction::inner(split.right, sym.out_rep, tol);
  const auto e = subminimal(instrument_as_cpmap(g), split, left, right_action, tol);

  const int w0 = base_point(sym.cosets);
  const CMatrix q0 = range_basis(left.pi_units[w0], tol);
  const int m0 = int(q0.cols());
  const CMatrix lambda = q0.adjoint() * left.j;
  CMatrix choi(Index(g.k_dim) * m0, Index(g.k_dim) * m0);
  for (int a = 0; a < g.k_dim; ++a)
    for (int c = 0; c < g.k_dim; ++c)
      choi.block(Index(a) * m0, Index(c) * m0, m0, m0) =
          q0.adjoint() * e.values[split.right.index_of(0, a, c)] * q0;
  CovariantInstrumentData b;
  for (const auto& a : kraus_from_choi(choi, g.k_dim, m0, tol)) b.kraus.push_back(a * lambda);
  const auto back = instrument_from_B(b, sym, tol);
  certify("chained Kraus reconstruction", max_choi_difference(back, g), lim(tol, g.v_dim));
  return b;
}

InstrumentExtremality instrument_extremal(const InstrumentSpec& g, const Tolerances& tol) {
  const auto report = validate_instrument(g, tol);
  if (!report.ok()) throw ValidationError("instrument_extremal: " + report.first_failure());
  InstrumentExtremality out;
  const auto s = instrument_as_cpmap(g);
  const auto ce = cp_extremal(s, ksgns(s, tol), tol);
  out.extreme = ce.extreme;
  out.extreme_twisted = g.symmetry ? ce.extreme_ubar : ce.extreme;
  out.solution_dim = ce.solution_dim;
  out.witness = ce.witness;
  if (ce.split)
    out.split.emplace(instrument_from_cpmap(ce.split->first, g.k_dim, g.symmetry),
                      instrument_from_cpmap(ce.split->second, g.k_dim, g.symmetry));

  // Perturbations Σ D_jl B_j† b B_l of the base-point map (or of each outcome without symmetry).
  std::vector<CMatrix> gens;
  std::vector<std::vector<CMatrix>> families;  // per outcome, the operators indexed by D's rows
  std::vector<int> family_offset;
  int r = 0;
  if (g.symmetry) {
    const auto& sym = *g.symmetry;
    const auto b = B_from_instrument(g, tol).kraus;
    r = int(b.size());
    const Index kv = Index(g.k_dim) * g.v_dim;
    CMatrix stacked(r, kv);
    for (int j = 0; j < r; ++j) stacked.row(j) = Eigen::Map<const CVector>(b[j].data(), kv).transpose();
    for (int h : sym.cosets.members()) {
      CMatrix target(r, kv);
      for (int j = 0; j < r; ++j) {
        const CMatrix moved = sym.out_rep(h) * b[j] * sym.rep(h).adjoint();
        target.row(j) = Eigen::Map<const CVector>(moved.data(), kv).transpose();
      }
      // target = L·stacked with L unitary; invariance of Σ D_jl B_j† b B_l means [D, L] = 0.
      const auto sol = lstsq_define<double>(stacked, target, tol);
      certify("Kraus-level H action fit", sol.residual, lim(tol, target.norm()));
      gens.push_back(sol.map);
    }
    for (int sct : canonical_section(sym.cosets)) {
      std::vector<CMatrix> fam;
      for (const auto& x : b) fam.push_back(sym.out_rep(sct) * x * sym.rep(sct).adjoint());
      families.push_back(std::move(fam));
      family_offset.push_back(0);
    }
  } else {
    for (int w = 0; w < g.outcomes(); ++w) {
      families.push_back(kraus_from_choi(g.choi[w], g.k_dim, g.v_dim, tol));
      family_offset.push_back(r);
      r += int(families.back().size());
    }
    if (g.outcomes() > 1)
      for (int w = 0; w < g.outcomes(); ++w) {
        CMatrix p = CMatrix::Zero(r, r);
        for (std::size_t j = 0; j < families[w].size(); ++j) p(family_offset[w] + j, family_offset[w] + j) = 1;
        gens.push_back(std::move(p));
      }
  }
  if (r == 0) return out;
  std::vector<CMatrix> cons;
  for (int i = 0; i < g.v_dim; ++i)
    for (int i2 = 0; i2 < g.v_dim; ++i2) {
      CMatrix c = CMatrix::Zero(r, r);
      for (std::size_t w = 0; w < families.size(); ++w)
        for (std::size_t j = 0; j < families[w].size(); ++j)
          for (std::size_t l = 0; l < families[w].size(); ++l)
            c(family_offset[w] + j, family_offset[w] + l) +=
                std::conj(families[w][j].col(i).dot(families[w][l].col(i2)));
      if (c.norm() > 0) cons.push_back(std::move(c));
    }
  if (gens.empty() && cons.empty()) gens.push_back(CMatrix::Identity(r, r));
  out.extreme_kraus = constrained_commutant<double>(gens, cons, true, tol).empty();
  return out;
}

SquareIntegrability sq_constant(const MultiplierRep& w, int subgroup_order, const Tolerances& tol) {
  if (subgroup_order < 1) throw DomainError("sq_constant: subgroup order must be positive");
  const int n = w.dim();
  const auto twirl = [&](const CMatrix& x) {
    CMatrix t = CMatrix::Zero(n, n);
    for (const auto& u : w.matrices()) t += u * x * u.adjoint();
    return CMatrix(t / double(subgroup_order));
  };
  SquareIntegrability out;
  out.d = twirl(unit_matrix(n, 0, 0)).trace().real() / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CMatrix expect = i == j ? CMatrix(out.d * CMatrix::Identity(n, n)) : CMatrix::Zero(n, n);
      out.spread = std::max(out.spread, (twirl(unit_matrix(n, i, j)) - expect).norm());
    }
  out.constant = out.spread <= lim(tol, out.d * n);
  return out;
}

SquareIntegrableStructure sq_structure(const InstrumentSpec& g, const Tolerances& tol) {
  if (!g.symmetry) throw DomainError("sq_structure: the instrument carries no symmetry");
  const auto& sym = *g.symmetry;
  const auto sq = sq_constant(sym.rep, int(sym.cosets.members().size()), tol);
  if (!sq.constant)
    throw DomainError("sq_structure: representation is not square integrable (spread " + std::to_string(sq.spread) +
                      ")");
  SquareIntegrableStructure out;
  out.d = sq.d;
  out.kraus = B_from_instrument(g, tol).kraus;
  out.seed = CMatrix::Zero(g.v_dim, g.v_dim);
  for (const auto& b : out.kraus) out.seed += b.adjoint() * b;
  out.seed *= sq.d;
  if (!psd_check(out.seed, tol)) throw ToleranceError("sq_structure seed positivity", -min_eigenvalue(out.seed), 0);
  out.trace_residual = std::abs(out.seed.trace() - Complex(1));
  for (int h : sym.cosets.members())
    out.invariance_residual =
        std::max(out.invariance_residual, (out.seed * sym.rep(h) - sym.rep(h) * out.seed).norm());
  for (int w = 0; w < g.outcomes(); ++w) {
    const CMatrix& u = sym.rep(sym.cosets.section(w));
    out.effect_residual =
        std::max(out.effect_residual, (g.effect(w) - u * out.seed * u.adjoint() / sq.d).norm());
  }
  certify("sq_structure trace", out.trace_residual, lim(tol, 1));
  certify("sq_structure invariance", out.invariance_residual, lim(tol, g.v_dim));
  certify("sq_structure effects", out.effect_residual, lim(tol, g.v_dim));
  return out;
}

InstrumentSpec phase_space(int d, const std::vector<CMatrix>& kraus, const Tolerances& tol) {
  if (d < 1) throw DomainError("phase_space: dimension must be positive");
  if (kraus.empty()) throw DimensionError("phase_space: empty Kraus family");
  double total = 0;
  for (const auto& b : kraus) {
    if (b.rows() != d || b.cols() != d) throw DimensionError("phase_space: Kraus operators must be d x d");
    total += b.squaredNorm();
  }
  if (std::abs(d * total - 1) > lim(tol, 1))
    throw DomainError("phase_space: d * sum tr(B_j^* B_j) must equal 1 (got " + std::to_string(d * total) + ")");
  const auto h = heisenberg_rep(d);
  InstrumentSymmetry sym{SubgroupData(h.group, {h.group.identity()}), h.rep, h.rep};
  return instrument_from_B(CovariantInstrumentData{kraus}, sym, tol);
}

std::vector<CMatrix> spectral_kraus(const CMatrix& s, int d, const Tolerances& tol) {
  if (s.rows() != d || s.cols() != d) throw DimensionError("spectral_kraus: seed must be d x d");
  if (!psd_check(s, tol)) throw DomainError("spectral_kraus: seed is not positive");
  if (std::abs(s.trace() - Complex(1)) > lim(tol, 1)) throw DomainError("spectral_kraus: seed must have trace one");
  const auto es = detail::hermitian_eig<Complex>(hermitian_part(s), true);
  const double cut = tol.psd_eig * std::max(1.0, es.values(d - 1));
  std::vector<CMatrix> out;
  for (int i = d - 1; i >= 0; --i)
    if (es.values(i) > cut) {
      const CVector v = es.vectors.col(i);
      out.push_back(std::sqrt(es.values(i) / d) * v * v.adjoint());
    }
  return out;
}

OutcomeDistribution outcome_distribution(const InstrumentSpec& g, const CMatrix& state, const Tolerances& tol) {
  if (state.rows() != g.v_dim || state.cols() != g.v_dim) throw DimensionError("sample: state has the wrong size");
  if (!psd_check(state, tol)) throw DomainError("sample: state is not positive");
  if (std::abs(state.trace() - Complex(1)) > lim(tol, 1)) throw DomainError("sample: state must have trace one");
  OutcomeDistribution out;
  for (int w = 0; w < g.outcomes(); ++w) {
    const double p = std::max(0.0, (state * g.effect(w)).trace().real());
    out.probabilities.push_back(p);
    out.post_states.push_back(p > tol.psd_eig ? CMatrix(g.predual(w, state) / p) : CMatrix());
  }
  return out;
}

namespace {
int draw(const std::vector<double>& p, std::mt19937_64& rng) {
  const double u = double(rng() >> 11) * 0x1.0p-53;
  double total = 0;
  for (double x : p) total += x;
  double cum = 0;
  int last = -1;
  for (std::size_t w = 0; w < p.size(); ++w) {
    if (p[w] <= 0) continue;
    last = int(w);
    cum += p[w] / total;
    if (u < cum) return int(w);
  }
  return last;
}
}  // namespace

Sample sample(const InstrumentSpec& g, const CMatrix& state, std::uint64_t seed, const Tolerances& tol) {
  const auto dist = outcome_distribution(g, state, tol);
  std::mt19937_64 rng(seed);
  const int w = draw(dist.probabilities, rng);
  if (w < 0) throw DomainError("sample: every outcome has probability zero");
  return {w, dist.probabilities[w], dist.post_states[w]};
}

std::vector<int> sample_outcomes(const OutcomeDistribution& dist, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> out;
  out.reserve(std::size_t(std::max(n, 0)));
  for (int i = 0; i < n; ++i) out.push_back(draw(dist.probabilities, rng));
  return out;
}

}  // namespace covkit
