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

#include "covkit/cpmaps.hpp"

#include <algorithm>

namespace covkit {

namespace {

CMatrix unit_product_value(const CPMapSpec& s, int x, int y) {
  const auto p = s.algebra.product(s.algebra.adjoint(x), y);
  return p ? s.values[*p] : CMatrix::Zero(s.fiber, s.fiber);
}

double max_value_norm(const CPMapSpec& s) {
  double m = 1;
  for (const auto& v : s.values) m = std::max(m, v.norm());
  return m;
}

}  // namespace

CMatrix CPMapSpec::value(const CMatrix& b) const {
  const CVector c = algebra.coefficients(b);
  CMatrix out = CMatrix::Zero(fiber, fiber);
  for (int x = 0; x < algebra.dim(); ++x)
    if (c(x) != Complex(0)) out += c(x) * values[x];
  return out;
}

CMatrix CPMapSpec::grand_matrix() const {
  const int d = algebra.dim(), n = fiber;
  CMatrix g(d * n, d * n);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) g.block(x * n, y * n, n, n) = unit_product_value(*this, x, y);
  return g;
}

CMatrix CPMapSpec::choi_block(int block) const {
  const int m = algebra.blocks()[block], n = fiber;
  CMatrix c(m * n, m * n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) c.block(a * n, b * n, n, n) = values[algebra.index_of(block, a, b)];
  return c;
}

CPMapSpec CPMapSpec::from_kraus(int n, const std::vector<CMatrix>& kraus, int k) {
  if (kraus.empty()) throw DimensionError("from_kraus: empty Kraus family");
  CPMapSpec s;
  s.algebra = FiniteCStarAlgebra::full(n);
  s.k = k;
  s.fiber = int(kraus.front().cols());
  for (int x = 0; x < s.algebra.dim(); ++x) {
    const CMatrix e = s.algebra.matrix_unit(x);
    CMatrix v = CMatrix::Zero(s.fiber, s.fiber);
    for (const auto& a : kraus) {
      if (a.rows() != n || a.cols() != s.fiber) throw DimensionError("from_kraus: Kraus operators differ in shape");
      v += a.adjoint() * e * a;
    }
    s.values.push_back(std::move(v));
  }
  return s;
}

CPReport cp_validate(const CPMapSpec& spec, const Tolerances& tol) {
  CPReport r;
  auto fail = [&](const std::string& why) {
    r.shapes = r.completely_positive = r.covariant = false;
    r.detail = why;
    return r;
  };
  if (int(spec.values.size()) != spec.algebra.dim()) return fail("one value per matrix unit is required");
  for (const auto& v : spec.values)
    if (v.rows() != spec.fiber || v.cols() != spec.fiber) return fail("value does not match the fiber dimension");
  if (spec.symmetry) {
    const auto& s = *spec.symmetry;
    if (!(s.beta.algebra() == spec.algebra)) return fail("symmetry acts on a different algebra");
    if (!(s.beta.group() == s.rep.group())) return fail("symmetry groups differ");
    if (s.rep.dim() != spec.fiber) return fail("symmetry representation does not match the fiber");
  }
  double mn = 0, nz = 0;
  for (int i = 0; i < spec.algebra.num_blocks(); ++i) {
    const CMatrix c = spec.choi_block(i);
    mn = std::min(mn, min_eigenvalue(c));
    nz = std::max(nz, c.norm());
    if (!psd_check(c, tol)) r.completely_positive = false;
  }
  r.min_eigenvalue = mn;
  r.nonzero = nz > 0;
  if (!r.completely_positive) r.detail = "Choi matrix is not positive";
  if (spec.symmetry) {
    const auto& s = *spec.symmetry;
    const FiniteGroup& g = s.rep.group();
    const double limit = tol.recon_fro * max_value_norm(spec);
    for (int a = 0; a < g.order(); ++a) {
      const CMatrix coeff = s.beta.coefficient_matrix(a);
      const CMatrix& ui = s.rep(g.inverse(a));
      for (int x = 0; x < spec.algebra.dim(); ++x) {
        CMatrix lhs = CMatrix::Zero(spec.fiber, spec.fiber);
        for (int y = 0; y < spec.algebra.dim(); ++y)
          if (coeff(y, x) != Complex(0)) lhs += coeff(y, x) * spec.values[y];
        const double d = (lhs - ui.adjoint() * spec.values[x] * ui).norm();
        r.covariance_residual = std::max(r.covariance_residual, d);
        if (d > limit && r.covariant) {
          r.covariant = false;
          if (r.detail.empty()) r.detail = "covariance fails at g=" + std::to_string(a) + ", unit " + std::to_string(x);
        }
      }
    }
  }
  if (!r.nonzero && r.detail.empty()) r.detail = "warning: zero map";
  return r;
}

CovariantKernelSpec cp_kernel(const CPMapSpec& spec) {
  const int d = spec.algebra.dim();
  std::vector<CMatrix> blocks;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) blocks.push_back(unit_product_value(spec, x, y));
  return CovariantKernelSpec::plain(d, spec.fiber, std::move(blocks), spec.k);
}

CMatrix KSGNSDilation::pi(const FiniteCStarAlgebra& algebra, const CMatrix& b) const {
  const CVector c = algebra.coefficients(b);
  CMatrix out = CMatrix::Zero(rank, rank);
  for (int x = 0; x < algebra.dim(); ++x)
    if (c(x) != Complex(0)) out += c(x) * pi_units[x];
  return out;
}

DilationResiduals dilation_residuals(const CPMapSpec& spec, const KSGNSDilation& d) {
  DilationResiduals r;
  const auto& alg = spec.algebra;
  const int n = alg.dim();
  CMatrix unit = CMatrix::Zero(d.rank, d.rank);
  CMatrix span(d.rank, n * spec.fiber);
  for (int x = 0; x < n; ++x) {
    const auto u = alg.unit(x);
    if (u.row == u.col) unit += d.pi_units[x];
    r.reconstruction = std::max(r.reconstruction, (d.j.adjoint() * d.pi_units[x] * d.j - spec.values[x]).norm());
    r.adjoint = std::max(r.adjoint, (d.pi_units[x].adjoint() - d.pi_units[alg.adjoint(x)]).norm());
    for (int y = 0; y < n; ++y) {
      const auto p = alg.product(x, y);
      const CMatrix target = p ? d.pi_units[*p] : CMatrix::Zero(d.rank, d.rank);
      r.multiplicativity = std::max(r.multiplicativity, (d.pi_units[x] * d.pi_units[y] - target).norm());
    }
    span.middleCols(x * spec.fiber, spec.fiber) = d.pi_units[x] * d.j;
  }
  r.unitality = (unit - CMatrix::Identity(d.rank, d.rank)).norm();
  r.minimality_defect = double(std::abs(numerical_rank(span) - Index(d.rank)));
  if (spec.symmetry && d.utilde) {
    const auto& s = *spec.symmetry;
    const auto& ut = *d.utilde;
    for (int g = 0; g < ut.group().order(); ++g) {
      r.j_intertwining = std::max(r.j_intertwining, (d.j * s.rep(g) - ut(g) * d.j).norm());
      const CMatrix ui = s.beta.inner_part(g);
      for (int x = 0; x < n; ++x) {
        const CMatrix ex = alg.matrix_unit(x);
        const CMatrix moved = s.beta.apply(g, ex);
        r.covariance = std::max(r.covariance, (ut(g) * d.pi_units[x] - d.pi(alg, moved) * ut(g)).norm());
        if (d.ubar) {
          const CMatrix shuffled = ui.adjoint() * moved * ui;
          r.ubar_commutation =
              std::max(r.ubar_commutation, ((*d.ubar)(g) * d.pi_units[x] - d.pi(alg, shuffled) * (*d.ubar)(g)).norm());
        }
      }
    }
    if (d.ubar) r.ubar_cocycle = d.ubar->validate().residual;
  }
  return r;
}

KSGNSDilation ksgns(const CPMapSpec& spec, const Tolerances& tol) {
  tol.validate();
  const auto report = cp_validate(spec, tol);
  if (!report.shapes) throw DimensionError("ksgns: " + report.detail);
  if (!report.completely_positive) throw NotPositiveError("ksgns: map is not completely positive", report.min_eigenvalue);
  if (!report.covariant) throw ValidationError("ksgns: " + report.detail);

  const auto& alg = spec.algebra;
  const int n = alg.dim();
  const auto kd = kolmogorov_decompose(cp_kernel(spec), tol);
  KSGNSDilation d;
  d.rank = kd.rank;
  d.r_units = kd.factors;
  d.j = CMatrix::Zero(d.rank, spec.fiber);
  for (int x = 0; x < n; ++x)
    if (alg.unit(x).row == alg.unit(x).col) d.j += d.r_units[x];

  double scale = 1;
  for (const auto& r : d.r_units) scale = std::max(scale, r.norm());
  const CMatrix zero = CMatrix::Zero(d.rank, spec.fiber);
  for (int x = 0; x < n; ++x) {
    std::vector<std::pair<CMatrix, CMatrix>> pairs;
    for (int y = 0; y < n; ++y) {
      const auto p = alg.product(x, y);
      pairs.emplace_back(d.r_units[y], p ? d.r_units[*p] : zero);
    }
    const auto sol = lstsq_define<double>(pairs, tol);
    certify("ksgns representation fit", sol.residual, tol.recon_fro * scale);
    d.pi_units.push_back(sol.map);
  }

  if (spec.symmetry) {
    const auto& s = *spec.symmetry;
    const FiniteGroup& g = s.rep.group();
    std::vector<CMatrix> ut(g.order()), ub(g.order());
    for (int a = 0; a < g.order(); ++a) {
      if (a == g.identity()) {
        ut[a] = CMatrix::Identity(d.rank, d.rank);
      } else {
        const CMatrix coeff = s.beta.coefficient_matrix(a);
        std::vector<std::pair<CMatrix, CMatrix>> pairs;
        for (int y = 0; y < n; ++y) {
          CMatrix moved = CMatrix::Zero(d.rank, spec.fiber);
          for (int z = 0; z < n; ++z)
            if (coeff(z, y) != Complex(0)) moved += coeff(z, y) * d.r_units[z];
          pairs.emplace_back(d.r_units[y], moved * s.rep(a));
        }
        const auto sol = lstsq_define<double>(pairs, tol);
        certify("ksgns covariance fit at g=" + std::to_string(a), sol.residual, tol.recon_fro * scale);
        certify("ksgns intertwiner unitarity at g=" + std::to_string(a), unitarity_defect(sol.map), tol.unitary_fro);
        ut[a] = sol.map;
      }
      ub[a] = d.pi(alg, s.beta.inner_part(a).adjoint()) * ut[a];
    }
    d.utilde = MultiplierRep(s.rep.cocycle(), std::move(ut), true);
    d.ubar = MultiplierRep::from_matrices(g, std::move(ub), true);
    const auto check = d.utilde->validate(tol);
    if (!check.ok) throw ToleranceError("ksgns intertwiner cocycle: " + check.detail, check.residual, tol.recon_fro);
  }

  const auto r = dilation_residuals(spec, d);
  const double lim = tol.recon_fro * std::max(1.0, double(d.rank));
  certify("ksgns reconstruction", r.reconstruction, tol.recon_fro * max_value_norm(spec));
  certify("ksgns multiplicativity", r.multiplicativity, lim);
  certify("ksgns adjoint", r.adjoint, lim);
  certify("ksgns unitality", r.unitality, lim);
  certify("ksgns minimality", r.minimality_defect, 0.0);
  certify("ksgns J intertwining", r.j_intertwining, tol.recon_fro * scale);
  certify("ksgns covariance", r.covariance, lim);
  certify("ksgns twisted intertwiner commutation", r.ubar_commutation, lim);
  return d;
}

TensorFactorization factor_rep_tensor(const std::vector<CMatrix>& pi_units, int n, const Tolerances& tol) {
  if (n < 1 || int(pi_units.size()) != n * n) throw DomainError("factor_rep_tensor: need the n^2 images of M_n");
  const Index big = pi_units.front().rows();
  if (big % n != 0) throw DomainError("factor_rep_tensor: dimension is not a multiple of n");
  const int r = int(big / n);
  const CMatrix f = range_basis(pi_units[0], tol);
  if (f.cols() != r) throw DomainError("factor_rep_tensor: not a unital representation of a full matrix block");
  TensorFactorization out;
  out.ancilla = r;
  out.intertwiner.resize(big, big);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < r; ++k) out.intertwiner.col(a * r + k) = pi_units[a * n] * f.col(k);
  const CMatrix& v = out.intertwiner;
  double res = unitarity_defect(v);
  const CMatrix id = CMatrix::Identity(r, r);
  for (int x = 0; x < n * n; ++x) {
    CMatrix e = CMatrix::Zero(n, n);
    e(x / n, x % n) = 1;
    res = std::max(res, (v.adjoint() * pi_units[x] * v - kron(e, id)).norm());
  }
  out.residual = res;
  certify("factor_rep_tensor intertwiner", res, tol.recon_fro * std::max(1.0, double(big)));
  return out;
}

std::vector<CMatrix> kraus_extract(const CPMapSpec& spec, const KSGNSDilation& d, const Tolerances& tol) {
  if (spec.algebra.num_blocks() != 1) throw DomainError("kraus_extract: algebra must be a single matrix block");
  const int n = spec.algebra.blocks()[0];
  const auto tf = factor_rep_tensor(d.pi_units, n, tol);
  const CMatrix jp = tf.intertwiner.adjoint() * d.j;
  std::vector<CMatrix> kraus;
  for (int l = 0; l < tf.ancilla; ++l) {
    CMatrix a(n, spec.fiber);
    for (int row = 0; row < n; ++row) a.row(row) = jp.row(row * tf.ancilla + l);
    kraus.push_back(std::move(a));
  }
  double res = 0;
  for (int x = 0; x < spec.algebra.dim(); ++x) {
    const CMatrix e = spec.algebra.matrix_unit(x);
    CMatrix v = CMatrix::Zero(spec.fiber, spec.fiber);
    for (const auto& a : kraus) v += a.adjoint() * e * a;
    res = std::max(res, (v - spec.values[x]).norm());
  }
  certify("kraus reconstruction", res, tol.recon_fro * max_value_norm(spec));
  return kraus;
}

CPExtremality cp_extremal(const CPMapSpec& spec, const KSGNSDilation& d, const Tolerances& tol) {
  const auto r = dilation_residuals(spec, d);
  if (r.reconstruction > tol.recon_fro * max_value_norm(spec))
    throw ValidationError("cp_extremal: dilation does not belong to this map");
  const CMatrix s1 = spec.unit_value();
  std::vector<CMatrix> gens = d.pi_units, gens_bar = d.pi_units;
  if (spec.symmetry) {
    const auto& rep = spec.symmetry->rep;
    for (int g = 0; g < rep.group().order(); ++g)
      if ((rep(g).adjoint() * s1 * rep(g) - s1).norm() > tol.recon_fro * scale_of(s1))
        throw DomainError("cp_extremal: the unit value is not invariant under the representation");
    if (!d.utilde || !d.ubar) throw ValidationError("cp_extremal: dilation lacks the intertwining representation");
    for (const auto& u : d.utilde->matrices()) gens.push_back(u);
    for (const auto& u : d.ubar->matrices()) gens_bar.push_back(u);
  }
  CPExtremality out;
  if (d.rank == 0) return out;
  std::vector<CMatrix> cons;
  for (Index a = 0; a < d.j.cols(); ++a)
    for (Index b = 0; b < d.j.cols(); ++b) {
      CMatrix c = d.j.col(a) * d.j.col(b).adjoint();
      if (c.norm() > 0) cons.push_back(std::move(c));
    }
  const auto basis = constrained_commutant<double>(gens, cons, true, tol);
  const auto basis_bar = constrained_commutant<double>(gens_bar, cons, true, tol);
  out.solution_dim = int(basis.size());
  out.extreme = basis.empty();
  out.extreme_ubar = basis_bar.empty();
  if (out.extreme) return out;
  const CMatrix w = hermitian_witness(basis.front());
  out.witness = w;
  CPMapSpec plus = spec, minus = spec;
  const CMatrix id = CMatrix::Identity(d.rank, d.rank);
  for (int x = 0; x < spec.algebra.dim(); ++x) {
    plus.values[x] = d.j.adjoint() * (id + w) * d.pi_units[x] * d.j;
    minus.values[x] = d.j.adjoint() * (id - w) * d.pi_units[x] * d.j;
  }
  out.split.emplace(std::move(plus), std::move(minus));
  return out;
}

std::pair<CPMapSpec, CPMapSpec> marginals(const CPMapSpec& joint, const TensorSplit& split,
                                          const std::optional<CPSymmetry>& left,
                                          const std::optional<CPSymmetry>& right) {
  if (!(joint.algebra == split.joint)) throw DimensionError("marginals: map is not defined on the split algebra");
  CPMapSpec a{split.left, joint.k, joint.fiber, {}, left};
  CPMapSpec b{split.right, joint.k, joint.fiber, {}, right};
  const CMatrix il = split.left.identity(), ir = split.right.identity();
  for (int x = 0; x < split.left.dim(); ++x) a.values.push_back(joint.value(split.embed(split.left.matrix_unit(x), ir)));
  for (int y = 0; y < split.right.dim(); ++y)
    b.values.push_back(joint.value(split.embed(il, split.right.matrix_unit(y))));
  return {std::move(a), std::move(b)};
}

CMatrix SubminimalMap::operator()(const FiniteCStarAlgebra& right, const CMatrix& c) const {
  const CVector coeff = right.coefficients(c);
  CMatrix out = CMatrix::Zero(values.front().rows(), values.front().cols());
  for (int y = 0; y < right.dim(); ++y)
    if (coeff(y) != Complex(0)) out += coeff(y) * values[y];
  return out;
}

SubminimalMap subminimal(const CPMapSpec& joint, const TensorSplit& split, const KSGNSDilation& left_dilation,
                         const std::optional<BlockAction>& right_action, const Tolerances& tol) {
  if (!(joint.algebra == split.joint)) throw DimensionError("subminimal: map is not defined on the split algebra");
  const auto& left = split.left;
  const auto& right = split.right;
  const int nb = left.dim(), n = joint.fiber, rank = left_dilation.rank;
  if (int(left_dilation.r_units.size()) != nb) throw DimensionError("subminimal: dilation is not over the left factor");
  CMatrix f(rank, nb * n);
  for (int x = 0; x < nb; ++x) f.middleCols(x * n, n) = left_dilation.r_units[x];
  // F has full row rank, so F⁺ = F†(FF†)⁻¹.
  const CMatrix gram = f * f.adjoint();
  const CMatrix pinv = f.adjoint() * lstsq_define<double>(gram, CMatrix::Identity(rank, rank), tol).map;

  SubminimalMap out;
  const CMatrix ir = right.identity();
  double res = 0, scale = 1;
  for (int c = 0; c < right.dim(); ++c) {
    const CMatrix ec = right.matrix_unit(c);
    CMatrix m(nb * n, nb * n);
    for (int x = 0; x < nb; ++x)
      for (int y = 0; y < nb; ++y) {
        const auto p = left.product(left.adjoint(x), y);
        m.block(x * n, y * n, n, n) =
            p ? joint.value(split.embed(left.matrix_unit(*p), ec)) : CMatrix::Zero(n, n);
      }
    CMatrix e = pinv.adjoint() * m * pinv;
    res = std::max(res, (f.adjoint() * e * f - m).norm());
    scale = std::max(scale, m.norm());
    out.values.push_back(std::move(e));
  }
  const CMatrix id = CMatrix::Identity(rank, rank);
  res = std::max(res, (out(right, ir) - id).norm());
  for (int x = 0; x < nb; ++x)
    for (int c = 0; c < right.dim(); ++c) {
      res = std::max(res, (out.values[c] * left_dilation.pi_units[x] - left_dilation.pi_units[x] * out.values[c]).norm());
      const CMatrix joint_value = joint.value(split.embed(left.matrix_unit(x), right.matrix_unit(c)));
      res = std::max(res, (left_dilation.j.adjoint() * left_dilation.pi_units[x] * out.values[c] * left_dilation.j -
                           joint_value).norm());
    }
  for (int i = 0; i < right.num_blocks(); ++i) {
    const int m = right.blocks()[i];
    CMatrix choi(m * rank, m * rank);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) choi.block(a * rank, b * rank, rank, rank) = out.values[right.index_of(i, a, b)];
    if (!psd_check(choi, tol)) throw ToleranceError("subminimal map is not completely positive", -min_eigenvalue(choi), 0);
  }
  if (right_action && left_dilation.utilde) {
    const auto& ut = *left_dilation.utilde;
    for (int g = 0; g < ut.group().order(); ++g)
      for (int c = 0; c < right.dim(); ++c)
        res = std::max(res, (ut(g) * out.values[c] -
                             out(right, right_action->apply(g, right.matrix_unit(c))) * ut(g)).norm());
  }
  out.residual = res;
  certify("subminimal factor identities", res, tol.recon_fro * scale * std::max(1.0, double(rank)));
  return out;
}

}  // namespace covkit
