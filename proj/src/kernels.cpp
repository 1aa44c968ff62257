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

#include "covkit/kernels.hpp"

#include <algorithm>
#include <set>

namespace covkit {

CMatrix CovariantKernelSpec::grand_matrix() const {
  const int m = x_size(), n = fiber();
  CMatrix g(m * n, m * n);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) g.block(x * n, y * n, n, n) = block(x, y);
  return g;
}

CovariantKernelSpec CovariantKernelSpec::plain(int x_size, int fiber, std::vector<CMatrix> blocks, int k) {
  const FiniteGroup e;
  return untwisted(GroupAction::trivial(e, x_size), MultiplierRep::trivial(e, fiber), std::move(blocks), k);
}

CovariantKernelSpec CovariantKernelSpec::untwisted(GroupAction action, MultiplierRep rep, std::vector<CMatrix> blocks,
                                                   int k) {
  CovariantKernelSpec s;
  s.alpha.assign(std::size_t(action.group().order()) * action.set_size(), Complex(1));
  s.sigma = TwoCocycle::trivial(action.group());
  s.action = std::move(action);
  s.rep = std::move(rep);
  s.k = k;
  s.blocks = std::move(blocks);
  return s;
}

KernelReport validate_kernel(const CovariantKernelSpec& spec, const Tolerances& tol) {
  KernelReport r;
  const FiniteGroup& g = spec.action.group();
  const int nx = spec.x_size(), n = spec.fiber();
  auto fail_shape = [&](const std::string& why) {
    r.shapes = r.positive = r.covariant = r.alpha_ok = false;
    r.first_violation = why;
    return r;
  };
  if (!(spec.rep.group() == g) || !(spec.sigma.group() == g)) return fail_shape("groups of action, cocycle and representation differ");
  if (spec.alpha.size() != std::size_t(g.order()) * nx) return fail_shape("alpha must have |G|*|X| entries");
  if (spec.blocks.size() != std::size_t(nx) * nx) return fail_shape("kernel needs |X|^2 blocks");
  for (const auto& b : spec.blocks)
    if (b.rows() != n || b.cols() != n) return fail_shape("kernel block does not match the fiber dimension");
  if (spec.k < 1) return fail_shape("module column dimension must be positive");
  auto note = [&](const std::string& what) {
    if (r.first_violation.empty()) r.first_violation = what;
  };

  const auto sc = spec.sigma.validate();
  if (!sc.ok) {
    r.alpha_ok = false;
    note("sigma: " + sc.detail);
  }
  for (int x = 0; x < nx; ++x) {
    if (std::abs(spec.alpha_at(g.identity(), x) - 1.0) > tol.recon_fro) {
      r.alpha_ok = false;
      note("alpha(e," + std::to_string(x) + ") != 1");
    }
    for (int a = 0; a < g.order(); ++a)
      if (std::abs(spec.alpha_at(a, x)) == 0) {
        r.alpha_ok = false;
        note("alpha vanishes");
      }
  }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int x = 0; x < nx; ++x) {
        const Complex lhs = spec.alpha_at(g.mul(a, b), x);
        const Complex rhs = spec.sigma(a, b) * spec.alpha_at(b, x) * spec.alpha_at(a, spec.action.act(b, x));
        const double d = std::abs(lhs - rhs);
        r.alpha_residual = std::max(r.alpha_residual, d);
        if (d > tol.recon_fro * std::max(1.0, std::abs(lhs))) {
          if (r.alpha_ok)
            note("alpha multiplier identity fails at g=" + std::to_string(a) + ", h=" + std::to_string(b) +
                 ", x=" + std::to_string(x));
          r.alpha_ok = false;
        }
      }

  const CMatrix grand = spec.grand_matrix();
  r.min_eigenvalue = min_eigenvalue(grand);
  r.positive = psd_check(grand, tol);
  if (!r.positive) note("kernel is not positive");

  const double limit = tol.recon_fro * scale_of(grand);
  for (int a = 0; a < g.order(); ++a) {
    const CMatrix& ui = spec.rep(g.inverse(a));
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < nx; ++y) {
        const CMatrix expected = std::conj(spec.alpha_at(a, x)) * spec.alpha_at(a, y) *
                                 (ui.adjoint() * spec.block(x, y) * ui);
        const double d = (spec.block(spec.action.act(a, x), spec.action.act(a, y)) - expected).norm();
        r.covariance_residual = std::max(r.covariance_residual, d);
        if (d > limit && r.covariant) {
          r.covariant = false;
          note("covariance fails at g=" + std::to_string(a) + ", x=" + std::to_string(x) + ", y=" + std::to_string(y));
        }
      }
  }
  return r;
}

CMatrix KolmogorovDecomposition::stacked() const {
  Index cols = 0;
  for (const auto& f : factors) cols += f.cols();
  CMatrix s(rank, cols);
  Index c = 0;
  for (const auto& f : factors) {
    s.middleCols(c, f.cols()) = f;
    c += f.cols();
  }
  return s;
}

MultiplierRep intertwining_rep(const CovariantKernelSpec& spec, const std::vector<CMatrix>& factors,
                               const Tolerances& tol) {
  const FiniteGroup& g = spec.action.group();
  const int nx = spec.x_size();
  const Index rank = factors.empty() ? 0 : factors.front().rows();
  double scale = 1;
  for (const auto& f : factors) scale = std::max(scale, f.norm());
  std::vector<CMatrix> mats(g.order());
  for (int a = 0; a < g.order(); ++a) {
    if (a == g.identity()) {
      mats[a] = CMatrix::Identity(rank, rank);
      continue;
    }
    std::vector<std::pair<CMatrix, CMatrix>> pairs;
    for (int x = 0; x < nx; ++x)
      pairs.emplace_back(factors[x], factors[spec.action.act(a, x)] * spec.rep(a) / spec.alpha_at(a, x));
    const auto sol = lstsq_define<double>(pairs, tol);
    certify("intertwining representation fit at g=" + std::to_string(a), sol.residual, tol.recon_fro * scale);
    certify("intertwining representation unitarity at g=" + std::to_string(a), unitarity_defect(sol.map),
            tol.unitary_fro);
    mats[a] = sol.map;
  }
  MultiplierRep out(spec.sigma * spec.rep.cocycle(), std::move(mats), true);
  const auto check = out.validate(tol);
  if (!check.ok) throw ToleranceError("intertwining representation cocycle: " + check.detail, check.residual, tol.recon_fro);
  return out;
}

DecompositionResiduals decomposition_residuals(const CovariantKernelSpec& spec, const KolmogorovDecomposition& d) {
  DecompositionResiduals r;
  const FiniteGroup& g = spec.action.group();
  const int nx = spec.x_size();
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y)
      r.reconstruction =
          std::max(r.reconstruction, (d.factors[x].adjoint() * d.factors[y] - spec.block(x, y)).norm());
  r.minimality_defect = double(std::abs(numerical_rank(d.stacked()) - Index(d.rank)));
  const auto& u = d.utilde;
  for (int a = 0; a < g.order(); ++a) {
    r.unitarity = std::max(r.unitarity, unitarity_defect(u(a)));
    for (int b = 0; b < g.order(); ++b)
      r.cocycle = std::max(r.cocycle, (u(a) * u(b) - u.cocycle()(a, b) * u(g.mul(a, b))).norm());
    for (int x = 0; x < nx; ++x)
      r.intertwining = std::max(
          r.intertwining,
          (u(a) * d.factors[x] - d.factors[spec.action.act(a, x)] * spec.rep(a) / spec.alpha_at(a, x)).norm());
  }
  return r;
}

KolmogorovDecomposition kolmogorov_decompose(const CovariantKernelSpec& spec, const Tolerances& tol) {
  tol.validate();
  const auto report = validate_kernel(spec, tol);
  if (!report.shapes) throw DimensionError("kolmogorov_decompose: " + report.first_violation);
  if (!report.positive)
    throw NotPositiveError("kolmogorov_decompose: kernel is not positive", report.min_eigenvalue);
  if (!report.ok()) throw ValidationError("kolmogorov_decompose: " + report.first_violation);
  const CMatrix grand = spec.grand_matrix();
  const auto f = psd_factor(grand, tol);
  KolmogorovDecomposition d;
  d.rank = int(f.rank);
  const int n = spec.fiber();
  for (int x = 0; x < spec.x_size(); ++x) d.factors.push_back(f.factor.middleCols(x * n, n));
  d.utilde = intertwining_rep(spec, d.factors, tol);
  const auto r = decomposition_residuals(spec, d);
  certify("kolmogorov reconstruction", r.reconstruction, tol.recon_fro * scale_of(grand));
  certify("kolmogorov minimality", r.minimality_defect, 0.0);
  return d;
}

CMatrix equivalence_unitary(const KolmogorovDecomposition& a, const KolmogorovDecomposition& b,
                            const Tolerances& tol) {
  if (a.rank != b.rank || a.factors.size() != b.factors.size())
    throw DimensionError("equivalence_unitary: decompositions have different shapes");
  std::vector<std::pair<CMatrix, CMatrix>> pairs;
  double scale = 1;
  for (std::size_t x = 0; x < a.factors.size(); ++x) {
    pairs.emplace_back(a.factors[x], b.factors[x]);
    scale = std::max(scale, a.factors[x].norm());
  }
  const auto sol = lstsq_define<double>(pairs, tol);
  certify("equivalence_unitary factor map", sol.residual, tol.recon_fro * scale);
  certify("equivalence_unitary unitarity", unitarity_defect(sol.map), tol.unitary_fro);
  double inter = 0;
  for (int g = 0; g < a.utilde.group().order(); ++g)
    inter = std::max(inter, (sol.map * a.utilde(g) - b.utilde(g) * sol.map).norm());
  certify("equivalence_unitary intertwining", inter, tol.recon_fro);
  return sol.map;
}

CMatrix hermitian_witness(const CMatrix& d) {
  CMatrix h = d + d.adjoint();
  if (h.norm() < 1e-6 * d.norm()) h = Complex(0, 1) * (d - d.adjoint());
  const double s = spectral_norm(h);
  return s > 0 ? CMatrix(h / s) : h;
}

KernelExtremality kernel_extremal(const CovariantKernelSpec& spec, const std::vector<std::pair<int, int>>& z,
                                  const KolmogorovDecomposition& decomposition, const Tolerances& tol) {
  if (z.empty()) throw DomainError("kernel_extremal: Z must be nonempty");
  const int nx = spec.x_size();
  for (const auto& [x, y] : z)
    if (x < 0 || y < 0 || x >= nx || y >= nx) throw DimensionError("kernel_extremal: Z pair out of range");
  const auto r = decomposition_residuals(spec, decomposition);
  const double scale = scale_of(spec.grand_matrix());
  if (r.reconstruction > tol.recon_fro * scale || r.intertwining > tol.recon_fro * scale)
    throw ValidationError("kernel_extremal: decomposition does not belong to this kernel");

  KernelExtremality out;
  const int n = decomposition.rank;
  if (n == 0) return out;
  const std::set<std::pair<int, int>> zs(z.begin(), z.end());
  bool symmetric = true;
  for (const auto& [x, y] : zs) symmetric = symmetric && zs.count({y, x});
  out.hermitian_search = !symmetric;

  std::vector<CMatrix> cons;
  for (const auto& [x, y] : zs) {
    const CMatrix& fx = decomposition.factors[x];
    const CMatrix& fy = decomposition.factors[y];
    for (Index a = 0; a < fx.cols(); ++a)
      for (Index b = 0; b < fy.cols(); ++b) {
        CMatrix c = fx.col(a) * fy.col(b).adjoint();
        if (c.norm() > 0) cons.push_back(std::move(c));
      }
  }
  const auto basis = constrained_commutant<double>(decomposition.utilde.matrices(), cons, out.hermitian_search, tol);
  out.solution_dim = int(basis.size());
  out.extreme = basis.empty();
  if (out.extreme) return out;

  const CMatrix d = hermitian_witness(basis.front());
  out.witness = d;
  CovariantKernelSpec plus = spec, minus = spec;
  const CMatrix id = CMatrix::Identity(n, n);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y) {
      const CMatrix& fx = decomposition.factors[x];
      const CMatrix& fy = decomposition.factors[y];
      plus.blocks[std::size_t(x) * nx + y] = fx.adjoint() * (id + d) * fy;
      minus.blocks[std::size_t(x) * nx + y] = fx.adjoint() * (id - d) * fy;
    }
  out.split.emplace(std::move(plus), std::move(minus));
  return out;
}

}  // namespace covkit
