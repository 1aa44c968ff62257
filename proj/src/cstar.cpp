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

#include "covkit/cstar.hpp"

namespace covkit {

FiniteCStarAlgebra::FiniteCStarAlgebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DimensionError("algebra needs at least one block");
  for (int i = 0; i < num_blocks(); ++i) {
    const int n = blocks_[i];
    if (n < 1) throw DimensionError("algebra block sizes must be positive");
    offsets_.push_back(rep_dim_);
    unit_offsets_.push_back(dim_);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) units_.push_back({i, a, b});
    rep_dim_ += n;
    dim_ += n * n;
  }
}

int FiniteCStarAlgebra::index_of(int block, int row, int col) const {
  return unit_offsets_[block] + row * blocks_[block] + col;
}

CMatrix FiniteCStarAlgebra::matrix_unit(int index) const {
  const Unit u = units_[index];
  CMatrix m = CMatrix::Zero(rep_dim_, rep_dim_);
  m(offsets_[u.block] + u.row, offsets_[u.block] + u.col) = 1;
  return m;
}

std::optional<int> FiniteCStarAlgebra::product(int x, int y) const {
  const Unit a = units_[x], b = units_[y];
  if (a.block != b.block || a.col != b.row) return std::nullopt;
  return index_of(a.block, a.row, b.col);
}

int FiniteCStarAlgebra::adjoint(int x) const {
  const Unit a = units_[x];
  return index_of(a.block, a.col, a.row);
}

CMatrix FiniteCStarAlgebra::element(const CVector& coefficients) const {
  if (coefficients.size() != dim_) throw DimensionError("algebra element: wrong number of coefficients");
  CMatrix m = CMatrix::Zero(rep_dim_, rep_dim_);
  for (int x = 0; x < dim_; ++x) {
    const Unit u = units_[x];
    m(offsets_[u.block] + u.row, offsets_[u.block] + u.col) = coefficients(x);
  }
  return m;
}

CVector FiniteCStarAlgebra::coefficients(const CMatrix& a) const {
  if (a.rows() != rep_dim_ || a.cols() != rep_dim_) throw DimensionError("algebra element: wrong size");
  CVector c(dim_);
  for (int x = 0; x < dim_; ++x) {
    const Unit u = units_[x];
    c(x) = a(offsets_[u.block] + u.row, offsets_[u.block] + u.col);
  }
  return c;
}

double FiniteCStarAlgebra::off_block_norm(const CMatrix& a) const {
  CMatrix rest = a;
  for (int i = 0; i < num_blocks(); ++i)
    rest.block(offsets_[i], offsets_[i], blocks_[i], blocks_[i]).setZero();
  return rest.norm();
}

bool FiniteCStarAlgebra::contains(const CMatrix& a, const Tolerances& tol) const {
  if (a.rows() != rep_dim_ || a.cols() != rep_dim_) return false;
  return off_block_norm(a) <= tol.recon_fro * scale_of(a);
}

bool FiniteCStarAlgebra::is_positive(const CMatrix& a, const Tolerances& tol) const {
  if (!contains(a, tol)) throw DimensionError("is_positive: not an element of the algebra");
  for (int i = 0; i < num_blocks(); ++i)
    if (!psd_check(a.block(offsets_[i], offsets_[i], blocks_[i], blocks_[i]), tol)) return false;
  return true;
}

TensorSplit tensor(const FiniteCStarAlgebra& left, const FiniteCStarAlgebra& right) {
  std::vector<int> blocks;
  for (int n : left.blocks())
    for (int m : right.blocks()) blocks.push_back(n * m);
  TensorSplit out{left, right, FiniteCStarAlgebra(blocks), CMatrix()};
  const int dl = left.rep_dim(), dr = right.rep_dim();
  out.shuffle = CMatrix::Zero(dl * dr, dl * dr);
  int target = 0;
  for (int i = 0; i < left.num_blocks(); ++i)
    for (int j = 0; j < right.num_blocks(); ++j)
      for (int a = 0; a < left.blocks()[i]; ++a)
        for (int c = 0; c < right.blocks()[j]; ++c) {
          const int source = (left.block_offset(i) + a) * dr + right.block_offset(j) + c;
          out.shuffle(target++, source) = 1;
        }
  return out;
}

void ModuleSpace::require_element(const CMatrix& v) const {
  if (v.rows() != n || v.cols() != k)
    throw DimensionError("module element must be " + std::to_string(n) + "x" + std::to_string(k));
}

CMatrix ModuleSpace::inner(const CMatrix& v, const CMatrix& w) const {
  require_element(v);
  require_element(w);
  return v.adjoint() * w;
}

double ModuleSpace::norm(const CMatrix& v) const { return std::sqrt(spectral_norm(inner(v, v))); }

CMatrix FormMatrix::operator()(const CMatrix& v, const CMatrix& w) const {
  if (v.rows() != t.rows() || w.rows() != t.cols() || v.cols() != w.cols())
    throw DimensionError("form evaluation: shapes do not agree");
  return v.adjoint() * t * w;
}

bool ModuleMap::preserves_inner_product(const Tolerances& tol) const {
  return (l.adjoint() * l - CMatrix::Identity(l.cols(), l.cols())).norm() <= tol.unitary_fro;
}

bool ModuleMap::is_unitary(const Tolerances& tol) const {
  return preserves_inner_product(tol) && numerical_rank(l, tol) == l.rows();
}

BlockAction::BlockAction(FiniteCStarAlgebra algebra, FiniteGroup group, std::vector<CMatrix> unitaries,
                         const Tolerances& tol)
    : algebra_(std::move(algebra)), group_(std::move(group)), full_(std::move(unitaries)) {
  const int d = algebra_.rep_dim();
  if (int(full_.size()) != group_.order()) throw DimensionError("block action: one unitary per group element");
  for (int g = 0; g < group_.order(); ++g) {
    const CMatrix& u = full_[g];
    if (u.rows() != d || u.cols() != d) throw DimensionError("block action: unitary has the wrong size");
    if (unitarity_defect(u) > tol.unitary_fro) throw ValidationError("block action: u_g is not unitary");
    std::vector<int> perm(algebra_.num_blocks(), -1);
    for (int i = 0; i < algebra_.num_blocks(); ++i) {
      const int n = algebra_.blocks()[i];
      const auto cols = u.middleCols(algebra_.block_offset(i), n);
      for (int j = 0; j < algebra_.num_blocks(); ++j) {
        if (algebra_.blocks()[j] != n) continue;
        if (cols.middleRows(algebra_.block_offset(j), n).norm() > 0.5) {
          perm[i] = j;
          break;
        }
      }
      if (perm[i] < 0) throw ValidationError("block action: u_g does not map blocks onto blocks");
      const double leak = std::sqrt(std::max(0.0, cols.squaredNorm() -
                                                      cols.middleRows(algebra_.block_offset(perm[i]), n).squaredNorm()));
      if (leak > tol.unitary_fro)
        throw ValidationError("block action: u_g mixes block " + std::to_string(i) + " with other blocks");
      if (perm[i] != i) inner_ = false;
    }
    perm_.push_back(std::move(perm));
  }
  const int e = group_.identity();
  for (int x = 0; x < algebra_.dim(); ++x)
    if ((apply(e, algebra_.matrix_unit(x)) - algebra_.matrix_unit(x)).norm() > tol.recon_fro)
      throw ValidationError("block action: identity element acts nontrivially");
  std::vector<CMatrix> coeff(group_.order());
  for (int g = 0; g < group_.order(); ++g) coeff[g] = coefficient_matrix(g);
  for (int g = 0; g < group_.order(); ++g)
    for (int h = 0; h < group_.order(); ++h)
      if ((coeff[g] * coeff[h] - coeff[group_.mul(g, h)]).norm() > tol.recon_fro * algebra_.dim())
        throw ValidationError("block action: beta_g beta_h differs from beta_gh at (" + std::to_string(g) + "," +
                              std::to_string(h) + ")");
}

BlockAction BlockAction::trivial(const FiniteCStarAlgebra& algebra, const FiniteGroup& group) {
  return BlockAction(algebra, group, std::vector<CMatrix>(group.order(), algebra.identity()));
}

BlockAction BlockAction::inner(const FiniteCStarAlgebra& algebra, const MultiplierRep& u, const Tolerances& tol) {
  return BlockAction(algebra, u.group(), u.matrices(), tol);
}

BlockAction BlockAction::translation(const GroupAction& action, const MultiplierRep& u, const Tolerances& tol) {
  if (!(action.group() == u.group())) throw DimensionError("translation action: groups differ");
  const int m = action.set_size(), k = u.dim();
  FiniteCStarAlgebra alg(std::vector<int>(m, k));
  std::vector<CMatrix> full;
  for (int g = 0; g < action.group().order(); ++g) {
    CMatrix w = CMatrix::Zero(m * k, m * k);
    for (int i = 0; i < m; ++i) w.block(action.act(g, i) * k, i * k, k, k) = u(g);
    full.push_back(std::move(w));
  }
  return BlockAction(std::move(alg), action.group(), std::move(full), tol);
}

CMatrix BlockAction::inner_part(int g) const {
  CMatrix out = CMatrix::Zero(algebra_.rep_dim(), algebra_.rep_dim());
  for (int i = 0; i < algebra_.num_blocks(); ++i) {
    const int n = algebra_.blocks()[i], j = perm_[g][i];
    out.block(algebra_.block_offset(j), algebra_.block_offset(j), n, n) =
        full_[g].block(algebra_.block_offset(j), algebra_.block_offset(i), n, n);
  }
  return out;
}

CMatrix BlockAction::coefficient_matrix(int g) const {
  const int n = algebra_.dim();
  CMatrix c(n, n);
  for (int x = 0; x < n; ++x) c.col(x) = algebra_.coefficients(apply(g, algebra_.matrix_unit(x)));
  return c;
}

}  // namespace covkit
