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

// Finite-dimensional C*-algebras ⊕ M_{n_i}, matrix Hilbert modules over M_k,
// module-valued sesquilinear forms, and automorphism actions on algebras.

#pragma once

#include <optional>
#include <vector>

#include "covkit/fingroup.hpp"
#include "covkit/numlin.hpp"

namespace covkit {

/// ⊕_i M_{n_i}(ℂ), realized block-diagonally on ℂ^{Σ n_i}.
class FiniteCStarAlgebra {
 public:
  struct Unit {
    int block, row, col;
  };

  FiniteCStarAlgebra() : FiniteCStarAlgebra(std::vector<int>{1}) {}
  explicit FiniteCStarAlgebra(std::vector<int> blocks);

  static FiniteCStarAlgebra full(int n) { return FiniteCStarAlgebra({n}); }
  /// Functions on m points.
  static FiniteCStarAlgebra diagonal(int m) { return FiniteCStarAlgebra(std::vector<int>(m, 1)); }

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int num_blocks() const noexcept { return int(blocks_.size()); }
  /// Linear dimension Σ n_i².
  int dim() const noexcept { return dim_; }
  /// Size of the block-diagonal realization Σ n_i.
  int rep_dim() const noexcept { return rep_dim_; }
  int block_offset(int block) const { return offsets_[block]; }

  /// Matrix units are numbered block by block, row-major inside a block.
  Unit unit(int index) const { return units_[index]; }
  int index_of(int block, int row, int col) const;
  CMatrix matrix_unit(int index) const;
  CMatrix identity() const { return CMatrix::Identity(rep_dim_, rep_dim_); }
  /// E_x E_y as a matrix unit index, or nothing when the product vanishes.
  std::optional<int> product(int x, int y) const;
  int adjoint(int x) const;

  CMatrix element(const CVector& coefficients) const;
  /// Coefficients in the matrix-unit basis; off-block entries are ignored.
  CVector coefficients(const CMatrix& a) const;
  /// Frobenius size of the off-block part.
  double off_block_norm(const CMatrix& a) const;
  bool contains(const CMatrix& a, const Tolerances& tol = {}) const;
  /// Every block is positive semidefinite.
  bool is_positive(const CMatrix& a, const Tolerances& tol = {}) const;

  friend bool operator==(const FiniteCStarAlgebra& a, const FiniteCStarAlgebra& b) {
    return a.blocks_ == b.blocks_;
  }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  std::vector<int> unit_offsets_;
  std::vector<Unit> units_;
  int dim_ = 0;
  int rep_dim_ = 0;
};

/// A ⊗ B with blocks (i,j) ordered i-major and inner index a·m_j + c.
struct TensorSplit {
  FiniteCStarAlgebra left;
  FiniteCStarAlgebra right;
  FiniteCStarAlgebra joint;
  /// Permutation P with a ⊗ b realized as P (a ⊗ b) P†.
  CMatrix shuffle;

  CMatrix embed(const CMatrix& a, const CMatrix& b) const { return shuffle * kron(a, b) * shuffle.adjoint(); }
};

TensorSplit tensor(const FiniteCStarAlgebra& left, const FiniteCStarAlgebra& right);

/// Elements of L(ℂ^k; ℂ^n) with ⟨v,w⟩ = v†w ∈ M_k.
struct ModuleSpace {
  int k = 1;
  int n = 1;

  CMatrix inner(const CMatrix& v, const CMatrix& w) const;
  /// √‖⟨v,v⟩‖.
  double norm(const CMatrix& v) const;
  void require_element(const CMatrix& v) const;
};

/// s(v,w) = v† T w.
struct FormMatrix {
  CMatrix t;

  CMatrix operator()(const CMatrix& v, const CMatrix& w) const;
  bool positive(const Tolerances& tol = {}) const { return psd_check(t, tol); }
};

/// v ↦ L v.
struct ModuleMap {
  CMatrix l;

  CMatrix operator()(const CMatrix& v) const { return l * v; }
  ModuleMap adjoint() const { return {l.adjoint()}; }
  bool preserves_inner_product(const Tolerances& tol = {}) const;
  /// Inner-product preserving and surjective.
  bool is_unitary(const Tolerances& tol = {}) const;
};

/// β_g(b) = u_g b u_g† where u_g maps block i onto a block of equal size.
class BlockAction {
 public:
  BlockAction() = default;
  /// Validates the block structure and β_g β_h = β_{gh} on all matrix units.
  BlockAction(FiniteCStarAlgebra algebra, FiniteGroup group, std::vector<CMatrix> unitaries,
              const Tolerances& tol = {});

  static BlockAction trivial(const FiniteCStarAlgebra& algebra, const FiniteGroup& group);
  /// Inner action by a representation on the realization space.
  static BlockAction inner(const FiniteCStarAlgebra& algebra, const MultiplierRep& u, const Tolerances& tol = {});
  /// g(i ⊗ b) = (g i) ⊗ u_g b u_g† on Fun(Ω) ⊗ M_K.
  static BlockAction translation(const GroupAction& action, const MultiplierRep& u, const Tolerances& tol = {});

  const FiniteCStarAlgebra& algebra() const noexcept { return algebra_; }
  const FiniteGroup& group() const noexcept { return group_; }
  CMatrix apply(int g, const CMatrix& b) const { return full_[g] * b * full_[g].adjoint(); }
  const CMatrix& unitary(int g) const { return full_[g]; }
  /// Block i of the algebra is sent to block permutation(g)[i].
  const std::vector<int>& permutation(int g) const { return perm_[g]; }
  bool is_inner() const noexcept { return inner_; }
  /// Block-diagonal unitary element of the algebra carrying the per-block rotations.
  CMatrix inner_part(int g) const;
  /// Matrix of β_g in the matrix-unit basis: β_g(E_x) = Σ_y c(y,x) E_y.
  CMatrix coefficient_matrix(int g) const;

 private:
  FiniteCStarAlgebra algebra_;
  FiniteGroup group_;
  std::vector<CMatrix> full_;
  std::vector<std::vector<int>> perm_;
  bool inner_ = true;
};

}  // namespace covkit
