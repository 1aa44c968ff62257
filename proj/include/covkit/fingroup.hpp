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

// Finite groups, actions, scalar 2-cocycles, multiplier representations,
// numerical irreducible decomposition and the Fourier transform.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covkit/numlin.hpp"

namespace covkit {

/// A finite group given by its multiplication table over indices 0..order-1.
class FiniteGroup {
 public:
  /// Trivial group.
  FiniteGroup();
  /// Validates associativity, identity and inverses exhaustively.
  FiniteGroup(int order, std::vector<int> table, std::string name = "table");

  static FiniteGroup cyclic(int n);
  /// Symmetries of the regular n-gon, order 2n; element r^k s^f has index k + n f.
  static FiniteGroup dihedral(int n);
  /// Permutations of n ≤ 4 points in lexicographic order; product is composition (g h)(i) = g(h(i)).
  static FiniteGroup symmetric(int n);
  /// Z_d × Z_d with (q,p) at index q d + p.
  static FiniteGroup heisenberg(int d);
  /// (a,b) at index a |B| + b.
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const noexcept { return order_; }
  int identity() const noexcept { return identity_; }
  int mul(int g, int h) const { return table_[std::size_t(g) * order_ + h]; }
  int inverse(int g) const { return inverse_[g]; }
  const std::vector<int>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }

  /// Members of the subgroup generated by `gens`, sorted.
  std::vector<int> generated(const std::vector<int>& gens) const;
  /// All subgroups, each as a sorted member list (exhaustive; intended for small groups).
  std::vector<std::vector<int>> subgroups() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }

 private:
  int order_ = 1;
  int identity_ = 0;
  std::vector<int> table_{0};
  std::vector<int> inverse_{0};
  std::string name_ = "trivial";
};

class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(FiniteGroup group, int set_size, std::vector<int> table);

  /// Every element fixes every point.
  static GroupAction trivial(const FiniteGroup& group, int set_size);
  /// Left multiplication of the group on itself.
  static GroupAction regular(const FiniteGroup& group);
  /// Points of `a` first, then points of `b`.
  static GroupAction disjoint_union(const GroupAction& a, const GroupAction& b);

  const FiniteGroup& group() const noexcept { return group_; }
  int set_size() const noexcept { return set_size_; }
  int act(int g, int x) const { return table_[std::size_t(g) * set_size_ + x]; }
  const std::vector<int>& table() const noexcept { return table_; }
  /// Exhaustive check of act(e,x) = x and act(gh,x) = act(g,act(h,x)).
  Check validate() const;

 private:
  FiniteGroup group_;
  int set_size_ = 0;
  std::vector<int> table_;
};

/// Scalar 2-cocycle σ(g,h) with unit-modulus values.
class TwoCocycle {
 public:
  TwoCocycle() = default;
  TwoCocycle(FiniteGroup group, std::vector<Complex> values);

  static TwoCocycle trivial(const FiniteGroup& group);
  /// σ(g,h) = β(gh) / (β(g) β(h)) for unit-modulus β with β(e) = 1.
  static TwoCocycle coboundary(const FiniteGroup& group, const std::vector<Complex>& beta);

  const FiniteGroup& group() const noexcept { return group_; }
  Complex operator()(int g, int h) const { return values_[std::size_t(g) * group_.order() + h]; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  bool is_trivial(double tol = 1e-12) const;
  /// Pointwise product.
  TwoCocycle operator*(const TwoCocycle& other) const;
  TwoCocycle conj() const;

  /// Normalization, unit modulus and σ(g,hk)σ(h,k) = σ(gh,k)σ(g,h); reports the first violated triple.
  Check validate(double tol = 1e-10) const;

 private:
  FiniteGroup group_;
  std::vector<Complex> values_{Complex(1)};
};

/// g ↦ U(g) with U(g)U(h) = σ(g,h) U(gh).
class MultiplierRep {
 public:
  MultiplierRep() = default;
  MultiplierRep(TwoCocycle cocycle, std::vector<CMatrix> matrices, bool unitary = true);

  /// Reads the cocycle off the matrices: σ(g,h) = trace(U(gh)⁻¹U(g)U(h)) / dim.
  static MultiplierRep from_matrices(const FiniteGroup& group, std::vector<CMatrix> matrices,
                                     bool unitary = true);
  static MultiplierRep trivial(const FiniteGroup& group, int dim);

  const FiniteGroup& group() const noexcept { return cocycle_.group(); }
  const TwoCocycle& cocycle() const noexcept { return cocycle_; }
  int dim() const noexcept { return dim_; }
  bool unitary() const noexcept { return unitary_; }
  const CMatrix& operator()(int g) const { return matrices_[g]; }
  const std::vector<CMatrix>& matrices() const noexcept { return matrices_; }

  /// U(e) = I, the multiplier identity for all pairs and unitarity when flagged.
  Check validate(const Tolerances& tol = {}) const;

  /// V† U(g) V for an isometry V whose range is invariant.
  MultiplierRep restrict(const CMatrix& isometry) const;
  /// U(g) ⊗ W(g), cocycle is the product.
  MultiplierRep tensor(const MultiplierRep& other) const;
  MultiplierRep direct_sum(const MultiplierRep& other) const;
  /// Q U(g) Q⁻¹.
  MultiplierRep conjugate(const CMatrix& q) const;
  /// Restriction to a subgroup given by sorted member indices (the subgroup is re-indexed 0..|H|-1).
  MultiplierRep restrict_to_subgroup(const FiniteGroup& subgroup, const std::vector<int>& members) const;

 private:
  TwoCocycle cocycle_;
  int dim_ = 0;
  std::vector<CMatrix> matrices_;
  bool unitary_ = true;
};

/// The group formed by `members` with its own multiplication table (indices follow `members`).
FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& members);

/// Left cosets Ω = G/H with the canonical section and the translation action.
class SubgroupData {
 public:
  SubgroupData() = default;
  /// Throws ValidationError when `members` is not a subgroup.
  SubgroupData(FiniteGroup parent, std::vector<int> members);

  const FiniteGroup& parent() const noexcept { return parent_; }
  const std::vector<int>& members() const noexcept { return members_; }
  const FiniteGroup& subgroup() const noexcept { return subgroup_; }
  int num_cosets() const noexcept { return int(section_.size()); }
  int coset_of(int g) const { return coset_of_[g]; }
  int section(int omega) const { return section_[omega]; }
  /// g ω, the translation action.
  int act(int g, int omega) const { return coset_of(parent_.mul(g, section(omega))); }
  const GroupAction& action() const noexcept { return action_; }
  /// Index of h ∈ H within `members`.
  int subgroup_index(int h) const;
  /// Alternative section picking the largest member of each coset (and e for H itself).
  std::vector<int> alternative_section() const;

 private:
  FiniteGroup parent_;
  std::vector<int> members_;
  FiniteGroup subgroup_;
  std::vector<int> coset_of_;
  std::vector<int> section_;
  GroupAction action_;
};

MultiplierRep regular_rep(const FiniteGroup& group);
/// (λ(g)ψ)(h) = σ(g, g⁻¹h) ψ(g⁻¹h); contains every σ-irrep.
MultiplierRep twisted_regular_rep(const TwoCocycle& cocycle);

struct IrrepBlock {
  MultiplierRep irrep;
  int dim = 0;
  int multiplicity = 0;
  /// dim(U) × (dim·multiplicity) isometry; column a·m + r is basis vector a of copy r.
  CMatrix columns;
  std::vector<Complex> character;
};

struct IrrepDecomposition {
  std::vector<IrrepBlock> blocks;
  /// Unitary V with V† U(g) V = ⊕ τ_g ⊗ I_m.
  CMatrix change_of_basis;
  double residual = 0;
};

IrrepDecomposition irrep_decompose(const MultiplierRep& rep, std::uint64_t seed = 0,
                                   const Tolerances& tol = {});

/// A complete set of pairwise inequivalent irreducible σ-representations.
std::vector<MultiplierRep> irreps_of(const TwoCocycle& cocycle, std::uint64_t seed = 0,
                                     const Tolerances& tol = {});
std::vector<MultiplierRep> irreps_of(const FiniteGroup& group, std::uint64_t seed = 0,
                                     const Tolerances& tol = {});

/// Φ(τ) = Σ_g φ(g) τ_g.
std::vector<CMatrix> fourier(const std::vector<Complex>& phi, const std::vector<MultiplierRep>& irreps);
/// φ(g) = (1/|G|) Σ_τ n(τ) trace(τ_g† Φ(τ)).
std::vector<Complex> plancherel_inverse(const std::vector<CMatrix>& family,
                                        const std::vector<MultiplierRep>& irreps);

struct HeisenbergData {
  FiniteGroup group;
  TwoCocycle cocycle;
  MultiplierRep rep;
};

/// W(q,p) = X^q Z^p on ℂ^d with X|j⟩ = |j−1⟩, Z = diag(ω^j); σ((q,p),(q',p')) = ω^{−q'p}.
HeisenbergData heisenberg_rep(int d);

/// G × ℤ_m with (g,k)(h,l) = (gh, k + l + c(g,h)) where σ(g,h) = exp(2πi c(g,h)/m).
struct CentralExtension {
  FiniteGroup group;
  int phase_order = 1;
  int base_order = 1;

  int index(int g, int k) const { return g * phase_order + k; }
  int base(int x) const { return x / phase_order; }
  int phase(int x) const { return x % phase_order; }
  /// Members of the central subgroup {e} × ℤ_m.
  std::vector<int> center() const;
  /// (g,k) ↦ exp(2πi k/m) U(g); an ordinary representation when U has cocycle σ.
  MultiplierRep lift(const MultiplierRep& rep) const;
};

/// Rejects cocycles whose values are not roots of unity of order ≤ max_order.
CentralExtension central_extension(const TwoCocycle& cocycle, int max_order = 4096, double tol = 1e-9);

}  // namespace covkit
