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

// Covariant completely positive maps b ↦ S_b on finite-dimensional C*-algebras:
// minimal covariant dilations S_b = J†π(b)J, Kraus forms, extremality,
// marginals of joint maps and the subminimal factor.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covkit/kernels.hpp"

namespace covkit {

/// S_β(g)(b) = U(g⁻¹)† S_b U(g⁻¹).
struct CPSymmetry {
  BlockAction beta;
  MultiplierRep rep;
};

struct CPMapSpec {
  FiniteCStarAlgebra algebra;
  int k = 1;
  int fiber = 1;
  /// Form matrix of S on each matrix unit.
  std::vector<CMatrix> values;
  std::optional<CPSymmetry> symmetry;

  /// Linear extension to an element of the algebra (block-diagonal realization).
  CMatrix value(const CMatrix& b) const;
  /// Blocks S_{E_x† E_y} over all matrix units.
  CMatrix grand_matrix() const;
  /// Per algebra block i, the matrix with (a,b) sub-block S_{E^i_ab}.
  CMatrix choi_block(int block) const;
  CMatrix unit_value() const { return value(algebra.identity()); }

  /// S_b = Σ_λ A_λ† b A_λ on M_n.
  static CPMapSpec from_kraus(int n, const std::vector<CMatrix>& kraus, int k = 1);
};

struct CPReport {
  bool shapes = true;
  bool completely_positive = true;
  bool covariant = true;
  bool nonzero = true;
  double min_eigenvalue = 0;
  double covariance_residual = 0;
  std::string detail;

  bool ok() const noexcept { return shapes && completely_positive && covariant; }
};

CPReport cp_validate(const CPMapSpec& spec, const Tolerances& tol = {});

struct KSGNSDilation {
  int rank = 0;
  /// R(E_x) = π(E_x) J, rank × fiber.
  std::vector<CMatrix> r_units;
  CMatrix j;
  /// π(E_x).
  std::vector<CMatrix> pi_units;
  std::optional<MultiplierRep> utilde;
  /// π(ũ_g†) Ũ(g) with ũ_g the block-diagonal part of the action.
  std::optional<MultiplierRep> ubar;

  CMatrix pi(const FiniteCStarAlgebra& algebra, const CMatrix& b) const;
};

struct DilationResiduals {
  double reconstruction = 0;
  double multiplicativity = 0;
  double adjoint = 0;
  double unitality = 0;
  double minimality_defect = 0;
  double j_intertwining = 0;
  double covariance = 0;
  double ubar_commutation = 0;
  double ubar_cocycle = 0;
};

DilationResiduals dilation_residuals(const CPMapSpec& spec, const KSGNSDilation& d);

KSGNSDilation ksgns(const CPMapSpec& spec, const Tolerances& tol = {});

/// The kernel (E_x, E_y) ↦ S_{E_x† E_y} over the matrix units, with trivial symmetry.
CovariantKernelSpec cp_kernel(const CPMapSpec& spec);

struct TensorFactorization {
  int ancilla = 0;
  /// V†π(b)V = b ⊗ I_r, column a·r + k.
  CMatrix intertwiner;
  double residual = 0;
};

/// For a unital *-representation of M_n given on its matrix units.
TensorFactorization factor_rep_tensor(const std::vector<CMatrix>& pi_units, int n, const Tolerances& tol = {});

/// A_λ with S_b = Σ_λ A_λ† b A_λ; requires a single-block algebra.
std::vector<CMatrix> kraus_extract(const CPMapSpec& spec, const KSGNSDilation& d, const Tolerances& tol = {});

struct CPExtremality {
  bool extreme = true;
  /// Verdict when Ū replaces Ũ among the generators.
  bool extreme_ubar = true;
  int solution_dim = 0;
  std::optional<CMatrix> witness;
  std::optional<std::pair<CPMapSpec, CPMapSpec>> split;
};

/// Extremality among covariant CP maps with the same unit value.
CPExtremality cp_extremal(const CPMapSpec& spec, const KSGNSDilation& d, const Tolerances& tol = {});

/// S¹_b = S_{b⊗1}, S²_c = S_{1⊗c}; symmetries are attached when supplied.
std::pair<CPMapSpec, CPMapSpec> marginals(const CPMapSpec& joint, const TensorSplit& split,
                                          const std::optional<CPSymmetry>& left = std::nullopt,
                                          const std::optional<CPSymmetry>& right = std::nullopt);

struct SubminimalMap {
  /// E(E_c) per matrix unit of the right factor.
  std::vector<CMatrix> values;
  double residual = 0;

  CMatrix operator()(const FiniteCStarAlgebra& right, const CMatrix& c) const;
};

/// The unique unital CP map E on the dilation space of S¹ with S_{b⊗c} = J†π(b)E(c)J.
SubminimalMap subminimal(const CPMapSpec& joint, const TensorSplit& split, const KSGNSDilation& left_dilation,
                         const std::optional<BlockAction>& right_action = std::nullopt, const Tolerances& tol = {});

}  // namespace covkit
