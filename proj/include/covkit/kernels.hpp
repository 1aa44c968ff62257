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

// Positive covariant kernels over finite sets, their minimal covariant
// Kolmogorov decompositions and the extremality test.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "covkit/cstar.hpp"

namespace covkit {

/// Blocks T_{x,y} of a kernel K_{x,y}(v,w) = v† T_{x,y} w, with symmetry data (G on X, α, σ, U).
struct CovariantKernelSpec {
  GroupAction action;
  /// α(g,x) at g·|X| + x.
  std::vector<Complex> alpha;
  /// The cocycle associated with α.
  TwoCocycle sigma;
  MultiplierRep rep;
  /// Column dimension of module elements; forms do not depend on it.
  int k = 1;
  /// T_{x,y} at x·|X| + y, each fiber × fiber.
  std::vector<CMatrix> blocks;

  int x_size() const noexcept { return action.set_size(); }
  int fiber() const noexcept { return rep.dim(); }
  const CMatrix& block(int x, int y) const { return blocks[std::size_t(x) * x_size() + y]; }
  Complex alpha_at(int g, int x) const { return alpha[std::size_t(g) * x_size() + x]; }
  /// [T_{x,y}] as one (|X|·fiber)-square matrix.
  CMatrix grand_matrix() const;

  /// Trivial group, α ≡ 1, trivial representation.
  static CovariantKernelSpec plain(int x_size, int fiber, std::vector<CMatrix> blocks, int k = 1);
  /// α ≡ 1, trivial cocycle.
  static CovariantKernelSpec untwisted(GroupAction action, MultiplierRep rep, std::vector<CMatrix> blocks, int k = 1);
};

struct KernelReport {
  bool shapes = true;
  bool positive = true;
  bool covariant = true;
  bool alpha_ok = true;
  double min_eigenvalue = 0;
  double covariance_residual = 0;
  double alpha_residual = 0;
  std::string first_violation;

  bool ok() const noexcept { return shapes && positive && covariant && alpha_ok; }
};

KernelReport validate_kernel(const CovariantKernelSpec& spec, const Tolerances& tol = {});

struct KolmogorovDecomposition {
  int rank = 0;
  /// F_x, rank × fiber; R(x)v = F_x v.
  std::vector<CMatrix> factors;
  /// Cocycle is σ times the cocycle of the kernel's representation.
  MultiplierRep utilde;

  /// [F_0 | F_1 | …].
  CMatrix stacked() const;
};

/// Residuals of the defining identities of a decomposition against a kernel.
struct DecompositionResiduals {
  double reconstruction = 0;
  double minimality_defect = 0;
  double unitarity = 0;
  double cocycle = 0;
  double intertwining = 0;
};

DecompositionResiduals decomposition_residuals(const CovariantKernelSpec& spec, const KolmogorovDecomposition& d);

/// Minimal factorization with the intertwining multiplier representation, certified.
KolmogorovDecomposition kolmogorov_decompose(const CovariantKernelSpec& spec, const Tolerances& tol = {});

/// Builds Ũ for given factors F_x (solved per g and certified).
MultiplierRep intertwining_rep(const CovariantKernelSpec& spec, const std::vector<CMatrix>& factors,
                               const Tolerances& tol = {});

/// W with W F¹_x = F²_x and W Ũ¹(g) = Ũ²(g) W, certified unitary.
CMatrix equivalence_unitary(const KolmogorovDecomposition& a, const KolmogorovDecomposition& b,
                            const Tolerances& tol = {});

struct KernelExtremality {
  bool extreme = true;
  /// Dimension of the solution space (real when Hermitian, complex otherwise).
  int solution_dim = 0;
  bool hermitian_search = true;
  /// Hermitian witness with spectral norm 1.
  std::optional<CMatrix> witness;
  /// K = ½K⁺ + ½K⁻ with blocks F_x†(I ± D)F_y.
  std::optional<std::pair<CovariantKernelSpec, CovariantKernelSpec>> split;
};

/// Is the kernel extreme among covariant kernels agreeing with it on Z?
KernelExtremality kernel_extremal(const CovariantKernelSpec& spec, const std::vector<std::pair<int, int>>& z,
                                  const KolmogorovDecomposition& decomposition, const Tolerances& tol = {});

/// A Hermitian element of span(basis) with spectral norm 1 (falls back to i(D − D†) when D + D† vanishes).
CMatrix hermitian_witness(const CMatrix& d);

}  // namespace covkit
