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

// Observables and instruments with outcomes in a homogeneous space Ω = G/H:
// Naimark dilations, imprimitivity systems, the Λ description of covariant
// observables, Kraus structure of covariant instruments, square-integrable
// representations, the finite phase space and an outcome sampler.
//
// Measures: counting measure on Ω, uniform probability on H, weight 1/|H|
// per element of G.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covkit/cpmaps.hpp"

namespace covkit {

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  /// Detail of the first failed check, empty when all pass.
  std::string first_failure() const;
  void add(std::string name, bool ok, double residual, std::string detail = {});
};

/// Ω = G/H with U acting on the input space.
struct OutcomeSymmetry {
  SubgroupData cosets;
  MultiplierRep rep;
};

struct ObservableSpec {
  int dim = 1;
  std::vector<CMatrix> effects;
  std::optional<OutcomeSymmetry> symmetry;

  int outcomes() const noexcept { return int(effects.size()); }
};

/// Ω = G/H, U on the input space V and u on the output space K.
struct InstrumentSymmetry {
  SubgroupData cosets;
  MultiplierRep rep;
  MultiplierRep out_rep;
};

/// Γ_ω: M_K → M_V stored by Choi matrices whose (a,b) block is Γ_ω(E_ab).
struct InstrumentSpec {
  int k_dim = 1;
  int v_dim = 1;
  std::vector<CMatrix> choi;
  std::optional<InstrumentSymmetry> symmetry;

  int outcomes() const noexcept { return int(choi.size()); }
  CMatrix apply(int omega, const CMatrix& b) const;
  CMatrix effect(int omega) const { return apply(omega, CMatrix::Identity(k_dim, k_dim)); }
  /// State update ρ ↦ Γ̃_ω(ρ) with tr(Γ̃_ω(ρ) b) = tr(ρ Γ_ω(b)).
  CMatrix predual(int omega, const CMatrix& rho) const;

  /// Γ_ω(b) = Σ_j A_ωj† b A_ωj.
  static InstrumentSpec from_kraus(int k_dim, const std::vector<std::vector<CMatrix>>& kraus);
};

/// Kraus operators A_ωj of one outcome (descending Choi eigenvalues).
std::vector<CMatrix> outcome_kraus(const InstrumentSpec& g, int omega, const Tolerances& tol = {});

ValidationReport validate_observable(const ObservableSpec& m, const Tolerances& tol = {});
ValidationReport validate_instrument(const InstrumentSpec& g, const Tolerances& tol = {});

ObservableSpec marginal_observable(const InstrumentSpec& g);
CPMapSpec marginal_channel(const InstrumentSpec& g);

/// f ↦ Σ f(ω) M_ω on functions on Ω.
CPMapSpec observable_as_cpmap(const ObservableSpec& m);
/// The instrument as one CP map on Fun(Ω) ⊗ M_K.
CPMapSpec instrument_as_cpmap(const InstrumentSpec& g);
InstrumentSpec instrument_from_cpmap(const CPMapSpec& s, int k_dim, const std::optional<InstrumentSymmetry>& sym);

/// Operator on ⊕_ω ℂ^{m(ω)} with (Bψ)(ω) = B_T(ω) ψ(T⁻¹ω).
struct DecomposableOp {
  std::vector<int> fibers;
  /// ω ↦ Tω.
  std::vector<int> map;
  /// Block at ω is m(ω) × m(T⁻¹ω).
  std::vector<CMatrix> blocks;

  CMatrix assemble() const;
  bool blocks_unitary(const Tolerances& tol = {}) const;
};

std::vector<int> fiber_offsets(const std::vector<int>& fibers);

/// Reads off the blocks of an operator that moves fiber T⁻¹ω into fiber ω; certified.
DecomposableOp decomposable_extract(const CMatrix& b, const std::vector<int>& fibers, const std::vector<int>& map,
                                    const Tolerances& tol = {});

struct NaimarkData {
  std::vector<int> fibers;
  /// Total space × input space.
  CMatrix isometry;
  /// Per g, the blocks y(g,ω): m(g⁻¹ω) → m(ω); empty without symmetry.
  std::vector<DecomposableOp> cocycle;

  int total() const;
  CMatrix projection(int omega) const;
};

NaimarkData naimark(const ObservableSpec& m, const Tolerances& tol = {});

/// y(g,ω) = ρ(s(ω)⁻¹ g s(g⁻¹ω)) for a representation ρ of H.
struct WignerRotation {
  /// Element of H (parent index) at g·|Ω| + ω.
  std::vector<int> elements;
  std::vector<CMatrix> values;
  double strictness_residual = 0;

  const CMatrix& operator()(int g, int omega, int num_cosets) const {
    return values[std::size_t(g) * num_cosets + omega];
  }
};

/// `rho` is indexed by subgroup position (SubgroupData::subgroup_index).
WignerRotation wigner_rotation(const SubgroupData& cosets, const MultiplierRep& rho, const Tolerances& tol = {});

/// Functions f: G → M⁰ with f(gh) = ρ(h)† f(g), their translation representation and position projections.
struct CanonicalSystem {
  int fiber = 0;
  int dim = 0;
  /// Column ω·m + i is the function with f(s(ω)) = e_i, listed over G (row g·m + row).
  CMatrix functions;
  /// ϑ_g f = f(g⁻¹ ·) in the basis above.
  MultiplierRep translation;
  std::vector<CMatrix> projections;
  /// (U′f)(ω) = y(g,ω) f(g) for any g in ω, onto ℂ^{|Ω|} ⊗ M⁰.
  CMatrix to_induced;
  /// (y_g ψ)(ω) = y(g,ω) ψ(g⁻¹ω).
  MultiplierRep induced;
  double residual = 0;
};

CanonicalSystem canonical_system(const SubgroupData& cosets, const MultiplierRep& rho, const Tolerances& tol = {});

/// Λ = Σ_τ √μ(τ) [Λ_0(τ) | … ] V_τ† with μ(τ) = n(τ)|H|/|G|.
struct CovariantObservableData {
  OutcomeSymmetry symmetry;
  /// Representation of H on M⁰, indexed by subgroup position.
  MultiplierRep rho;
  IrrepDecomposition decomposition;
  /// lambda[τ][j] : multiplicity space of τ → M⁰.
  std::vector<std::vector<CMatrix>> lambda;

  int fiber() const noexcept { return rho.dim(); }
  /// The operator Λ: V → M⁰.
  CMatrix standard() const;
};

ObservableSpec observable_from_lambda(const CovariantObservableData& data, const Tolerances& tol = {});
CovariantObservableData lambda_from_observable(const ObservableSpec& m, std::uint64_t seed = 0,
                                               const Tolerances& tol = {});

struct ObservableExtremality {
  bool extreme = true;
  int solution_dim = 0;
  std::optional<CMatrix> witness;
  std::optional<std::pair<ObservableSpec, ObservableSpec>> split;
};

ObservableExtremality observable_extremal(const CovariantObservableData& data, const Tolerances& tol = {});

/// Kernel over Ω ∪ {•}: K_{ω,ω'} = δ M_ω, K_{•,ω} = K_{ω,•} = M_ω, K_{•,•} = I, with Z = {ω ≠ ω'} ∪ {(•,•)}.
struct ObservableKernel {
  CovariantKernelSpec kernel;
  std::vector<std::pair<int, int>> z;
};

ObservableKernel observable_kernel(const ObservableSpec& m);

/// Every verdict path for an observable, which must agree.
struct ObservableVerdicts {
  bool kernel_level = true;
  bool cp_level = true;
  bool cp_level_twisted = true;
  /// Only with a symmetry.
  std::optional<bool> lambda_level;

  bool agree() const noexcept {
    return kernel_level == cp_level && cp_level == cp_level_twisted && (!lambda_level || *lambda_level == cp_level);
  }
};

ObservableVerdicts observable_verdicts(const ObservableSpec& m, std::uint64_t seed = 0, const Tolerances& tol = {});

struct CovariantInstrumentData {
  /// B_j: V → K.
  std::vector<CMatrix> kraus;
};

struct StructureResiduals {
  double h_invariance = 0;
  double normalization = 0;
};

StructureResiduals structure_residuals(const CovariantInstrumentData& b, const InstrumentSymmetry& sym,
                                       const std::vector<int>& section);

/// Γ_ω(b) = Σ_j C_ωj† b C_ωj with C_ωj = u_{s(ω)} B_j U(s(ω))†.
InstrumentSpec instrument_from_B(const CovariantInstrumentData& b, const InstrumentSymmetry& sym,
                                 const Tolerances& tol = {});
/// Kraus operators of the base-point map Γ_{ω₀} from its Choi matrix.
CovariantInstrumentData B_from_instrument(const InstrumentSpec& g, const Tolerances& tol = {});
/// B_j = A_j Λ through the observable dilation, the subminimal factor and its base-point fiber.
CovariantInstrumentData B_from_instrument_chain(const InstrumentSpec& g, const Tolerances& tol = {});

struct InstrumentExtremality {
  bool extreme = true;
  bool extreme_twisted = true;
  bool extreme_kraus = true;
  int solution_dim = 0;
  std::optional<CMatrix> witness;
  std::optional<std::pair<InstrumentSpec, InstrumentSpec>> split;

  bool agree() const noexcept { return extreme == extreme_twisted && extreme == extreme_kraus; }
};

InstrumentExtremality instrument_extremal(const InstrumentSpec& g, const Tolerances& tol = {});

/// Σ_g |⟨φ|W(g)ψ⟩|² / |H| is the same d for all unit φ, ψ.
struct SquareIntegrability {
  bool constant = false;
  double d = 0;
  double spread = 0;
};

SquareIntegrability sq_constant(const MultiplierRep& w, int subgroup_order = 1, const Tolerances& tol = {});

struct SquareIntegrableStructure {
  double d = 0;
  /// d Σ_j B_j†B_j.
  CMatrix seed;
  std::vector<CMatrix> kraus;
  double trace_residual = 0;
  double effect_residual = 0;
  double invariance_residual = 0;
};

SquareIntegrableStructure sq_structure(const InstrumentSpec& g, const Tolerances& tol = {});

/// Instrument over Z_d × Z_d with Γ_{(q,p)}(b) = Σ_j W B_j† W† b W B_j W†, W = W(q,p); needs d·Σ tr B_j†B_j = 1.
InstrumentSpec phase_space(int d, const std::vector<CMatrix>& kraus, const Tolerances& tol = {});
/// B_j = √(λ_j/d) |ψ_j⟩⟨ψ_j| from the spectral decomposition of a trace-one S.
std::vector<CMatrix> spectral_kraus(const CMatrix& s, int d, const Tolerances& tol = {});

struct OutcomeDistribution {
  std::vector<double> probabilities;
  /// Normalized post-measurement states (empty for outcomes of probability zero).
  std::vector<CMatrix> post_states;
};

OutcomeDistribution outcome_distribution(const InstrumentSpec& g, const CMatrix& state, const Tolerances& tol = {});

struct Sample {
  int outcome = 0;
  double probability = 0;
  CMatrix post_state;
};

Sample sample(const InstrumentSpec& g, const CMatrix& state, std::uint64_t seed, const Tolerances& tol = {});
/// n draws from one seeded stream.
std::vector<int> sample_outcomes(const OutcomeDistribution& dist, int n, std::uint64_t seed);

}  // namespace covkit
