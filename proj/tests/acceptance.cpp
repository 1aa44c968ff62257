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

// Acceptance suite: ten criteria, each printed as one PASS or FAIL line with
// the worst residual seen. Exits nonzero when any criterion fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "support/extremality_oracles.hpp"
#include "support/generators.hpp"
#include "support/matrices.hpp"
#include "support/oracles.hpp"

using namespace covkit;
using namespace covkit::testing;

namespace {

/// Collects bounds and expectations for one criterion.
class Tally {
 public:
  void bound(const std::string& what, double residual, double limit) {
    if (!std::isfinite(worst_) || residual > worst_) worst_ = residual;
    if (!(residual <= limit)) fail(what + " residual " + sci(residual) + " > " + sci(limit));
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void count() { ++instances_; }

  bool passed() const noexcept { return failures_ == 0; }
  int instances() const noexcept { return instances_; }
  double worst() const noexcept { return worst_; }
  const std::string& first_failure() const noexcept { return first_; }

  static std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
  }

 private:
  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }

  int failures_ = 0;
  int instances_ = 0;
  double worst_ = 0;
  std::string first_;
};

/// A representation of exactly dimension n.
MultiplierRep rep_of_dim(const FiniteGroup& g, int n, std::mt19937_64& rng) {
  for (;;) {
    auto r = random_rep(g, n, rng);
    if (r.dim() == n) return r;
  }
}

/// A random action on at most four points: a disjoint union of coset spaces.
GroupAction random_small_action(const FiniteGroup& g, std::mt19937_64& rng) {
  std::vector<GroupAction> orbits;
  for (const auto& h : g.subgroups())
    if (g.order() / int(h.size()) <= 4) orbits.push_back(SubgroupData(g, h).action());
  GroupAction out = orbits[rng() % orbits.size()];
  for (int tries = 0; tries < 3 && rng() % 2; ++tries) {
    const auto& more = orbits[rng() % orbits.size()];
    if (out.set_size() + more.set_size() <= 4) out = GroupAction::disjoint_union(out, more);
  }
  return out;
}

double block_distance(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

/// Numerical rank from a plain Hermitian eigensolver, independent of the library's rank logic.
Index eigen_rank(const CMatrix& a) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  return (es.eigenvalues().array() > 1e-9 * std::max(1.0, top)).count();
}

const std::vector<FiniteGroup> kernel_groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                                FiniteGroup::symmetric(3)};

// ---------------------------------------------------------------------------

void kolmogorov_reconstruction(Tally& t) {
  std::mt19937_64 rng(101);
  const auto start = std::chrono::steady_clock::now();
  while (t.instances() < 100) {
    const auto& g = kernel_groups[rng() % kernel_groups.size()];
    const auto action = random_small_action(g, rng);
    const auto rep = random_rep(g, 3, rng);
    const Index full = Index(action.set_size()) * rep.dim();
    auto spec = random_covariant_kernel(action, rep, 1 + Index(rng() % std::uint64_t(full)), rng);
    spec.k = 1 + int(rng() % 2);
    if (!validate_kernel(spec).ok()) continue;
    t.count();
    const auto d = kolmogorov_decompose(spec);
    const auto r = decomposition_residuals(spec, d);
    t.bound("reconstruction", r.reconstruction, 1e-8);
    t.bound("unitarity", r.unitarity, 1e-8);
    t.bound("cocycle", r.cocycle, 1e-8);
    t.bound("intertwining", r.intertwining, 1e-8);
    // Recomputed here from the factors alone.
    double recon = 0, unit = 0, inter = 0;
    for (int x = 0; x < spec.x_size(); ++x)
      for (int y = 0; y < spec.x_size(); ++y)
        recon = std::max(recon, (d.factors[x].adjoint() * d.factors[y] - spec.block(x, y)).norm());
    for (int a = 0; a < g.order(); ++a) {
      const CMatrix& u = d.utilde(a);
      unit = std::max(unit, (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm());
      for (int x = 0; x < spec.x_size(); ++x)
        inter = std::max(inter, (u * d.factors[x] - d.factors[action.act(a, x)] * rep(a)).norm());
    }
    t.bound("F_x^* F_y = T_{x,y}", recon, 1e-8);
    t.bound("U~ unitary", unit, 1e-8);
    t.bound("U~ F_x = F_{gx} U", inter, 1e-8);
    t.expect(d.rank == eigen_rank(spec.grand_matrix()), "rank differs from the Gram rank");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 60, "runtime " + std::to_string(secs) + " s exceeds 60 s");
}

void uniqueness(Tally& t) {
  std::mt19937_64 rng(202);
  while (t.instances() < 20) {
    const auto& g = kernel_groups[rng() % kernel_groups.size()];
    const auto action = random_small_action(g, rng);
    const auto rep = random_rep(g, 3, rng);
    const auto spec = random_covariant_kernel(action, rep, 1 + Index(rng() % 3), rng);
    t.count();
    const auto a = kolmogorov_decompose(spec);
    // An independent factorization: plain eigendecomposition of the Gram matrix.
    const CMatrix f = oracle_factor(spec.grand_matrix());
    KolmogorovDecomposition b;
    b.rank = int(f.rows());
    for (int x = 0; x < spec.x_size(); ++x) b.factors.push_back(f.middleCols(Index(x) * rep.dim(), rep.dim()));
    b.utilde = intertwining_rep(spec, b.factors);
    t.expect(a.rank == b.rank, "factorizations have different ranks");
    if (a.rank != b.rank) continue;
    const CMatrix w = equivalence_unitary(a, b);
    double res = 0;
    for (int x = 0; x < spec.x_size(); ++x) res = std::max(res, (w * a.factors[x] - b.factors[x]).norm());
    for (int e = 0; e < g.order(); ++e) res = std::max(res, (w * a.utilde(e) - b.utilde(e) * w).norm());
    t.bound("W F1 = F2, W U1 = U2 W", res, 1e-8);
    t.bound("W unitary", unitarity_defect(w), 1e-8);
  }
}

void ksgns_certification(Tally& t) {
  std::mt19937_64 rng(303);
  const std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3),
                                           heisenberg_rep(2).group};
  while (t.instances() < 50) {
    const auto& g = groups[rng() % groups.size()];
    const int shape = t.instances() % 3;
    const auto alg = shape == 0 ? FiniteCStarAlgebra::full(2)
                   : shape == 1 ? FiniteCStarAlgebra::full(3)
                                : FiniteCStarAlgebra({2, 1});
    const MultiplierRep u = shape == 2 ? rep_of_dim(g, 2, rng).direct_sum(rep_of_dim(g, 1, rng))
                                       : rep_of_dim(g, alg.rep_dim(), rng);
    const auto beta = BlockAction::inner(alg, u);
    // The fiber representation must carry the cocycle of u for covariant maps to exist.
    const MultiplierRep rep = u.cocycle().is_trivial() ? random_rep(g, 3, rng) : u;
    const auto s = random_covariant_cpmap(beta, rep, 1 + int(rng() % 3), rng);
    if (!cp_validate(s).ok()) continue;
    t.count();
    const auto d = ksgns(s);
    const auto r = dilation_residuals(s, d);
    t.bound("multiplicativity", r.multiplicativity, 1e-8);
    t.bound("adjoint", r.adjoint, 1e-8);
    t.bound("S_b = J^* pi(b) J", r.reconstruction, 1e-8);
    t.bound("U~ pi = (pi o beta) U~", r.covariance, 1e-8);
    t.bound("[U-, pi] = 0", r.ubar_commutation, 1e-8);
    // Spot checks on random elements, straight from the values.
    for (int trial = 0; trial < 3; ++trial) {
      const CMatrix b1 = alg.element(random_complex(alg.dim(), 1, rng));
      const CMatrix b2 = alg.element(random_complex(alg.dim(), 1, rng));
      t.bound("J^* pi(b) J on random b", (d.j.adjoint() * d.pi(alg, b1) * d.j - evaluate(alg, s.values, b1)).norm(),
              1e-8 * std::max(1.0, b1.norm()));
      t.bound("pi(b1 b2) = pi(b1) pi(b2)", (d.pi(alg, b1 * b2) - d.pi(alg, b1) * d.pi(alg, b2)).norm(),
              1e-8 * std::max(1.0, b1.norm() * b2.norm()));
      t.bound("pi(b^*) = pi(b)^*", (d.pi(alg, b1.adjoint()) - d.pi(alg, b1).adjoint()).norm(),
              1e-8 * std::max(1.0, b1.norm()));
    }
  }
}

void kraus_equivalence(Tally& t) {
  std::mt19937_64 rng(404);
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 2 + inst % 2;
    const int count = 1 + int(rng() % std::uint64_t(n * n));
    const int fiber = 1 + int(rng() % 3);
    std::vector<CMatrix> raw;
    for (int i = 0; i < count; ++i) raw.push_back(random_complex(n, fiber, rng));
    const auto s = CPMapSpec::from_kraus(n, raw);
    t.count();
    const auto kraus = kraus_extract(s, ksgns(s));
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix b = random_complex(n, n, rng);
      CMatrix via = CMatrix::Zero(s.fiber, s.fiber);
      for (const auto& a : kraus) via += a.adjoint() * b * a;
      const CMatrix direct = s.value(b);
      t.bound("relative error of sum A^* b A", (via - direct).norm() / std::max(direct.norm(), 1e-300), 1e-8);
    }
    const Index choi_rank = eigen_rank(s.choi_block(0));
    t.expect(Index(kraus.size()) == choi_rank, "Kraus count " + std::to_string(kraus.size()) + " != Choi rank " +
                                                   std::to_string(choi_rank));
  }
}

void extremality_agreement(Tally& t) {
  // Flip observables M_0 = diag(p, 1-p), M_1 = X M_0 X with the Z_2 symmetry.
  const auto z2 = FiniteGroup::cyclic(2);
  const auto flip_rep = MultiplierRep::from_matrices(z2, {CMatrix::Identity(2, 2), pauli_x()});
  for (int step = 0; step <= 10; ++step) {
    const double p = step / 10.0;
    ObservableSpec m;
    m.dim = 2;
    m.effects = {mat({{p, 0}, {0, 1 - p}}), mat({{1 - p, 0}, {0, p}})};
    m.symmetry = OutcomeSymmetry{SubgroupData(z2, {0}), flip_rep};
    t.count();
    const auto v = observable_verdicts(m);
    const bool oracle = observable_oracle(m) == 0;
    t.expect(v.agree(), "flip p=" + std::to_string(p) + ": code paths disagree");
    t.expect(v.kernel_level == oracle, "flip p=" + std::to_string(p) + ": verdict differs from the oracle");
    if (step == 0 || step == 10) t.expect(v.kernel_level, "flip p in {0,1} must be extreme");
    if (step == 5) {
      t.expect(!v.kernel_level, "flip p=1/2 must not be extreme");
      const auto e = observable_extremal(lambda_from_observable(m));
      t.expect(e.split.has_value(), "flip p=1/2 has no explicit split");
      if (e.split) {
        t.expect(validate_observable(e.split->first).ok() && validate_observable(e.split->second).ok(),
                 "flip split halves do not validate");
        double avg = 0;
        for (int w = 0; w < 2; ++w)
          avg = std::max(avg, (0.5 * (e.split->first.effects[w] + e.split->second.effects[w]) - m.effects[w]).norm());
        t.bound("flip split average", avg, 1e-8);
        t.expect((e.split->first.effects[0] - m.effects[0]).norm() > 1e-3, "flip split is trivial");
      }
    }
  }

  // Mixtures w Ad(U1) + (1-w) Ad(U2) on M_2: CP level, twisted CP level, and the
  // one-outcome instrument's Kraus-level test.
  std::mt19937_64 rng(505);
  const std::vector<std::pair<CMatrix, CMatrix>> pairs = {{CMatrix::Identity(2, 2), pauli_x()},
                                                          {random_unitary(2, rng), random_unitary(2, rng)}};
  for (const auto& [u1, u2] : pairs)
    for (double w : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      std::vector<CMatrix> kraus;
      if (w > 0) kraus.push_back(std::sqrt(w) * u1);
      if (w < 1) kraus.push_back(std::sqrt(1 - w) * u2);
      const auto s = CPMapSpec::from_kraus(2, kraus);
      t.count();
      const auto ce = cp_extremal(s, ksgns(s));
      const auto ie = instrument_extremal(InstrumentSpec::from_kraus(2, {kraus}));
      const bool oracle = cp_oracle(s) == 0;
      const std::string tag = "mixture w=" + std::to_string(w);
      t.expect(ce.extreme == ce.extreme_ubar && ce.extreme == ie.extreme && ie.agree(), tag + ": code paths disagree");
      t.expect(ce.extreme == oracle, tag + ": verdict differs from the oracle");
      t.expect(ce.extreme == (w == 0 || w == 1), tag + ": wrong ground truth");
      if (ce.split) {
        t.expect(cp_validate(ce.split->first).ok() && cp_validate(ce.split->second).ok(), tag + ": split invalid");
        t.bound(tag + " split unit value", (ce.split->first.unit_value() - s.unit_value()).norm(), 1e-8);
      }
    }

  // Phase-space instruments on Z_2 x Z_2 with seeds of rank one and two.
  CVector psi = random_complex(2, 1, rng);
  psi.normalize();
  const CMatrix mixed = random_psd(2, 2, rng);
  const std::vector<std::pair<CMatrix, bool>> seeds = {{mat({{1, 0}, {0, 0}}), true},
                                                       {psi * psi.adjoint(), true},
                                                       {CMatrix::Identity(2, 2) / 2.0, false},
                                                       {mixed / mixed.trace().real(), false}};
  for (const auto& [seed, extreme] : seeds) {
    const auto g = phase_space(2, spectral_kraus(seed, 2));
    t.count();
    const auto e = instrument_extremal(g);
    const bool oracle = instrument_oracle(g) == 0;
    const std::string tag = "phase space rank " + std::to_string(eigen_rank(seed));
    t.expect(e.agree(), tag + ": code paths disagree");
    t.expect(e.extreme == oracle, tag + ": verdict differs from the oracle");
    t.expect(e.extreme == extreme, tag + ": wrong ground truth");
    if (e.split)
      t.expect(validate_instrument(e.split->first).ok() && validate_instrument(e.split->second).ok(),
               tag + ": split invalid");
  }
}

void instrument_round_trip(Tally& t) {
  std::mt19937_64 rng(606);
  const std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)};
  while (t.instances() < 30) {
    const auto& grp = groups[rng() % groups.size()];
    const auto subs = grp.subgroups();
    const SubgroupData cosets(grp, subs[rng() % subs.size()]);
    const InstrumentSymmetry sym{cosets, random_rep(grp, 3, rng), random_rep(grp, 3, rng)};
    const auto family = random_instrument_kraus(sym, 1 + int(rng() % 2), rng);
    std::vector<int> section;
    for (int w = 0; w < cosets.num_cosets(); ++w) section.push_back(cosets.section(w));
    if (structure_residuals(family, sym, section).normalization > 1e-8) continue;  // seed did not span V
    t.count();
    const auto g = instrument_from_B(family, sym);
    for (const auto& b : {B_from_instrument(g), B_from_instrument_chain(g)}) {
      t.bound("instrument_from_B(B_from_instrument(G)) = G", block_distance(instrument_from_B(b, sym).choi, g.choi),
              1e-8);
      for (const auto& s : {section, cosets.alternative_section()}) {
        const auto r = structure_residuals(b, sym, s);
        t.bound("subgroup invariance", r.h_invariance, 1e-8);
        t.bound("normalization", r.normalization, 1e-8);
      }
    }
  }
}

void square_integrability(Tally& t) {
  std::mt19937_64 rng(707);
  for (int d : {2, 3, 5}) {
    t.count();
    const auto h = heisenberg_rep(d);
    const auto sq = sq_constant(h.rep);
    t.expect(sq.constant, "Weyl representation not square integrable for d=" + std::to_string(d));
    t.bound("sq_constant = d", std::abs(sq.d - d), 1e-10);
    // Direct sums over the group for random unit vectors.
    for (int trial = 0; trial < 5; ++trial) {
      CVector phi = random_complex(d, 1, rng), psi = random_complex(d, 1, rng);
      phi.normalize();
      psi.normalize();
      double direct = 0;
      for (const auto& w : h.rep.matrices()) direct += std::norm(phi.dot(w * psi));
      t.bound("direct sum of |<phi, W psi>|^2 = d", std::abs(direct - d), 1e-10);
    }
    for (const CMatrix& seed : {CMatrix(unit_matrix(d, 0, 0)), CMatrix(random_psd(d, d, rng))}) {
      const CMatrix s = seed / seed.trace().real();
      const auto g = phase_space(d, spectral_kraus(s, d));
      CMatrix total = CMatrix::Zero(d, d);
      for (int w = 0; w < g.outcomes(); ++w) total += g.effect(w);
      t.bound("sum of phase-space effects = I", (total - CMatrix::Identity(d, d)).norm(), 1e-10);
      const auto st = sq_structure(g);
      CMatrix bb = CMatrix::Zero(d, d);
      for (const auto& b : st.kraus) bb += b.adjoint() * b;
      t.bound("trace S = 1", std::abs(st.seed.trace() - Complex(1)), 1e-10);
      t.bound("S / d = sum B^* B", (st.seed / st.d - bb).norm(), 1e-10);
      t.bound("recovered S equals the input seed", (st.seed - s).norm(), 1e-10);
    }
  }
}

void fourier_plancherel(Tally& t) {
  std::vector<FiniteGroup> groups;
  for (int n = 1; n <= 6; ++n) groups.push_back(FiniteGroup::cyclic(n));
  groups.push_back(FiniteGroup::symmetric(3));
  groups.push_back(FiniteGroup::dihedral(4));
  for (const auto& g : groups) {
    t.count();
    const auto irreps = irreps_of(g);
    int squares = 0;
    for (const auto& u : irreps) squares += u.dim() * u.dim();
    t.expect(squares == g.order(), "irrep dimensions of " + g.name() + " do not square-sum to the order");
    for (int e = 0; e < g.order(); ++e) {
      std::vector<Complex> phi(g.order(), 0.0);
      phi[e] = 1;
      const auto f = fourier(phi, irreps);
      const auto back = plancherel_inverse(f, irreps);
      double err = 0, energy = 0;
      for (int x = 0; x < g.order(); ++x) err = std::max(err, std::abs(back[x] - phi[x]));
      for (std::size_t k = 0; k < f.size(); ++k) energy += irreps[k].dim() * f[k].squaredNorm();
      t.bound("Fourier round trip", err, 1e-10);
      t.bound("Parseval", std::abs(energy / g.order() - 1.0), 1e-10);
    }
  }
}

void decomposable_operators(Tally& t) {
  std::mt19937_64 rng(909);
  for (int inst = 0; inst < 20; ++inst) {
    t.count();
    const int n = 2 + inst % 3;
    std::vector<int> map(n), fibers(n, 1 + int(rng() % 3));
    for (int i = 0; i < n; ++i) map[i] = (i + inst) % n;
    DecomposableOp op{fibers, map, {}};
    for (int w = 0; w < n; ++w) op.blocks.push_back(random_complex(fibers[w], fibers[w], rng));
    const CMatrix big = op.assemble();
    const auto back = decomposable_extract(big, fibers, map);
    t.bound("extract(assemble(blocks)) = blocks", block_distance(back.blocks, op.blocks), 0);
    t.bound("assemble(extract(op)) = op", (back.assemble() - big).norm(), 0);

    // Unitary blocks give a unitary operator, and a unitary operator has unitary blocks.
    DecomposableOp u{fibers, map, {}};
    for (int w = 0; w < n; ++w) u.blocks.push_back(random_unitary(fibers[w], rng));
    t.expect(u.blocks_unitary(), "unitary blocks not recognized");
    t.bound("operator from unitary blocks is unitary", unitarity_defect(u.assemble()), 1e-12);
    const auto again = decomposable_extract(u.assemble(), fibers, map);
    t.expect(again.blocks_unitary(), "blocks of a unitary operator are not unitary");
    // Breaking one block breaks both sides.
    u.blocks[inst % n] *= 1.5;
    t.expect(!u.blocks_unitary(), "scaled block reported unitary");
    t.expect(unitarity_defect(u.assemble()) > 0.1, "operator with a scaled block reported unitary");
  }
}

void sampler_statistics(Tally& t) {
  t.count();
  const CMatrix ket0 = unit_matrix(2, 0, 0);
  const auto g = phase_space(2, spectral_kraus(ket0, 2));
  const auto dist = outcome_distribution(g, ket0);
  const double p = dist.probabilities[0];
  t.bound("engine Born value equals tr(rho M_00)", std::abs(p - (ket0 * g.effect(0)).trace().real()), 1e-12);
  const int n = 100000;
  const auto draws = sample_outcomes(dist, n, 20260101);
  const double hits = double(std::count(draws.begin(), draws.end(), 0));
  const double sigma = std::sqrt(n * p * (1 - p));
  t.bound("|count(0,0) - n p| in units of sigma", std::abs(hits - n * p) / sigma, 3.0);
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Tally&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Kolmogorov reconstruction", kolmogorov_reconstruction},
      {2, "uniqueness up to a unitary", uniqueness},
      {3, "KSGNS certification", ksgns_certification},
      {4, "Kraus equivalence", kraus_equivalence},
      {5, "extremality oracle agreement", extremality_agreement},
      {6, "covariant instrument round trip", instrument_round_trip},
      {7, "square integrability and phase space", square_integrability},
      {8, "Fourier and Plancherel", fourier_plancherel},
      {9, "decomposable operators", decomposable_operators},
      {10, "sampler statistics", sampler_statistics},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-38s  instances %3d  worst %s  %.2f s%s%s\n", t.passed() ? "PASS" : "FAIL", c.id, c.name,
                t.instances(), Tally::sci(t.worst()).c_str(), secs, t.passed() ? "" : "  :: ",
                t.first_failure().c_str());
    std::fflush(stdout);
    failed += !t.passed();
  }
  std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
