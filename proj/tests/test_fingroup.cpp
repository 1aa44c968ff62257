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

#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "covkit/fingroup.hpp"
#include "support/matrices.hpp"

using namespace covkit;
using namespace covkit::testing;

namespace {

// Σ_g |<φ|U(g)ψ>|² straight from the matrices.
double coefficient_sum(const MultiplierRep& w, const CVector& phi, const CVector& psi) {
  double s = 0;
  for (const auto& m : w.matrices()) s += std::norm(phi.dot(m * psi));
  return s;
}

CVector random_unit(Index n, std::mt19937_64& rng) {
  CVector v = random_complex(n, 1, rng);
  return v / v.norm();
}

}  // namespace

TEST_CASE("group constructors satisfy the group axioms") {
  for (const auto& g : {FiniteGroup::cyclic(5), FiniteGroup::dihedral(4), FiniteGroup::symmetric(3),
                        FiniteGroup::heisenberg(3), FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                                                FiniteGroup::cyclic(3))}) {
    for (int a = 0; a < g.order(); ++a) {
      CHECK(g.mul(a, g.inverse(a)) == g.identity());
      for (int b = 0; b < g.order(); ++b)
        for (int c = 0; c < g.order(); ++c) REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    }
  }
  CHECK(FiniteGroup::symmetric(3).order() == 6);
  CHECK(FiniteGroup::dihedral(4).order() == 8);
  CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}), ValidationError);
}

TEST_CASE("cocycle validation") {
  const auto z2 = FiniteGroup::cyclic(2);
  CHECK(TwoCocycle::trivial(z2).validate().ok);
  CHECK(TwoCocycle(z2, {1, 1, 1, -1}).validate().ok);
  CHECK_FALSE(TwoCocycle(z2, {1, -1, 1, 1}).validate().ok);
  const auto z3 = FiniteGroup::cyclic(3);
  const Complex w = std::polar(1.0, 0.7);
  CHECK(TwoCocycle::coboundary(z3, {1, w, w * w * w}).validate().ok);
  CHECK_FALSE(TwoCocycle(z3, std::vector<Complex>(9, Complex(2))).validate().ok);

  const auto h = heisenberg_rep(2);
  CHECK(h.cocycle.validate().ok);
  for (Complex s : h.cocycle.values()) CHECK(std::abs(std::abs(s.real()) - 1) < 1e-15);
  CHECK(h.rep.validate().ok);
}

TEST_CASE("multiplier representation identities") {
  for (int d : {1, 2, 3, 5}) {
    const auto h = heisenberg_rep(d);
    const auto& g = h.group;
    for (int a = 0; a < g.order(); ++a) {
      const CMatrix prod = h.rep(a) * h.rep(g.inverse(a));
      CHECK((prod - h.cocycle(a, g.inverse(a)) * CMatrix::Identity(d, d)).norm() < 1e-12);
    }
  }
  const auto h2 = heisenberg_rep(2);
  CHECK((h2.rep(2) - pauli_x()).norm() < 1e-15);
  CHECK((h2.rep(1) - pauli_z()).norm() < 1e-15);
  CHECK((h2.rep(3) - pauli_x() * pauli_z()).norm() < 1e-15);

  const auto recovered = MultiplierRep::from_matrices(h2.group, h2.rep.matrices());
  for (std::size_t i = 0; i < recovered.cocycle().values().size(); ++i)
    CHECK(std::abs(recovered.cocycle().values()[i] - h2.cocycle.values()[i]) < 1e-12);

  std::vector<CMatrix> bad = h2.rep.matrices();
  bad[1] = 2.0 * bad[1];
  CHECK_FALSE(MultiplierRep(h2.cocycle, bad, true).validate().ok);
}

TEST_CASE("cosets and sections") {
  const auto z4 = FiniteGroup::cyclic(4);
  const SubgroupData half(z4, {0, 2});
  CHECK(half.num_cosets() == 2);
  CHECK(half.section(0) == 0);
  CHECK(half.action().validate().ok);

  const auto s3 = FiniteGroup::symmetric(3);
  int transposition = -1;
  for (int g = 0; g < 6; ++g)
    if (g != s3.identity() && s3.mul(g, g) == s3.identity()) {
      transposition = g;
      break;
    }
  const SubgroupData lines(s3, s3.generated({transposition}));
  CHECK(lines.num_cosets() == 3);
  for (int w = 0; w < 3; ++w) CHECK(lines.coset_of(lines.section(w)) == w);
  CHECK(lines.action().validate().ok);

  std::vector<int> all(6);
  for (int g = 0; g < 6; ++g) all[g] = g;
  const SubgroupData whole(s3, all);
  CHECK(whole.num_cosets() == 1);
  CHECK(whole.section(0) == s3.identity());

  CHECK_THROWS_AS(SubgroupData(z4, {0, 1}), ValidationError);
  CHECK(FiniteGroup::symmetric(3).subgroups().size() == 6);
}

TEST_CASE("regular representations") {
  const auto r2 = regular_rep(FiniteGroup::cyclic(2));
  CHECK((r2(1) - pauli_x()).norm() == 0);
  const auto r6 = regular_rep(FiniteGroup::symmetric(3));
  CHECK(r6.validate().ok);
  for (int g = 1; g < 6; ++g) CHECK((r6(g) - CMatrix::Identity(6, 6)).norm() > 1);
  CHECK(regular_rep(FiniteGroup()).dim() == 1);
  CHECK(twisted_regular_rep(heisenberg_rep(3).cocycle).validate().ok);
}

TEST_CASE("irreducible decomposition") {
  SUBCASE("trivial rep of Z_2 in dimension 3") {
    const auto dec = irrep_decompose(MultiplierRep::trivial(FiniteGroup::cyclic(2), 3));
    REQUIRE(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].dim == 1);
    CHECK(dec.blocks[0].multiplicity == 3);
  }
  SUBCASE("regular rep of Z_3 has three characters") {
    const auto dec = irrep_decompose(regular_rep(FiniteGroup::cyclic(3)));
    REQUIRE(dec.blocks.size() == 3);
    std::vector<Complex> values;
    for (const auto& b : dec.blocks) {
      CHECK(b.dim == 1);
      CHECK(b.multiplicity == 1);
      values.push_back(b.character[1]);
    }
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
    for (Complex target : {Complex(1), w, w * w})
      CHECK(std::any_of(values.begin(), values.end(), [&](Complex v) { return std::abs(v - target) < 1e-10; }));
    CHECK(std::abs(values[0] - 1.0) < 1e-10);
  }
  SUBCASE("regular rep of S_3") {
    const auto rep = regular_rep(FiniteGroup::symmetric(3));
    const auto dec = irrep_decompose(rep, 7);
    REQUIRE(dec.blocks.size() == 3);
    CHECK(dec.blocks[0].dim == 1);
    CHECK(dec.blocks[1].dim == 1);
    CHECK(dec.blocks[2].dim == 2);
    CHECK(dec.blocks[2].multiplicity == 2);
    // character inner products against the regular character give the multiplicities
    for (const auto& b : dec.blocks) {
      Complex ip = 0;
      for (int g = 0; g < 6; ++g) ip += std::conj(b.character[g]) * rep(g).trace();
      CHECK(std::abs(ip / 6.0 - double(b.multiplicity)) < 1e-9);
    }
    CHECK(unitarity_defect(dec.change_of_basis) < 1e-9);
    CMatrix proj = CMatrix::Zero(6, 6);
    for (const auto& b : dec.blocks) proj += b.columns * b.columns.adjoint();
    CHECK((proj - CMatrix::Identity(6, 6)).norm() < 1e-9);
  }
  SUBCASE("deterministic for a fixed seed") {
    const auto rep = regular_rep(FiniteGroup::dihedral(4));
    const auto a = irrep_decompose(rep, 3), b = irrep_decompose(rep, 3);
    CHECK((a.change_of_basis - b.change_of_basis).norm() == 0);
  }
  SUBCASE("non-unitary input is rejected") {
    std::vector<CMatrix> m{CMatrix::Identity(1, 1), -CMatrix::Identity(1, 1)};
    CHECK_THROWS_AS(irrep_decompose(MultiplierRep(TwoCocycle::trivial(FiniteGroup::cyclic(2)), m, false)),
                    DomainError);
  }
  SUBCASE("dimension count and block equation on random conjugates") {
    std::mt19937_64 rng(4);
    const auto g = FiniteGroup::dihedral(3);
    const auto base = regular_rep(g).direct_sum(MultiplierRep::trivial(g, 2));
    const auto rep = base.conjugate(random_unitary(base.dim(), rng));
    const auto dec = irrep_decompose(rep, 1);
    int total = 0;
    for (const auto& b : dec.blocks) total += b.dim * b.multiplicity;
    CHECK(total == rep.dim());
    CHECK(dec.residual < 1e-8);
  }
}

TEST_CASE("Heisenberg representation is irreducible and square integrable") {
  for (int d : {1, 2, 3}) {
    const auto h = heisenberg_rep(d);
    CHECK(constrained_commutant<double>(h.rep.matrices(), {}, false).size() == 1);
  }
  std::mt19937_64 rng(21);
  for (int d : {2, 3, 5}) {
    const auto h = heisenberg_rep(d);
    for (int trial = 0; trial < 5; ++trial) {
      const CVector phi = random_unit(d, rng), psi = random_unit(d, rng);
      CHECK(coefficient_sum(h.rep, phi, psi) == doctest::Approx(double(d)).epsilon(1e-12));
    }
  }
  const auto irreps = irreps_of(heisenberg_rep(2).cocycle);
  REQUIRE(irreps.size() == 1);
  CHECK(irreps[0].dim() == 2);
}

TEST_CASE("Fourier transform and Plancherel inverse") {
  SUBCASE("delta at the identity maps to identities") {
    const auto g = FiniteGroup::symmetric(3);
    const auto irreps = irreps_of(g);
    std::vector<Complex> delta(6, 0.0);
    delta[g.identity()] = 1;
    for (const auto& f : fourier(delta, irreps)) CHECK((f - CMatrix::Identity(f.rows(), f.cols())).norm() < 1e-12);
  }
  SUBCASE("constant function on Z_2") {
    const auto irreps = irreps_of(FiniteGroup::cyclic(2));
    const auto f = fourier({1, 1}, irreps);
    REQUIRE(f.size() == 2);
    CHECK(std::abs(f[0](0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(f[1](0, 0)) < 1e-12);
  }
  SUBCASE("round trip and Parseval on basis functions") {
    for (const auto& g : {FiniteGroup::cyclic(6), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)}) {
      const auto irreps = irreps_of(g, 2);
      for (int e = 0; e < g.order(); ++e) {
        std::vector<Complex> phi(g.order(), 0.0);
        phi[e] = 1;
        const auto f = fourier(phi, irreps);
        const auto back = plancherel_inverse(f, irreps);
        double err = 0, parseval = 0;
        for (int x = 0; x < g.order(); ++x) err = std::max(err, std::abs(back[x] - phi[x]));
        for (std::size_t t = 0; t < f.size(); ++t) parseval += irreps[t].dim() * f[t].squaredNorm();
        CHECK(err < 1e-10);
        CHECK(parseval / g.order() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("incomplete irrep sets are rejected") {
    auto irreps = irreps_of(FiniteGroup::cyclic(3));
    irreps.pop_back();
    CHECK_THROWS_AS(fourier({1, 0, 0}, irreps), DomainError);
  }
}

TEST_CASE("central extension") {
  const auto h = heisenberg_rep(2);
  const auto ext = central_extension(h.cocycle);
  CHECK(ext.phase_order == 2);
  CHECK(ext.group.order() == 8);
  const auto lifted = ext.lift(h.rep);
  CHECK(lifted.validate().ok);
  CHECK(lifted.cocycle().is_trivial());
  for (int z : ext.center())
    for (int x = 0; x < ext.group.order(); ++x) CHECK(ext.group.mul(z, x) == ext.group.mul(x, z));

  const auto z2 = FiniteGroup::cyclic(2);
  const Complex irrational = std::polar(1.0, std::sqrt(2.0));
  CHECK_THROWS_AS(central_extension(TwoCocycle::coboundary(z2, {1, irrational})), DomainError);
}
