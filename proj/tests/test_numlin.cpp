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

#include "covkit/numlin.hpp"
#include "support/matrices.hpp"

using namespace covkit;
using namespace covkit::testing;

TEST_CASE("psd_check on small matrices") {
  CHECK(psd_check(CMatrix::Identity(2, 2)));
  CHECK_FALSE(psd_check(mat({{0, 1}, {0, 0}})));
  CHECK(psd_check(mat({{1, 1}, {1, 1}})));
  CHECK_FALSE(psd_check(mat({{1, 2}, {2, 1}})));
  CHECK_THROWS_AS(psd_check(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("psd_factor reproduces and is minimal") {
  SUBCASE("identity") {
    const auto f = psd_factor(CMatrix::Identity(2, 2));
    CHECK(f.rank == 2);
    CHECK(unitarity_defect(f.factor) < 1e-12);
  }
  SUBCASE("all ones") {
    const auto f = psd_factor(mat({{1, 1}, {1, 1}}));
    REQUIRE(f.rank == 1);
    // up to a phase the factor is [1, 1]
    CHECK(std::abs(std::abs(f.factor(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(f.factor(0, 0) - f.factor(0, 1)) < 1e-12);
  }
  SUBCASE("zero") {
    const auto f = psd_factor(CMatrix::Zero(3, 3));
    CHECK(f.rank == 0);
    CHECK(f.factor.rows() == 0);
    CHECK(f.factor.cols() == 3);
  }
  SUBCASE("indefinite input carries its eigenvalue") {
    try {
      (void)psd_factor(mat({{1, 2}, {2, 1}}));
      FAIL("expected an exception");
    } catch (const NotPositiveError& e) {
      CHECK(e.min_eigenvalue() == doctest::Approx(-1.0));
    }
  }
  SUBCASE("random low-rank positive matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      const Index n = 1 + trial % 7;
      const Index r = trial % (n + 1);
      const CMatrix g = random_complex(r, n, rng);
      const CMatrix a = g.adjoint() * g;
      const auto f = psd_factor(a);
      CHECK(f.rank == r);
      CHECK((f.factor.adjoint() * f.factor - a).norm() <= 1e-8 * std::max(1.0, spectral_norm(a)));
      CHECK(numerical_rank(f.factor) == f.rank);
    }
  }
}

TEST_CASE("null_space") {
  CHECK(null_space(CMatrix::Identity(2, 2)).basis.cols() == 0);
  const auto ns = null_space(mat({{1, 1}}));
  REQUIRE(ns.basis.cols() == 1);
  CVector expected(2);
  expected << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(ns.basis.col(0).dot(expected)) - 1.0) < 1e-12);
  CHECK(null_space(CMatrix::Zero(2, 2)).basis.cols() == 2);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 1 + trial % 9, cols = 1 + (trial * 7) % 8, r = std::min(rows, cols) / 2;
    const CMatrix a = random_complex(rows, r, rng) * random_complex(r, cols, rng);
    const auto n = null_space(a);
    CHECK(n.rank + n.basis.cols() == cols);
    CHECK(unitarity_defect(CMatrix(n.basis.adjoint() * n.basis)) < 1e-10);
    CHECK((a * n.basis).norm() <= 1e-9 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("constrained_commutant") {
  SUBCASE("Pauli X and Z generate an irreducible algebra") {
    const std::vector<CMatrix> gens{pauli_x(), pauli_z()};
    const auto basis = constrained_commutant<double>(gens, {}, false);
    REQUIRE(basis.size() == 1);
    const CMatrix d = basis[0] / basis[0](0, 0) * (1 / std::sqrt(2.0));
    CHECK((d - CMatrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-12);
    CHECK(basis[0].norm() == doctest::Approx(1.0));
  }
  SUBCASE("identity generator leaves everything") {
    const std::vector<CMatrix> gens{CMatrix::Identity(2, 2)};
    CHECK(constrained_commutant<double>(gens, {}, false).size() == 4);
    CHECK(constrained_commutant<double>(gens, {}, true).size() == 4);
  }
  SUBCASE("trace constraint on scalars") {
    const std::vector<CMatrix> cons{CMatrix::Identity(1, 1)};
    CHECK(constrained_commutant<double>({}, cons, false).empty());
  }
  SUBCASE("size mismatch") {
    const std::vector<CMatrix> gens{CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)};
    CHECK_THROWS_AS(constrained_commutant<double>(gens, {}, false), DimensionError);
  }
  SUBCASE("Hermitian solutions of a diagonal generator") {
    // commutant of diag(1,1,2) is M_2 ⊕ ℂ: complex dim 5, Hermitian real dim 5
    CMatrix a = CMatrix::Identity(3, 3);
    a(2, 2) = 2;
    const std::vector<CMatrix> gens{a};
    const auto c = constrained_commutant<double>(gens, {}, false);
    const auto h = constrained_commutant<double>(gens, {}, true);
    CHECK(c.size() == 5);
    REQUIRE(h.size() == 5);
    for (const auto& d : h) {
      CHECK((d - d.adjoint()).norm() <= 1e-12 * d.norm());
      CHECK((d * a - a * d).norm() <= 1e-9 * d.norm() * a.norm());
    }
    // adding trace(D) = 0 removes exactly one real dimension
    const std::vector<CMatrix> cons{CMatrix::Identity(3, 3)};
    CHECK(constrained_commutant<double>(gens, cons, true).size() == 4);
  }
}

TEST_CASE("lstsq_define") {
  SUBCASE("exact") {
    const auto r = lstsq_define<double>(CMatrix::Identity(2, 2), pauli_x());
    CHECK((r.map - pauli_x()).norm() < 1e-12);
    CHECK(r.residual < 1e-12);
  }
  SUBCASE("inconsistent pairs leave a residual") {
    const CMatrix e1 = mat({{1}, {0}}), e2 = mat({{0}, {1}});
    const std::vector<std::pair<CMatrix, CMatrix>> pairs{{e1, e1}, {e1, e2}};
    CHECK(lstsq_define<double>(pairs).residual > 0.5);
  }
  SUBCASE("two factorizations are related by a unitary") {
    std::mt19937_64 rng(3);
    const CMatrix g = random_complex(3, 5, rng);
    const CMatrix a = g.adjoint() * g;
    const auto f1 = psd_factor(a);
    const CMatrix q = random_unitary(3, rng);
    const CMatrix f2 = q * f1.factor;
    const auto r = lstsq_define<double>(f1.factor, f2);
    CHECK(r.residual < 1e-10);
    CHECK(unitarity_defect(r.map) < 1e-10);
  }
  SUBCASE("shape errors") {
    const std::vector<std::pair<CMatrix, CMatrix>> pairs{{CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                                         {CMatrix::Identity(3, 3), CMatrix::Identity(2, 3)}};
    CHECK_THROWS_AS(lstsq_define<double>(pairs), DimensionError);
  }
}

TEST_CASE("expression inputs and single precision") {
  const Eigen::MatrixXcf a = Eigen::MatrixXcf::Identity(3, 3) * 2.0f;
  const auto f = psd_factor(a + a);
  CHECK(f.rank == 3);
  CHECK(std::abs(f.factor.norm() - std::sqrt(12.0f)) < 1e-5f);
  CHECK(psd_check(a.block(0, 0, 2, 2)));
}

TEST_CASE("random unitaries and helpers") {
  std::mt19937_64 rng(8);
  const CMatrix u = random_unitary(4, rng);
  CHECK(unitarity_defect(u) < 1e-12);
  const CMatrix k = kron(pauli_x(), CMatrix::Identity(2, 2));
  CHECK(k(0, 2) == Complex(1));
  CHECK(k(2, 0) == Complex(1));
  const CMatrix p = random_complex(4, 2, rng);
  const CMatrix a = p * p.adjoint();
  CHECK((psd_sqrt(a) * psd_sqrt(a) - a).norm() < 1e-10);
  CHECK(range_basis(a).cols() == 2);
}
