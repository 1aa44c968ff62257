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

#include <Eigen/Dense>

#include "covkit/cstar.hpp"
#include "support/matrices.hpp"

using namespace covkit;
using namespace covkit::testing;

TEST_CASE("matrix units multiply like matrix units") {
  const FiniteCStarAlgebra alg({2, 1, 3});
  CHECK(alg.dim() == 4 + 1 + 9);
  CHECK(alg.rep_dim() == 6);
  for (int x = 0; x < alg.dim(); ++x)
    for (int y = 0; y < alg.dim(); ++y) {
      const CMatrix prod = alg.matrix_unit(x) * alg.matrix_unit(y);
      const auto p = alg.product(x, y);
      if (p)
        CHECK((prod - alg.matrix_unit(*p)).norm() == 0);
      else
        CHECK(prod.norm() == 0);
    }
  for (int x = 0; x < alg.dim(); ++x) CHECK((alg.matrix_unit(x).adjoint() - alg.matrix_unit(alg.adjoint(x))).norm() == 0);
}

TEST_CASE("elements, coefficients and membership") {
  const FiniteCStarAlgebra alg({2, 2});
  std::mt19937_64 rng(3);
  const CVector c = random_complex(alg.dim(), 1, rng);
  const CMatrix a = alg.element(c);
  CHECK((alg.coefficients(a) - c).norm() < 1e-14);
  CHECK(alg.contains(a));
  CMatrix off = a;
  off(0, 3) = 1;
  CHECK_FALSE(alg.contains(off));
  CHECK(alg.off_block_norm(off) == doctest::Approx(1));
  CHECK_THROWS_AS(alg.coefficients(CMatrix::Zero(3, 3)), DimensionError);
  CHECK_THROWS_AS(FiniteCStarAlgebra(std::vector<int>{}), DimensionError);
}

TEST_CASE("positivity in the algebra") {
  const auto m2 = FiniteCStarAlgebra::full(2);
  CHECK_FALSE(m2.is_positive(pauli_x()));  // E12 + E21
  CHECK(m2.is_positive(CMatrix::Identity(2, 2) + pauli_x()));
  const auto diag = FiniteCStarAlgebra::diagonal(3);
  CHECK(diag.is_positive(mat({{1, 0, 0}, {0, 0, 0}, {0, 0, 2}})));
  CHECK_FALSE(diag.is_positive(mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 2}})));
  CHECK_THROWS_AS(diag.is_positive(pauli_x()), DimensionError);
}

TEST_CASE("forms on modules") {
  SUBCASE("form evaluation") {
    const FormMatrix s{mat({{1, 2}, {3, 4}})};
    const CMatrix v = mat({{1}, {0}}), w = mat({{0}, {1}});
    CHECK(s(v, w)(0, 0) == Complex(2));
    CHECK(s(w, v)(0, 0) == Complex(3));
    const CMatrix vv = mat({{1, 0}, {0, 1}});
    CHECK((s(vv, vv) - s.t).norm() == 0);
  }
  SUBCASE("positivity of forms") {
    CHECK(FormMatrix{CMatrix::Identity(2, 2)}.positive());
    CHECK_FALSE(FormMatrix{pauli_z()}.positive());
    std::mt19937_64 rng(1);
    const CMatrix f = random_complex(2, 3, rng);
    const FormMatrix s{f.adjoint() * f};
    CHECK(s.positive());
    for (int trial = 0; trial < 5; ++trial) {
      const CMatrix v = random_complex(3, 2, rng);
      CHECK(min_eigenvalue(s(v, v)) > -1e-12);
    }
  }
}

TEST_CASE("module inner product and norm") {
  const ModuleSpace m{2, 3};
  std::mt19937_64 rng(7);
  const CMatrix v = random_complex(3, 2, rng), w = random_complex(3, 2, rng);
  CHECK((m.inner(v, w) - v.adjoint() * w).norm() < 1e-14);
  CHECK((m.inner(v, w).adjoint() - m.inner(w, v)).norm() < 1e-14);
  Eigen::JacobiSVD<CMatrix> svd(v);
  CHECK(m.norm(v) == doctest::Approx(svd.singularValues()(0)));
  CHECK_THROWS_AS(m.require_element(CMatrix::Zero(2, 2)), DimensionError);
}

TEST_CASE("unitary module maps") {
  std::mt19937_64 rng(11);
  const ModuleMap u{random_unitary(3, rng)};
  CHECK(u.is_unitary());
  CHECK(u.preserves_inner_product());
  CHECK(u.adjoint().is_unitary());
  const CMatrix v = random_complex(3, 2, rng);
  CHECK((u.adjoint()(u(v)) - v).norm() < 1e-12);
  const ModuleMap iso{CMatrix::Identity(4, 3)};
  CHECK(iso.preserves_inner_product());
  CHECK_FALSE(iso.is_unitary());
  CHECK_FALSE(ModuleMap{2.0 * CMatrix::Identity(2, 2)}.preserves_inner_product());
}

TEST_CASE("tensor products of algebras") {
  const auto left = FiniteCStarAlgebra::diagonal(2);
  const auto right = FiniteCStarAlgebra::full(2);
  const auto t = tensor(left, right);
  CHECK(t.joint.blocks() == std::vector<int>{2, 2});
  CHECK(unitarity_defect(t.shuffle) < 1e-14);
  std::mt19937_64 rng(5);
  const CMatrix a = left.element(random_complex(left.dim(), 1, rng));
  const CMatrix b = right.element(random_complex(right.dim(), 1, rng));
  const CMatrix a2 = left.element(random_complex(left.dim(), 1, rng));
  const CMatrix b2 = right.element(random_complex(right.dim(), 1, rng));
  CHECK(t.joint.contains(t.embed(a, b)));
  CHECK((t.embed(a, b) * t.embed(a2, b2) - t.embed(a * a2, b * b2)).norm() < 1e-12);
  CHECK((t.embed(left.identity(), right.identity()) - t.joint.identity()).norm() < 1e-14);

  const auto t2 = tensor(FiniteCStarAlgebra({1, 2}), FiniteCStarAlgebra({2, 1}));
  CHECK(t2.joint.blocks() == std::vector<int>{2, 1, 4, 2});
  const CMatrix x = FiniteCStarAlgebra({1, 2}).matrix_unit(2), y = FiniteCStarAlgebra({2, 1}).matrix_unit(1);
  CHECK(t2.joint.contains(t2.embed(x, y)));
}

TEST_CASE("block actions") {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto c3 = FiniteGroup::cyclic(3);

  SUBCASE("inner action by a representation") {
    const auto reg = regular_rep(c3);
    const auto beta = BlockAction::inner(FiniteCStarAlgebra::full(3), reg);
    CHECK(beta.is_inner());
    for (int g = 0; g < 3; ++g) CHECK(beta.permutation(g) == std::vector<int>{0});
    const CMatrix e = beta.algebra().matrix_unit(1);
    CHECK((beta.apply(1, beta.apply(2, e)) - e).norm() < 1e-14);
  }
  SUBCASE("translation permutes blocks") {
    const GroupAction act = GroupAction::regular(c3);
    const auto beta = BlockAction::translation(act, MultiplierRep::trivial(c3, 2));
    CHECK_FALSE(beta.is_inner());
    CHECK(beta.algebra().blocks() == std::vector<int>{2, 2, 2});
    for (int g = 0; g < 3; ++g)
      for (int x = 0; x < 3; ++x) CHECK(beta.permutation(g)[x] == act.act(g, x));
    for (int g = 0; g < 3; ++g)
      for (int h = 0; h < 3; ++h)
        CHECK((beta.coefficient_matrix(g) * beta.coefficient_matrix(h) - beta.coefficient_matrix(c3.mul(g, h))).norm() <
              1e-12);
  }
  SUBCASE("a multiplier representation gives an action") {
    const auto h = heisenberg_rep(3);
    const auto beta = BlockAction::inner(FiniteCStarAlgebra::full(3), h.rep);
    CHECK(beta.group().order() == 9);
  }
  SUBCASE("invalid actions are rejected") {
    const auto alg = FiniteCStarAlgebra({1, 2});
    std::vector<CMatrix> bad(2, alg.identity());
    bad[1] = mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    CHECK_THROWS_AS(BlockAction(alg, FiniteGroup::cyclic(2), bad), ValidationError);
    std::vector<CMatrix> not_unitary(2, alg.identity());
    not_unitary[1] = 2.0 * alg.identity();
    CHECK_THROWS_AS(BlockAction(alg, FiniteGroup::cyclic(2), not_unitary), ValidationError);
    std::vector<CMatrix> not_hom(6, CMatrix::Identity(2, 2));
    not_hom[1] = pauli_x();
    CHECK_THROWS_AS(BlockAction(FiniteCStarAlgebra::full(2), s3, not_hom), ValidationError);
  }
}
