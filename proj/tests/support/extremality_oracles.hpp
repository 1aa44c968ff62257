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

// Perturbation counts for observables, CP maps and instruments, written
// directly from the defining constraints. A zero count means extreme.

#pragma once

#include "covkit/instruments.hpp"
#include "support/oracles.hpp"

namespace covkit::testing {

inline CMatrix unit_matrix(int n, int a, int b) {
  CMatrix e = CMatrix::Zero(n, n);
  e(a, b) = 1;
  return e;
}

/// Γ_ω applied to b through the Choi blocks of a perturbation.
inline CMatrix choi_apply(const CMatrix& c, int k, int v, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(v, v);
  for (int a = 0; a < k; ++a)
    for (int e = 0; e < k; ++e) out += b(a, e) * c.block(Index(a) * v, Index(e) * v, v, v);
  return out;
}

/// Values of a CP map on an arbitrary element, straight from the definition.
inline CMatrix evaluate(const FiniteCStarAlgebra& alg, const std::vector<CMatrix>& values, const CMatrix& b) {
  const CVector c = alg.coefficients(b);
  CMatrix out = CMatrix::Zero(values.front().rows(), values.front().cols());
  for (int x = 0; x < alg.dim(); ++x) out += c(x) * values[x];
  return out;
}

inline Index observable_oracle(const ObservableSpec& m) {
  return perturbation_dimension(m.effects, [&](const std::vector<CMatrix>& d) {
    std::vector<Complex> out;
    CMatrix total = CMatrix::Zero(m.dim, m.dim);
    for (const auto& x : d) total += x;
    push_entries(out, total);
    if (m.symmetry) {
      const auto& s = *m.symmetry;
      for (int g = 0; g < s.rep.group().order(); ++g)
        for (int w = 0; w < m.outcomes(); ++w)
          push_entries(out, s.rep(g) * d[w] * s.rep(g).adjoint() - d[s.cosets.act(g, w)]);
    }
    return to_vector(out);
  });
}

/// Covariant perturbations Δ ≤ cS with Δ(1) = 0, from the per-block Choi matrices.
inline Index cp_oracle(const CPMapSpec& s) {
  const auto& alg = s.algebra;
  std::vector<CMatrix> chois;
  for (int i = 0; i < alg.num_blocks(); ++i) chois.push_back(s.choi_block(i));
  const int n = s.fiber;
  return perturbation_dimension(chois, [&](const std::vector<CMatrix>& d) {
    std::vector<CMatrix> values(alg.dim());
    for (int x = 0; x < alg.dim(); ++x) {
      const auto u = alg.unit(x);
      values[x] = d[u.block].block(Index(u.row) * n, Index(u.col) * n, n, n);
    }
    std::vector<Complex> out;
    push_entries(out, evaluate(alg, values, alg.identity()));
    if (s.symmetry) {
      const auto& sym = *s.symmetry;
      for (int g = 0; g < sym.rep.group().order(); ++g)
        for (int x = 0; x < alg.dim(); ++x)
          push_entries(out, evaluate(alg, values, sym.beta.apply(g, alg.matrix_unit(x))) -
                                sym.rep(g) * values[x] * sym.rep(g).adjoint());
    }
    return to_vector(out);
  });
}

inline Index instrument_oracle(const InstrumentSpec& g) {
  return perturbation_dimension(g.choi, [&](const std::vector<CMatrix>& d) {
    std::vector<Complex> out;
    const CMatrix id = CMatrix::Identity(g.k_dim, g.k_dim);
    CMatrix total = CMatrix::Zero(g.v_dim, g.v_dim);
    for (const auto& x : d) total += choi_apply(x, g.k_dim, g.v_dim, id);
    push_entries(out, total);
    if (g.symmetry) {
      const auto& s = *g.symmetry;
      for (int h = 0; h < s.rep.group().order(); ++h)
        for (int w = 0; w < g.outcomes(); ++w)
          for (int a = 0; a < g.k_dim; ++a)
            for (int b = 0; b < g.k_dim; ++b) {
              const CMatrix e = unit_matrix(g.k_dim, a, b);
              push_entries(out, choi_apply(d[s.cosets.act(h, w)], g.k_dim, g.v_dim,
                                           s.out_rep(h) * e * s.out_rep(h).adjoint()) -
                                    s.rep(h) * choi_apply(d[w], g.k_dim, g.v_dim, e) * s.rep(h).adjoint());
            }
    }
    return to_vector(out);
  });
}

}  // namespace covkit::testing
