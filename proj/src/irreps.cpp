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

#include <algorithm>
#include <cmath>

#include "covkit/fingroup.hpp"

namespace covkit {

namespace {

std::vector<Complex> character_of(const std::vector<CMatrix>& mats) {
  std::vector<Complex> chi(mats.size());
  for (std::size_t g = 0; g < mats.size(); ++g) chi[g] = mats[g].trace();
  return chi;
}

std::vector<CMatrix> compress(const MultiplierRep& rep, const CMatrix& q) {
  std::vector<CMatrix> out(rep.group().order());
  for (int g = 0; g < rep.group().order(); ++g) out[g] = q.adjoint() * rep(g) * q;
  return out;
}

/// Group average (1/|G|) Σ ρ(g) H ρ(g)†.
CMatrix twirl(const std::vector<CMatrix>& rho, const CMatrix& h) {
  CMatrix acc = CMatrix::Zero(h.rows(), h.cols());
  for (const auto& r : rho) acc += r * h * r.adjoint();
  return acc / double(rho.size());
}

/// Splits span(q) into irreducible invariant subspaces.
void split_irreducible(const MultiplierRep& rep, const CMatrix& q, std::mt19937_64& rng,
                       std::vector<CMatrix>& out, int depth = 0) {
  const Index k = q.cols();
  if (k == 0) return;
  const auto rho = compress(rep, q);
  double norm = 0;
  for (const auto& r : rho) norm += std::norm(r.trace());
  norm /= double(rho.size());
  if (std::abs(norm - 1.0) < 1e-6) {
    out.push_back(q);
    return;
  }
  if (depth > 64) throw ToleranceError("irrep_decompose: block refinement did not converge", norm, 1.0);
  const CMatrix c = twirl(rho, random_hermitian(k, rng));
  const auto es = detail::hermitian_eig<Complex>(hermitian_part(c), true);
  const auto& lam = es.values;
  const double spread = std::max(1.0, std::max(std::abs(lam(0)), std::abs(lam(k - 1))));
  std::vector<std::pair<Index, Index>> clusters;
  Index start = 0;
  for (Index i = 1; i <= k; ++i)
    if (i == k || lam(i) - lam(i - 1) > 1e-8 * spread) {
      clusters.emplace_back(start, i - start);
      start = i;
    }
  if (clusters.size() == 1) {
    split_irreducible(rep, q, rng, out, depth + 1);
    return;
  }
  for (const auto& [s, len] : clusters) {
    CMatrix sub = q * es.vectors.middleCols(s, len);
    split_irreducible(rep, sub, rng, out, depth + 1);
  }
}

bool same_character(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t g = 0; g < a.size(); ++g)
    if (std::abs(a[g] - b[g]) > 1e-6) return false;
  return true;
}

/// Lexicographic key: dimension, then characters by descending real then imaginary part.
bool character_before(const IrrepBlock& a, const IrrepBlock& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  for (std::size_t g = 0; g < a.character.size(); ++g) {
    const double ra = std::round(a.character[g].real() * 1e6), rb = std::round(b.character[g].real() * 1e6);
    if (ra != rb) return ra > rb;
    const double ia = std::round(a.character[g].imag() * 1e6), ib = std::round(b.character[g].imag() * 1e6);
    if (ia != ib) return ia > ib;
  }
  return false;
}

}  // namespace

IrrepDecomposition irrep_decompose(const MultiplierRep& rep, std::uint64_t seed, const Tolerances& tol) {
  if (!rep.unitary()) throw DomainError("irrep_decompose: representation must be unitary");
  const auto check = rep.validate(tol);
  if (!check.ok) throw ValidationError("irrep_decompose: " + check.detail);
  const int n = rep.dim();
  const int order = rep.group().order();
  std::mt19937_64 rng(seed);

  std::vector<CMatrix> pieces;
  split_irreducible(rep, CMatrix::Identity(n, n), rng, pieces);

  // Group equivalent pieces by character, then rotate each copy onto the first one.
  std::vector<std::vector<CMatrix>> classes;
  std::vector<std::vector<Complex>> chars;
  for (const auto& q : pieces) {
    const auto chi = character_of(compress(rep, q));
    std::size_t c = 0;
    while (c < classes.size() && !(classes[c].front().cols() == q.cols() && same_character(chars[c], chi))) ++c;
    if (c == classes.size()) {
      classes.push_back({q});
      chars.push_back(chi);
    } else {
      classes[c].push_back(q);
    }
  }

  IrrepDecomposition out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& copies = classes[c];
    const CMatrix& ref = copies.front();
    const Index dim = ref.cols();
    const auto tau = compress(rep, ref);
    for (std::size_t r = 1; r < copies.size(); ++r) {
      const auto rho = compress(rep, copies[r]);
      CMatrix t;
      for (int attempt = 0;; ++attempt) {
        const CMatrix x = random_complex(dim, dim, rng);
        t = CMatrix::Zero(dim, dim);
        for (int g = 0; g < order; ++g) t += rho[g] * x * tau[g].adjoint();
        const double s = std::sqrt(t.squaredNorm() / double(dim));
        if (s > 1e-6) {
          t /= s;
          break;
        }
        if (attempt > 16) throw ToleranceError("irrep_decompose: no intertwiner between copies", s, 1e-6);
      }
      copies[r] = copies[r] * t;
    }
    IrrepBlock block;
    block.dim = int(dim);
    block.multiplicity = int(copies.size());
    block.irrep = MultiplierRep(rep.cocycle(), tau, true);
    block.character = chars[c];
    block.columns.resize(n, dim * Index(copies.size()));
    for (Index a = 0; a < dim; ++a)
      for (std::size_t r = 0; r < copies.size(); ++r)
        block.columns.col(a * Index(copies.size()) + Index(r)) = copies[r].col(a);
    out.blocks.push_back(std::move(block));
  }
  std::stable_sort(out.blocks.begin(), out.blocks.end(), character_before);

  out.change_of_basis.resize(n, n);
  Index col = 0;
  for (const auto& b : out.blocks) {
    out.change_of_basis.middleCols(col, b.columns.cols()) = b.columns;
    col += b.columns.cols();
  }
  const CMatrix& v = out.change_of_basis;
  double residual = unitarity_defect(v);
  for (int g = 0; g < order; ++g) {
    std::vector<CMatrix> parts;
    for (const auto& b : out.blocks)
      parts.push_back(kron(b.irrep(g), CMatrix::Identity(b.multiplicity, b.multiplicity)));
    residual = std::max(residual, (v.adjoint() * rep(g) * v - direct_sum(parts)).norm());
  }
  out.residual = residual;
  certify("irrep_decompose block equation", residual, tol.recon_fro * std::max(1.0, std::sqrt(double(n))));
  return out;
}

std::vector<MultiplierRep> irreps_of(const TwoCocycle& cocycle, std::uint64_t seed, const Tolerances& tol) {
  const auto dec = irrep_decompose(twisted_regular_rep(cocycle), seed, tol);
  std::vector<MultiplierRep> out;
  for (const auto& b : dec.blocks) out.push_back(b.irrep);
  return out;
}

std::vector<MultiplierRep> irreps_of(const FiniteGroup& group, std::uint64_t seed, const Tolerances& tol) {
  return irreps_of(TwoCocycle::trivial(group), seed, tol);
}

namespace {

void require_complete(const std::vector<MultiplierRep>& irreps, int order) {
  long total = 0;
  for (const auto& t : irreps) {
    if (t.group().order() != order) throw DimensionError("irreps belong to a group of a different order");
    total += long(t.dim()) * t.dim();
  }
  if (total != order)
    throw DomainError("incomplete irrep set: sum of squared dimensions " + std::to_string(total) +
                      " != group order " + std::to_string(order));
}

}  // namespace

std::vector<CMatrix> fourier(const std::vector<Complex>& phi, const std::vector<MultiplierRep>& irreps) {
  if (irreps.empty()) throw DomainError("fourier: empty irrep set");
  const int order = irreps.front().group().order();
  if (int(phi.size()) != order) throw DimensionError("fourier: one value per group element");
  require_complete(irreps, order);
  std::vector<CMatrix> out;
  for (const auto& t : irreps) {
    CMatrix acc = CMatrix::Zero(t.dim(), t.dim());
    for (int g = 0; g < order; ++g) acc += phi[g] * t(g);
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<Complex> plancherel_inverse(const std::vector<CMatrix>& family,
                                        const std::vector<MultiplierRep>& irreps) {
  if (irreps.empty()) throw DomainError("plancherel_inverse: empty irrep set");
  const int order = irreps.front().group().order();
  require_complete(irreps, order);
  if (family.size() != irreps.size()) throw DimensionError("plancherel_inverse: one block per irrep");
  std::vector<Complex> phi(order, 0.0);
  for (std::size_t t = 0; t < irreps.size(); ++t) {
    if (family[t].rows() != irreps[t].dim() || family[t].cols() != irreps[t].dim())
      throw DimensionError("plancherel_inverse: block size differs from irrep dimension");
    for (int g = 0; g < order; ++g)
      phi[g] += double(irreps[t].dim()) * (irreps[t](g).adjoint() * family[t]).trace();
  }
  for (auto& x : phi) x /= double(order);
  return phi;
}

}  // namespace covkit
