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

// Dense complex linear algebra used by every other module: positivity,
// minimal factorizations, null spaces, constrained commutants and
// least-squares definitions of linear maps.

#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "covkit/errors.hpp"

namespace covkit {

template <class Real>
using CMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RMatrixT = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using CMatrix = CMatrixT<double>;
using CVector = CVectorT<double>;
using RMatrix = RMatrixT<double>;
using Index = Eigen::Index;

namespace detail {
// Solver kernels, explicitly instantiated in numlin.cpp for float, double and their complex types.
template <class Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <class Scalar>
Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> singular_values(const Dense<Scalar>& a);

template <class Scalar>
struct RightSvd {
  Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> values;
  Dense<Scalar> v;
};
template <class Scalar>
RightSvd<Scalar> right_svd(const Dense<Scalar>& a);

template <class Scalar>
struct HermitianEig {
  Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> values;  // ascending
  Dense<Scalar> vectors;
};
template <class Scalar>
HermitianEig<Scalar> hermitian_eig(const Dense<Scalar>& a, bool with_vectors);

/// Minimum-norm least-squares solution X of A X = B.
template <class Scalar>
Dense<Scalar> min_norm_solve(const Dense<Scalar>& a, const Dense<Scalar>& b, RealOf<Scalar> threshold);
}  // namespace detail

struct Tolerances {
  double psd_eig = 1e-9;
  double rank_rel = 1e-9;
  double unitary_fro = 1e-8;
  double recon_fro = 1e-8;

  void validate() const {
    if (!(psd_eig > 0 && rank_rel > 0 && unitary_fro > 0 && recon_fro > 0))
      throw DomainError("tolerances must be strictly positive");
  }
};

/// Outcome of an identity check: a verdict together with the residual behind it.
struct Check {
  std::string name;
  bool ok = true;
  double residual = 0.0;
  std::string detail;
};

/// Throws ToleranceError when `residual > limit`.
inline void certify(const std::string& identity, double residual, double limit) {
  if (!(residual <= limit)) throw ToleranceError(identity, residual, limit);
}

template <class Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* where) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(where) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

template <class Derived>
auto spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (a.size() == 0) return Real(0);
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return detail::singular_values<typename Derived::Scalar>(Plain(a))(0);
}

template <class Derived>
auto hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Plain((a + a.adjoint()) / typename Derived::Scalar(2));
}

/// ‖U†U − I‖_F.
template <class Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (u.rows() != u.cols()) return std::numeric_limits<typename Eigen::NumTraits<
      typename Derived::Scalar>::Real>::infinity();
  return (u.adjoint() * u - Plain::Identity(u.cols(), u.cols())).norm();
}

/// Smallest eigenvalue of the Hermitian part.
template <class Derived>
auto min_eigenvalue(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  require_square(a, "min_eigenvalue");
  if (a.size() == 0) return Real(0);
  return detail::hermitian_eig<typename Derived::Scalar>(hermitian_part(a), false).values(0);
}

template <class Derived>
bool psd_check(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  require_square(a, "psd_check");
  if (a.size() == 0) return true;
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const Real scale = std::max<Real>(1, spectral_norm(a));
  if ((a - a.adjoint()).norm() > tol.psd_eig * scale) return false;
  return min_eigenvalue(a) >= -tol.psd_eig * scale;
}

template <class Real>
struct PsdFactorT {
  Index rank = 0;
  CMatrixT<Real> factor;  // rank × n, factor† factor ≈ A
};
using PsdFactor = PsdFactorT<double>;

/// Rotates `v` so that its first entry of non-negligible modulus is real and positive.
template <class Real>
void normalize_phase(Eigen::Ref<CVectorT<Real>> v) {
  const Real cutoff = Real(1e-10) * std::max<Real>(v.norm(), std::numeric_limits<Real>::min());
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > cutoff) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

/// Minimal factorization A = F†F of a positive matrix, rows ordered by descending eigenvalue.
template <class Derived>
auto psd_factor(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using M = CMatrixT<Real>;
  require_square(a, "psd_factor");
  const Index n = a.rows();
  PsdFactorT<Real> out;
  out.factor = M::Zero(0, n);
  if (n == 0) return out;
  const M m = a.template cast<std::complex<Real>>();
  const Real scale = std::max<Real>(1, spectral_norm(m));
  if ((m - m.adjoint()).norm() > tol.psd_eig * scale)
    throw NotPositiveError("psd_factor: matrix is not Hermitian", std::nan(""));
  const auto es = detail::hermitian_eig<std::complex<Real>>(hermitian_part(m), true);
  const auto& lam = es.values;
  if (lam(0) < -tol.psd_eig * scale)
    throw NotPositiveError("psd_factor: matrix is not positive semidefinite", double(lam(0)));
  const Real cut = std::max<Real>(tol.psd_eig * scale, tol.rank_rel * lam(n - 1));
  std::vector<Index> keep;
  for (Index i = n - 1; i >= 0; --i)
    if (lam(i) > cut) keep.push_back(i);
  out.rank = Index(keep.size());
  out.factor.resize(out.rank, n);
  for (Index r = 0; r < out.rank; ++r) {
    CVectorT<Real> v = es.vectors.col(keep[r]);
    normalize_phase<Real>(v);
    out.factor.row(r) = std::sqrt(lam(keep[r])) * v.adjoint();
  }
  return out;
}

template <class Scalar>
struct NullSpaceT {
  Index rank = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis;  // orthonormal columns
};

/// Orthonormal basis of {x : Ax = 0}; rank decided relative to the largest singular value.
template <class Derived>
auto null_space(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index cols = a.cols();
  NullSpaceT<Scalar> out;
  if (a.rows() == 0 || cols == 0) {
    out.basis = M::Identity(cols, cols);
    return out;
  }
  const auto svd = detail::right_svd<Scalar>(M(a));
  const auto& s = svd.values;
  const auto smax = s(0);
  Index rank = 0;
  if (smax > 0)
    while (rank < s.size() && s(rank) > tol.rank_rel * smax) ++rank;
  out.rank = rank;
  out.basis = svd.v.rightCols(cols - rank);
  return out;
}

template <class Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  return null_space(a, tol).rank;
}

/// Orthonormal (Frobenius) basis of the real space of n×n Hermitian matrices, vectorized column-major.
template <class Real>
CMatrixT<Real> hermitian_basis(Index n) {
  CMatrixT<Real> basis = CMatrixT<Real>::Zero(n * n, n * n);
  const Real r = Real(1) / std::sqrt(Real(2));
  Index k = 0;
  for (Index i = 0; i < n; ++i) basis(i + n * i, k++) = 1;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      basis(i + n * j, k) = r;
      basis(j + n * i, k++) = r;
      basis(i + n * j, k) = std::complex<Real>(0, r);
      basis(j + n * i, k++) = std::complex<Real>(0, -r);
    }
  return basis;
}

namespace detail {
// Hermitian D commuting with every A also commutes with every A†, hence with any Hermitian H
// built from them. D is then block diagonal on the eigenspaces of H, so a generic H cuts the
// search space down to that block structure before the remaining equations are imposed.
template <class Real>
std::vector<CMatrixT<Real>> hermitian_commutant(std::span<const CMatrixT<Real>> generators,
                                                std::span<const CMatrixT<Real>> constraints, Index n,
                                                const Tolerances& tol) {
  using C = std::complex<Real>;
  using M = CMatrixT<Real>;
  using V = CVectorT<Real>;
  const Real rs2 = Real(1) / std::sqrt(Real(2));

  M frame = M::Identity(n, n);
  std::vector<std::pair<Index, Index>> clusters{{0, n}};
  if (!generators.empty()) {
    std::mt19937_64 rng(0x5eedc0de);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    M h = M::Zero(n, n);
    for (const auto& a : generators) {
      const Real w = a.norm() > 0 ? Real(1) / a.norm() : Real(1);
      const M herm = a + a.adjoint();
      const M skew = C(0, 1) * (a - a.adjoint());
      h += w * (Real(coef(rng)) * herm + Real(coef(rng)) * skew);
    }
    h = (h + h.adjoint()).eval() / Real(2);
    const auto eig = hermitian_eig<C>(h, true);
    frame = eig.vectors;
    const Real scale = std::max<Real>(Real(1), eig.values.cwiseAbs().maxCoeff());
    const Real gap = std::sqrt(std::numeric_limits<Real>::epsilon()) * scale;
    clusters.clear();
    Index start = 0;
    for (Index i = 1; i <= n; ++i)
      if (i == n || eig.values(i) - eig.values(i - 1) > gap) {
        clusters.emplace_back(start, i - start);
        start = i;
      }
  }

  std::vector<M> candidates;
  for (const auto& [start, size] : clusters)
    for (Index i = 0; i < size; ++i) {
      const V vi = frame.col(start + i);
      candidates.push_back(vi * vi.adjoint());
      for (Index j = i + 1; j < size; ++j) {
        const M cross = vi * frame.col(start + j).adjoint();
        candidates.push_back(rs2 * (cross + cross.adjoint()));
        candidates.push_back(C(0, rs2) * (cross - cross.adjoint()));
      }
    }
  const Index m = Index(candidates.size());
  if (m == 0) return {};

  const Index nn = n * n;
  M sys = M::Zero(Index(generators.size()) * nn + Index(constraints.size()), m);
  Index row = 0;
  for (const auto& a : generators) {
    const Real w = a.norm() > 0 ? Real(1) / a.norm() : Real(1);
    for (Index k = 0; k < m; ++k) {
      const M comm = w * (candidates[k] * a - a * candidates[k]);
      sys.col(k).segment(row, nn) = Eigen::Map<const V>(comm.data(), nn);
    }
    row += nn;
  }
  for (const auto& c : constraints) {
    const Real w = c.norm() > 0 ? Real(1) / c.norm() : Real(1);
    for (Index k = 0; k < m; ++k) sys(row, k) = w * (c.conjugate().cwiseProduct(candidates[k])).sum();
    ++row;
  }

  RMatrixT<Real> real_sys(2 * sys.rows(), m);
  real_sys << sys.real(), sys.imag();
  const auto ns = null_space(real_sys, tol);
  std::vector<M> out;
  for (Index k = 0; k < ns.basis.cols(); ++k) {
    M d = M::Zero(n, n);
    for (Index j = 0; j < m; ++j) d += ns.basis(j, k) * candidates[j];
    out.push_back(hermitian_part(d));
  }
  return out;
}
}  // namespace detail

/// Basis of {D : [D,A_i] = 0, trace(C_j† D) = 0, and D = D† if requested}, Frobenius-orthonormal.
template <class Real>
std::vector<CMatrixT<Real>> constrained_commutant(std::span<const CMatrixT<Real>> generators,
                                                  std::span<const CMatrixT<Real>> constraints,
                                                  bool hermitian_only,
                                                  const Tolerances& tol = {}) {
  using M = CMatrixT<Real>;
  Index n = -1;
  for (const auto& a : generators) {
    require_square(a, "constrained_commutant");
    if (n >= 0 && a.rows() != n) throw DimensionError("constrained_commutant: generator sizes differ");
    n = a.rows();
  }
  for (const auto& c : constraints) {
    require_square(c, "constrained_commutant");
    if (n >= 0 && c.rows() != n) throw DimensionError("constrained_commutant: constraint sizes differ");
    n = c.rows();
  }
  if (n < 0) throw DimensionError("constrained_commutant: no generators or constraints to fix the size");
  const Index nn = n * n;
  if (nn == 0) return {};

  if (hermitian_only) return detail::hermitian_commutant<Real>(generators, constraints, n, tol);

  M sys = M::Zero(Index(generators.size()) * nn + Index(constraints.size()), nn);
  Index row = 0;
  for (const auto& a : generators) {
    const Real w = a.norm() > 0 ? Real(1) / a.norm() : Real(1);
    // vec(DA - AD): row (i + n j), D(i,l) gets A(l,j), D(k,j) gets -A(i,k).
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const Index r = row + i + n * j;
        for (Index l = 0; l < n; ++l) sys(r, i + n * l) += w * a(l, j);
        for (Index k = 0; k < n; ++k) sys(r, k + n * j) -= w * a(i, k);
      }
    row += nn;
  }
  for (const auto& c : constraints) {
    const Real w = c.norm() > 0 ? Real(1) / c.norm() : Real(1);
    sys.row(row++) = w * Eigen::Map<const CVectorT<Real>>(c.data(), nn).adjoint();
  }

  std::vector<M> out;
  const auto ns = null_space(sys, tol);
  for (Index k = 0; k < ns.basis.cols(); ++k)
    out.push_back(Eigen::Map<const M>(ns.basis.col(k).data(), n, n));
  return out;
}

template <class Real>
struct LstsqResultT {
  CMatrixT<Real> map;
  Real residual = 0;
};
using LstsqResult = LstsqResultT<double>;

/// Least-squares solution of L·input_i = target_i over all pairs (minimum-norm when underdetermined).
template <class Real>
LstsqResultT<Real> lstsq_define(std::span<const std::pair<CMatrixT<Real>, CMatrixT<Real>>> pairs,
                                const Tolerances& tol = {}) {
  using M = CMatrixT<Real>;
  if (pairs.empty()) throw DimensionError("lstsq_define: no pairs");
  const Index in_rows = pairs.front().first.rows();
  const Index out_rows = pairs.front().second.rows();
  Index cols = 0;
  for (const auto& [in, tgt] : pairs) {
    if (in.rows() != in_rows || tgt.rows() != out_rows || in.cols() != tgt.cols())
      throw DimensionError("lstsq_define: inconsistent block shapes");
    cols += in.cols();
  }
  M input(in_rows, cols), target(out_rows, cols);
  Index c = 0;
  for (const auto& [in, tgt] : pairs) {
    input.middleCols(c, in.cols()) = in;
    target.middleCols(c, in.cols()) = tgt;
    c += in.cols();
  }
  LstsqResultT<Real> out;
  if (in_rows == 0 || cols == 0) {
    out.map = M::Zero(out_rows, in_rows);
    out.residual = target.norm();
    return out;
  }
  out.map = detail::min_norm_solve<std::complex<Real>>(M(input.adjoint()), M(target.adjoint()),
                                                       Real(tol.rank_rel))
                .adjoint();
  out.residual = (out.map * input - target).norm();
  return out;
}

template <class Real>
LstsqResultT<Real> lstsq_define(const CMatrixT<Real>& input, const CMatrixT<Real>& target,
                                const Tolerances& tol = {}) {
  const std::pair<CMatrixT<Real>, CMatrixT<Real>> p{input, target};
  return lstsq_define<Real>(std::span(&p, 1), tol);
}

// ---- small non-template helpers (numlin.cpp) ----

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(std::span<const CMatrix> blocks);
/// Haar-distributed unitary.
CMatrix random_unitary(Index n, std::mt19937_64& rng);
/// Entries with independent standard complex Gaussian real and imaginary parts.
CMatrix random_complex(Index rows, Index cols, std::mt19937_64& rng);
CMatrix random_hermitian(Index n, std::mt19937_64& rng);
/// Orthonormal basis of the column space.
CMatrix range_basis(const CMatrix& a, const Tolerances& tol = {});
/// Dense matrix with the nonnegative square root of a positive matrix (and its pseudo-inverse root).
CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol = {});
CMatrix psd_inverse_sqrt(const CMatrix& a, const Tolerances& tol = {});
/// Relative size used by residual checks: max(1, ‖a‖_F).
double scale_of(const CMatrix& a);

}  // namespace covkit
