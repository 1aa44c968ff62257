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

#include "covkit/numlin.hpp"

#include <Eigen/Dense>

namespace covkit {

namespace detail {

template <class Scalar>
Eigen::Matrix<RealOf<Scalar>, Eigen::Dynamic, 1> singular_values(const Dense<Scalar>& a) {
  if (a.size() == 0) return {};
  auto values = Eigen::BDCSVD<Dense<Scalar>>(a).singularValues();
  // Eigen 3.4 divide-and-conquer occasionally returns NaN on rank-deficient input.
  if (!values.allFinite()) values = Eigen::JacobiSVD<Dense<Scalar>>(a).singularValues();
  return values;
}

template <class Scalar>
RightSvd<Scalar> right_svd(const Dense<Scalar>& a) {
  const Index cols = a.cols();
  Dense<Scalar> sys = a;
  if (sys.rows() > 2 * cols) {
    Eigen::HouseholderQR<Dense<Scalar>> qr(sys);
    sys = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();
  }
  Eigen::BDCSVD<Dense<Scalar>> svd(sys, Eigen::ComputeFullV);
  if (svd.singularValues().allFinite() && svd.matrixV().allFinite()) return {svd.singularValues(), svd.matrixV()};
  Eigen::JacobiSVD<Dense<Scalar>> jac(sys, Eigen::ComputeFullV);
  return {jac.singularValues(), jac.matrixV()};
}

template <class Scalar>
HermitianEig<Scalar> hermitian_eig(const Dense<Scalar>& a, bool with_vectors) {
  if (a.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Dense<Scalar>> es(
      a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  HermitianEig<Scalar> out;
  out.values = es.eigenvalues();
  if (with_vectors) out.vectors = es.eigenvectors();
  return out;
}

template <class Scalar>
Dense<Scalar> min_norm_solve(const Dense<Scalar>& a, const Dense<Scalar>& b, RealOf<Scalar> threshold) {
  Eigen::CompleteOrthogonalDecomposition<Dense<Scalar>> cod(a);
  cod.setThreshold(threshold);
  return cod.solve(b);
}

#define COVKIT_INSTANTIATE(S)                                                            \
  template Eigen::Matrix<RealOf<S>, Eigen::Dynamic, 1> singular_values<S>(const Dense<S>&); \
  template RightSvd<S> right_svd<S>(const Dense<S>&);                                    \
  template HermitianEig<S> hermitian_eig<S>(const Dense<S>&, bool);                       \
  template Dense<S> min_norm_solve<S>(const Dense<S>&, const Dense<S>&, RealOf<S>);
COVKIT_INSTANTIATE(float)
COVKIT_INSTANTIATE(double)
COVKIT_INSTANTIATE(std::complex<float>)
COVKIT_INSTANTIATE(std::complex<double>)
#undef COVKIT_INSTANTIATE

}  // namespace detail

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(std::span<const CMatrix> blocks) {
  Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  return out;
}

CMatrix random_hermitian(Index n, std::mt19937_64& rng) {
  return hermitian_part(random_complex(n, n, rng));
}

CMatrix random_unitary(Index n, std::mt19937_64& rng) {
  const CMatrix z = random_complex(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix range_basis(const CMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) return CMatrix::Zero(a.rows(), 0);
  // left singular vectors of a are right singular vectors of a†
  const auto svd = detail::right_svd<Complex>(a.adjoint());
  const auto& s = svd.values;
  Index rank = 0;
  if (s(0) > 0)
    while (rank < s.size() && s(rank) > tol.rank_rel * s(0)) ++rank;
  return svd.v.leftCols(rank);
}

namespace {

CMatrix spectral_function(const CMatrix& a, const Tolerances& tol, bool inverse) {
  require_square(a, "psd_sqrt");
  if (a.size() == 0) return a;
  const double scale = std::max(1.0, spectral_norm(a));
  const auto es = detail::hermitian_eig<Complex>(hermitian_part(a), true);
  const auto& lam = es.values;
  if (lam(0) < -tol.psd_eig * scale)
    throw NotPositiveError("square root of a non-positive matrix", lam(0));
  const double cut = std::max(tol.psd_eig * scale, tol.rank_rel * lam(lam.size() - 1));
  Eigen::VectorXd f(lam.size());
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= cut)
      f(i) = inverse ? 0.0 : std::sqrt(std::max(lam(i), 0.0));
    else
      f(i) = inverse ? 1.0 / std::sqrt(lam(i)) : std::sqrt(lam(i));
  }
  return es.vectors * f.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace

CMatrix psd_sqrt(const CMatrix& a, const Tolerances& tol) { return spectral_function(a, tol, false); }

CMatrix psd_inverse_sqrt(const CMatrix& a, const Tolerances& tol) {
  return spectral_function(a, tol, true);
}

double scale_of(const CMatrix& a) { return std::max(1.0, a.norm()); }

}  // namespace covkit
