// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_LINALG_HPP
#define ROELAB_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "roelab/error.hpp"

namespace roelab {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using MatrixXc = Matrix<Complex>;
using VectorXc = Vector<Complex>;

/// Largest singular value, from the eigenvalues of the smaller Gram matrix.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Matrix<Scalar> gram;
  if (m.rows() < m.cols())
    gram = m * m.adjoint();
  else
    gram = m.adjoint() * m;
  if (gram.rows() == 1) return std::sqrt(std::max(0.0, std::real(gram(0, 0))));
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Orthonormal basis of the column span, dropping directions below rel_tol of the largest.
template <typename Scalar>
Matrix<Scalar> orthonormal_span(const Matrix<Scalar>& m, double rel_tol = 1e-10) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix<Scalar>(m.rows(), 0);
  Eigen::JacobiSVD<Matrix<Scalar>> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index rank = 0;
  const double cutoff = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Completes orthonormal columns q (d x k) to a d x d unitary whose first k columns are q.
template <typename Scalar>
Matrix<Scalar> complete_unitary(const Matrix<Scalar>& q) {
  const Index d = q.rows();
  Matrix<Scalar> full(d, d);
  full.leftCols(q.cols()) = q;
  if (q.cols() == d) return full;
  // Householder QR of [q | I] yields an orthonormal basis whose leading block spans q.
  Matrix<Scalar> aug(d, q.cols() + d);
  aug << q, Matrix<Scalar>::Identity(d, d);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(aug);
  Matrix<Scalar> Q = qr.householderQ() * Matrix<Scalar>::Identity(d, d);
  full.rightCols(d - q.cols()) = Q.rightCols(d - q.cols());
  return full;
}

}  // namespace roelab

#endif  // ROELAB_LINALG_HPP
