// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_BLOCK_OPERATOR_HPP
#define ROELAB_BLOCK_OPERATOR_HPP

#include <algorithm>
#include <cstdint>
#include <string>

#include "roelab/coarse_map.hpp"
#include "roelab/fibered_space.hpp"
#include "roelab/linalg.hpp"

namespace roelab {

/// Operator l^2(X; C^{d_x}) -> l^2(Y; C^{d_y}) with block (y, x) of shape d_y x d_x.
///
/// Storage is one dense matrix in point-major basis order; a block is zero
/// exactly when all of its entries are zero. Local compactness holds
/// trivially in finite dimensions and has no predicate here.
template <typename Scalar>
class BasicBlockOperator {
public:
  using scalar_type = Scalar;
  using matrix_type = Matrix<Scalar>;

  /// The zero operator.
  BasicBlockOperator(FiberedSpace source, FiberedSpace target)
      : source_(std::move(source)), target_(std::move(target)),
        m_(matrix_type::Zero(target_.total_dim(), source_.total_dim())) {}

  BasicBlockOperator(FiberedSpace source, FiberedSpace target, matrix_type m)
      : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
    if (m_.rows() != target_.total_dim() || m_.cols() != source_.total_dim())
      throw InvalidArgument("matrix is " + std::to_string(m_.rows()) + "x" +
                            std::to_string(m_.cols()) + ", fibers need " +
                            std::to_string(target_.total_dim()) + "x" +
                            std::to_string(source_.total_dim()));
    if (!m_.allFinite()) throw InvalidArgument("operator has non-finite entries");
  }

  static BasicBlockOperator identity(const FiberedSpace& space) {
    return BasicBlockOperator(space, space,
                              matrix_type::Identity(space.total_dim(), space.total_dim()));
  }

  const FiberedSpace& source() const { return source_; }
  const FiberedSpace& target() const { return target_; }
  const matrix_type& matrix() const { return m_; }
  matrix_type& matrix() { return m_; }

  auto block(Index y, Index x) const {
    return m_.block(target_.offset(y), source_.offset(x), target_.fiber_dim(y),
                    source_.fiber_dim(x));
  }
  auto block(Index y, Index x) {
    return m_.block(target_.offset(y), source_.offset(x), target_.fiber_dim(y),
                    source_.fiber_dim(x));
  }

  bool block_is_zero(Index y, Index x) const { return (block(y, x).array() == Scalar(0)).all(); }

  /// Compressed corner chi_B T chi_A as a |B-fibers| x |A-fibers| matrix.
  matrix_type corner_matrix(const PointSet& B, const PointSet& A) const {
    const auto rows = target_.basis_indices(B);
    const auto cols = source_.basis_indices(A);
    return m_(rows, cols);
  }

private:
  FiberedSpace source_;
  FiberedSpace target_;
  matrix_type m_;
};

using BlockOperator = BasicBlockOperator<Complex>;
using RealBlockOperator = BasicBlockOperator<double>;

namespace detail {
inline void require_same(const FiberedSpace& a, const FiberedSpace& b, const char* what) {
  if (!(a == b)) throw InvalidArgument(std::string(what) + ": fibered spaces do not match");
}
}  // namespace detail

/// chi_A as a diagonal 0/1 operator.
template <typename Scalar = Complex>
BasicBlockOperator<Scalar> indicator(const FiberedSpace& space, const PointSet& A) {
  space.base().check_points(A);
  BasicBlockOperator<Scalar> out(space, space);
  for (Index i : space.basis_indices(A)) out.matrix()(i, i) = Scalar(1);
  return out;
}

template <typename Scalar>
BasicBlockOperator<Scalar> adjoint(const BasicBlockOperator<Scalar>& T) {
  return BasicBlockOperator<Scalar>(T.target(), T.source(), T.matrix().adjoint());
}

/// S . T
template <typename Scalar>
BasicBlockOperator<Scalar> compose(const BasicBlockOperator<Scalar>& S,
                                   const BasicBlockOperator<Scalar>& T) {
  detail::require_same(T.target(), S.source(), "compose");
  return BasicBlockOperator<Scalar>(T.source(), S.target(), S.matrix() * T.matrix());
}

template <typename Scalar>
BasicBlockOperator<Scalar> operator*(const BasicBlockOperator<Scalar>& S,
                                     const BasicBlockOperator<Scalar>& T) {
  return compose(S, T);
}

template <typename Scalar>
BasicBlockOperator<Scalar> operator+(const BasicBlockOperator<Scalar>& S,
                                     const BasicBlockOperator<Scalar>& T) {
  detail::require_same(S.source(), T.source(), "add");
  detail::require_same(S.target(), T.target(), "add");
  return BasicBlockOperator<Scalar>(S.source(), S.target(), S.matrix() + T.matrix());
}

template <typename Scalar>
BasicBlockOperator<Scalar> operator-(const BasicBlockOperator<Scalar>& S,
                                     const BasicBlockOperator<Scalar>& T) {
  detail::require_same(S.source(), T.source(), "subtract");
  detail::require_same(S.target(), T.target(), "subtract");
  return BasicBlockOperator<Scalar>(S.source(), S.target(), S.matrix() - T.matrix());
}

template <typename Scalar>
BasicBlockOperator<Scalar> operator*(Scalar a, const BasicBlockOperator<Scalar>& T) {
  return BasicBlockOperator<Scalar>(T.source(), T.target(), a * T.matrix());
}

/// chi_B T chi_A, kept at full size.
template <typename Scalar>
BasicBlockOperator<Scalar> corner(const BasicBlockOperator<Scalar>& T, const PointSet& B,
                                  const PointSet& A) {
  T.target().base().check_points(B);
  T.source().base().check_points(A);
  BasicBlockOperator<Scalar> out(T.source(), T.target());
  const auto rows = T.target().basis_indices(B);
  const auto cols = T.source().basis_indices(A);
  out.matrix()(rows, cols) = T.matrix()(rows, cols);
  return out;
}

/// Largest d(x, y) over blocks whose spectral norm exceeds tol; 0 for the zero operator.
template <typename Scalar>
double propagation(const BasicBlockOperator<Scalar>& T, double tol = 1e-12) {
  if (!same_base(T.source(), T.target()))
    throw InvalidArgument("propagation: source and target bases differ");
  const auto& X = T.source().base();
  double best = 0.0;
  for (Index y = 0; y < X.size(); ++y)
    for (Index x = 0; x < X.size(); ++x) {
      const double d = X.distance(x, y);
      if (d <= best || T.block_is_zero(y, x)) continue;
      if (spectral_norm(T.block(y, x)) > tol) best = d;
    }
  return best;
}

/// Zeroes every block with d(x, y) > R.
template <typename Scalar>
BasicBlockOperator<Scalar> band_truncate(const BasicBlockOperator<Scalar>& T, double R) {
  if (!same_base(T.source(), T.target()))
    throw InvalidArgument("band_truncate: source and target bases differ");
  const auto& X = T.source().base();
  BasicBlockOperator<Scalar> out = T;
  for (Index y = 0; y < X.size(); ++y)
    for (Index x = 0; x < X.size(); ++x)
      if (X.distance(x, y) > R) out.block(y, x).setZero();
  return out;
}

/// Zeroes every block (y, x) with d(f(x), y) > R; the result is R-supported on f.
template <typename Scalar>
BasicBlockOperator<Scalar> support_truncate(const BasicBlockOperator<Scalar>& T,
                                            const CoarseMap& f, double R) {
  if (!(*f.source() == T.source().base()) || !(*f.target() == T.target().base()))
    throw InvalidArgument("support_truncate: map does not match operator spaces");
  const auto& Y = T.target().base();
  BasicBlockOperator<Scalar> out = T;
  for (Index y = 0; y < Y.size(); ++y)
    for (Index x = 0; x < T.source().points(); ++x)
      if (Y.distance(f(x), y) > R) out.block(y, x).setZero();
  return out;
}

/// Smallest R with T exactly R-supported on f (structural zero check, no norms).
template <typename Scalar>
double support_radius(const BasicBlockOperator<Scalar>& T, const CoarseMap& f) {
  const auto& Y = T.target().base();
  double best = 0.0;
  for (Index y = 0; y < Y.size(); ++y)
    for (Index x = 0; x < T.source().points(); ++x)
      if (!T.block_is_zero(y, x)) best = std::max(best, Y.distance(f(x), y));
  return best;
}

template <typename Scalar>
struct NormCertificate {
  double value = 0.0;          // largest singular value
  Vector<Scalar> vector;       // unit v with T*T v ~ value^2 v
  double residual = 0.0;       // ||T*T v - value^2 v||
  Index iterations = 0;        // 0 for the full decomposition
  bool full_decomposition = false;
};

struct NormOptions {
  double tol = 1e-9;
  Index dense_limit = 64;  // full decomposition at or below this total dimension
};

namespace detail {

template <typename Scalar>
NormCertificate<Scalar> dense_norm(const Matrix<Scalar>& m) {
  NormCertificate<Scalar> cert;
  cert.full_decomposition = true;
  if (m.cols() == 0) return cert;
  const Matrix<Scalar> gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram);
  const Index top = gram.rows() - 1;
  const double lambda = std::max(0.0, es.eigenvalues()(top));
  cert.value = std::sqrt(lambda);
  cert.vector = es.eigenvectors().col(top);
  cert.residual = (gram * cert.vector - lambda * cert.vector).norm();
  return cert;
}

}  // namespace detail

/// Largest singular value with an attaining-vector certificate. Power
/// iteration on T*T above dense_limit, budget 10 * total_dim iterations;
/// throws NonConvergence carrying the best estimate when the budget runs out.
template <typename Scalar>
NormCertificate<Scalar> operator_norm(const Matrix<Scalar>& m, NormOptions opt = {}) {
  if (!(opt.tol > 0)) throw InvalidArgument("operator_norm: tol must be positive");
  const Index n = m.cols();
  if (n <= opt.dense_limit || m.rows() == 0) return detail::dense_norm(m);

  Vector<Scalar> v(n);
  for (Index i = 0; i < n; ++i) v(i) = Scalar(1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i)));
  v.normalize();
  NormCertificate<Scalar> cert;
  const Index budget = 10 * n;
  double residual = 0.0;
  double lambda = 0.0;
  for (Index it = 1; it <= budget; ++it) {
    const Vector<Scalar> w = m.adjoint() * (m * v);
    lambda = std::real(v.dot(w));
    residual = (w - lambda * v).norm();
    if (lambda <= 0.0 || residual <= opt.tol * lambda) {
      cert.value = std::sqrt(std::max(0.0, lambda));
      cert.vector = v;
      cert.residual = residual;
      cert.iterations = it;
      return cert;
    }
    v = w / w.norm();
  }
  throw NonConvergence("power iteration did not converge in " + std::to_string(budget) +
                           " iterations",
                       std::sqrt(std::max(0.0, lambda)), residual);
}

template <typename Scalar>
NormCertificate<Scalar> operator_norm(const BasicBlockOperator<Scalar>& T, NormOptions opt = {}) {
  return operator_norm(T.matrix(), opt);
}

/// operator_norm with fallback to the full decomposition on NonConvergence.
template <typename Scalar>
double norm(const BasicBlockOperator<Scalar>& T) {
  try {
    return operator_norm(T.matrix()).value;
  } catch (const NonConvergence&) {
    return detail::dense_norm(T.matrix()).value;
  }
}

/// max(||T*T - I||, ||TT* - I||); requires matching total dimensions.
template <typename Scalar>
double unitarity_residual(const BasicBlockOperator<Scalar>& T) {
  const auto& m = T.matrix();
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  const auto I = Matrix<Scalar>::Identity(m.rows(), m.cols());
  return std::max(spectral_norm(m.adjoint() * m - I), spectral_norm(m * m.adjoint() - I));
}

/// A block operator verified unitary on construction.
class Unitary {
public:
  explicit Unitary(BlockOperator op, double tol = 1e-9);

  const BlockOperator& op() const { return op_; }
  const FiberedSpace& source() const { return op_.source(); }
  const FiberedSpace& target() const { return op_.target(); }
  double residual() const { return residual_; }

  Unitary adjoint() const;

private:
  struct Trusted {};
  Unitary(BlockOperator op, double residual, Trusted)
      : op_(std::move(op)), residual_(residual) {}

  BlockOperator op_;
  double residual_;
};

/// Product of `layers` layers of random complex 2x2 rotations. Each layer
/// pairs disjoint basis vectors at points within distance R, so the
/// propagation is at most layers * R. Deterministic in seed.
BlockOperator random_band_unitary(const FiberedSpace& space, double R, Index layers,
                                  std::uint64_t seed);

}  // namespace roelab

#endif  // ROELAB_BLOCK_OPERATOR_HPP
