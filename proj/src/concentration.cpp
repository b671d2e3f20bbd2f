// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/concentration.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "roelab/rademacher.hpp"

namespace roelab {

namespace {

constexpr double kSlack = 1e-9;

void fail(const std::string& what) { throw InvariantViolation("concentration: " + what); }

void check_radius(double R) {
  if (!(R >= 0.0)) throw InvalidArgument("concentration: R must be >= 0");
}

// Smallest singular value of m squared, 0 when m has a kernel.
double min_sv_sq(const MatrixXc& m) {
  if (m.cols() == 0) return 1.0;
  if (m.rows() < m.cols()) return 0.0;
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const double s = svd.singularValues()(m.cols() - 1);
  return s * s;
}

}  // namespace

std::vector<double> corner_profile(const Unitary& U, Index y, double R) {
  const auto& T = U.op();
  check_radius(R);
  const PointSet B = ball(T.target().base(), y, R);
  std::vector<double> out;
  for (Index x = 0; x < T.source().points(); ++x)
    out.push_back(spectral_norm(T.corner_matrix(B, PointSet{x})));
  return out;
}

ConcentrationWitness concentration_witness(const Unitary& U, Index y, double R, Index h_index) {
  const auto& T = U.op();
  const auto& src = T.source();
  const auto& tgt = T.target();
  tgt.base().check_point(y);
  if (h_index < 0 || h_index >= tgt.fiber_dim(y))
    throw InvalidArgument("h_index " + std::to_string(h_index) + " outside fiber of dim " +
                          std::to_string(tgt.fiber_dim(y)));

  check_radius(R);
  ConcentrationWitness w;
  w.y = y;
  w.R = R;
  w.h_index = h_index;

  const PointSet B = ball(tgt.base(), y, R);
  const PointSet outside = B.complement(tgt.points());
  w.separation = point_set_distance(tgt.base(), y, outside);
  w.degenerate = outside.empty();

  // For unitary U, 1 - ||chi_B U chi_x||^2 is the squared smallest singular
  // value of (1 - chi_B) U chi_x. Reading it off the complement avoids the
  // cancellation in 1 - delta^2 when delta is 1 up to rounding.
  double gap = 1.0;
  for (Index x = 0; x < src.points(); ++x)
    gap = std::min(gap, min_sv_sq(T.corner_matrix(outside, PointSet{x})));
  const double d2 = 1.0 - gap;
  w.delta_actual = std::sqrt(d2);
  w.bound = 0.5 * std::sqrt(gap);

  const VectorXc v = T.matrix().row(tgt.offset(y) + h_index).adjoint();
  if (std::abs(v.squaredNorm() - 1.0) > kSlack) fail("U*(delta_y x h) is not a unit vector");

  const auto in_ball = tgt.basis_indices(B);
  std::vector<VectorXc> pieces;
  double mass = 0.0;
  for (Index x = 0; x < src.points(); ++x) {
    const auto vx = v.segment(src.offset(x), src.fiber_dim(x));
    VectorXc px = T.matrix().middleCols(src.offset(x), src.fiber_dim(x)) * vx;
    for (Index i : in_ball) px(i) = 0.0;
    const double vx2 = vx.squaredNorm();
    mass += vx2;
    if (px.squaredNorm() < (1.0 - d2) * vx2 - kSlack) {
      std::ostringstream msg;
      msg << "piece at x=" << x << " has " << px.squaredNorm() << " < " << (1.0 - d2) * vx2;
      fail(msg.str());
    }
    pieces.push_back(std::move(px));
  }
  if (std::abs(mass - 1.0) > kSlack) fail("point masses of v do not sum to 1");

  const auto sel = greedy_signs(pieces);
  w.signs = sel.signs;
  w.sign_sum_sq = sel.achieved;
  if (sel.achieved < (1.0 - d2) - kSlack) fail("signed sum falls below 1 - delta^2");

  std::vector<Index> pos, neg;
  for (Index x = 0; x < src.points(); ++x)
    (w.signs[static_cast<std::size_t>(x)] > 0 ? pos : neg).push_back(x);

  const auto certificate = [&](const PointSet& A) {
    if (A.empty() || outside.empty()) return 0.0;
    const auto cols = src.basis_indices(A);
    const auto rows = tgt.basis_indices(outside);
    const auto yrows = tgt.basis_indices(PointSet{y});
    const MatrixXc m = T.matrix()(rows, cols) * T.matrix()(yrows, cols).adjoint();
    return spectral_norm(m);
  };
  const PointSet P(std::move(pos)), N(std::move(neg));
  const double cp = certificate(P), cn = certificate(N);
  if (cn > cp) {
    w.A = N;
    w.A_is_positive = false;
    w.certificate = cn;
  } else {
    w.A = P;
    w.certificate = cp;
  }
  if (w.certificate < w.bound - kSlack) {
    std::ostringstream msg;
    msg << "certificate " << w.certificate << " below bound " << w.bound;
    fail(msg.str());
  }
  return w;
}

ConcentrationWitness concentration_witness_sweep(const Unitary& U, Index y, double R) {
  const auto& tgt = U.target();
  tgt.base().check_point(y);
  ConcentrationWitness best = concentration_witness(U, y, R, 0);
  for (Index h = 1; h < tgt.fiber_dim(y); ++h) {
    auto w = concentration_witness(U, y, R, h);
    if (w.certificate > best.certificate) best = std::move(w);
  }
  return best;
}

}  // namespace roelab
