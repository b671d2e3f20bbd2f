// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "roelab/covering.hpp"
#include "roelab/rng.hpp"

namespace roelab {

namespace {

constexpr double kOrthTol = 1e-9;

// Haar-ish random unitary of size d from the QR of a seeded Gaussian matrix.
MatrixXc seeded_unitary(Index d, Rng& rng) {
  MatrixXc g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<MatrixXc> qr(g);
  return qr.householderQ() * MatrixXc::Identity(d, d);
}

double corner_outside(const BlockOperator& T, const CoarseMap& f, Index x, double R) {
  const auto& Y = T.target().base();
  const PointSet out = ball(Y, f(x), R).complement(Y.size());
  if (out.empty()) return 0.0;
  return spectral_norm(T.corner_matrix(out, PointSet{x}));
}

}  // namespace

UpgradeResult upgrade_trick(const Unitary& U, const CoarseMap& f,
                            const std::vector<ProjectionPiece>& p_spec, double epsilon,
                            std::uint64_t seed) {
  const auto& T = U.op();
  const auto& src = T.source();
  const auto& tgt = T.target();
  const auto& Y = tgt.base();
  if (!(*f.source() == src.base()) || !(*f.target() == Y))
    throw InvalidArgument("upgrade_trick: map does not match the unitary's spaces");
  if (!(epsilon > 0.0)) throw InvalidArgument("upgrade_trick: epsilon must be positive");

  // Orthonormal bases of the E_i.
  std::vector<Index> points;
  std::vector<MatrixXc> E;
  for (const auto& piece : p_spec) {
    src.base().check_point(piece.point);
    if (std::find(points.begin(), points.end(), piece.point) != points.end())
      throw InvalidArgument("upgrade_trick: point " + std::to_string(piece.point) +
                            " appears twice");
    if (piece.basis.rows() != src.fiber_dim(piece.point))
      throw InvalidArgument("upgrade_trick: basis at point " + std::to_string(piece.point) +
                            " has wrong row count");
    MatrixXc q = orthonormal_span(piece.basis);
    if (q.cols() != piece.basis.cols())
      throw InvalidArgument("upgrade_trick: basis at point " + std::to_string(piece.point) +
                            " is rank deficient");
    points.push_back(piece.point);
    E.push_back(std::move(q));
  }

  UpgradeResult res{BlockOperator::identity(src), BlockOperator(src, tgt), BlockOperator(src, src), 0.0, 0.0, {}, 0.0};

  // Smallest R with every outside corner at most epsilon.
  const auto& radii = Y.realized_distances();
  res.R = radii.back();
  for (double R : radii) {
    bool ok = true;
    for (Index x = 0; x < src.points() && ok; ++x) ok = corner_outside(T, f, x, R) <= epsilon;
    if (ok) {
      res.R = R;
      break;
    }
  }

  const std::size_t n = points.size();
  std::vector<std::vector<Index>> outside_rows(n);  // basis rows of C_i
  std::vector<MatrixXc> discarded(n);               // chi_{C_i} U (chi_{x_i} (x) V_i) E_i
  std::vector<Index> measured(n, 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const Index xi = points[i];
    const Index d = src.fiber_dim(xi);
    const Index k = E[i].cols();
    outside_rows[i] = tgt.basis_indices(ball(Y, f(xi), res.R).complement(Y.size()));

    // x_i-fiber components of F_i = <U* chi_{C_i} chi_{C_j} U (chi_{x_j} (x) V_j) E_j : j < i>.
    MatrixXc span(d, 0);
    for (std::size_t j = 0; j < i; ++j) {
      MatrixXc restricted = MatrixXc::Zero(tgt.total_dim(), discarded[j].cols());
      for (Index r : outside_rows[i])
        if (std::binary_search(outside_rows[j].begin(), outside_rows[j].end(), r))
          restricted.row(r) = discarded[j].row(r);
      const MatrixXc pulled = T.matrix().middleCols(src.offset(xi), d).adjoint() * restricted;
      MatrixXc grown(d, span.cols() + pulled.cols());
      grown << span, pulled;
      span = std::move(grown);
    }
    const MatrixXc G = orthonormal_span(span);
    measured[i] = k + G.cols();
    if (measured[i] > d) {
      std::vector<std::pair<Index, Index>> req;
      Index prefix = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Index need = j <= i ? measured[j] : E[j].cols() + prefix;
        req.emplace_back(points[j], need);
        prefix += E[j].cols();
      }
      std::ostringstream msg;
      msg << "fiber at point " << xi << " has dim " << d << ", orthogonality needs " << measured[i];
      throw InfeasibleFiberDims(msg.str(), std::move(req));
    }

    // V_i sends E_i onto the first k directions orthogonal to G; the rest is
    // completed and mixed by a seeded unitary.
    const MatrixXc K = complete_unitary(G).rightCols(d - G.cols());
    MatrixXc Qt = complete_unitary(MatrixXc(K.leftCols(k)));
    MatrixXc Qs = complete_unitary(E[i]);
    if (d > k) {
      Qt.rightCols(d - k) = Qt.rightCols(d - k) * seeded_unitary(d - k, rng);
    }
    const MatrixXc Vi = Qt * Qs.adjoint();
    res.V.block(xi, xi) = Vi;
    res.p.block(xi, xi) = E[i] * E[i].adjoint();

    MatrixXc img = MatrixXc::Zero(tgt.total_dim(), k);
    const MatrixXc full = T.matrix().middleCols(src.offset(xi), d) * Vi * E[i];
    for (Index r : outside_rows[i]) img.row(r) = full.row(r);
    discarded[i] = std::move(img);
  }

  const BlockOperator UVp = T * res.V * res.p;
  for (std::size_t i = 0; i < n; ++i) {
    const PointSet inside = ball(Y, f(points[i]), res.R);
    res.t = res.t + corner(UVp, inside, PointSet{points[i]});
  }

  // Discarded operators D_i = chi_{C_i} U (chi_{x_i} (x) V_i) p_{x_i}, full size.
  std::vector<MatrixXc> D(n);
  for (std::size_t i = 0; i < n; ++i) {
    D[i] = MatrixXc::Zero(tgt.total_dim(), src.total_dim());
    D[i].middleCols(src.offset(points[i]), src.fiber_dim(points[i])) =
        discarded[i] * E[i].adjoint();
    res.discarded_norms.push_back(spectral_norm(D[i]));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      res.orthogonality_residual =
          std::max({res.orthogonality_residual, spectral_norm(MatrixXc(D[i] * D[j].adjoint())),
                    spectral_norm(MatrixXc(D[i].adjoint() * D[j]))});
    }
  if (res.orthogonality_residual > kOrthTol) {
    std::ostringstream msg;
    msg << "upgrade_trick: discarded terms not orthogonal (residual " << res.orthogonality_residual
        << ")";
    throw InvariantViolation(msg.str());
  }

  res.error = norm(res.t - UVp);
  if (res.error > epsilon + kOrthTol) {
    std::ostringstream msg;
    msg << "upgrade_trick: error " << res.error << " exceeds epsilon " << epsilon;
    throw InvariantViolation(msg.str());
  }
  return res;
}

}  // namespace roelab
