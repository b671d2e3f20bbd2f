// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/block_operator.hpp"

#include <cmath>
#include <sstream>

#include "roelab/rng.hpp"

namespace roelab {

Unitary::Unitary(BlockOperator op, double tol) : op_(std::move(op)) {
  residual_ = unitarity_residual(op_);
  if (!(residual_ <= tol)) {
    std::ostringstream msg;
    msg << "operator is not unitary: residual " << residual_ << " exceeds " << tol;
    throw InvalidArgument(msg.str());
  }
}

Unitary Unitary::adjoint() const { return Unitary(roelab::adjoint(op_), residual_, Trusted{}); }

BlockOperator random_band_unitary(const FiberedSpace& space, double R, Index layers,
                                  std::uint64_t seed) {
  if (!(R >= 0)) throw InvalidArgument("random_band_unitary: R must be >= 0");
  if (layers < 0) throw InvalidArgument("random_band_unitary: layers must be >= 0");
  const Index n = space.total_dim();
  const auto& X = space.base();
  Rng rng(seed);
  MatrixXc u = MatrixXc::Identity(n, n);
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  for (Index layer = 0; layer < layers; ++layer) {
    rng.shuffle(order);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    MatrixXc l = MatrixXc::Identity(n, n);
    for (std::size_t a = 0; a < order.size(); ++a) {
      const Index i = order[a];
      if (used[static_cast<std::size_t>(i)]) continue;
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const Index j = order[b];
        if (used[static_cast<std::size_t>(j)]) continue;
        if (X.distance(space.point_of(i), space.point_of(j)) > R) continue;
        used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
        const double theta = rng.uniform(0.0, 6.283185307179586);
        const double phi = rng.uniform(0.0, 6.283185307179586);
        const Complex phase = std::polar(1.0, phi);
        const double c = std::cos(theta), s = std::sin(theta);
        l(i, i) = c;
        l(i, j) = -phase * s;
        l(j, i) = std::conj(phase) * s;
        l(j, j) = c;
        break;
      }
    }
    u = l * u;
  }
  return BlockOperator(space, space, std::move(u));
}

}  // namespace roelab
