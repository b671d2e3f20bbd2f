// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_FIBERED_SPACE_HPP
#define ROELAB_FIBERED_SPACE_HPP

#include <vector>

#include "roelab/metric_space.hpp"

namespace roelab {

/// l^2(X; H) with H truncated to C^{d_x} at each point x. Basis vectors are
/// ordered point-major: point 0's fiber first.
class FiberedSpace {
public:
  FiberedSpace(SpacePtr base, std::vector<Index> fiber_dims);
  static FiberedSpace uniform(SpacePtr base, Index dim);

  const FiniteMetricSpace& base() const { return *base_; }
  const SpacePtr& base_ptr() const { return base_; }
  Index points() const { return base_->size(); }
  Index fiber_dim(Index x) const { return dims_[static_cast<std::size_t>(x)]; }
  Index offset(Index x) const { return offsets_[static_cast<std::size_t>(x)]; }
  Index total_dim() const { return offsets_.back(); }
  const std::vector<Index>& fiber_dims() const { return dims_; }

  /// Point carrying basis vector i.
  Index point_of(Index i) const { return owner_[static_cast<std::size_t>(i)]; }

  /// Basis indices of the fibers over A, ascending.
  std::vector<Index> basis_indices(const PointSet& A) const;

  friend bool operator==(const FiberedSpace& a, const FiberedSpace& b) {
    return a.dims_ == b.dims_ && (a.base_ == b.base_ || *a.base_ == *b.base_);
  }

private:
  SpacePtr base_;
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  std::vector<Index> owner_;
};

inline bool same_base(const FiberedSpace& a, const FiberedSpace& b) {
  return a.base_ptr() == b.base_ptr() || a.base() == b.base();
}

}  // namespace roelab

#endif  // ROELAB_FIBERED_SPACE_HPP
