// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/fibered_space.hpp"

#include <string>

namespace roelab {

FiberedSpace::FiberedSpace(SpacePtr base, std::vector<Index> fiber_dims)
    : base_(std::move(base)), dims_(std::move(fiber_dims)) {
  if (!base_) throw InvalidArgument("fibered space needs a base space");
  if (static_cast<Index>(dims_.size()) != base_->size())
    throw InvalidArgument("expected " + std::to_string(base_->size()) + " fiber dims, got " +
                          std::to_string(dims_.size()));
  offsets_.reserve(dims_.size() + 1);
  offsets_.push_back(0);
  for (std::size_t x = 0; x < dims_.size(); ++x) {
    if (dims_[x] < 1)
      throw InvalidArgument("fiber dim at point " + std::to_string(x) + " must be >= 1");
    offsets_.push_back(offsets_.back() + dims_[x]);
    for (Index k = 0; k < dims_[x]; ++k) owner_.push_back(static_cast<Index>(x));
  }
}

FiberedSpace FiberedSpace::uniform(SpacePtr base, Index dim) {
  const auto n = static_cast<std::size_t>(base->size());
  return FiberedSpace(std::move(base), std::vector<Index>(n, dim));
}

std::vector<Index> FiberedSpace::basis_indices(const PointSet& A) const {
  std::vector<Index> out;
  for (Index x : A) {
    base_->check_point(x);
    for (Index k = 0; k < fiber_dim(x); ++k) out.push_back(offset(x) + k);
  }
  return out;
}

}  // namespace roelab
