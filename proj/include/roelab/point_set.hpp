// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_POINT_SET_HPP
#define ROELAB_POINT_SET_HPP

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "roelab/error.hpp"

namespace roelab {

/// Sorted, duplicate-free set of point indices.
class PointSet {
public:
  using const_iterator = std::vector<Index>::const_iterator;

  PointSet() = default;
  PointSet(std::initializer_list<Index> points) : points_(points) { normalize(); }
  explicit PointSet(std::vector<Index> points) : points_(std::move(points)) { normalize(); }

  /// {0, ..., n-1}
  static PointSet all(Index n) {
    PointSet s;
    s.points_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) s.points_[static_cast<std::size_t>(i)] = i;
    return s;
  }

  bool empty() const { return points_.empty(); }
  Index size() const { return static_cast<Index>(points_.size()); }
  const_iterator begin() const { return points_.begin(); }
  const_iterator end() const { return points_.end(); }
  Index operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& indices() const { return points_; }

  bool contains(Index p) const { return std::binary_search(points_.begin(), points_.end(), p); }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
  }

  /// Complement inside {0, ..., n-1}.
  PointSet complement(Index n) const {
    PointSet out;
    for (Index i = 0; i < n; ++i)
      if (!contains(i)) out.points_.push_back(i);
    return out;
  }

  friend PointSet operator&(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.points_));
    return out;
  }
  friend PointSet operator|(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.points_));
    return out;
  }
  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  void normalize() {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  std::vector<Index> points_;
};

}  // namespace roelab

#endif  // ROELAB_POINT_SET_HPP
