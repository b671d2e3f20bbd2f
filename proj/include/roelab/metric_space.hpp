// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_METRIC_SPACE_HPP
#define ROELAB_METRIC_SPACE_HPP

#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "roelab/error.hpp"
#include "roelab/point_set.hpp"

namespace roelab {

/// A finite metric space on points 0..n-1. The distance matrix is validated
/// (symmetry, zero diagonal, positivity off the diagonal, triangle
/// inequality) on construction and immutable afterwards.
class FiniteMetricSpace {
public:
  explicit FiniteMetricSpace(Eigen::MatrixXd dist);

  Index size() const { return dist_.rows(); }
  double distance(Index x, Index y) const { return dist_(x, y); }
  const Eigen::MatrixXd& distances() const { return dist_; }

  double diameter() const { return diameter_; }

  /// Sorted distinct entries of the distance matrix, 0 included.
  const std::vector<double>& realized_distances() const { return realized_; }

  void check_point(Index x) const;
  void check_points(const PointSet& s) const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.dist_.rows() == b.dist_.rows() && a.dist_ == b.dist_;
  }

private:
  Eigen::MatrixXd dist_;
  double diameter_ = 0.0;
  std::vector<double> realized_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

/// Points 0..n-1 with d(i,j) = |i-j|.
SpacePtr path_space(Index n);

/// Unweighted shortest-path metric of a connected graph.
SpacePtr from_edge_list(Index n, const std::vector<std::pair<Index, Index>>& edges);

SpacePtr make_space(Eigen::MatrixXd dist);

/// Closed ball {x' : d(x, x') <= R}.
PointSet ball(const FiniteMetricSpace& X, Index x, double R);

/// Union of closed R-balls around the points of A.
PointSet neighborhood(const FiniteMetricSpace& X, const PointSet& A, double R);

/// max_x |ball(x, R)|
Index growth_profile(const FiniteMetricSpace& X, double R);

/// d(A, B) = min over pairs; +infinity when either set is empty.
double set_distance(const FiniteMetricSpace& X, const PointSet& A, const PointSet& B);

/// d(x, A); +infinity for empty A.
double point_set_distance(const FiniteMetricSpace& X, Index x, const PointSet& A);

double set_diameter(const FiniteMetricSpace& X, const PointSet& A);

}  // namespace roelab

#endif  // ROELAB_METRIC_SPACE_HPP
