// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace roelab {

namespace {

std::string pair_str(Index i, Index j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(Eigen::MatrixXd dist) : dist_(std::move(dist)) {
  const Index n = dist_.rows();
  if (n == 0) throw InvalidArgument("metric space must have at least one point");
  if (dist_.cols() != n) throw InvalidArgument("distance matrix must be square");
  if (!dist_.allFinite()) throw InvalidArgument("distance matrix has non-finite entries");
  for (Index i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) throw InvalidArgument("nonzero diagonal at " + std::to_string(i));
    for (Index j = 0; j < i; ++j) {
      if (dist_(i, j) != dist_(j, i))
        throw InvalidArgument("asymmetric distance at " + pair_str(i, j));
      if (!(dist_(i, j) > 0.0))
        throw InvalidArgument("non-positive distance between distinct points " + pair_str(i, j));
    }
  }
  diameter_ = dist_.maxCoeff();
  const double slack = 1e-12 * std::max(1.0, diameter_);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (dist_(i, j) > dist_(i, k) + dist_(k, j) + slack)
          throw InvalidArgument("triangle inequality fails for " + pair_str(i, j) + " via " +
                                std::to_string(k));

  realized_.assign(dist_.data(), dist_.data() + dist_.size());
  std::sort(realized_.begin(), realized_.end());
  realized_.erase(std::unique(realized_.begin(), realized_.end()), realized_.end());
}

void FiniteMetricSpace::check_point(Index x) const {
  if (x < 0 || x >= size())
    throw InvalidArgument("point " + std::to_string(x) + " out of range [0," +
                          std::to_string(size()) + ")");
}

void FiniteMetricSpace::check_points(const PointSet& s) const {
  for (Index p : s) check_point(p);
}

SpacePtr make_space(Eigen::MatrixXd dist) {
  return std::make_shared<const FiniteMetricSpace>(std::move(dist));
}

SpacePtr path_space(Index n) {
  if (n < 1) throw InvalidArgument("path_space needs n >= 1");
  Eigen::MatrixXd d(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) = static_cast<double>(std::abs(i - j));
  return make_space(std::move(d));
}

SpacePtr from_edge_list(Index n, const std::vector<std::pair<Index, Index>>& edges) {
  if (n < 1) throw InvalidArgument("graph needs at least one node");
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InvalidArgument("edge " + pair_str(a, b) + " out of range");
    if (a == b) throw InvalidArgument("self-loop at " + std::to_string(a));
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, -1.0);
  for (Index s = 0; s < n; ++s) {
    std::queue<Index> frontier;
    frontier.push(s);
    d(s, s) = 0.0;
    while (!frontier.empty()) {
      const Index u = frontier.front();
      frontier.pop();
      for (Index v : adj[static_cast<std::size_t>(u)]) {
        if (d(s, v) < 0.0) {
          d(s, v) = d(s, u) + 1.0;
          frontier.push(v);
        }
      }
    }
    for (Index t = 0; t < n; ++t)
      if (d(s, t) < 0.0) throw DisconnectedGraph(s, t);
  }
  return make_space(std::move(d));
}

PointSet ball(const FiniteMetricSpace& X, Index x, double R) {
  X.check_point(x);
  std::vector<Index> out;
  for (Index p = 0; p < X.size(); ++p)
    if (X.distance(x, p) <= R) out.push_back(p);
  return PointSet(std::move(out));
}

PointSet neighborhood(const FiniteMetricSpace& X, const PointSet& A, double R) {
  X.check_points(A);
  std::vector<Index> out;
  for (Index p = 0; p < X.size(); ++p)
    if (point_set_distance(X, p, A) <= R) out.push_back(p);
  return PointSet(std::move(out));
}

Index growth_profile(const FiniteMetricSpace& X, double R) {
  Index best = 0;
  for (Index x = 0; x < X.size(); ++x) best = std::max(best, ball(X, x, R).size());
  return best;
}

double point_set_distance(const FiniteMetricSpace& X, Index x, const PointSet& A) {
  double best = std::numeric_limits<double>::infinity();
  for (Index a : A) best = std::min(best, X.distance(x, a));
  return best;
}

double set_distance(const FiniteMetricSpace& X, const PointSet& A, const PointSet& B) {
  double best = std::numeric_limits<double>::infinity();
  for (Index a : A) best = std::min(best, point_set_distance(X, a, B));
  return best;
}

double set_diameter(const FiniteMetricSpace& X, const PointSet& A) {
  double best = 0.0;
  for (Index a : A)
    for (Index b : A) best = std::max(best, X.distance(a, b));
  return best;
}

}  // namespace roelab
