// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_ERROR_HPP
#define ROELAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace roelab {

using Index = Eigen::Index;

/// Bad input: out-of-range points, shape mismatches, malformed spaces.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration was asked to run past its configured size limit.
class SizeLimitExceeded : public std::length_error {
public:
  using std::length_error::length_error;
};

/// The graph handed to from_edge_list has two points with no path between them.
class DisconnectedGraph : public InvalidArgument {
public:
  DisconnectedGraph(Index a, Index b)
      : InvalidArgument("graph is disconnected: no path between " + std::to_string(a) + " and " +
                        std::to_string(b)),
        pair_(a, b) {}
  std::pair<Index, Index> unreachable_pair() const { return pair_; }

private:
  std::pair<Index, Index> pair_;
};

/// Power iteration ran out of budget; carries the best singular value estimate.
class NonConvergence : public std::runtime_error {
public:
  NonConvergence(const std::string& what, double best_estimate, double residual)
      : std::runtime_error(what), best_(best_estimate), residual_(residual) {}
  double best_estimate() const { return best_; }
  double residual() const { return residual_; }

private:
  double best_;
  double residual_;
};

/// No radius makes every target point carry a corner above delta.
class InadmissibleDelta : public std::runtime_error {
public:
  InadmissibleDelta(double delta, Index best_point, double best_norm)
      : std::runtime_error("delta " + std::to_string(delta) +
                           " too aggressive: best achievable corner is " +
                           std::to_string(best_norm) + " at point " + std::to_string(best_point)),
        point_(best_point), norm_(best_norm) {}
  Index best_point() const { return point_; }
  double best_norm() const { return norm_; }

private:
  Index point_;
  double norm_;
};

/// (delta, R) fails the corner condition at the listed points.
class InadmissibleRadius : public std::runtime_error {
public:
  InadmissibleRadius(const std::string& what, std::vector<Index> failing)
      : std::runtime_error(what), failing_(std::move(failing)) {}
  const std::vector<Index>& failing_points() const { return failing_; }

private:
  std::vector<Index> failing_;
};

/// Fibers are too small for the orthogonality step; lists a sufficient dimension per point.
class InfeasibleFiberDims : public std::runtime_error {
public:
  InfeasibleFiberDims(const std::string& what, std::vector<std::pair<Index, Index>> required)
      : std::runtime_error(what), required_(std::move(required)) {}
  /// (point, minimal sufficient fiber dimension)
  const std::vector<std::pair<Index, Index>>& required_dims() const { return required_; }

private:
  std::vector<std::pair<Index, Index>> required_;
};

/// A check that must hold by construction failed numerically.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace roelab

#endif  // ROELAB_ERROR_HPP
