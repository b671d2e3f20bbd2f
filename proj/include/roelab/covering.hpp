// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_COVERING_HPP
#define ROELAB_COVERING_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "roelab/block_operator.hpp"
#include "roelab/locality.hpp"
#include "roelab/rigidity.hpp"

namespace roelab {

struct CoveringOptions {
  double separation = 0.0;                        // first net separation tried
  std::optional<std::vector<Index>> net_order;    // greedy scan order, ascending if unset
  /// Prescribed target fibers. When set, target basis vectors are assigned to
  /// net points by a bottleneck transport and a point's fiber may be shared
  /// between blocks. When unset, each target point belongs to exactly one
  /// block and target fibers are sized so block totals match.
  std::optional<std::vector<Index>> target_fibers;
};

struct CoveringBlock {
  Index net_point = 0;
  PointSet source;  // X(x0), contains x0
  PointSet target;  // points of Y carrying basis vectors of the block; contains f(x0)
  std::vector<std::pair<Index, Index>> bijection;  // (source basis index, target basis index)
};

struct CoveringPlan {
  double separation = 0.0;
  PointSet net;
  std::vector<CoveringBlock> blocks;
  FiberedSpace source;
  FiberedSpace target;
  double support_radius = 0.0;  // max d(f(x), y) over nonzero blocks (y, x)
  double max_source_block_diameter = 0.0;
  double max_target_block_diameter = 0.0;
  bool fibers_split = false;
};

struct Covering {
  BlockOperator unitary;
  CoveringPlan plan;
};

/// A unitary U_f coarsely supported on f, built from a net X0 on which f is
/// injective, partitions {X(x0)}, {Y(x0)}, and per-block basis bijections.
/// The net separation ascends over realized distances from opt.separation
/// until the construction is feasible.
Covering covering_unitary(const CoarseMap& f, const FiberedSpace& source,
                          const CoveringOptions& opt = {});

/// (R, supported_distance_upper(U, f, R)) for each R.
std::vector<std::pair<double, double>> supported_approximation_curve(
    const BlockOperator& U, const CoarseMap& f, const std::vector<double>& radii);

/// p_{x_i}: projection onto span(basis) inside the fiber at `point`.
struct ProjectionPiece {
  Index point = 0;
  MatrixXc basis;  // d_point x k, full column rank
};

struct UpgradeResult {
  BlockOperator V;  // unitary, propagation zero
  BlockOperator t;  // R-supported on f
  BlockOperator p;  // the finite-rank projection
  double error = 0.0;  // ||t - U V p||
  double R = 0.0;
  std::vector<double> discarded_norms;  // ||chi_{C_i} U (chi_{x_i} (x) V_i) p_{x_i}||
  double orthogonality_residual = 0.0;  // max over i != j of both cross products
};

/// Chooses the smallest R with max_x ||chi_{Y \ B(f(x);R)} U chi_x|| <= epsilon,
/// then builds V_i one point at a time so that V_i(E_i) is orthogonal to the
/// x_i-fiber part of every earlier discarded term pulled back by U.
/// Throws InfeasibleFiberDims when a fiber is too small for that orthogonality.
UpgradeResult upgrade_trick(const Unitary& U, const CoarseMap& f,
                            const std::vector<ProjectionPiece>& p_spec, double epsilon,
                            std::uint64_t seed = 0);

struct OuterRoundtripReport {
  ExtractionReport extraction;
  Covering covering;  // W covering the extracted f
  BlockOperator UWstar;
  double residual_U = 0.0;
  double residual_W = 0.0;
  double residual_UWstar = 0.0;
  double propagation_UWstar = 0.0;
  std::vector<std::pair<double, ApproximabilityWindow>> windows;
};

/// Extracts f from an automorphism-setting unitary, covers it by W on the
/// same fibered space, and measures how banded U W* is on a radius grid
/// (empty grid: every realized distance).
OuterRoundtripReport outer_roundtrip(const Unitary& U, double delta = kDefaultDelta,
                                     std::vector<double> radius_grid = {},
                                     const LocalityOptions& locality = {});

}  // namespace roelab

#endif  // ROELAB_COVERING_HPP
