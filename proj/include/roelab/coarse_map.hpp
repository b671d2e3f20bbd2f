// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_COARSE_MAP_HPP
#define ROELAB_COARSE_MAP_HPP

#include <map>
#include <optional>
#include <vector>

#include "roelab/metric_space.hpp"

namespace roelab {

/// A total function between finite metric spaces, stored as a lookup table.
class CoarseMap {
public:
  CoarseMap(SpacePtr source, SpacePtr target, std::vector<Index> table);

  static CoarseMap identity(SpacePtr space);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  const std::vector<Index>& table() const { return table_; }
  Index operator()(Index x) const { return table_[static_cast<std::size_t>(x)]; }

  /// Image f(A).
  PointSet image(const PointSet& A) const;

  bool injective_on(const PointSet& A) const;

private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<Index> table_;
};

/// (f . g)(x) = f(g(x)); requires g's target to equal f's source.
CoarseMap compose(const CoarseMap& f, const CoarseMap& g);

/// max over pairs with d(x,x') <= r of d(f(x), f(x')). Exact, O(n^2).
double control_modulus(const CoarseMap& f, double r);

/// max_x d(f(x), g(x)) for maps with identical source and target.
double closeness(const CoarseMap& f, const CoarseMap& g);

struct EquivalenceReport {
  std::vector<double> modulus_f;  // modulus_f[r] = control_modulus(f, r), r = 0..ceil(diam X)
  std::vector<double> modulus_g;  // same for g over Y
  double closeness_fg = 0.0;      // closeness(f . g, id_Y)
  double closeness_gf = 0.0;      // closeness(g . f, id_X)
  bool verdict = false;
};

/// Measures f: X -> Y and g: Y -> X as a coarse equivalence pair.
EquivalenceReport certify_equivalence(const CoarseMap& f, const CoarseMap& g);

/// Maximal s-separated subset: scan points in `order` (ascending by default)
/// and keep a point iff it is farther than s from every point kept so far.
PointSet greedy_net(const FiniteMetricSpace& X, double s,
                    const std::optional<std::vector<Index>>& order = std::nullopt);

/// Assigns every point to its nearest net point, ties to the smallest index.
std::map<Index, PointSet> voronoi_partition(const FiniteMetricSpace& X, const PointSet& net);

}  // namespace roelab

#endif  // ROELAB_COARSE_MAP_HPP
