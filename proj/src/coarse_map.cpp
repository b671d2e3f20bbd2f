// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/coarse_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace roelab {

CoarseMap::CoarseMap(SpacePtr source, SpacePtr target, std::vector<Index> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (!source_ || !target_) throw InvalidArgument("coarse map needs source and target spaces");
  if (static_cast<Index>(table_.size()) != source_->size())
    throw InvalidArgument("map table has " + std::to_string(table_.size()) +
                          " entries, source has " + std::to_string(source_->size()) + " points");
  for (Index y : table_) target_->check_point(y);
}

CoarseMap CoarseMap::identity(SpacePtr space) {
  std::vector<Index> t(static_cast<std::size_t>(space->size()));
  for (Index i = 0; i < space->size(); ++i) t[static_cast<std::size_t>(i)] = i;
  return CoarseMap(space, space, std::move(t));
}

PointSet CoarseMap::image(const PointSet& A) const {
  std::vector<Index> out;
  for (Index a : A) out.push_back((*this)(a));
  return PointSet(std::move(out));
}

bool CoarseMap::injective_on(const PointSet& A) const { return image(A).size() == A.size(); }

namespace {

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

}  // namespace

CoarseMap compose(const CoarseMap& f, const CoarseMap& g) {
  if (!same_space(g.target(), f.source()))
    throw InvalidArgument("compose: inner map target differs from outer map source");
  std::vector<Index> t(g.table().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = f(g.table()[i]);
  return CoarseMap(g.source(), f.target(), std::move(t));
}

double control_modulus(const CoarseMap& f, double r) {
  const auto& X = *f.source();
  const auto& Y = *f.target();
  double best = 0.0;
  for (Index x = 0; x < X.size(); ++x)
    for (Index x2 = x + 1; x2 < X.size(); ++x2)
      if (X.distance(x, x2) <= r) best = std::max(best, Y.distance(f(x), f(x2)));
  return best;
}

double closeness(const CoarseMap& f, const CoarseMap& g) {
  if (!same_space(f.source(), g.source()) || !same_space(f.target(), g.target()))
    throw InvalidArgument("closeness: maps have different source or target");
  double best = 0.0;
  for (Index x = 0; x < f.source()->size(); ++x)
    best = std::max(best, f.target()->distance(f(x), g(x)));
  return best;
}

namespace {

std::vector<double> modulus_table(const CoarseMap& f) {
  const auto steps = static_cast<Index>(std::ceil(f.source()->diameter()));
  std::vector<double> out;
  for (Index r = 0; r <= steps; ++r) out.push_back(control_modulus(f, static_cast<double>(r)));
  return out;
}

}  // namespace

EquivalenceReport certify_equivalence(const CoarseMap& f, const CoarseMap& g) {
  if (!same_space(f.target(), g.source()) || !same_space(g.target(), f.source()))
    throw InvalidArgument("certify_equivalence: expected f: X -> Y and g: Y -> X");
  EquivalenceReport rep;
  rep.modulus_f = modulus_table(f);
  rep.modulus_g = modulus_table(g);
  rep.closeness_fg = closeness(compose(f, g), CoarseMap::identity(g.source()));
  rep.closeness_gf = closeness(compose(g, f), CoarseMap::identity(f.source()));
  rep.verdict = std::isfinite(rep.closeness_fg) && std::isfinite(rep.closeness_gf) &&
                std::is_sorted(rep.modulus_f.begin(), rep.modulus_f.end()) &&
                std::is_sorted(rep.modulus_g.begin(), rep.modulus_g.end());
  return rep;
}

PointSet greedy_net(const FiniteMetricSpace& X, double s,
                    const std::optional<std::vector<Index>>& order) {
  std::vector<Index> scan;
  if (order) {
    scan = *order;
    if (static_cast<Index>(scan.size()) != X.size() ||
        PointSet(scan).size() != X.size())
      throw InvalidArgument("greedy_net: order must be a permutation of the points");
    for (Index p : scan) X.check_point(p);
  } else {
    scan = PointSet::all(X.size()).indices();
  }
  std::vector<Index> net;
  for (Index p : scan) {
    bool separated = true;
    for (Index q : net)
      if (X.distance(p, q) <= s) {
        separated = false;
        break;
      }
    if (separated) net.push_back(p);
  }
  return PointSet(std::move(net));
}

std::map<Index, PointSet> voronoi_partition(const FiniteMetricSpace& X, const PointSet& net) {
  if (net.empty()) throw InvalidArgument("voronoi_partition: empty net");
  X.check_points(net);
  std::map<Index, std::vector<Index>> blocks;
  for (Index x = 0; x < X.size(); ++x) {
    Index best = net[0];
    for (Index q : net)
      if (X.distance(x, q) < X.distance(x, best)) best = q;
    blocks[best].push_back(x);
  }
  std::map<Index, PointSet> out;
  for (Index q : net) out.emplace(q, PointSet(std::move(blocks[q])));
  return out;
}

}  // namespace roelab
