// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/covering.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace roelab {

namespace {

// Edmonds-Karp on a small dense graph. BFS scans nodes in index order, so the
// resulting flow is deterministic.
class FlowNetwork {
public:
  explicit FlowNetwork(std::size_t nodes)
      : cap_(nodes, std::vector<long>(nodes, 0)), orig_(cap_) {}

  void add_edge(std::size_t u, std::size_t v, long c) {
    cap_[u][v] += c;
    orig_[u][v] += c;
  }

  long max_flow(std::size_t s, std::size_t t) {
    long total = 0;
    const std::size_t n = cap_.size();
    while (true) {
      std::vector<std::size_t> parent(n, n);
      parent[s] = s;
      std::deque<std::size_t> queue{s};
      while (!queue.empty() && parent[t] == n) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v)
          if (parent[v] == n && cap_[u][v] > 0) {
            parent[v] = u;
            queue.push_back(v);
          }
      }
      if (parent[t] == n) return total;
      long push = std::numeric_limits<long>::max();
      for (std::size_t v = t; v != s; v = parent[v]) push = std::min(push, cap_[parent[v]][v]);
      for (std::size_t v = t; v != s; v = parent[v]) {
        cap_[parent[v]][v] -= push;
        cap_[v][parent[v]] += push;
      }
      total += push;
    }
  }

  long flow(std::size_t u, std::size_t v) const { return std::max(0L, orig_[u][v] - cap_[u][v]); }

private:
  std::vector<std::vector<long>> cap_;
  std::vector<std::vector<long>> orig_;
};

Index fiber_total(const FiberedSpace& s, const PointSet& A) {
  Index d = 0;
  for (Index x : A) d += s.fiber_dim(x);
  return d;
}

std::optional<std::pair<std::vector<CoveringBlock>, FiberedSpace>> reconcile_blocks(
    const CoarseMap& f, const FiberedSpace& source, const PointSet& net) {
  const auto& Y = *f.target();
  const auto src_blocks = voronoi_partition(source.base(), net);
  const auto tgt_cells = voronoi_partition(Y, f.image(net));
  std::vector<Index> dims(static_cast<std::size_t>(Y.size()), 0);
  for (Index x0 : net) {
    const PointSet& cell = tgt_cells.at(f(x0));
    const Index D = fiber_total(source, src_blocks.at(x0));
    const Index m = cell.size();
    if (D < m) return std::nullopt;
    for (Index i = 0; i < m; ++i) dims[static_cast<std::size_t>(cell[i])] = D / m + (i < D % m);
  }
  FiberedSpace target(f.target(), std::move(dims));
  std::vector<CoveringBlock> blocks;
  for (Index x0 : net) {
    CoveringBlock b;
    b.net_point = x0;
    b.source = src_blocks.at(x0);
    b.target = tgt_cells.at(f(x0));
    const auto si = source.basis_indices(b.source);
    const auto ti = target.basis_indices(b.target);
    for (std::size_t k = 0; k < si.size(); ++k) b.bijection.emplace_back(si[k], ti[k]);
    blocks.push_back(std::move(b));
  }
  return std::make_pair(std::move(blocks), std::move(target));
}

std::vector<CoveringBlock> transport_blocks(const CoarseMap& f, const FiberedSpace& source,
                                            const FiberedSpace& target, const PointSet& net) {
  const auto& Y = target.base();
  const auto src_blocks = voronoi_partition(source.base(), net);
  const auto nb = static_cast<std::size_t>(net.size());
  const auto ny = static_cast<std::size_t>(Y.size());

  // One basis vector at f(x0) is reserved for each block up front.
  std::vector<long> supply(nb), capacity(ny);
  for (std::size_t b = 0; b < nb; ++b)
    supply[b] = static_cast<long>(fiber_total(source, src_blocks.at(net[static_cast<Index>(b)]))) - 1;
  for (std::size_t y = 0; y < ny; ++y) capacity[y] = target.fiber_dim(static_cast<Index>(y));
  for (Index x0 : net) --capacity[static_cast<std::size_t>(f(x0))];
  const long need = std::accumulate(supply.begin(), supply.end(), 0L);

  const std::size_t S = nb + ny, T = S + 1;
  std::optional<FlowNetwork> solved;
  for (double rho : Y.realized_distances()) {
    FlowNetwork net_flow(nb + ny + 2);
    for (std::size_t b = 0; b < nb; ++b) {
      net_flow.add_edge(S, b, supply[b]);
      const Index anchor = f(net[static_cast<Index>(b)]);
      for (std::size_t y = 0; y < ny; ++y)
        if (Y.distance(anchor, static_cast<Index>(y)) <= rho) net_flow.add_edge(b, nb + y, need);
    }
    for (std::size_t y = 0; y < ny; ++y) net_flow.add_edge(nb + y, T, capacity[y]);
    if (net_flow.max_flow(S, T) == need) {
      solved = std::move(net_flow);
      break;
    }
  }
  if (!solved) throw InvariantViolation("covering transport infeasible at full radius");

  std::vector<std::vector<Index>> slots(nb);  // target basis indices per block
  std::vector<Index> next(ny, 0);
  for (std::size_t b = 0; b < nb; ++b) {
    const auto y = static_cast<std::size_t>(f(net[static_cast<Index>(b)]));
    slots[b].push_back(target.offset(static_cast<Index>(y)) + next[y]++);
  }
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t b = 0; b < nb; ++b)
      for (long k = solved->flow(b, nb + y); k > 0; --k)
        slots[b].push_back(target.offset(static_cast<Index>(y)) + next[y]++);

  std::vector<CoveringBlock> blocks;
  for (std::size_t b = 0; b < nb; ++b) {
    CoveringBlock blk;
    blk.net_point = net[static_cast<Index>(b)];
    blk.source = src_blocks.at(blk.net_point);
    std::sort(slots[b].begin(), slots[b].end());
    std::vector<Index> pts;
    for (Index j : slots[b]) pts.push_back(target.point_of(j));
    blk.target = PointSet(std::move(pts));
    const auto si = source.basis_indices(blk.source);
    for (std::size_t k = 0; k < si.size(); ++k) blk.bijection.emplace_back(si[k], slots[b][k]);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace

Covering covering_unitary(const CoarseMap& f, const FiberedSpace& source,
                          const CoveringOptions& opt) {
  const auto& X = source.base();
  const auto& Y = *f.target();
  if (!(*f.source() == X)) throw InvalidArgument("covering_unitary: map source differs from space");
  if (!(opt.separation >= 0)) throw InvalidArgument("covering_unitary: separation must be >= 0");
  std::optional<FiberedSpace> fixed_target;
  if (opt.target_fibers) {
    fixed_target.emplace(f.target(), *opt.target_fibers);
    if (fixed_target->total_dim() != source.total_dim())
      throw InvalidArgument("covering_unitary: prescribed target fibers total " +
                            std::to_string(fixed_target->total_dim()) + ", source totals " +
                            std::to_string(source.total_dim()));
  }

  std::vector<double> seps{opt.separation};
  for (double r : X.realized_distances())
    if (r > opt.separation) seps.push_back(r);

  for (double s : seps) {
    const PointSet net = greedy_net(X, s, opt.net_order);
    if (!f.injective_on(net)) continue;
    std::vector<CoveringBlock> blocks;
    std::optional<FiberedSpace> target;
    if (fixed_target) {
      blocks = transport_blocks(f, source, *fixed_target, net);
      target = fixed_target;
    } else {
      auto r = reconcile_blocks(f, source, net);
      if (!r) continue;
      blocks = std::move(r->first);
      target = std::move(r->second);
    }

    CoveringPlan plan{s, net, std::move(blocks), source, *target};
    MatrixXc m = MatrixXc::Zero(target->total_dim(), source.total_dim());
    std::vector<int> owners(static_cast<std::size_t>(Y.size()), 0);
    for (const auto& b : plan.blocks) {
      plan.max_source_block_diameter =
          std::max(plan.max_source_block_diameter, set_diameter(X, b.source));
      plan.max_target_block_diameter =
          std::max(plan.max_target_block_diameter, set_diameter(Y, b.target));
      for (Index y : b.target) ++owners[static_cast<std::size_t>(y)];
      for (auto [i, j] : b.bijection) {
        m(j, i) = 1.0;
        plan.support_radius =
            std::max(plan.support_radius, Y.distance(f(source.point_of(i)), target->point_of(j)));
      }
    }
    plan.fibers_split = std::any_of(owners.begin(), owners.end(), [](int c) { return c > 1; });
    return {BlockOperator(source, *target, std::move(m)), std::move(plan)};
  }
  throw InvalidArgument("covering_unitary: no separation up to the diameter gives a feasible net");
}

std::vector<std::pair<double, double>> supported_approximation_curve(
    const BlockOperator& U, const CoarseMap& f, const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> out;
  for (double R : radii) out.emplace_back(R, supported_distance_upper(U, f, R));
  return out;
}

}  // namespace roelab
