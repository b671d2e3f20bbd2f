// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/locality.hpp"

#include <string>
#include <vector>

#include "roelab/parallel.hpp"
#include "roelab/rng.hpp"

namespace roelab {

namespace {

using Mask = std::uint64_t;

PointSet from_mask(Mask m, Index n) {
  std::vector<Index> pts;
  for (Index i = 0; i < n; ++i)
    if (m >> i & 1U) pts.push_back(i);
  return PointSet(std::move(pts));
}

double corner_norm(const BlockOperator& T, const PointSet& B, const PointSet& A) {
  if (A.empty() || B.empty()) return 0.0;
  return spectral_norm(T.corner_matrix(B, A));
}

// Drops points (ascending, A first) whose removal leaves the corner norm intact.
std::pair<PointSet, PointSet> minimize_witness(const BlockOperator& T, PointSet A, PointSet B,
                                               double value) {
  const double keep = value * (1.0 - 1e-12);
  for (Index a : std::vector<Index>(A.indices())) {
    if (A.size() == 1) break;
    std::vector<Index> rest;
    for (Index p : A)
      if (p != a) rest.push_back(p);
    PointSet trial(std::move(rest));
    if (corner_norm(T, B, trial) >= keep) A = std::move(trial);
  }
  for (Index b : std::vector<Index>(B.indices())) {
    if (B.size() == 1) break;
    std::vector<Index> rest;
    for (Index p : B)
      if (p != b) rest.push_back(p);
    PointSet trial(std::move(rest));
    if (corner_norm(T, trial, A) >= keep) B = std::move(trial);
  }
  return {std::move(A), std::move(B)};
}

struct Candidate {
  double value = 0.0;
  Mask a = 0, b = 0;
};

LocalityReport exact_violation(const BlockOperator& T, double R, const LocalityOptions& opt) {
  const auto& X = T.source().base();
  const Index n = X.size();
  if (n > opt.exact_limit || n > 30)
    throw SizeLimitExceeded("exact quasi-locality needs at most " +
                            std::to_string(std::min<Index>(opt.exact_limit, 30)) +
                            " points, got " + std::to_string(n) + "; use bounds mode");
  const Mask full = (Mask{1} << n) - 1;
  std::vector<Mask> nbhd(static_cast<std::size_t>(n), 0);
  for (Index x = 0; x < n; ++x)
    for (Index p = 0; p < n; ++p)
      if (X.distance(x, p) <= R) nbhd[static_cast<std::size_t>(x)] |= Mask{1} << p;
  auto grow = [&](Mask s) {
    Mask out = 0;
    for (Index x = 0; x < n; ++x)
      if (s >> x & 1U) out |= nbhd[static_cast<std::size_t>(x)];
    return out;
  };

  const std::size_t chunks = 256;
  const Mask total = full;  // candidate B masks are 1..full
  std::vector<Candidate> best(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const Mask begin = 1 + total * c / chunks;
    const Mask end = 1 + total * (c + 1) / chunks;
    Candidate local;
    for (Mask b = begin; b < end; ++b) {
      const Mask a = full & ~grow(b);
      if (a == 0) continue;
      if ((full & ~grow(a)) != b) continue;
      const double v = corner_norm(T, from_mask(b, n), from_mask(a, n));
      if (v > local.value) local = {v, a, b};
    }
    best[c] = local;
  });
  Candidate top;
  for (const auto& c : best)
    if (c.value > top.value) top = c;

  LocalityReport rep;
  rep.R = R;
  rep.exact = true;
  rep.violation_lower = rep.violation_upper = top.value;
  if (top.value > 0.0)
    rep.witness = minimize_witness(T, from_mask(top.a, n), from_mask(top.b, n), top.value);
  return rep;
}

struct SearchResult {
  double value = 0.0;
  PointSet A, B;
};

SearchResult local_search(const BlockOperator& T, double R, Index x, Index y) {
  const auto& X = T.source().base();
  const Index n = X.size();
  SearchResult cur{corner_norm(T, PointSet{y}, PointSet{x}), PointSet{x}, PointSet{y}};
  while (true) {
    SearchResult next = cur;
    for (Index p = 0; p < n; ++p) {
      if (!cur.A.contains(p) && point_set_distance(X, p, cur.B) > R) {
        PointSet A2 = cur.A | PointSet{p};
        const double v = corner_norm(T, cur.B, A2);
        if (v > next.value) next = {v, std::move(A2), cur.B};
      }
      if (!cur.B.contains(p) && point_set_distance(X, p, cur.A) > R) {
        PointSet B2 = cur.B | PointSet{p};
        const double v = corner_norm(T, B2, cur.A);
        if (v > next.value) next = {v, cur.A, std::move(B2)};
      }
    }
    if (!(next.value > cur.value * (1.0 + 1e-12))) return cur;
    cur = std::move(next);
  }
}

LocalityReport bounds_violation(const BlockOperator& T, double R, const LocalityOptions& opt) {
  const auto& X = T.source().base();
  const Index n = X.size();

  LocalityReport rep;
  rep.R = R;
  rep.exact = false;

  // Upper: chi_B T chi_A only sees the distance bands k > R.
  for (double k : X.realized_distances()) {
    if (k <= R) continue;
    BlockOperator band(T.source(), T.target());
    for (Index y = 0; y < n; ++y)
      for (Index x = 0; x < n; ++x)
        if (X.distance(x, y) == k) band.block(y, x) = T.block(y, x);
    rep.violation_upper += norm(band);
  }

  std::vector<std::pair<Index, Index>> pairs;  // (x, y), separated singletons
  double best_single = -1.0;
  std::pair<Index, Index> start{-1, -1};
  for (Index y = 0; y < n; ++y)
    for (Index x = 0; x < n; ++x)
      if (X.distance(x, y) > R) {
        pairs.emplace_back(x, y);
        const double v = spectral_norm(T.block(y, x));
        if (v > best_single) {
          best_single = v;
          start = {x, y};
        }
      }
  if (pairs.empty()) return rep;

  std::vector<std::pair<Index, Index>> starts{start};
  Rng rng(opt.seed);
  for (Index r = 0; r < opt.restarts; ++r) starts.push_back(pairs[rng.below(pairs.size())]);
  std::vector<SearchResult> results(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    results[i] = local_search(T, R, starts[i].first, starts[i].second);
  });
  const SearchResult* top = &results[0];
  for (const auto& r : results)
    if (r.value > top->value) top = &r;

  rep.violation_lower = top->value;
  if (top->value > 0.0) rep.witness = minimize_witness(T, top->A, top->B, top->value);
  return rep;
}

}  // namespace

LocalityReport quasi_locality_violation(const BlockOperator& T, double R, LocalityMode mode,
                                        const LocalityOptions& opt) {
  if (!same_base(T.source(), T.target()))
    throw InvalidArgument("quasi-locality needs an operator on a single base space");
  if (!(R >= 0)) throw InvalidArgument("quasi-locality radius must be >= 0");
  return mode == LocalityMode::exact ? exact_violation(T, R, opt) : bounds_violation(T, R, opt);
}

ApproximabilityWindow approximability_window(const BlockOperator& T, double R,
                                             const LocalityOptions& opt) {
  const bool small = T.source().points() <= opt.exact_limit;
  const auto rep =
      quasi_locality_violation(T, R, small ? LocalityMode::exact : LocalityMode::bounds, opt);
  return {rep.violation_lower, norm(T - band_truncate(T, R))};
}

double supported_distance_upper(const BlockOperator& T, const CoarseMap& f, double R) {
  return norm(T - support_truncate(T, f, R));
}

}  // namespace roelab
