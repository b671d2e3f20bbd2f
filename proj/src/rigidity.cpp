// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/rigidity.hpp"

#include <sstream>

namespace roelab {

namespace {

constexpr double kTieTol = 1e-12;

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
}

// max_x ||chi_B U chi_x|| and its first (smallest-index) maximizer up to kTieTol.
std::pair<double, Index> best_corner(const BlockOperator& T, const PointSet& B) {
  double best = -1.0;
  Index arg = 0;
  for (Index x = 0; x < T.source().points(); ++x) {
    const double v = spectral_norm(T.corner_matrix(B, PointSet{x}));
    if (v > best + kTieTol) {
      best = v;
      arg = x;
    }
  }
  return {best, arg};
}

}  // namespace

double minimal_radius(const Unitary& U, double delta) {
  check_delta(delta);
  const auto& T = U.op();
  const auto& Y = T.target().base();
  const auto& radii = Y.realized_distances();
  double R = 0.0;
  for (Index y = 0; y < Y.size(); ++y) {
    const auto top = best_corner(T, ball(Y, y, radii.back())).first;
    if (!(top > delta)) throw InadmissibleDelta(delta, y, top);
    // Corner norms grow with the ball, so the admissible radii form a suffix.
    std::size_t lo = 0, hi = radii.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (best_corner(T, ball(Y, y, radii[mid])).first > delta)
        hi = mid;
      else
        lo = mid + 1;
    }
    R = std::max(R, radii[lo]);
  }
  return R;
}

ExtractedMap extract_map(const Unitary& U, double delta, double R) {
  check_delta(delta);
  const auto& T = U.op();
  const auto& Y = T.target().base();
  std::vector<Index> table;
  std::vector<double> norms;
  std::vector<Index> failing;
  for (Index y = 0; y < Y.size(); ++y) {
    const auto [value, arg] = best_corner(T, ball(Y, y, R));
    if (!(value > delta)) failing.push_back(y);
    table.push_back(arg);
    norms.push_back(value);
  }
  if (!failing.empty()) {
    std::ostringstream msg;
    msg << "no corner above delta=" << delta << " at R=" << R << " for " << failing.size()
        << " point(s), first " << failing.front();
    throw InadmissibleRadius(msg.str(), std::move(failing));
  }
  return {CoarseMap(T.target().base_ptr(), T.source().base_ptr(), std::move(table)),
          std::move(norms)};
}

ExtractionReport extract_pair(const Unitary& U, double delta) {
  const Unitary Ustar = U.adjoint();
  const double R = std::max(minimal_radius(U, delta), minimal_radius(Ustar, delta));
  auto g = extract_map(U, delta, R);
  auto f = extract_map(Ustar, delta, R);
  auto eq = certify_equivalence(f.map, g.map);
  return {delta,       R, std::move(g.map), std::move(f.map), std::move(g.witness_norms),
          std::move(f.witness_norms), std::move(eq)};
}

double footprint_control(const Unitary& U, double delta, double r) {
  if (!(delta > 0.0)) throw InvalidArgument("footprint_control: delta must be positive");
  if (!(r >= 0.0)) throw InvalidArgument("footprint_control: r must be >= 0");
  const auto& T = U.op();
  const auto& X = T.source().base();
  const auto& Y = T.target().base();
  double worst = 0.0;
  for (Index x = 0; x < X.size(); ++x) {
    for (double s : X.realized_distances()) {
      const PointSet A = ball(X, x, s);
      if (set_diameter(X, A) > r) break;
      std::vector<Index> hit;
      for (Index y = 0; y < Y.size(); ++y)
        if (spectral_norm(T.corner_matrix(PointSet{y}, A)) >= delta) hit.push_back(y);
      worst = std::max(worst, set_diameter(Y, PointSet(std::move(hit))));
    }
  }
  return worst;
}

}  // namespace roelab
