// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/covering.hpp"
#include "roelab/parallel.hpp"

namespace roelab {

OuterRoundtripReport outer_roundtrip(const Unitary& U, double delta,
                                     std::vector<double> radius_grid,
                                     const LocalityOptions& locality) {
  const auto& space = U.source();
  if (!(space == U.target()))
    throw InvalidArgument("outer_roundtrip needs a unitary on a single fibered space");

  auto extraction = extract_pair(U, delta);
  CoveringOptions opt;
  opt.target_fibers = space.fiber_dims();
  auto covering = covering_unitary(extraction.f, space, opt);
  BlockOperator UWstar = U.op() * adjoint(covering.unitary);

  if (radius_grid.empty()) radius_grid = space.base().realized_distances();
  std::vector<std::pair<double, ApproximabilityWindow>> windows(radius_grid.size());
  parallel_for(radius_grid.size(), [&](std::size_t i) {
    windows[i] = {radius_grid[i], approximability_window(UWstar, radius_grid[i], locality)};
  });

  OuterRoundtripReport rep{std::move(extraction), std::move(covering), std::move(UWstar), 0.0, 0.0, 0.0, 0.0, {}};
  rep.residual_U = U.residual();
  rep.residual_W = unitarity_residual(rep.covering.unitary);
  rep.residual_UWstar = unitarity_residual(rep.UWstar);
  rep.propagation_UWstar = propagation(rep.UWstar);
  rep.windows = std::move(windows);
  return rep;
}

}  // namespace roelab
