// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_RIGIDITY_HPP
#define ROELAB_RIGIDITY_HPP

#include <vector>

#include "roelab/block_operator.hpp"
#include "roelab/coarse_map.hpp"

namespace roelab {

inline constexpr double kDefaultDelta = 0.5;

/// Smallest R among {0} and the realized distances of the target such that
/// every target point y has some x with ||chi_{B(y;R)} U chi_x|| > delta.
/// Throws InadmissibleDelta when even R = diameter fails.
double minimal_radius(const Unitary& U, double delta);

struct ExtractedMap {
  CoarseMap map;                     // target -> source
  std::vector<double> witness_norms; // ||chi_{B(y;R)} U chi_{map(y)}||, all > delta
};

/// map(y) = argmax_x ||chi_{B(y;R)} U chi_x||. Norms within 1e-12 of each
/// other count as ties and go to the smallest index, so extracted maps are
/// reproducible across runs.
ExtractedMap extract_map(const Unitary& U, double delta, double R);

struct ExtractionReport {
  double delta;
  double R;
  CoarseMap g;  // Y -> X, extracted from U
  CoarseMap f;  // X -> Y, extracted from U*
  std::vector<double> witness_norms_g;
  std::vector<double> witness_norms_f;
  EquivalenceReport equivalence;  // moduli and closeness of f.g, g.f to the identities
};

/// Extracts g from U and f from U* at the common radius
/// R = max(minimal_radius(U), minimal_radius(U*)), then measures the pair.
ExtractionReport extract_pair(const Unitary& U, double delta = kDefaultDelta);

/// Measured control radius: the largest diameter of {y : ||chi_y U chi_A|| >= delta}
/// over balls A of the source with diam(A) <= r.
double footprint_control(const Unitary& U, double delta, double r);

}  // namespace roelab

#endif  // ROELAB_RIGIDITY_HPP
