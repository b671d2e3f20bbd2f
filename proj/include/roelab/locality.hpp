// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_LOCALITY_HPP
#define ROELAB_LOCALITY_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "roelab/block_operator.hpp"

namespace roelab {

enum class LocalityMode { exact, bounds };

struct LocalityOptions {
  Index exact_limit = 16;  // largest base size accepted in exact mode
  Index restarts = 50;     // random restarts of the bounds-mode local search
  std::uint64_t seed = 0;
};

/// Two-sided estimate of sup ||chi_B T chi_A|| over d(A, B) > R.
struct LocalityReport {
  double R = 0.0;
  double violation_lower = 0.0;
  double violation_upper = 0.0;
  bool exact = false;
  /// (A, B) with d(A, B) > R attaining violation_lower; absent when it is 0.
  std::optional<std::pair<PointSet, PointSet>> witness;
};

/// Exact mode enumerates only mutually maximal separated pairs: B ranges over
/// sets fixed by B -> X \ N_R(X \ N_R(B)) and A = X \ N_R(B). Corner norms are
/// monotone in both sets, so nothing larger is skipped. Bounds mode pairs a
/// local-search lower bound with the band upper bound sum_{k > R} ||D_k||.
LocalityReport quasi_locality_violation(const BlockOperator& T, double R, LocalityMode mode,
                                        const LocalityOptions& opt = {});

struct ApproximabilityWindow {
  double lower = 0.0;  // quasi-locality violation (any admissible lower bound)
  double upper = 0.0;  // ||T - band_truncate(T, R)||
};

/// The distance from T to the propagation-<=R operators lies in [lower, upper].
/// Uses exact mode when the base fits under opt.exact_limit.
ApproximabilityWindow approximability_window(const BlockOperator& T, double R,
                                             const LocalityOptions& opt = {});

/// ||T - M_R(T)|| where M_R zeroes the blocks with d(f(x), y) > R.
double supported_distance_upper(const BlockOperator& T, const CoarseMap& f, double R);

}  // namespace roelab

#endif  // ROELAB_LOCALITY_HPP
