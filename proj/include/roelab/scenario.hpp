// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_SCENARIO_HPP
#define ROELAB_SCENARIO_HPP

#include <optional>
#include <string>

#include "roelab/io.hpp"

namespace roelab::scenario {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kAssertionFailed = 1, kMalformedInput = 2, kModuleError = 3 };

struct Outcome {
  io::json report;                 // deterministic: no timings, no paths of outputs
  io::json timings;                // wall-clock seconds per phase
  std::optional<std::string> csv;  // sweeps only
  int exit_code = kOk;
};

/// Runs one scenario. Never throws: malformed input and module errors are
/// reported as an "error" object in the report with the matching exit code.
///
/// Scenario fields:
///   kind          extract | cover | witness | quasi-locality | outer | upgrade | roundtrip-sweep
///   space         "path:N", "cycle:N", a space JSON object, or a path to one
///   fibers        int (uniform) or array; default 1
///   map           "identity" | "reflection" | "collapse" | map object | path
///   unitary       {"type": "file", "path": ...}
///                 {"type": "covering-of-map", "map": ...}
///                 {"type": "covering-times-band-noise", "map": ..., "seed", "prop", "layers"}
///   delta, epsilon, radius_grid, y, seeds | seed + seed_count, mode, points, rank,
///   expect ({json pointer: value}), expect_tol
/// Relative file paths are looked up in `base_dir` first, then the working directory.
Outcome run(const io::json& scenario, const std::string& base_dir = "");

/// Named maps resolved against a source space. "collapse" sends i to i/2 in
/// path_space(ceil(n/2)).
CoarseMap named_map(const std::string& name, const SpacePtr& source);

/// Comma-separated reals.
std::vector<double> parse_grid(const std::string& text);

}  // namespace roelab::scenario

#endif  // ROELAB_SCENARIO_HPP
