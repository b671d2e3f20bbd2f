// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_IO_HPP
#define ROELAB_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "roelab/concentration.hpp"
#include "roelab/covering.hpp"
#include "roelab/locality.hpp"
#include "roelab/rademacher.hpp"
#include "roelab/rigidity.hpp"

namespace roelab::io {

using json = nlohmann::json;

/// Raised for malformed files; the CLI maps it to exit code 2. Disconnected
/// edge lists surface as DisconnectedGraph so the unreachable pair survives.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Spaces: {"n": int, "dist": [[...]]} or {"n": int, "edges": [[i, j], ...]}.
SpacePtr space_from_json(const json& j);
json space_to_json(const FiniteMetricSpace& X);

/// Also accepts the shorthands "path:N" and "cycle:N".
SpacePtr parse_space_spec(const std::string& spec);
SpacePtr load_space(const std::string& path_or_spec);

// Maps: {"source": space, "target": space, "table": [...]}.
CoarseMap map_from_json(const json& j);
json map_to_json(const CoarseMap& f);

// Operators (JSON alternative for small examples):
// {"space": ..., "fibers": [...], "target_space"?: ..., "target_fibers"?: ...,
//  "re": [[...]], "im"?: [[...]]}
BlockOperator operator_from_json(const json& j);
json operator_to_json(const BlockOperator& T);

/// ROELAB1 binary layout, all integers u64 and reals f64, little-endian:
///   "ROELAB1" | n | fiber_dims[n] | flags
///   [flags & 1: m | target_fiber_dims[m]]
///   [flags & 2: source dist (n*n, row-major) | target dist (m*m) if flags & 1]
///   blocks for y in 0..m-1, x in 0..n-1: d_y*d_x entries row-major as (re, im)
inline constexpr std::uint64_t kFlagRectangular = 1;
inline constexpr std::uint64_t kFlagMetric = 2;

void write_operator_binary(std::ostream& out, const BlockOperator& T, bool embed_metric = true);
/// `space` supplies the metric when the file carries none (used for source and target).
BlockOperator read_operator_binary(std::istream& in, const SpacePtr& space = nullptr);

/// Dispatches on extension: ".json" is JSON, anything else ROELAB1.
BlockOperator load_operator(const std::string& path, const SpacePtr& space = nullptr);
void save_operator(const std::string& path, const BlockOperator& T);

json to_json(const PointSet& s);
json to_json(const SignSelection& s);
json to_json(const EquivalenceReport& r);
json to_json(const LocalityReport& r);
json to_json(const ApproximabilityWindow& w);
json to_json(const ConcentrationWitness& w);
json to_json(const ExtractionReport& r);
json to_json(const CoveringPlan& p);
json to_json(const UpgradeResult& r);
json to_json(const OuterRoundtripReport& r);

}  // namespace roelab::io

#endif  // ROELAB_IO_HPP
