// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "roelab/parallel.hpp"
#include "roelab/rng.hpp"

namespace roelab::scenario {

using io::json;

namespace {

// Thrown while reading the scenario; mapped to kMalformedInput.
class Malformed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

json real(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

class Clock {
public:
  void mark(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    timings_[phase] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  json timings() const {
    json t = timings_;
    t["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return t;
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::chrono::steady_clock::time_point last_ = start_;
  json timings_ = json::object();
};

template <typename T>
T field(const json& s, const char* key, T fallback) {
  if (!s.contains(key) || s.at(key).is_null()) return fallback;
  try {
    return s.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Malformed(std::string("field \"") + key + "\": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Malformed("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Malformed(path + ": " + e.what());
  }
}

// Relative paths are looked up next to the scenario file first.
std::string g_base_dir;

std::string locate(const std::string& path) {
  namespace fs = std::filesystem;
  if (g_base_dir.empty() || fs::path(path).is_absolute()) return path;
  const fs::path candidate = fs::path(g_base_dir) / path;
  return fs::exists(candidate) ? candidate.string() : path;
}

SpacePtr resolve_space(const json& j) {
  if (j.is_string()) return io::load_space(locate(j.get<std::string>()));
  return io::space_from_json(j);
}

std::vector<Index> resolve_fibers(const json& s, Index n) {
  if (!s.contains("fibers")) return std::vector<Index>(static_cast<std::size_t>(n), 1);
  const auto& f = s.at("fibers");
  if (f.is_number_integer()) {
    const auto d = f.get<Index>();
    if (d < 1) throw Malformed("fibers must be positive");
    return std::vector<Index>(static_cast<std::size_t>(n), d);
  }
  auto dims = field<std::vector<Index>>(s, "fibers", {});
  if (static_cast<Index>(dims.size()) != n) throw Malformed("fibers: one entry per point required");
  return dims;
}

CoarseMap resolve_map(const json& j, const SpacePtr& space) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "identity" || name == "reflection" || name == "collapse") {
      if (!space) throw Malformed("named map \"" + name + "\" needs a \"space\"");
      return named_map(name, space);
    }
    return io::map_from_json(read_json_file(locate(name)));
  }
  return io::map_from_json(j);
}

std::vector<double> resolve_grid(const json& s, const FiniteMetricSpace& X) {
  if (!s.contains("radius_grid")) return X.realized_distances();
  const auto& g = s.at("radius_grid");
  std::vector<double> grid = g.is_string() ? parse_grid(g.get<std::string>())
                                           : field<std::vector<double>>(s, "radius_grid", {});
  for (double r : grid)
    if (!(r >= 0) || !std::isfinite(r)) throw Malformed("radius_grid entries must be finite and >= 0");
  return grid;
}

std::vector<std::uint64_t> resolve_seeds(const json& s) {
  if (s.contains("seeds")) return field<std::vector<std::uint64_t>>(s, "seeds", {});
  const auto base = field<std::uint64_t>(s, "seed", 0);
  const auto count = field<std::uint64_t>(s, "seed_count", 1);
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(base + i);
  return seeds;
}

// Everything a scenario may refer to, read and validated up front.
struct Inputs {
  SpacePtr space;
  std::optional<CoarseMap> map;
  json unitary_spec;
  std::string unitary_type;
  std::optional<BlockOperator> file_operator;
  std::vector<Index> fibers;
};

Inputs load_inputs(const json& s) {
  Inputs in;
  if (s.contains("space")) in.space = resolve_space(s.at("space"));
  const json* map_spec = s.contains("map") ? &s.at("map") : nullptr;
  if (s.contains("unitary")) {
    in.unitary_spec = s.at("unitary");
    if (in.unitary_spec.is_string())
      in.unitary_spec = json{{"type", "file"}, {"path", in.unitary_spec}};
    in.unitary_type = field<std::string>(in.unitary_spec, "type", "");
    if (in.unitary_type == "file") {
      const auto path = field<std::string>(in.unitary_spec, "path", "");
      in.file_operator = io::load_operator(locate(path), in.space);
      if (!in.space) in.space = in.file_operator->source().base_ptr();
    } else if (in.unitary_type == "covering-of-map" || in.unitary_type == "covering-times-band-noise") {
      if (in.unitary_spec.contains("map")) map_spec = &in.unitary_spec.at("map");
    } else {
      throw Malformed("unknown unitary type \"" + in.unitary_type + "\"");
    }
  }
  if (map_spec) {
    in.map = resolve_map(*map_spec, in.space);
    if (!in.space) in.space = in.map->source();
  }
  if (in.file_operator) {
    in.fibers = in.file_operator->source().fiber_dims();
  } else if (in.space) {
    in.fibers = resolve_fibers(s, in.space->size());
  }
  return in;
}

BlockOperator build_operator(const Inputs& in, std::optional<std::uint64_t> seed_override = {}) {
  if (in.file_operator) return *in.file_operator;
  if (!in.map) throw Malformed("scenario needs a unitary or a map");
  const FiberedSpace source(in.map->source(), in.fibers);
  BlockOperator U = covering_unitary(*in.map, source).unitary;
  if (in.unitary_type == "covering-times-band-noise") {
    const auto seed = seed_override.value_or(field<std::uint64_t>(in.unitary_spec, "seed", 0));
    const auto prop = field<double>(in.unitary_spec, "prop", 2.0);
    const auto layers = field<Index>(in.unitary_spec, "layers", 1);
    U = U * random_band_unitary(source, prop, layers, seed);
  }
  return U;
}

struct Checks {
  json list = json::array();
  bool all = true;
  void add(const std::string& name, bool passed, json detail = nullptr) {
    json c{{"name", name}, {"passed", passed}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    list.push_back(std::move(c));
    all = all && passed;
  }
};

json run_extract(const json& s, const Inputs& in, Checks& checks) {
  const Unitary U(build_operator(in));
  const auto delta = field<double>(s, "delta", kDefaultDelta);
  const auto rep = extract_pair(U, delta);
  const auto y = field<Index>(s, "y", 0);
  const auto w = concentration_witness(U, y, rep.R);
  json out{{"extraction", io::to_json(rep)}, {"witness", io::to_json(w)}};
  bool above = true;
  for (double v : rep.witness_norms_g) above = above && v > delta;
  for (double v : rep.witness_norms_f) above = above && v > delta;
  checks.add("witness_norms_exceed_delta", above);
  checks.add("equivalence_verdict", rep.equivalence.verdict);
  checks.add("certificate_at_least_bound", w.certificate >= w.bound - 1e-9);
  if (in.map && *in.map->source() == *rep.f.source() && *in.map->target() == *rep.f.target()) {
    const double c = closeness(rep.f, *in.map);
    out["closeness_f_map"] = real(c);
  }
  return out;
}

json run_cover(const json& s, const Inputs& in, Checks& checks) {
  if (!in.map) throw Malformed("cover needs a \"map\"");
  CoveringOptions opt;
  opt.separation = field<double>(s, "separation", 0.0);
  if (s.contains("target_fibers")) opt.target_fibers = field<std::vector<Index>>(s, "target_fibers", {});
  const FiberedSpace source(in.map->source(), in.fibers);
  const auto cov = covering_unitary(*in.map, source, opt);
  const double residual = unitarity_residual(cov.unitary);
  const double structural = support_radius(cov.unitary, *in.map);
  const auto grid = resolve_grid(s, *in.map->target());
  json curve = json::array();
  for (const auto& [r, v] : supported_approximation_curve(cov.unitary, *in.map, grid))
    curve.push_back({{"R", r}, {"distance_upper", v}});
  checks.add("unitarity_residual", residual <= 1e-12, real(residual));
  checks.add("supported_on_map", structural <= cov.plan.support_radius, real(structural));
  if (s.contains("save_unitary")) io::save_operator(field<std::string>(s, "save_unitary", ""), cov.unitary);
  return {{"plan", io::to_json(cov.plan)},
          {"unitarity_residual", residual},
          {"structural_support_radius", real(structural)},
          {"curve", std::move(curve)}};
}

json run_witness(const json& s, const Inputs& in, Checks& checks) {
  const Unitary U(build_operator(in));
  const auto y = field<Index>(s, "y", 0);
  const bool sweep_h = field<bool>(s, "sweep_h", false);
  const auto grid = resolve_grid(s, U.target().base());
  std::vector<json> slots(grid.size());
  std::vector<char> ok(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto w = sweep_h ? concentration_witness_sweep(U, y, grid[i]) : concentration_witness(U, y, grid[i]);
    ok[i] = w.certificate >= w.bound - 1e-9;
    slots[i] = io::to_json(w);
  });
  checks.add("certificate_at_least_bound", std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; }));
  return {{"witnesses", slots}};
}

json run_quasi_locality(const json& s, const Inputs& in, Checks& checks) {
  const BlockOperator T = build_operator(in);
  LocalityOptions opt;
  opt.restarts = field<Index>(s, "restarts", opt.restarts);
  opt.seed = field<std::uint64_t>(s, "seed", 0);
  const auto mode_name = field<std::string>(s, "mode", "auto");
  LocalityMode mode;
  if (mode_name == "exact") mode = LocalityMode::exact;
  else if (mode_name == "bounds") mode = LocalityMode::bounds;
  else if (mode_name == "auto")
    mode = T.source().points() <= opt.exact_limit ? LocalityMode::exact : LocalityMode::bounds;
  else throw Malformed("mode must be exact, bounds or auto");
  const auto grid = resolve_grid(s, T.source().base());
  json rows = json::array();
  bool ordered = true;
  for (double r : grid) {
    const auto rep = quasi_locality_violation(T, r, mode, opt);
    const auto win = approximability_window(T, r, opt);
    ordered = ordered && rep.violation_lower <= rep.violation_upper + 1e-12 && win.lower <= win.upper + 1e-12;
    rows.push_back({{"violation", io::to_json(rep)}, {"window", io::to_json(win)}});
  }
  checks.add("lower_at_most_upper", ordered);
  return {{"propagation", real(propagation(T))}, {"radii", std::move(rows)}};
}

json run_outer(const json& s, const Inputs& in, Checks& checks) {
  const Unitary U(build_operator(in));
  const auto delta = field<double>(s, "delta", kDefaultDelta);
  std::vector<double> grid;
  if (s.contains("radius_grid")) grid = resolve_grid(s, U.source().base());
  LocalityOptions opt;
  opt.restarts = field<Index>(s, "restarts", opt.restarts);
  const auto rep = outer_roundtrip(U, delta, grid, opt);
  bool ordered = true;
  for (const auto& [r, w] : rep.windows) ordered = ordered && w.lower <= w.upper + 1e-12;
  checks.add("covering_unitary", rep.residual_W <= 1e-12, real(rep.residual_W));
  checks.add("product_unitary", rep.residual_UWstar <= 1e-9, real(rep.residual_UWstar));
  checks.add("windows_ordered", ordered);
  return io::to_json(rep);
}

json run_upgrade(const json& s, const Inputs& in, Checks& checks) {
  if (!in.map) throw Malformed("upgrade needs a \"map\"");
  const Unitary U(build_operator(in));
  const auto epsilon = field<double>(s, "epsilon", 0.1);
  const auto rank = field<Index>(s, "rank", 1);
  const auto seed = field<std::uint64_t>(s, "seed", 0);
  std::vector<Index> points;
  if (s.contains("points")) {
    points = field<std::vector<Index>>(s, "points", {});
  } else {
    for (Index x = 0; x < U.source().points(); x += 4) points.push_back(x);
  }
  Rng rng(seed);
  std::vector<ProjectionPiece> pieces;
  for (Index x : points) {
    U.source().base().check_point(x);
    const Index d = U.source().fiber_dim(x);
    if (rank > d) throw Malformed("rank exceeds the fiber dimension at a projection point");
    MatrixXc b(d, rank);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < rank; ++k) b(i, k) = Complex(rng.normal(), rng.normal());
    pieces.push_back({x, b});
  }
  const auto res = upgrade_trick(U, *in.map, pieces, epsilon, seed);
  checks.add("error_within_epsilon", res.error <= epsilon, res.error);
  checks.add("discarded_terms_orthogonal", res.orthogonality_residual <= 1e-9, res.orthogonality_residual);
  checks.add("V_diagonal", propagation(res.V) == 0.0);
  checks.add("t_supported", support_radius(res.t, *in.map) <= res.R);
  return io::to_json(res);
}

json median(std::vector<double> v) {
  if (v.empty()) return nullptr;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

json run_sweep(const json& s, const Inputs& in, Checks& checks, std::string& csv) {
  if (!in.map) throw Malformed("roundtrip-sweep needs a \"map\"");
  const auto delta = field<double>(s, "delta", kDefaultDelta);
  const auto prop = field<double>(s, "prop", field<double>(in.unitary_spec, "prop", 2.0));
  const auto layers = field<Index>(s, "layers", field<Index>(in.unitary_spec, "layers", 1));
  const auto seeds = resolve_seeds(s);
  const FiberedSpace source(in.map->source(), in.fibers);
  const auto cov = covering_unitary(*in.map, source);
  const CoarseMap& h = *in.map;

  struct Row {
    bool ok = false;
    std::string error;
    double R = 0, closeness_f_h = 0, fg = 0, gf = 0, curve_at_bound = 0, propagation_V = 0;
    bool verdict = false;
  };
  std::vector<Row> rows(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    Row& row = rows[i];
    try {
      const auto V = random_band_unitary(source, prop, layers, seeds[i]);
      const Unitary U(cov.unitary * V);
      const auto rep = extract_pair(U, delta);
      row.R = rep.R;
      row.closeness_f_h = closeness(rep.f, h);
      row.fg = rep.equivalence.closeness_fg;
      row.gf = rep.equivalence.closeness_gf;
      row.verdict = rep.equivalence.verdict;
      row.propagation_V = propagation(V);
      row.curve_at_bound =
          supported_distance_upper(U.op(), h, cov.plan.support_radius + row.propagation_V);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });

  std::ostringstream out;
  out.precision(17);
  out << "seed,ok,R,closeness_f_h,closeness_fg,closeness_gf,verdict,propagation_V,curve_at_bound\n";
  json list = json::array();
  std::vector<double> closeness_values;
  bool all_ok = true, all_verdicts = true, all_curves = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    out << seeds[i] << ',' << (r.ok ? 1 : 0) << ',' << r.R << ',' << r.closeness_f_h << ',' << r.fg
        << ',' << r.gf << ',' << (r.verdict ? 1 : 0) << ',' << r.propagation_V << ','
        << r.curve_at_bound << '\n';
    json j{{"seed", seeds[i]}, {"ok", r.ok}};
    if (r.ok) {
      j.update({{"R", r.R}, {"closeness_f_h", r.closeness_f_h}, {"closeness_fg", r.fg},
                {"closeness_gf", r.gf}, {"verdict", r.verdict}, {"propagation_V", r.propagation_V},
                {"curve_at_bound", r.curve_at_bound}});
      closeness_values.push_back(r.closeness_f_h);
    } else {
      j["error"] = r.error;
    }
    list.push_back(std::move(j));
    all_ok = all_ok && r.ok;
    all_verdicts = all_verdicts && r.ok && r.verdict;
    all_curves = all_curves && r.ok && r.curve_at_bound <= 1e-9;
  }
  csv = out.str();
  const json med = median(closeness_values);
  const double mx = closeness_values.empty()
                        ? 0.0
                        : *std::max_element(closeness_values.begin(), closeness_values.end());
  checks.add("all_extractions_succeed", all_ok);
  checks.add("all_verdicts_true", all_verdicts);
  checks.add("closeness_uniform", !med.is_null() && mx <= 2.0 * med.get<double>(),
             {{"max", mx}, {"median", med}});
  checks.add("supported_curve_vanishes", all_curves);
  return {{"support_radius_h", cov.plan.support_radius},
          {"seeds", std::move(list)},
          {"closeness_f_h", {{"median", med}, {"max", mx}}}};
}

void check_expectations(const json& s, const json& report, Checks& checks) {
  if (!s.contains("expect")) return;
  const auto tol = field<double>(s, "expect_tol", 5e-6);
  for (const auto& [pointer, want] : s.at("expect").items()) {
    json got;
    try {
      got = report.at(json::json_pointer(pointer));
    } catch (const json::exception&) {
      checks.add("expect " + pointer, false, "missing");
      continue;
    }
    bool pass = got == want;
    if (!pass && got.is_number() && want.is_number())
      pass = std::abs(got.get<double>() - want.get<double>()) <= tol;
    checks.add("expect " + pointer, pass, got);
  }
}

json error_object(const char* category, const std::string& type, const std::string& message) {
  return {{"category", category}, {"type", type}, {"message", message}};
}

}  // namespace

CoarseMap named_map(const std::string& name, const SpacePtr& source) {
  const Index n = source->size();
  std::vector<Index> table(static_cast<std::size_t>(n));
  if (name == "identity") return CoarseMap::identity(source);
  if (name == "reflection") {
    for (Index i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = n - 1 - i;
    return CoarseMap(source, source, table);
  }
  if (name == "collapse") {
    for (Index i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = i / 2;
    return CoarseMap(source, path_space((n + 1) / 2), table);
  }
  throw InvalidArgument("unknown map name \"" + name + "\"");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (...) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("bad radius \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

Outcome run(const json& scenario, const std::string& base_dir) {
  g_base_dir = base_dir;
  Outcome out;
  Clock clock;
  out.report = {{"version", kVersion}, {"scenario", scenario}};
  std::string kind;
  Inputs in;
  try {
    if (!scenario.is_object()) throw Malformed("scenario must be a JSON object");
    kind = field<std::string>(scenario, "kind", "");
    in = load_inputs(scenario);
  } catch (const DisconnectedGraph& e) {
    auto err = error_object("malformed-input", "DisconnectedGraph", e.what());
    err["unreachable_pair"] = {e.unreachable_pair().first, e.unreachable_pair().second};
    out.report["error"] = std::move(err);
    out.exit_code = kMalformedInput;
  } catch (const std::exception& e) {
    out.report["error"] = error_object("malformed-input", "FormatError", e.what());
    out.exit_code = kMalformedInput;
  }
  clock.mark("load");
  if (out.exit_code != kOk) {
    out.report["passed"] = false;
    out.timings = clock.timings();
    return out;
  }

  Checks checks;
  try {
    json body;
    std::string csv;
    if (kind == "extract") body = run_extract(scenario, in, checks);
    else if (kind == "cover") body = run_cover(scenario, in, checks);
    else if (kind == "witness") body = run_witness(scenario, in, checks);
    else if (kind == "quasi-locality") body = run_quasi_locality(scenario, in, checks);
    else if (kind == "outer") body = run_outer(scenario, in, checks);
    else if (kind == "upgrade") body = run_upgrade(scenario, in, checks);
    else if (kind == "roundtrip-sweep") body = run_sweep(scenario, in, checks, csv);
    else throw Malformed("unknown kind \"" + kind + "\"");
    if (!csv.empty()) out.csv = std::move(csv);
    out.report["report"] = std::move(body);
    check_expectations(scenario, out.report, checks);
    out.report["assertions"] = checks.list;
    out.report["passed"] = checks.all;
    out.exit_code = checks.all ? kOk : kAssertionFailed;
  } catch (const Malformed& e) {
    out.report["error"] = error_object("malformed-input", "FormatError", e.what());
    out.exit_code = kMalformedInput;
  } catch (const io::FormatError& e) {
    out.report["error"] = error_object("malformed-input", "FormatError", e.what());
    out.exit_code = kMalformedInput;
  } catch (const InadmissibleDelta& e) {
    auto err = error_object("module-error", "InadmissibleDelta", e.what());
    err["best_point"] = e.best_point();
    err["best_norm"] = e.best_norm();
    out.report["error"] = std::move(err);
    out.exit_code = kModuleError;
  } catch (const InfeasibleFiberDims& e) {
    auto err = error_object("module-error", "InfeasibleFiberDims", e.what());
    json req = json::array();
    for (auto [p, d] : e.required_dims()) req.push_back({{"point", p}, {"dim", d}});
    err["required_dims"] = std::move(req);
    out.report["error"] = std::move(err);
    out.exit_code = kModuleError;
  } catch (const NonConvergence& e) {
    auto err = error_object("module-error", "NonConvergence", e.what());
    err["best_estimate"] = e.best_estimate();
    out.report["error"] = std::move(err);
    out.exit_code = kModuleError;
  } catch (const SizeLimitExceeded& e) {
    out.report["error"] = error_object("module-error", "SizeLimitExceeded", e.what());
    out.exit_code = kModuleError;
  } catch (const InvariantViolation& e) {
    out.report["error"] = error_object("module-error", "InvariantViolation", e.what());
    out.exit_code = kModuleError;
  } catch (const std::exception& e) {
    out.report["error"] = error_object("module-error", "Error", e.what());
    out.exit_code = kModuleError;
  }
  if (out.exit_code == kMalformedInput || out.exit_code == kModuleError) out.report["passed"] = false;
  clock.mark("compute");
  out.timings = clock.timings();
  return out;
}

}  // namespace roelab::scenario
