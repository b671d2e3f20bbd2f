// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

// roelab: scenario runner. Each subcommand assembles a scenario from its
// flags; `run` reads one from a file.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "roelab/scenario.hpp"

namespace {

using roelab::io::json;

struct Flags {
  std::string space, fibers, map, unitary, radius_grid, mode, out, csv, save_unitary, points;
  std::optional<double> delta, epsilon, noise_prop, separation;
  std::optional<std::uint64_t> seed, seed_count;
  std::optional<long> y, layers, rank, restarts;
  bool sweep_h = false;
};

json fibers_json(const std::string& text) {
  if (text.find(',') == std::string::npos) return std::stol(text);
  json dims = json::array();
  for (double v : roelab::scenario::parse_grid(text)) dims.push_back(static_cast<long>(v));
  return dims;
}

json build(const std::string& kind, const Flags& f) {
  json s{{"kind", kind}};
  if (!f.space.empty()) s["space"] = f.space;
  if (!f.fibers.empty()) s["fibers"] = fibers_json(f.fibers);
  if (!f.unitary.empty()) {
    s["unitary"] = {{"type", "file"}, {"path", f.unitary}};
  } else if (!f.map.empty() && kind != "cover" && kind != "roundtrip-sweep") {
    if (f.noise_prop) {
      s["unitary"] = {{"type", "covering-times-band-noise"}, {"map", f.map},
                      {"seed", f.seed.value_or(0)}, {"prop", *f.noise_prop},
                      {"layers", f.layers.value_or(1)}};
    } else {
      s["unitary"] = {{"type", "covering-of-map"}, {"map", f.map}};
    }
  }
  if (!f.map.empty()) s["map"] = f.map;
  if (f.delta) s["delta"] = *f.delta;
  if (f.epsilon) s["epsilon"] = *f.epsilon;
  if (!f.radius_grid.empty()) s["radius_grid"] = f.radius_grid;
  if (f.seed) s["seed"] = *f.seed;
  if (f.seed_count) s["seed_count"] = *f.seed_count;
  if (f.y) s["y"] = *f.y;
  if (f.separation) s["separation"] = *f.separation;
  if (kind == "roundtrip-sweep") {
    s["prop"] = f.noise_prop.value_or(2.0);
    s["layers"] = f.layers.value_or(1);
  }
  if (f.rank) s["rank"] = *f.rank;
  if (f.restarts) s["restarts"] = *f.restarts;
  if (!f.points.empty()) s["points"] = fibers_json(f.points + ",");
  if (!f.mode.empty()) s["mode"] = f.mode;
  if (!f.save_unitary.empty()) s["save_unitary"] = f.save_unitary;
  if (f.sweep_h) s["sweep_h"] = true;
  return s;
}

std::string stem(const std::string& path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return path.substr(0, path.size() - 5);
  return path;
}

int emit(const roelab::scenario::Outcome& o, const Flags& f) {
  const std::string text = o.report.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(f.out) << text;
    std::ofstream(stem(f.out) + ".timings.json") << o.timings.dump(2) << "\n";
  }
  if (o.csv) {
    const std::string path = !f.csv.empty() ? f.csv : (f.out.empty() ? "" : stem(f.out) + ".csv");
    if (path.empty()) std::cerr << *o.csv;
    else std::ofstream(path) << *o.csv;
  }
  if (o.report.contains("error")) std::cerr << "roelab: " << o.report["error"]["message"].get<std::string>() << "\n";
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coarse-geometry rigidity toolkit for finite block operators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", roelab::scenario::kVersion);
  Flags f;
  std::string scenario_path;

  auto common = [&](CLI::App* c) {
    c->add_option("--space", f.space, "space file or spec (path:N, cycle:N)");
    c->add_option("--fibers", f.fibers, "uniform fiber dim or comma list");
    c->add_option("--map", f.map, "map file or identity|reflection|collapse");
    c->add_option("--unitary", f.unitary, "operator file (.json or ROELAB1 binary)");
    c->add_option("--noise-prop", f.noise_prop, "multiply the covering by a band unitary of this width");
    c->add_option("--layers", f.layers, "band unitary layers");
    c->add_option("--delta", f.delta, "corner threshold");
    c->add_option("--epsilon", f.epsilon, "approximation tolerance");
    c->add_option("--radius-grid", f.radius_grid, "comma-separated radii");
    c->add_option("--seed", f.seed, "seed");
    c->add_option("--out", f.out, "report path (timings go to <stem>.timings.json)");
  };

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("--scenario", scenario_path, "scenario JSON")->required();
  run->add_option("--out", f.out, "report path");
  run->add_option("--csv", f.csv, "CSV path for sweeps");

  auto* extract = app.add_subcommand("extract", "extract the coarse equivalence of a unitary");
  common(extract);
  extract->add_option("--y", f.y, "witness point");
  auto* cover = app.add_subcommand("cover", "build a covering unitary for a map");
  common(cover);
  cover->add_option("--separation", f.separation, "initial net separation");
  cover->add_option("--save-unitary", f.save_unitary, "write the covering unitary here");
  auto* witness = app.add_subcommand("witness", "concentration witnesses over a radius grid");
  common(witness);
  witness->add_option("--y", f.y, "target point");
  witness->add_flag("--sweep-h", f.sweep_h, "try every basis vector at y");
  auto* ql = app.add_subcommand("ql", "quasi-locality violation and approximability window");
  common(ql);
  ql->add_option("--mode", f.mode, "exact|bounds|auto");
  ql->add_option("--restarts", f.restarts, "local search restarts");
  auto* outer = app.add_subcommand("outer", "extract, cover, and measure U W*");
  common(outer);
  outer->add_option("--restarts", f.restarts, "local search restarts");
  auto* upgrade = app.add_subcommand("upgrade", "replace U V p by an operator supported near the map");
  common(upgrade);
  upgrade->add_option("--points", f.points, "comma list of projection points");
  upgrade->add_option("--rank", f.rank, "rank per projection point");
  auto* sweep = app.add_subcommand("sweep", "extraction roundtrip over seeds");
  common(sweep);
  sweep->add_option("--seed-count", f.seed_count, "number of consecutive seeds");
  sweep->add_option("--csv", f.csv, "CSV path");

  CLI11_PARSE(app, argc, argv);

  json scenario;
  try {
    if (run->parsed()) {
      std::ifstream in(scenario_path);
      if (!in) throw std::runtime_error("cannot open " + scenario_path);
      scenario = json::parse(in);
    } else {
      const auto* sub = app.get_subcommands().front();
      std::string kind = sub->get_name();
      if (kind == "ql") kind = "quasi-locality";
      if (kind == "sweep") kind = "roundtrip-sweep";
      scenario = build(kind, f);
    }
  } catch (const std::exception& e) {
    roelab::scenario::Outcome o;
    o.report = {{"version", roelab::scenario::kVersion},
                {"error", {{"category", "malformed-input"}, {"type", "FormatError"}, {"message", e.what()}}},
                {"passed", false}};
    o.exit_code = roelab::scenario::kMalformedInput;
    return emit(o, f);
  }
  std::string base_dir;
  if (run->parsed()) base_dir = std::filesystem::path(scenario_path).parent_path().string();
  return emit(roelab::scenario::run(scenario, base_dir), f);
}
