// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "roelab/io.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace roelab::io {

namespace {

constexpr std::array<char, 7> kMagic{'R', 'O', 'E', 'L', 'A', 'B', '1'};

json real(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>(v >> (8 * i) & 0xFF);
  out.write(b.data(), 8);
}

void put_f64(std::ostream& out, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(out, v);
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b;
  if (!in.read(reinterpret_cast<char*>(b.data()), 8)) throw FormatError("ROELAB1: truncated file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = v << 8 | b[static_cast<std::size_t>(i)];
  return v;
}

double get_f64(std::istream& in) {
  const std::uint64_t v = get_u64(in);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

std::vector<Index> get_dims(std::istream& in, std::uint64_t n) {
  if (n == 0 || n > (1U << 20)) throw FormatError("ROELAB1: implausible point count");
  std::vector<Index> dims;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto d = get_u64(in);
    if (d == 0 || d > (1U << 16)) throw FormatError("ROELAB1: implausible fiber dim");
    dims.push_back(static_cast<Index>(d));
  }
  return dims;
}

SpacePtr get_metric(std::istream& in, std::uint64_t n) {
  Eigen::MatrixXd d(static_cast<Index>(n), static_cast<Index>(n));
  for (Index i = 0; i < d.rows(); ++i)
    for (Index j = 0; j < d.cols(); ++j) d(i, j) = get_f64(in);
  return make_space(std::move(d));
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  } catch (const DisconnectedGraph&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

SpacePtr space_from_json(const json& j) {
  if (j.is_string()) return parse_space_spec(j.get<std::string>());
  return wrap([&] {
    if (!j.is_object() || !j.contains("n")) throw FormatError("space JSON needs an \"n\" field");
    const auto n = j.at("n").get<Index>();
    if (j.contains("dist")) {
      const auto& rows = j.at("dist");
      if (!rows.is_array() || static_cast<Index>(rows.size()) != n)
        throw FormatError("space JSON: dist must have n rows");
      Eigen::MatrixXd d(n, n);
      for (Index i = 0; i < n; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != n) throw FormatError("space JSON: ragged dist row");
        for (Index k = 0; k < n; ++k) d(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
      }
      return make_space(std::move(d));
    }
    if (j.contains("edges")) {
      std::vector<std::pair<Index, Index>> edges;
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw FormatError("space JSON: edges are [i, j] pairs");
        edges.emplace_back(e.at(0).get<Index>(), e.at(1).get<Index>());
      }
      return from_edge_list(n, edges);
    }
    throw FormatError("space JSON needs \"dist\" or \"edges\"");
  });
}

json space_to_json(const FiniteMetricSpace& X) {
  json rows = json::array();
  for (Index i = 0; i < X.size(); ++i) {
    json row = json::array();
    for (Index k = 0; k < X.size(); ++k) row.push_back(X.distance(i, k));
    rows.push_back(std::move(row));
  }
  return {{"n", X.size()}, {"dist", std::move(rows)}};
}

SpacePtr parse_space_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw FormatError("unknown space spec \"" + spec + "\"");
  const std::string kind = spec.substr(0, colon);
  Index n = 0;
  try {
    n = std::stol(spec.substr(colon + 1));
  } catch (...) {
    throw FormatError("bad size in space spec \"" + spec + "\"");
  }
  if (n < 1) throw FormatError("space spec needs a positive size");
  if (kind == "path") return path_space(n);
  if (kind == "cycle") {
    std::vector<std::pair<Index, Index>> edges;
    for (Index i = 0; i < n && n > 1; ++i)
      if (n > 2 || i == 0) edges.emplace_back(i, (i + 1) % n);
    return from_edge_list(n, edges);
  }
  throw FormatError("unknown space kind \"" + kind + "\"");
}

SpacePtr load_space(const std::string& path_or_spec) {
  std::ifstream in(path_or_spec);
  if (!in) return parse_space_spec(path_or_spec);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path_or_spec + ": " + e.what());
  }
  return space_from_json(j);
}

CoarseMap map_from_json(const json& j) {
  return wrap([&] {
    return CoarseMap(space_from_json(j.at("source")), space_from_json(j.at("target")),
                     j.at("table").get<std::vector<Index>>());
  });
}

json map_to_json(const CoarseMap& f) {
  return {{"source", space_to_json(*f.source())},
          {"target", space_to_json(*f.target())},
          {"table", f.table()}};
}

BlockOperator operator_from_json(const json& j) {
  return wrap([&] {
    const SpacePtr src = space_from_json(j.at("space"));
    const SpacePtr tgt = j.contains("target_space") ? space_from_json(j.at("target_space")) : src;
    const auto sf = j.at("fibers").get<std::vector<Index>>();
    const auto tf = j.contains("target_fibers") ? j.at("target_fibers").get<std::vector<Index>>() : sf;
    FiberedSpace source(src, sf), target(tgt, tf);
    MatrixXc m = MatrixXc::Zero(target.total_dim(), source.total_dim());
    const auto& re = j.at("re");
    if (static_cast<Index>(re.size()) != m.rows()) throw FormatError("operator JSON: wrong row count");
    for (Index r = 0; r < m.rows(); ++r) {
      const auto& row = re.at(static_cast<std::size_t>(r));
      if (static_cast<Index>(row.size()) != m.cols()) throw FormatError("operator JSON: ragged row");
      for (Index c = 0; c < m.cols(); ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
    }
    if (j.contains("im")) {
      const auto& im = j.at("im");
      if (static_cast<Index>(im.size()) != m.rows()) throw FormatError("operator JSON: wrong im rows");
      for (Index r = 0; r < m.rows(); ++r) {
        const auto& row = im.at(static_cast<std::size_t>(r));
        if (static_cast<Index>(row.size()) != m.cols()) throw FormatError("operator JSON: ragged im row");
        for (Index c = 0; c < m.cols(); ++c)
          m(r, c) += Complex(0.0, row.at(static_cast<std::size_t>(c)).get<double>());
      }
    }
    return BlockOperator(std::move(source), std::move(target), std::move(m));
  });
}

json operator_to_json(const BlockOperator& T) {
  json re = json::array(), im = json::array();
  for (Index r = 0; r < T.matrix().rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Index c = 0; c < T.matrix().cols(); ++c) {
      rr.push_back(T.matrix()(r, c).real());
      ii.push_back(T.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  json j{{"space", space_to_json(T.source().base())},
         {"fibers", T.source().fiber_dims()},
         {"re", std::move(re)},
         {"im", std::move(im)}};
  if (!(T.source() == T.target())) {
    j["target_space"] = space_to_json(T.target().base());
    j["target_fibers"] = T.target().fiber_dims();
  }
  return j;
}

void write_operator_binary(std::ostream& out, const BlockOperator& T, bool embed_metric) {
  const auto& src = T.source();
  const auto& tgt = T.target();
  const bool rect = !(src == tgt);
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, static_cast<std::uint64_t>(src.points()));
  for (Index d : src.fiber_dims()) put_u64(out, static_cast<std::uint64_t>(d));
  put_u64(out, (rect ? kFlagRectangular : 0) | (embed_metric ? kFlagMetric : 0));
  if (rect) {
    put_u64(out, static_cast<std::uint64_t>(tgt.points()));
    for (Index d : tgt.fiber_dims()) put_u64(out, static_cast<std::uint64_t>(d));
  }
  if (embed_metric) {
    const auto write_metric = [&](const FiniteMetricSpace& X) {
      for (Index i = 0; i < X.size(); ++i)
        for (Index k = 0; k < X.size(); ++k) put_f64(out, X.distance(i, k));
    };
    write_metric(src.base());
    if (rect) write_metric(tgt.base());
  }
  for (Index y = 0; y < tgt.points(); ++y)
    for (Index x = 0; x < src.points(); ++x) {
      const auto b = T.block(y, x);
      for (Index r = 0; r < b.rows(); ++r)
        for (Index c = 0; c < b.cols(); ++c) {
          put_f64(out, b(r, c).real());
          put_f64(out, b(r, c).imag());
        }
    }
}

BlockOperator read_operator_binary(std::istream& in, const SpacePtr& space) {
  std::array<char, 7> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw FormatError("not a ROELAB1 file (bad magic)");
  const auto n = get_u64(in);
  const auto sdims = get_dims(in, n);
  const auto flags = get_u64(in);
  if (flags & ~(kFlagRectangular | kFlagMetric)) throw FormatError("ROELAB1: unknown flags");
  std::uint64_t m = n;
  std::vector<Index> tdims = sdims;
  if (flags & kFlagRectangular) {
    m = get_u64(in);
    tdims = get_dims(in, m);
  }
  SpacePtr sbase, tbase;
  if (flags & kFlagMetric) {
    try {
      sbase = get_metric(in, n);
      tbase = (flags & kFlagRectangular) ? get_metric(in, m) : sbase;
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("ROELAB1: bad embedded metric: ") + e.what());
    }
  } else {
    if (!space) throw FormatError("ROELAB1 file has no metric; supply a space");
    if (flags & kFlagRectangular) throw FormatError("rectangular ROELAB1 files must embed metrics");
    if (static_cast<std::uint64_t>(space->size()) != n)
      throw FormatError("supplied space size does not match ROELAB1 header");
    sbase = tbase = space;
  }
  FiberedSpace source(sbase, sdims), target(tbase, tdims);
  BlockOperator T(source, target);
  for (Index y = 0; y < target.points(); ++y)
    for (Index x = 0; x < source.points(); ++x) {
      auto b = T.block(y, x);
      for (Index r = 0; r < b.rows(); ++r)
        for (Index c = 0; c < b.cols(); ++c) {
          const double re = get_f64(in);
          const double im = get_f64(in);
          b(r, c) = Complex(re, im);
        }
    }
  if (!T.matrix().allFinite()) throw FormatError("ROELAB1: non-finite entries");
  return T;
}

BlockOperator load_operator(const std::string& path, const SpacePtr& space) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return operator_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw FormatError(path + ": " + e.what());
    }
  }
  return read_operator_binary(in, space);
}

void save_operator(const std::string& path, const BlockOperator& T) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    std::ofstream(path) << operator_to_json(T).dump(1) << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  write_operator_binary(out, T);
}

json to_json(const PointSet& s) { return s.indices(); }

json to_json(const SignSelection& s) {
  return {{"signs", s.signs}, {"achieved", s.achieved}, {"target", s.target}};
}

json to_json(const EquivalenceReport& r) {
  return {{"modulus_f", r.modulus_f},
          {"modulus_g", r.modulus_g},
          {"closeness_fg", real(r.closeness_fg)},
          {"closeness_gf", real(r.closeness_gf)},
          {"verdict", r.verdict}};
}

json to_json(const LocalityReport& r) {
  json j{{"R", r.R},
         {"violation_lower", r.violation_lower},
         {"violation_upper", r.violation_upper},
         {"exact", r.exact},
         {"witness", nullptr}};
  if (r.witness) j["witness"] = {{"A", to_json(r.witness->first)}, {"B", to_json(r.witness->second)}};
  return j;
}

json to_json(const ApproximabilityWindow& w) { return {{"lower", w.lower}, {"upper", w.upper}}; }

json to_json(const ConcentrationWitness& w) {
  return {{"y", w.y},
          {"R", w.R},
          {"h_index", w.h_index},
          {"delta_actual", w.delta_actual},
          {"A", to_json(w.A)},
          {"A_is_positive", w.A_is_positive},
          {"signs", w.signs},
          {"certificate", w.certificate},
          {"bound", w.bound},
          {"separation", real(w.separation)},
          {"degenerate", w.degenerate},
          {"sign_sum_sq", w.sign_sum_sq}};
}

json to_json(const ExtractionReport& r) {
  return {{"delta", r.delta},
          {"R", r.R},
          {"g", r.g.table()},
          {"f", r.f.table()},
          {"witness_norms_g", r.witness_norms_g},
          {"witness_norms_f", r.witness_norms_f},
          {"modulus_f", r.equivalence.modulus_f},
          {"modulus_g", r.equivalence.modulus_g},
          {"closeness_fg", real(r.equivalence.closeness_fg)},
          {"closeness_gf", real(r.equivalence.closeness_gf)},
          {"verdict", r.equivalence.verdict}};
}

json to_json(const CoveringPlan& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) {
    json bij = json::array();
    for (auto [i, k] : b.bijection) bij.push_back({i, k});
    blocks.push_back({{"net_point", b.net_point},
                      {"source", to_json(b.source)},
                      {"target", to_json(b.target)},
                      {"bijection", std::move(bij)}});
  }
  return {{"separation", p.separation},
          {"net", to_json(p.net)},
          {"blocks", std::move(blocks)},
          {"source_fibers", p.source.fiber_dims()},
          {"target_fibers", p.target.fiber_dims()},
          {"support_radius", p.support_radius},
          {"max_source_block_diameter", p.max_source_block_diameter},
          {"max_target_block_diameter", p.max_target_block_diameter},
          {"fibers_split", p.fibers_split}};
}

json to_json(const UpgradeResult& r) {
  return {{"R", r.R},
          {"error", r.error},
          {"discarded_norms", r.discarded_norms},
          {"orthogonality_residual", r.orthogonality_residual},
          {"V_propagation", propagation(r.V)},
          {"V_unitarity_residual", unitarity_residual(r.V)}};
}

json to_json(const OuterRoundtripReport& r) {
  json windows = json::array();
  for (const auto& [R, w] : r.windows) windows.push_back({{"R", R}, {"lower", w.lower}, {"upper", w.upper}});
  return {{"extraction", to_json(r.extraction)},
          {"covering", to_json(r.covering.plan)},
          {"residual_U", r.residual_U},
          {"residual_W", r.residual_W},
          {"residual_UWstar", r.residual_UWstar},
          {"propagation_UWstar", r.propagation_UWstar},
          {"windows", std::move(windows)}};
}

}  // namespace roelab::io
