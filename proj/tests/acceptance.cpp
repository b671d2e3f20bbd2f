// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. Criteria 1-8 run once
// with one thread and twice with eight; criterion 9 compares the serialized
// outputs of those three runs byte for byte.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "roelab/io.hpp"
#include "test_support.hpp"

using namespace roelab;
using namespace roelab::testing;
using roelab::io::json;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  json output = json::array();  // everything the criterion computed, for criterion 9

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 when none is stated
  std::function<Result()> run;
};

using Family = std::vector<VectorXc>;

// 1. greedy >= sum ||v||^2 - 1e-9, brute >= greedy, average = sum to 1e-9.
Result cotype_two() {
  Result r;
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(12);
    const Index dim = 1 + static_cast<Index>(rng.below(8));
    Family f;
    double target = 0;
    for (std::size_t i = 0; i < n; ++i) {
      f.push_back(random_vector(dim, rng));
      target += f.back().squaredNorm();
    }
    const auto g = greedy_signs(f);
    const auto b = brute_force_signs(f);
    const double avg = rademacher_average(f);
    r.require(g.achieved >= target - 1e-9, "greedy below target at family " + std::to_string(t));
    r.require(b.achieved >= g.achieved - 1e-9, "brute force below greedy at family " + std::to_string(t));
    r.require(std::abs(avg - target) <= 1e-9, "average differs from target at family " + std::to_string(t));
    r.output.push_back({g.achieved, b.achieved, avg, g.signs, b.signs});
  }
  if (r.pass) r.detail = "1000 families, n <= 12, dim <= 8";
  return r;
}

Unitary load_hadamard() {
  return Unitary(io::load_operator(std::string(ROELAB_FIXTURES) + "/hadamard.json"));
}

// 2. certificate >= (1/2) sqrt(1 - delta_actual^2) - 1e-9 on band unitaries; Hadamard values.
Result concentration() {
  Result r;
  Rng rng(2);
  std::size_t witnesses = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 2 + static_cast<Index>(rng.below(29));
    const FiberedSpace s(path_space(n), random_fibers(n, 3, rng));
    const double width = 1 + static_cast<double>(rng.below(3));
    const Index layers = 1 + static_cast<Index>(rng.below(3));
    const Unitary U(random_band_unitary(s, width, layers, seed));
    for (Index y = 0; y < n; ++y)
      for (double R : {0.0, 1.0, 2.0, 4.0}) {
        const auto w = concentration_witness(U, y, R);
        const double bound = 0.5 * std::sqrt(std::max(0.0, 1.0 - w.delta_actual * w.delta_actual));
        r.require(w.certificate >= bound - 1e-9, "certificate below bound at seed " + std::to_string(seed));
        r.output.push_back({w.delta_actual, w.certificate, w.A.indices()});
        ++witnesses;
      }
  }
  const auto h = concentration_witness(load_hadamard(), 0, 2);
  const auto near = [](double a, double b) { return std::abs(a - b) < 5e-6; };
  r.require(near(h.delta_actual, 0.70711), "Hadamard delta_actual");
  r.require(near(h.certificate, 0.5), "Hadamard certificate");
  r.require(near(h.bound, 0.35355), "Hadamard bound");
  r.output.push_back(io::to_json(h));
  if (r.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu witnesses; Hadamard delta %.5f certificate %.5f bound %.5f",
                  witnesses, h.delta_actual, h.certificate, h.bound);
    r.detail = buf;
  }
  return r;
}

struct Setup {
  std::string name;
  CoarseMap h;
  Index fiber;
};

std::vector<Setup> setups() {
  const auto X = path_space(30);
  return {{"identity", CoarseMap::identity(X), 2}, {"reflection", reflection(X), 2}, {"collapse", collapse(15), 1}};
}

constexpr std::uint64_t kSeeds = 50;

// 3. extraction on U_h V for 50 seeds per h.
Result rigidity() {
  Result r;
  std::ostringstream d;
  for (const auto& st : setups()) {
    const FiberedSpace s = FiberedSpace::uniform(st.h.source(), st.fiber);
    const auto W = covering_unitary(st.h, s).unitary;
    std::vector<double> dist;
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      const auto V = random_band_unitary(s, 2, 1, seed);
      if (propagation(V) > 2) r.require(false, "band unitary exceeds propagation 2");
      try {
        const auto rep = extract_pair(Unitary(W * V), 0.5);
        const double c = closeness(rep.f, st.h);
        r.require(std::isfinite(c), st.name + ": closeness not finite");
        r.require(rep.equivalence.verdict, st.name + ": verdict false at seed " + std::to_string(seed));
        dist.push_back(c);
        ++ok;
        r.output.push_back(io::to_json(rep));
      } catch (const std::exception& e) {
        r.require(false, st.name + ": extraction failed at seed " + std::to_string(seed) + ": " + e.what());
      }
    }
    r.require(ok == kSeeds, st.name + ": not every seed succeeded");
    if (dist.empty()) continue;
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size() / 2;
    const double median = sorted.size() % 2 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
    r.require(sorted.back() <= 2 * median, st.name + ": closeness not uniform across seeds");
    d << st.name << " " << ok << "/" << kSeeds << " closeness max " << sorted.back() << " median " << median << "; ";
  }
  if (r.pass) r.detail = d.str().substr(0, d.str().size() - 2);
  return r;
}

double structural_support(const BlockOperator& U, const CoarseMap& f) {
  double best = 0;
  for (Index y = 0; y < U.target().points(); ++y)
    for (Index x = 0; x < U.source().points(); ++x)
      if (!U.block(y, x).isZero(0)) best = std::max(best, f.target()->distance(f(x), y));
  return best;
}

// 4. covering residual, exact support, and controlled difference of two coverings.
Result coverings() {
  Result r;
  std::vector<CoarseMap> maps;
  std::vector<Index> fibers;
  for (const auto& st : setups()) {
    maps.push_back(st.h);
    fibers.push_back(st.fiber);
  }
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {  // controlled non-isometric equivalences
    const Index n = 5 + static_cast<Index>(rng.below(20));
    const Index k = 1 + static_cast<Index>(rng.below(3));
    std::vector<Index> table;
    for (Index i = 0; i < n; ++i) table.push_back(i / k);
    maps.emplace_back(path_space(n), path_space((n + k - 1) / k), table);
    fibers.push_back(1 + static_cast<Index>(rng.below(3)));
  }
  double worst_residual = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& f = maps[i];
    const Index n = f.source()->size();
    const auto s = FiberedSpace::uniform(f.source(), fibers[i]);
    const auto a = covering_unitary(f, s);
    CoveringOptions opt;
    std::vector<Index> order;
    for (Index x = n - 1; x >= 0; --x) order.push_back(x);
    opt.net_order = order;
    opt.target_fibers = a.plan.target.fiber_dims();
    const auto b = covering_unitary(f, s, opt);
    for (const auto* c : {&a, &b}) {
      const double res = unitarity_residual(c->unitary);
      worst_residual = std::max(worst_residual, res);
      r.require(res <= 1e-12, "covering residual above 1e-12");
      r.require(structural_support(c->unitary, f) <= c->plan.support_radius, "covering not supported within plan radius");
    }
    const double p = propagation(a.unitary * adjoint(b.unitary), 1e-12);
    r.require(p <= a.plan.support_radius + b.plan.support_radius, "W1 W2* propagation above R1 + R2");
    r.output.push_back({io::to_json(a.plan), io::to_json(b.plan), p});
  }
  if (r.pass) {
    std::ostringstream d;
    d << maps.size() << " maps, two nets each; worst residual " << worst_residual;
    r.detail = d.str();
  }
  return r;
}

// 5. supported approximation curve, same seeds as criterion 3.
Result refined_rigidity() {
  Result r;
  std::size_t curves = 0;
  for (const auto& st : setups()) {
    const FiberedSpace s = FiberedSpace::uniform(st.h.source(), st.fiber);
    const auto cov = covering_unitary(st.h, s);
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      const auto V = random_band_unitary(s, 2, 1, seed);
      const double at = cov.plan.support_radius + propagation(V);
      std::vector<double> radii = st.h.target()->realized_distances();
      radii.push_back(at);
      std::sort(radii.begin(), radii.end());
      const auto curve = supported_approximation_curve(cov.unitary * V, st.h, radii);
      for (std::size_t i = 1; i < curve.size(); ++i)
        r.require(curve[i].second <= curve[i - 1].second, st.name + ": curve increases");
      for (const auto& [R, v] : curve) {
        if (R == at) r.require(v <= 1e-9, st.name + ": curve above 1e-9 at support radius + propagation");
        r.output.push_back(v);
      }
      ++curves;
    }
  }
  if (r.pass) r.detail = std::to_string(curves) + " curves";
  return r;
}

// 6. upgrade trick orthogonality and error.
Result upgrade() {
  Result r;
  struct Fixture {
    std::string name;
    BlockOperator U;
    CoarseMap f;
    std::vector<Index> points;
  };
  std::vector<Fixture> fixtures;
  Rng rng(6);
  {
    const auto X = path_space(12);
    const auto s = FiberedSpace::uniform(X, 6);
    fixtures.push_back({"band", random_band_unitary(s, 2, 1, 11), CoarseMap::identity(X), {1, 5, 9}});
    fixtures.push_back({"tail", decaying_unitary(s, 1, 2.0, rng), CoarseMap::identity(X), {1, 5, 9}});
    fixtures.push_back({"tail-dense", decaying_unitary(s, 1, 2.0, rng), CoarseMap::identity(X), {2, 3, 4, 6, 7}});
  }
  {
    const auto h = collapse(8);
    const auto s = FiberedSpace::uniform(h.source(), 4);
    const auto W = covering_unitary(h, s).unitary;
    fixtures.push_back({"collapse-tail", W * decaying_unitary(s, 1, 1.5, rng), h, {0, 5, 10, 15}});
  }
  double worst_orth = 0, worst_ratio = 0, biggest_discard = 0;
  for (const auto& fx : fixtures) {
    const Unitary U(fx.U);
    for (double eps : {0.1, 0.01}) {
      std::vector<ProjectionPiece> p;
      for (Index x : fx.points) p.push_back({x, random_matrix(U.source().fiber_dim(x), 1, rng)});
      try {
        const auto res = upgrade_trick(U, fx.f, p, eps, 5);
        const BlockOperator UVp = U.op() * res.V * res.p;
        std::vector<MatrixXc> D;
        for (Index x : fx.points)
          D.push_back(corner(UVp, ball(*fx.f.target(), fx.f(x), res.R).complement(fx.f.target()->size()), PointSet{x}).matrix());
        double orth = 0;
        for (std::size_t i = 0; i < D.size(); ++i) {
          biggest_discard = std::max(biggest_discard, svd_norm(D[i]));
          for (std::size_t j = 0; j < D.size(); ++j)
            if (i != j) orth = std::max({orth, svd_norm(D[i].adjoint() * D[j]), svd_norm(D[i] * D[j].adjoint())});
        }
        const double err = svd_norm((res.t - UVp).matrix());
        worst_orth = std::max(worst_orth, orth);
        worst_ratio = std::max(worst_ratio, err / eps);
        r.require(orth <= 1e-9, fx.name + ": discarded terms not orthogonal");
        r.require(err <= eps, fx.name + ": error above epsilon");
        r.require(propagation(res.V, 1e-12) == 0, fx.name + ": V has propagation");
        r.output.push_back({fx.name, eps, res.R, err, orth});
      } catch (const std::exception& e) {
        r.require(false, fx.name + ": " + e.what());
      }
    }
  }
  if (r.pass) {
    std::ostringstream d;
    d << fixtures.size() << " fixtures x 2 epsilons; worst orthogonality " << worst_orth
      << ", worst error/eps " << worst_ratio << ", largest discarded term " << biggest_discard;
    r.detail = d.str();
  }
  return r;
}

// 7. exact quasi-locality equals the naive oracle on 8-point spaces; banded gives 0.
Result quasi_locality() {
  Result r;
  Rng rng(7);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto X = from_edge_list(8, random_graph(8, 0.15, rng));
    const FiberedSpace s(X, random_fibers(8, 2, rng));
    const auto T = random_operator(s, rng);
    const auto& radii = X->realized_distances();
    const double R = radii[rng.below(radii.size() - 1)];
    const auto rep = quasi_locality_violation(T, R, LocalityMode::exact);
    const double oracle = naive_violation(T, R);
    worst = std::max(worst, std::abs(rep.violation_lower - oracle));
    r.require(std::abs(rep.violation_lower - oracle) <= 1e-12, "exact differs from oracle at operator " + std::to_string(t));
    const auto banded = quasi_locality_violation(band_truncate(T, R), R, LocalityMode::exact);
    r.require(banded.violation_lower == 0 && banded.violation_upper == 0, "banded operator reports a violation");
    r.output.push_back(io::to_json(rep));
  }
  if (r.pass) {
    std::ostringstream d;
    d << "100 operators; worst |exact - oracle| " << worst;
    r.detail = d.str();
  }
  return r;
}

// 8. operator_norm against full SVD; window ordering.
Result oracle_consistency() {
  Result r;
  Rng rng(8);
  double worst = 0;
  int power = 0, fallback = 0, ties = 0;
  double worst_excess = 0;
  // Both members are floating-point norms of mathematically ordered quantities;
  // when the far corner is the whole off-band part they agree to a few ulp.
  const auto check_window = [&](const ApproximabilityWindow& w, const std::string& where) {
    const double excess = (w.lower - w.upper) / std::max(1.0, w.upper);
    if (excess > 0) {
      ++ties;
      worst_excess = std::max(worst_excess, excess);
    }
    r.require(excess <= 1e-12, "window lower above upper at " + where);
  };
  for (int t = 0; t < 500; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(40));
    const FiberedSpace s(path_space(n), random_fibers(n, 3, rng));
    const auto T = random_operator(s, rng);
    const double oracle = svd_norm(T.matrix());
    double value;
    try {
      const auto cert = operator_norm(T);
      value = cert.value;
      power += !cert.full_decomposition;
    } catch (const NonConvergence&) {
      value = detail::dense_norm(T.matrix()).value;
      ++fallback;
    }
    const double rel = std::abs(value - oracle) / oracle;
    worst = std::max(worst, rel);
    r.require(rel <= 1e-9, "operator_norm disagrees with SVD at block " + std::to_string(t));
    const double R = static_cast<double>(rng.below(static_cast<std::uint64_t>(n)));
    const auto w = approximability_window(T, R);
    check_window(w, "block " + std::to_string(t));
    r.output.push_back({value, w.lower, w.upper});
  }
  // windows of the outer roundtrip products as well
  for (const auto& st : setups()) {
    if (!(*st.h.source() == *st.h.target())) continue;
    const FiberedSpace s = FiberedSpace::uniform(st.h.source(), st.fiber);
    CoveringOptions opt;
    opt.target_fibers = s.fiber_dims();
    const auto W = covering_unitary(st.h, s, opt).unitary;
    const auto rep = outer_roundtrip(Unitary(W * random_band_unitary(s, 2, 1, 3)), 0.5, {0, 1, 2, 4, 8}, {16, 10, 0});
    for (const auto& [R, w] : rep.windows) {
      check_window(w, st.name + " outer window");
      r.output.push_back({R, w.lower, w.upper});
    }
  }
  if (r.pass) {
    std::ostringstream d;
    d << "500 blocks (" << power << " by power iteration, " << fallback << " fallbacks); worst relative error " << worst
      << "; windows: " << ties << " rounding-level ties, worst relative excess " << worst_excess;
    r.detail = d.str();
  }
  return r;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "cotype-2 sign selection", 30, cotype_two},
      {2, "concentration inequality", 120, concentration},
      {3, "rigidity extraction", 180, rigidity},
      {4, "covering unitaries", 0, coverings},
      {5, "refined rigidity curve", 0, refined_rigidity},
      {6, "upgrade trick", 0, upgrade},
      {7, "quasi-locality exactness", 0, quasi_locality},
      {8, "oracle consistency", 0, oracle_consistency},
  };
  bool all = true;
  std::vector<std::string> first(criteria.size());
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto& c = criteria[i];
    set_max_threads(1);
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      res.pass = false;
      res.detail += " (exceeded " + std::to_string(static_cast<int>(c.time_limit)) + " s)";
    }
    first[i] = res.output.dump();
    all = all && res.pass;
    std::printf("%s criterion %d: %s: %s [%.2f s]\n", res.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                res.detail.c_str(), secs);
    std::fflush(stdout);
  }

  bool same = true;
  std::string which;
  for (int round = 0; round < 2; ++round) {
    set_max_threads(8);
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      std::string out;
      try {
        out = criteria[i].run().output.dump();
      } catch (const std::exception& e) {
        out = e.what();
      }
      if (out != first[i]) {
        same = false;
        which += " " + std::to_string(criteria[i].id);
      }
    }
  }
  set_max_threads(0);
  all = all && same;
  std::printf("%s criterion 9: determinism: %s\n", same ? "PASS" : "FAIL",
              same ? "outputs of criteria 1-8 byte-identical over runs at 1, 8, 8 threads"
                   : ("outputs differ for criteria" + which).c_str());
  return all ? 0 : 1;
}
