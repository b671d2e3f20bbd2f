// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace roelab;
using namespace roelab::testing;

namespace {

double modulus_oracle(const CoarseMap& f, double r) {
  const auto& X = *f.source();
  double best = 0;
  for (Index a = 0; a < X.size(); ++a)
    for (Index b = 0; b < X.size(); ++b)
      if (X.distance(a, b) <= r) best = std::max(best, f.target()->distance(f(a), f(b)));
  return best;
}

CoarseMap random_map(const SpacePtr& X, const SpacePtr& Y, Rng& rng) {
  std::vector<Index> t;
  for (Index i = 0; i < X->size(); ++i) t.push_back(static_cast<Index>(rng.below(static_cast<std::uint64_t>(Y->size()))));
  return CoarseMap(X, Y, t);
}

}  // namespace

TEST_CASE("CoarseMap validates its table") {
  CHECK_THROWS_AS(CoarseMap(path_space(3), path_space(2), {0, 1}), InvalidArgument);
  CHECK_THROWS_AS(CoarseMap(path_space(2), path_space(2), {0, 2}), InvalidArgument);
}

TEST_CASE("control_modulus examples") {
  const auto X = path_space(10);
  const auto id = CoarseMap::identity(X);
  CHECK(control_modulus(id, 3.5) == 3);
  CHECK(control_modulus(id, 0) == 0);
  const auto half = collapse(5);
  CHECK(modulus_oracle(half, 3) == 2);
  CHECK(control_modulus(half, 3) == 2);
  const CoarseMap constant(X, path_space(4), std::vector<Index>(10, 2));
  CHECK(control_modulus(constant, 9) == 0);
}

TEST_CASE("closeness examples") {
  const auto X = path_space(6);
  const auto id = CoarseMap::identity(X);
  CHECK(closeness(id, id) == 0);
  std::vector<Index> t;
  for (Index i = 0; i < 6; ++i) t.push_back(std::min<Index>(i + 1, 5));
  CHECK(closeness(id, CoarseMap(X, X, t)) == 1);
  CHECK_THROWS_AS(closeness(id, CoarseMap::identity(path_space(7))), InvalidArgument);
}

TEST_CASE("certify_equivalence examples") {
  const auto X = path_space(10), Y = path_space(5);
  const auto idrep = certify_equivalence(CoarseMap::identity(X), CoarseMap::identity(X));
  CHECK(idrep.closeness_fg == 0);
  CHECK(idrep.closeness_gf == 0);
  CHECK(idrep.verdict);

  const auto f = collapse(5);
  std::vector<Index> t;
  for (Index j = 0; j < 5; ++j) t.push_back(2 * j);
  const CoarseMap g(Y, X, t);
  const auto rep = certify_equivalence(f, g);
  // g(f(i)) = 2 floor(i/2) is within 1 of i; f(g(j)) = j
  double gf = 0;
  for (Index i = 0; i < 10; ++i) gf = std::max(gf, static_cast<double>(i - 2 * (i / 2)));
  CHECK(rep.closeness_gf == gf);
  CHECK(rep.closeness_gf == 1);
  CHECK(rep.closeness_fg == 0);
  CHECK(rep.verdict);
  CHECK(rep.modulus_f.size() == 10);  // r = 0..9
  CHECK(rep.modulus_g.size() == 5);

  const CoarseMap constant(X, Y, std::vector<Index>(10, 0));
  const auto crep = certify_equivalence(constant, g);
  CHECK(crep.closeness_gf == 9);
  CHECK(crep.closeness_fg == 4);
  CHECK_THROWS_AS(certify_equivalence(f, f), InvalidArgument);
}

TEST_CASE("greedy_net and voronoi_partition examples") {
  const auto X = path_space(7);
  CHECK(greedy_net(*X, 0) == PointSet::all(7));
  CHECK(greedy_net(*X, 2) == PointSet({0, 3, 6}));
  CHECK(greedy_net(*X, 6) == PointSet({0}));
  CHECK(greedy_net(*X, 100) == PointSet({0}));

  const auto singles = voronoi_partition(*X, PointSet::all(7));
  CHECK(singles.size() == 7);
  for (const auto& [x0, block] : singles) CHECK(block == PointSet({x0}));
  const auto three = voronoi_partition(*X, PointSet({0, 3, 6}));
  CHECK(three.at(0) == PointSet({0, 1}));
  CHECK(three.at(3) == PointSet({2, 3, 4}));
  CHECK(three.at(6) == PointSet({5, 6}));
  CHECK(voronoi_partition(*X, PointSet({0})).at(0) == PointSet::all(7));
  CHECK_THROWS_AS(voronoi_partition(*X, PointSet{}), InvalidArgument);
}

TEST_CASE("modulus agrees with the pair oracle and composes subordinately") {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(9));
    const Index m = 2 + static_cast<Index>(rng.below(9));
    const auto X = from_edge_list(n, random_graph(n, 0.2, rng));
    const auto Y = from_edge_list(m, random_graph(m, 0.2, rng));
    const auto Z = from_edge_list(n, random_graph(n, 0.3, rng));
    const auto g = random_map(X, Y, rng);
    const auto f = random_map(Y, Z, rng);
    for (double r = 0; r <= X->diameter(); r += 1) {
      CHECK(control_modulus(g, r) == modulus_oracle(g, r));
      CHECK(control_modulus(g, r) <= control_modulus(g, r + 1));
      CHECK(control_modulus(compose(f, g), r) <= control_modulus(f, control_modulus(g, r)));
    }
  }
}

TEST_CASE("closeness is a pseudometric") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(8));
    const auto X = from_edge_list(n, random_graph(n, 0.2, rng));
    const auto Y = from_edge_list(n, random_graph(n, 0.2, rng));
    const auto a = random_map(X, Y, rng), b = random_map(X, Y, rng), c = random_map(X, Y, rng);
    double direct = 0;
    for (Index x = 0; x < n; ++x) direct = std::max(direct, Y->distance(a(x), b(x)));
    CHECK(closeness(a, b) == direct);
    CHECK(closeness(a, b) == closeness(b, a));
    CHECK(closeness(a, c) <= closeness(a, b) + closeness(b, c));
    CHECK(closeness(a, a) == 0);
  }
}

TEST_CASE("greedy nets are separated and dominating; Voronoi blocks are small") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(15));
    const auto X = from_edge_list(n, random_graph(n, 0.15, rng));
    const double s = static_cast<double>(rng.below(4));
    const auto net = greedy_net(*X, s);
    for (Index a : net.indices())
      for (Index b : net.indices())
        if (a != b) CHECK(X->distance(a, b) > s);
    double cover = 0;
    for (Index x = 0; x < n; ++x) {
      const double d = point_set_distance(*X, x, net);
      CHECK(d <= s);
      cover = std::max(cover, d);
    }
    const auto blocks = voronoi_partition(*X, net);
    Index total = 0;
    for (const auto& [x0, block] : blocks) {
      CHECK(block.contains(x0));
      CHECK(set_diameter(*X, block) <= 2 * cover);
      total += block.size();
    }
    CHECK(total == n);
  }
}
