// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace roelab;
using namespace roelab::testing;

TEST_CASE("path_space") {
  CHECK(path_space(1)->size() == 1);
  CHECK(path_space(5)->distance(0, 4) == 4);
  CHECK_THROWS_AS(path_space(0), InvalidArgument);
  const auto X = path_space(8);
  // count |i - j| <= 2 directly
  Index best = 0;
  for (Index i = 0; i < 8; ++i) {
    Index c = 0;
    for (Index j = 0; j < 8; ++j) c += std::abs(i - j) <= 2;
    best = std::max(best, c);
  }
  CHECK(best == 5);
  CHECK(growth_profile(*X, 2) == best);
}

TEST_CASE("from_edge_list") {
  const auto tri = from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}});
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(tri->distance(i, j) == (i == j ? 0 : 1));
  CHECK(*from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}) == *path_space(5));
  CHECK_FALSE(*path_space(30) == *path_space(15));
  CHECK_FALSE(*path_space(2) == *path_space(3));

  const std::vector<std::pair<Index, Index>> c4{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const auto cyc = from_edge_list(4, c4);
  const auto fw = floyd_warshall(4, c4);
  CHECK(fw(0, 2) == 2);
  CHECK(cyc->distance(0, 2) == fw(0, 2));
  CHECK(ball(*cyc, 0, 1) == PointSet({0, 1, 3}));

  SUBCASE("errors") {
    try {
      from_edge_list(4, {{0, 1}, {2, 3}});
      FAIL("expected DisconnectedGraph");
    } catch (const DisconnectedGraph& e) {
      const auto [a, b] = e.unreachable_pair();
      CHECK(a != b);
      CHECK(((a < 2) != (b < 2)));
    }
    CHECK_THROWS_AS(from_edge_list(3, {{0, 1}, {1, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(from_edge_list(3, {{0, 1}, {1, 3}}), InvalidArgument);
  }
}

TEST_CASE("construction validates the metric") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 5, 1, 0, 1, 5, 1, 0;  // 5 > 1 + 1
  CHECK_THROWS_AS(make_space(d), InvalidArgument);
  d << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  CHECK_NOTHROW(make_space(d));
  d(0, 1) = 0.5;
  CHECK_THROWS_AS(make_space(d), InvalidArgument);  // asymmetric
  d << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  CHECK_THROWS_AS(make_space(d), InvalidArgument);  // distinct points at distance 0
}

TEST_CASE("ball, neighborhood, growth examples") {
  const auto X = path_space(5);
  CHECK(ball(*X, 2, 1) == PointSet({1, 2, 3}));
  CHECK(ball(*X, 3, 0) == PointSet({3}));
  CHECK_THROWS_AS(ball(*X, 5, 1), InvalidArgument);
  CHECK(neighborhood(*path_space(6), PointSet{}, 3).empty());
  CHECK(neighborhood(*path_space(6), PointSet({2, 3}), 1) == PointSet({1, 2, 3, 4}));
  CHECK(growth_profile(*path_space(9), 0) == 1);
  Index nine = 0;
  for (Index i = 0; i < 9; ++i) nine = std::max<Index>(nine, std::min<Index>(8, i + 3) - std::max<Index>(0, i - 3) + 1);
  CHECK(growth_profile(*path_space(9), 3) == nine);
  CHECK(nine == 7);
  const auto k4 = from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(growth_profile(*k4, 1) == 4);
  CHECK(set_distance(*X, PointSet({1}), PointSet{}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("neighborhood matches the union of balls on random graphs") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 3 + static_cast<Index>(rng.below(10));
    const auto edges = random_graph(n, 0.2, rng);
    const auto X = from_edge_list(n, edges);
    const auto fw = floyd_warshall(n, edges);
    CHECK(X->distances().isApprox(fw));
    std::vector<Index> a;
    for (Index i = 0; i < n; ++i)
      if (rng.uniform() < 0.3) a.push_back(i);
    const PointSet A(a);
    const double R = static_cast<double>(rng.below(3));
    std::vector<Index> expect;
    for (Index p = 0; p < n; ++p) {
      bool hit = false;
      for (Index q : a) hit = hit || fw(p, q) <= R;
      if (hit) expect.push_back(p);
    }
    CHECK(neighborhood(*X, A, R) == PointSet(expect));
  }
}

TEST_CASE("separation is equivalent to disjointness from the neighborhood") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 3 + static_cast<Index>(rng.below(4));
    const auto X = from_edge_list(n, random_graph(n, 0.3, rng));
    for (double R : {0.0, 1.0, 2.0})
      for (std::uint32_t a = 0; a < (1U << n); ++a)
        for (std::uint32_t b = 0; b < (1U << n); ++b) {
          std::vector<Index> av, bv;
          for (Index i = 0; i < n; ++i) {
            if (a >> i & 1U) av.push_back(i);
            if (b >> i & 1U) bv.push_back(i);
          }
          const PointSet A(av), B(bv);
          const bool far = set_distance(*X, A, B) > R;
          CHECK(far == (B & neighborhood(*X, A, R)).empty());
        }
  }
}

TEST_CASE("ball monotone in R; growth profile monotone and saturating") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(12));
    const auto X = from_edge_list(n, random_graph(n, 0.1, rng));
    Index prev = 0;
    for (double R = 0; R <= X->diameter() + 1; R += 1) {
      const Index g = growth_profile(*X, R);
      CHECK(g >= prev);
      prev = g;
      for (Index x = 0; x < n; ++x) CHECK(ball(*X, x, R).is_subset_of(ball(*X, x, R + 1)));
    }
    CHECK(growth_profile(*X, X->diameter()) == n);
  }
}
