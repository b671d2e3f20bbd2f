// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace roelab;
using namespace roelab::testing;

namespace {

Unitary hadamard() {
  Eigen::MatrixXd d(2, 2);
  d << 0, 3, 3, 0;
  const auto s = FiberedSpace::uniform(make_space(d), 1);
  MatrixXc h(2, 2);
  h << 1, 1, 1, -1;
  return Unitary(BlockOperator(s, s, h / std::sqrt(2.0)));
}

Unitary permutation(const CoarseMap& h, Index dim) {
  const auto s = FiberedSpace::uniform(h.source(), dim);
  BlockOperator U(s, s);
  for (Index x = 0; x < s.points(); ++x) U.block(h(x), x).setIdentity();
  return Unitary(U);
}

// ||chi_{Y \ B(y;R)} U chi_A U^* chi_y|| straight from the matrix.
double certificate_oracle(const Unitary& U, Index y, double R, const PointSet& A) {
  const auto& s = U.target();
  const auto far = ball(s.base(), y, R).complement(s.points());
  const MatrixXc& m = U.op().matrix();
  const MatrixXc P = indicator<Complex>(U.source(), A).matrix();
  const MatrixXc prod = m * P * m.adjoint();
  return svd_norm(prod(s.basis_indices(far), s.basis_indices(PointSet{y})));
}

}  // namespace

TEST_CASE("corner_profile examples") {
  const auto X = path_space(6);
  const auto s = FiberedSpace::uniform(X, 2);
  const Unitary I(BlockOperator::identity(s));
  const auto p = corner_profile(I, 2, 0);
  for (Index x = 0; x < 6; ++x) CHECK(p[static_cast<std::size_t>(x)] == (x == 2 ? 1.0 : 0.0));
  const auto refl = permutation(reflection(X), 2);
  const auto q = corner_profile(refl, 1, 0);
  for (Index x = 0; x < 6; ++x) CHECK(q[static_cast<std::size_t>(x)] == (x == 4 ? 1.0 : 0.0));
  const auto h = corner_profile(hadamard(), 0, 2);
  CHECK(h[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("Hadamard witness reproduces the hand computation") {
  // v = U* delta_0 = (1, 1)/sqrt2. Outside B = {0} the pieces are (0, 1/2)
  // and (0, -1/2), so the greedy signs are (+, -) and A = {0}. The corner is
  // |U_10 conj(U_00)| = 1/2 against the bound sqrt(1 - 1/2)/2.
  const auto w = concentration_witness(hadamard(), 0, 2);
  const double r = 1 / std::sqrt(2.0);
  CHECK(w.delta_actual == doctest::Approx(r).epsilon(1e-15));
  CHECK(w.signs == std::vector<int>({1, -1}));
  CHECK(w.A == PointSet({0}));
  CHECK(w.A_is_positive);
  CHECK(w.certificate == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w.bound == doctest::Approx(0.5 * std::sqrt(1 - r * r)).epsilon(1e-15));
  CHECK(std::abs(w.delta_actual - 0.70711) < 5e-6);
  CHECK(std::abs(w.bound - 0.35355) < 5e-6);
  CHECK(w.separation == 3);
  CHECK_FALSE(w.degenerate);
  CHECK(w.sign_sum_sq == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("permutation coverings give the degenerate bound") {
  const auto X = path_space(7);
  const auto U = permutation(reflection(X), 2);
  for (double R : {0.0, 1.0, 3.0}) {
    const auto w = concentration_witness(U, 2, R);
    CHECK(w.delta_actual == 1);
    CHECK(w.bound == 0);
    CHECK(w.certificate >= w.bound);
  }
}

TEST_CASE("B = Y is reported as degenerate") {
  const auto s = FiberedSpace::uniform(path_space(4), 1);
  const Unitary U(random_band_unitary(s, 1, 2, 3));
  const auto w = concentration_witness(U, 0, 3);
  CHECK(w.degenerate);
  CHECK(w.separation == std::numeric_limits<double>::infinity());
  CHECK(w.certificate == 0);
}

TEST_CASE("argument checks") {
  const auto U = hadamard();
  CHECK_THROWS_AS(concentration_witness(U, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(concentration_witness(U, 0, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(concentration_witness(U, 0, -1), InvalidArgument);
}

TEST_CASE("random band unitaries: certificate at least the bound") {
  const auto X = path_space(20);
  const auto s = FiberedSpace::uniform(X, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Unitary U(random_band_unitary(s, 2, 2, seed));
    const Index y = static_cast<Index>(seed % 20);
    for (double R : {0.0, 1.0, 2.0, 4.0}) {
      const auto w = concentration_witness(U, y, R);
      CHECK(w.certificate >= w.bound - 1e-9);
      CHECK(w.certificate == doctest::Approx(certificate_oracle(U, y, R, w.A)).epsilon(1e-12));
      CHECK(w.separation > R);
      CHECK(w.sign_sum_sq >= 1 - w.delta_actual * w.delta_actual - 1e-9);
      const auto p = corner_profile(U, y, R);
      CHECK(w.delta_actual == doctest::Approx(*std::max_element(p.begin(), p.end())).epsilon(1e-12));
    }
  }
}

TEST_CASE("the witness is a quasi-locality violation of U chi_A U*") {
  const auto X = path_space(10);
  Rng rng(1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FiberedSpace s(X, random_fibers(10, 2, rng));
    const Unitary U(random_band_unitary(s, 1, 3, seed));
    const Index y = static_cast<Index>(rng.below(10));
    const double R = static_cast<double>(rng.below(3));
    const auto w = concentration_witness(U, y, R);
    if (w.degenerate) continue;
    const auto T = U.op() * indicator<Complex>(s, w.A) * adjoint(U.op());
    for (double r = 0; r < w.separation; r += 1)
      CHECK(quasi_locality_violation(T, r, LocalityMode::exact).violation_lower >= w.certificate - 1e-12);
  }
}

TEST_CASE("sweeping h never does worse than h = 0") {
  const auto s = FiberedSpace::uniform(path_space(8), 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Unitary U(random_band_unitary(s, 2, 2, seed));
    const auto a = concentration_witness(U, 3, 1);
    const auto b = concentration_witness_sweep(U, 3, 1);
    CHECK(b.certificate >= a.certificate);
    CHECK(b.certificate >= b.bound - 1e-9);
  }
}

TEST_CASE("infinite-propagation unitaries") {
  Rng rng(2);
  const auto s = FiberedSpace::uniform(path_space(12), 2);
  for (int t = 0; t < 10; ++t) {
    const Unitary U(decaying_unitary(s, 1, 1.5, rng));
    for (double R : {0.0, 1.0, 2.0, 3.0}) {
      const auto w = concentration_witness(U, 5, R);
      CHECK(w.certificate >= w.bound - 1e-9);
    }
  }
}
