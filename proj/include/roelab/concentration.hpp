// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_CONCENTRATION_HPP
#define ROELAB_CONCENTRATION_HPP

#include <vector>

#include "roelab/block_operator.hpp"

namespace roelab {

/// ||chi_{B(y;R)} U chi_x|| for every source point x.
std::vector<double> corner_profile(const Unitary& U, Index y, double R);

/// A set A such that U chi_A U* has a corner of norm `certificate` between
/// {y} and Y \ B(y;R), with certificate >= (1/2) sqrt(1 - delta_actual^2).
struct ConcentrationWitness {
  Index y = 0;
  double R = 0.0;
  Index h_index = 0;
  double delta_actual = 0.0;  // max_x ||chi_{B(y;R)} U chi_x||, via the complement corners
  PointSet A;
  bool A_is_positive = true;  // A = {x : eps_x = +1}, else its complement
  std::vector<int> signs;
  double certificate = 0.0;   // ||chi_{Y\B} U chi_A U* chi_y||
  double bound = 0.0;         // (1/2) sqrt(1 - delta_actual^2)
  double separation = 0.0;    // d(y, Y \ B); +inf when B = Y
  bool degenerate = false;    // B = Y, no violating pair exists
  double sign_sum_sq = 0.0;   // ||sum_x eps_x (1 - chi_B) U chi_x v||^2
};

/// Builds the witness from v = U*(delta_y (x) e_h): splits v over source
/// points, pushes each piece through (1 - chi_B) U, picks greedy signs, and
/// keeps the better of the positive and negative halves (ties to positive).
/// Every intermediate inequality is checked; a failure throws InvariantViolation.
ConcentrationWitness concentration_witness(const Unitary& U, Index y, double R, Index h_index = 0);

/// Runs concentration_witness for every basis vector of the fiber at y and
/// keeps the largest certificate (first on ties).
ConcentrationWitness concentration_witness_sweep(const Unitary& U, Index y, double R);

}  // namespace roelab

#endif  // ROELAB_CONCENTRATION_HPP
