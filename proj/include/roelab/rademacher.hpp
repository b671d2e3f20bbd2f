// Copyright 2026 The roelab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ROELAB_RADEMACHER_HPP
#define ROELAB_RADEMACHER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "roelab/linalg.hpp"

namespace roelab {

/// Signs for a vector family together with ||sum eps_n v_n||^2 and sum ||v_n||^2.
struct SignSelection {
  std::vector<int> signs;
  double achieved = 0.0;
  double target = 0.0;
};

inline constexpr Index kMaxEnumeratedSigns = 20;

namespace detail {

template <typename Scalar>
void check_family(const std::vector<Vector<Scalar>>& vs) {
  for (const auto& v : vs)
    if (v.size() != vs.front().size())
      throw InvalidArgument("sign selection: vectors have different dimensions");
}

template <typename Scalar>
double signed_sum_sq(const std::vector<Vector<Scalar>>& vs, const std::vector<int>& signs) {
  if (vs.empty()) return 0.0;
  Vector<Scalar> s = Vector<Scalar>::Zero(vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i) s += static_cast<double>(signs[i]) * vs[i];
  return s.squaredNorm();
}

template <typename Scalar>
double target_of(const std::vector<Vector<Scalar>>& vs) {
  double t = 0.0;
  for (const auto& v : vs) t += v.squaredNorm();
  return t;
}

template <typename Scalar>
Matrix<double> real_gram(const std::vector<Vector<Scalar>>& vs) {
  const auto n = static_cast<Index>(vs.size());
  Matrix<double> g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      g(i, j) = std::real(vs[static_cast<std::size_t>(i)].dot(vs[static_cast<std::size_t>(j)]));
  return g;
}

inline void check_enumerable(std::size_t n) {
  if (static_cast<Index>(n) > kMaxEnumeratedSigns)
    throw SizeLimitExceeded("sign enumeration supports at most " +
                            std::to_string(kMaxEnumeratedSigns) + " vectors, got " +
                            std::to_string(n));
}

// Pattern bit (n-1-i) set means eps_i = -1, so ascending pattern order is
// lexicographic with +1 before -1.
inline int sign_at(std::uint64_t pattern, std::size_t i, std::size_t n) {
  return (pattern >> (n - 1 - i) & 1U) ? -1 : 1;
}

inline double pattern_value(const Matrix<double>& g, std::uint64_t pattern) {
  const auto n = static_cast<std::size_t>(g.rows());
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int si = sign_at(pattern, i, n);
    v += g(static_cast<Index>(i), static_cast<Index>(i));
    for (std::size_t j = i + 1; j < n; ++j)
      v += 2.0 * si * sign_at(pattern, j, n) * g(static_cast<Index>(i), static_cast<Index>(j));
  }
  return v;
}

}  // namespace detail

/// Conditional-expectation derandomization of the Rademacher average:
/// eps_k = +1 iff Re<s_{k-1}, v_k> >= 0, so each step adds ||v_k||^2 plus a
/// nonnegative cross term and the final square norm is >= sum ||v_k||^2.
template <typename Scalar>
SignSelection greedy_signs(const std::vector<Vector<Scalar>>& vs) {
  detail::check_family(vs);
  SignSelection out;
  if (vs.empty()) return out;
  Vector<Scalar> s = Vector<Scalar>::Zero(vs.front().size());
  for (const auto& v : vs) {
    const int eps = std::real(s.dot(v)) >= 0.0 ? 1 : -1;
    out.signs.push_back(eps);
    s += static_cast<double>(eps) * v;
  }
  out.achieved = s.squaredNorm();
  out.target = detail::target_of(vs);
  return out;
}

/// Global maximum over all 2^n patterns (n <= 20); ties to the
/// lexicographically smallest pattern with +1 ordered before -1.
template <typename Scalar>
SignSelection brute_force_signs(const std::vector<Vector<Scalar>>& vs) {
  detail::check_family(vs);
  detail::check_enumerable(vs.size());
  SignSelection out;
  out.target = detail::target_of(vs);
  if (vs.empty()) return out;
  const auto g = detail::real_gram(vs);
  const std::size_t n = vs.size();
  // Negating every sign preserves the value and the +1-leading twin sorts
  // first, so patterns with eps_0 = +1 suffice.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  std::uint64_t best = 0;
  double best_value = detail::pattern_value(g, 0);
  for (std::uint64_t p = 1; p < half; ++p) {
    const double v = detail::pattern_value(g, p);
    if (v > best_value) {
      best_value = v;
      best = p;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.signs.push_back(detail::sign_at(best, i, n));
  out.achieved = detail::signed_sum_sq(vs, out.signs);
  return out;
}

/// Exact mean of ||sum eps_n v_n||^2 over all 2^n sign patterns (n <= 20).
template <typename Scalar>
double rademacher_average(const std::vector<Vector<Scalar>>& vs) {
  detail::check_family(vs);
  detail::check_enumerable(vs.size());
  if (vs.empty()) return 0.0;
  const auto g = detail::real_gram(vs);
  const std::uint64_t count = std::uint64_t{1} << vs.size();
  double sum = 0.0;
  for (std::uint64_t p = 0; p < count; ++p) sum += detail::pattern_value(g, p);
  return sum / static_cast<double>(count);
}

}  // namespace roelab

#endif  // ROELAB_RADEMACHER_HPP
