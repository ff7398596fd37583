#pragma once

// Shared fixtures and small random generators for the unit tests.

#include <random>
#include <vector>

#include "reflexive/lattice.hpp"

namespace testing_support {

using reflexive::IntMatrix;
using reflexive::IntVector;
using reflexive::Integer;

inline std::vector<IntVector> rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<IntVector> out;
  for (const auto& row : r) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

inline IntVector vec(std::initializer_list<long> r) {
  IntVector v;
  for (long x : r) v.emplace_back(x);
  return v;
}

inline IntMatrix matrix(std::initializer_list<std::initializer_list<long>> r) {
  const auto rs = rows(r);
  return IntMatrix::from_rows(rs);
}

// Product of random elementary matrices; determinant is +-1.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    switch (s % 3) {
      case 0: u.add_row_multiple(a, b, coef(rng)); break;
      case 1: u.swap_rows(a, b); break;
      default: u.negate_row(a); break;
    }
  }
  return u;
}

inline IntMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline std::vector<IntVector> apply(const std::vector<IntVector>& pts, const IntMatrix& u) {
  std::vector<IntVector> out;
  for (const auto& p : pts) out.push_back(p * u);
  return out;
}

// Vertices of the quintic simplex and of its dual, and the standard 4-cube.
inline std::vector<IntVector> quintic() {
  return rows({{4, -1, -1, -1}, {-1, 4, -1, -1}, {-1, -1, 4, -1}, {-1, -1, -1, 4}, {-1, -1, -1, -1}});
}
inline std::vector<IntVector> quintic_dual() {
  return rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, -1, -1, -1}});
}
inline std::vector<IntVector> cube(std::size_t n) {
  std::vector<IntVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? 1 : -1;
    out.push_back(v);
  }
  return out;
}
inline std::vector<IntVector> cross_polytope(std::size_t n) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < n; ++i)
    for (int s : {1, -1}) {
      IntVector v(n);
      v[i] = s;
      out.push_back(v);
    }
  return out;
}

}  // namespace testing_support

namespace testing_support {
inline reflexive::IntMatrix scaled_identity(std::size_t n, long f) {
  auto m = reflexive::IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f;
  return m;
}
}  // namespace testing_support
