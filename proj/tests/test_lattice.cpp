#include <doctest.h>

#include "reflexive/error.hpp"
#include "reflexive/lattice.hpp"
#include "support.hpp"

using namespace reflexive;
using namespace testing_support;

namespace {

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (d(i, i) < 0) return false;
    if (d(i, i) == 0) {
      if (d(i + 1, i + 1) != 0) return false;
    } else if (!mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t())) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("smith form of the identity") {
  const auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));
  CHECK(s.u == IntMatrix::identity(3));
  CHECK(s.v == IntMatrix::identity(3));
}

TEST_CASE("smith form of [[2,4],[6,8]]") {
  const auto m = matrix({{2, 4}, {6, 8}});
  const auto s = smith_normal_form(m);
  CHECK(s.d == matrix({{2, 0}, {0, 4}}));
  CHECK(s.u * m * s.v == s.d);
}

TEST_CASE("smith form of the quintic morphism rows") {
  const auto m = IntMatrix::from_rows(quintic());
  const auto s = smith_normal_form(m);
  REQUIRE(s.rank == 4);
  CHECK(s.d(0, 0) == 1);
  CHECK(s.d(1, 1) == 5);
  CHECK(s.d(2, 2) == 5);
  CHECK(s.d(3, 3) == 5);
  CHECK(s.u * m * s.v == s.d);
}

TEST_CASE("smith form reconstruction on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const auto m = random_matrix(r, c, rng);
    const auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    CHECK(is_diagonal_chain(s.d));
  }
}

TEST_CASE("hermite form is canonical under unimodular row changes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(4, 3 + rng() % 3, rng);
    const auto h = hermite_normal_form(m);
    CHECK(h.u * m == h.h);
    CHECK(abs(determinant(h.u)) == 1);
    const auto u = random_unimodular(4, rng);
    CHECK(hermite_normal_form(u * m).h == h.h);
  }
}

TEST_CASE("lattice quotients") {
  const auto e = rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(lattice_quotient(e, 3).trivial());
  const auto two = rows({{2}});
  const auto q2 = lattice_quotient(two, 1);
  CHECK(q2.invariant_factors == IntVector{2});
  CHECK(q2.free_rank == 0);
  const auto q = lattice_quotient(quintic(), 4);
  CHECK(q.invariant_factors == vec({5, 5, 5}));
  CHECK(q.order() == 125);
  const auto partial = rows({{1, 0, 0}, {0, 3, 0}});
  const auto qp = lattice_quotient(partial, 3);
  CHECK(qp.invariant_factors == vec({3}));
  CHECK(qp.free_rank == 1);
}

TEST_CASE("lattice quotient is invariant under unimodular change of generators") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(4, 4, rng, 6);
    const auto gens = m.row_vectors();
    const auto u = random_unimodular(4, rng);
    const auto mixed = (u * m).row_vectors();
    CHECK(lattice_quotient(gens, 4) == lattice_quotient(mixed, 4));
  }
}

TEST_CASE("primitive relations") {
  std::vector<IntVector> pts = quintic_dual();
  CHECK(primitive_relation(pts) == vec({1, 1, 1, 1, 1}));
  const auto p2 = rows({{1, 0}, {0, 1}, {-2, -3}});
  const auto w = primitive_relation(p2);
  CHECK(w == vec({2, 3, 1}));
  IntVector sum(2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) sum[j] += w[i] * p2[i][j];
  CHECK(sum == vec({0, 0}));
  const auto bad = rows({{1, 0}, {-1, 0}, {0, 1}});
  CHECK_THROWS_AS(primitive_relation(bad), Error);
  try {
    primitive_relation(bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoPositiveRelation);
  }
}

TEST_CASE("kernels and solves") {
  const auto m = matrix({{1, 2}, {2, 4}, {0, 1}});
  const auto k = left_kernel(m);
  REQUIRE(k.rows() == 1);
  CHECK(k.row(0) * m == vec({0, 0}));

  const auto sat = saturated_basis(matrix({{2, 4, 0}, {0, 0, 3}}));
  CHECK(sat == matrix({{1, 2, 0}, {0, 0, 1}}));

  const auto a = matrix({{2, 0}, {0, 3}});
  CHECK(solve_integral(a, vec({4, 9})) == vec({2, 3}));
  CHECK(!solve_integral(a, vec({1, 0})));
  const auto r = solve_rational(a, vec({1, 0}));
  REQUIRE(r);
  CHECK((*r)[0] == Rational(1, 2));

  const auto inv = scaled_inverse(matrix({{2, 1}, {1, 1}}));
  CHECK(inv.det == 1);
  CHECK(inv.adjugate * matrix({{2, 1}, {1, 1}}) == IntMatrix::identity(2));
}

TEST_CASE("determinant and rank") {
  CHECK(determinant(matrix({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(IntMatrix::from_rows(quintic_dual()).submatrix_rows(0, 4)) == 1);
  CHECK(rank(IntMatrix::from_rows(quintic())) == 4);
  CHECK(affine_rank(rows({{0, 0}, {1, 1}, {2, 2}})) == 1);
}
