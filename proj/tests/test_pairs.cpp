#include <doctest.h>

#include <algorithm>
#include <functional>

#include "reflexive/error.hpp"
#include "reflexive/pairs.hpp"
#include "support.hpp"

using namespace reflexive;
using namespace testing_support;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvariantViolation;
}

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

ReflexivePair standard_pair(const std::vector<IntVector>& pts) {
  const auto p = hull(pts);
  return ReflexivePair::make(p, Lattice::standard(p.dim()));
}

AbelianQuotient group(std::initializer_list<long> factors) {
  AbelianQuotient q;
  for (long f : factors) q.invariant_factors.emplace_back(f);
  return q;
}

// Independent count: d_0 <= ... <= d_{n-1} bounded by the known maximum, last one solved.
std::size_t brute_force_tuples(std::size_t n, long bound) {
  std::size_t count = 0;
  std::vector<long> d(n, 2);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long lo) {
    if (i == n) {
      Rational rest = 1;
      for (long x : d) rest -= Rational(1, x);
      if (rest > 0 && rest.get_num() == 1 && rest.get_den() >= d.back()) ++count;
      return;
    }
    for (long x = lo; x <= bound; ++x) {
      d[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, 2);
  return count;
}

}  // namespace

TEST_CASE("vertex sublattices") {
  auto q = vertex_sublattice(standard_pair(quintic()));
  CHECK(q.index == 125);
  CHECK(q.quotient == group({5, 5, 5}));
  CHECK(vertex_sublattice(standard_pair(quintic_dual())).index == 1);
  auto sq = vertex_sublattice(standard_pair(cube(2)));
  CHECK(sq.index == 2);
  CHECK(sq.quotient == group({2}));
}

TEST_CASE("minimal and maximal pairs") {
  const auto d4 = standard_pair(quintic());
  const auto d4s = standard_pair(quintic_dual());
  const auto std4 = Lattice::standard(4);

  const auto mn = minimal_pair(d4);
  CHECK(lattice_index(std4, mn.lattice) == group({5, 5, 5}));
  CHECK(maximal_pair(d4).lattice == std4);

  const auto mx = maximal_pair(d4s);
  CHECK_FALSE(mx.lattice == std4);
  CHECK(lattice_index(mx.lattice, std4).order() == 125);
  CHECK(kind_of([&] { lattice_index(std4, mx.lattice); }) == ErrorKind::NotInLattice);

  // The tower is stable.
  for (const auto& pair : {d4, d4s, standard_pair(cube(3)), standard_pair(cross_polytope(3))}) {
    const auto lo = minimal_pair(pair), hi = maximal_pair(pair);
    CHECK(minimal_pair(hi).lattice == lo.lattice);
    CHECK(maximal_pair(lo).lattice == hi.lattice);
    CHECK(minimal_pair(maximal_pair(minimal_pair(pair))).lattice == lo.lattice);
    // [M^D : M_D] is the order of the fundamental group of the dual.
    CHECK(lattice_index(hi.lattice, lo.lattice).order() ==
          polytope_fundamental_group(reflexive_dual(pair.polytope)).order);
  }
}

TEST_CASE("fundamental groups") {
  CHECK(pair_fundamental_group(standard_pair(quintic())).trivial());
  CHECK(pair_fundamental_group(standard_pair(quintic_dual())) == group({5, 5, 5}));
  CHECK(pair_fundamental_group(standard_pair(cube(2))).trivial());
  CHECK(pair_fundamental_group(standard_pair(cross_polytope(2))) == group({2}));
  CHECK(polytope_fundamental_group(hull(quintic())).order == 125);
  CHECK(polytope_fundamental_group(hull(quintic())).group == group({5, 5, 5}));
  CHECK(polytope_fundamental_group(hull(quintic_dual())).order == 125);
  const auto p333 = weighted_simplex(ints({3, 3, 3}));
  CHECK(polytope_fundamental_group(p333.polytope).order == 3);
  CHECK(polytope_fundamental_group(hull(rows({{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {-1, 0}, {0, -1}}))).group.trivial());
}

TEST_CASE("morphisms") {
  const auto d4 = standard_pair(quintic());
  const auto d4s = standard_pair(quintic_dual());
  const auto phi = matrix({{4, -1, -1, -1}, {-1, 4, -1, -1}, {-1, -1, 4, -1}, {-1, -1, -1, 4}});
  auto m = morphism_check(phi, d4s, d4);
  CHECK(m.degree == 125);
  CHECK(m.cokernel == group({5, 5, 5}));
  CHECK(morphism_check(IntMatrix::identity(4), d4, d4).degree == 1);
  CHECK(kind_of([&] { morphism_check(scaled_identity(4, 2), d4s, d4s); }) == ErrorKind::NotAMorphism);
  CHECK(kind_of([&] { morphism_check(IntMatrix::identity(4), d4s, d4); }) == ErrorKind::NotAMorphism);

  // Factor phi through the minimal pair of the quintic: degrees multiply.
  const auto mn = minimal_pair(d4);
  const auto& h = mn.lattice.basis;  // M_D coordinates -> Z^4
  REQUIRE(mn.lattice.denominator == 1);
  const auto inv = scaled_inverse(h);
  IntMatrix first = phi * inv.adjugate;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      REQUIRE(first(i, j) % inv.det == 0);
      first(i, j) /= inv.det;
    }
  const auto a = morphism_check(first, d4s, mn);
  const auto b = morphism_check(h, mn, d4);
  CHECK(a.degree == 1);
  CHECK(b.degree == 125);
  CHECK(a.degree * b.degree == m.degree);
}

TEST_CASE("simplex weights") {
  auto q = simplex_weights(hull(quintic()));
  CHECK(q.weights == ints({1, 1, 1, 1, 1}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(q.b(i, j) == (i == j ? 4 : -1));
  CHECK(q.total_degree == 5);

  // Vertices sort as (-2,-3), (0,1), (1,0).
  auto p = simplex_weights(hull(rows({{1, 0}, {0, 1}, {-2, -3}})));
  CHECK(p.weights == ints({1, 3, 2}));
  CHECK(p.degrees == ints({6, 2, 3}));
  CHECK(p.total_degree == 6);
  CHECK(kind_of([] { simplex_weights(hull(cube(2))); }) == ErrorKind::NotASimplex);
}

TEST_CASE("weighted simplices") {
  CHECK(normal_form(weighted_simplex(ints({5, 5, 5, 5, 5})).polytope) == normal_form(hull(quintic())));
  CHECK(normal_form(weighted_simplex(ints({2, 3, 6})).polytope) ==
        normal_form(hull(rows({{1, 0}, {0, 1}, {-2, -3}}))));
  CHECK(kind_of([] { weighted_simplex(ints({2, 3, 7})); }) == ErrorKind::DegreesNotUnit);
  CHECK(kind_of([] { weighted_simplex(ints({2, 2, 0})); }) == ErrorKind::DegreesNotUnit);

  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& d : enumerate_degree_tuples(n)) {
      auto ws = simplex_weights(weighted_simplex(d).polytope);
      auto got = ws.degrees;
      std::sort(got.begin(), got.end());
      CHECK(got == d);
      CHECK(rank(ws.b) == n);
    }
}

TEST_CASE("degree tuples") {
  CHECK(enumerate_degree_tuples(1) == std::vector<std::vector<Integer>>{ints({2, 2})});
  CHECK(enumerate_degree_tuples(2) ==
        std::vector<std::vector<Integer>>{ints({2, 3, 6}), ints({2, 4, 4}), ints({3, 3, 3})});
  const auto t3 = enumerate_degree_tuples(3);
  CHECK(t3.size() == 14);
  CHECK(std::find(t3.begin(), t3.end(), ints({4, 4, 4, 4})) != t3.end());
  CHECK(std::find(t3.begin(), t3.end(), ints({2, 3, 7, 42})) != t3.end());
  CHECK(enumerate_degree_tuples(4).size() == 147);
  for (const auto& d : enumerate_degree_tuples(4)) {
    Rational s = 0;
    for (const auto& x : d) s += Rational(1, x);
    CHECK(s == 1);
    CHECK(std::is_sorted(d.begin(), d.end()));
  }
  CHECK(brute_force_tuples(2, 6) == 3);
  CHECK(brute_force_tuples(3, 42) == 14);
}

TEST_CASE("Fermat groups") {
  auto a = fermat_group(ints({5, 5, 5, 5, 5}));
  CHECK(a.group == group({5, 5, 5}));
  CHECK(a.order == 125);
  auto b = fermat_group(ints({3, 3, 3}));
  CHECK(b.group == group({3}));
  CHECK(b.order == 3);
  auto c = fermat_group(ints({2, 3, 6}));
  CHECK(c.group.trivial());
  CHECK(c.order == 1);
  CHECK(fermat_character_kernel(ints({4, 4, 4, 4})) == group({4, 4}));
  CHECK(fermat_group(ints({2, 4, 4})).group == group({2}));
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& d : enumerate_degree_tuples(n)) CHECK_NOTHROW(fermat_group(d));
  CHECK(kind_of([] { fermat_group(ints({2, 3, 7})); }) == ErrorKind::DegreesNotUnit);
}

TEST_CASE("self-dual simplices") {
  CHECK(is_selfdual_simplex(hull(quintic())));
  CHECK(is_selfdual_simplex(hull(rows({{1, 0}, {0, 1}, {-2, -3}}))));
  CHECK(is_selfdual_simplex(weighted_simplex(ints({2, 3, 7, 42})).polytope));
  CHECK(kind_of([] { is_selfdual_simplex(hull(cube(2))); }) == ErrorKind::NotASimplex);
}
