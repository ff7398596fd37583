#include <doctest.h>

#include <random>

#include "reflexive/error.hpp"
#include "reflexive/kernels.hpp"
#include "reflexive/polytope.hpp"
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

// Brute-force binomial for the l(quintic) oracle.
long binom(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("hull of a triangle and a diamond") {
  const auto tri = hull(rows({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(tri.facets().size() == 3);
  CHECK(tri.vertices().size() == 3);
  const auto diamond = hull(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}}));
  CHECK(diamond.vertices() == rows({{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));
  CHECK(diamond.facets().size() == 4);
}

TEST_CASE("hull of the quintic simplex") {
  const auto p = hull(quintic());
  REQUIRE(p.facets().size() == 5);
  // x1+...+x4 <= 1 and x_i >= -1.
  int sum_facets = 0, coordinate_facets = 0;
  for (const auto& f : p.facets()) {
    if (f.normal == vec({-1, -1, -1, -1}) && f.offset == 1) ++sum_facets;
    int ones = 0, zeros = 0;
    for (const auto& x : f.normal) {
      if (x == 1) ++ones;
      if (x == 0) ++zeros;
    }
    if (ones == 1 && zeros == 3 && f.offset == 1) ++coordinate_facets;
  }
  CHECK(sum_facets == 1);
  CHECK(coordinate_facets == 4);
}

TEST_CASE("lower-dimensional input is rejected") {
  CHECK(kind_of([] { hull(rows({{0, 0}, {1, 1}, {2, 2}})); }) == ErrorKind::NotFullDimensional);
}

TEST_CASE("polar duality") {
  const auto p = hull(quintic());
  const auto q = reflexive_dual(p);
  CHECK(q.vertices() == hull(quintic_dual()).vertices());
  CHECK(q.vertices().size() == 5);
  CHECK(reflexive_dual(q).vertices() == p.vertices());

  const auto sq = hull(cube(2));
  CHECK(reflexive_dual(sq).vertices() == rows({{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));

  const auto off = hull(rows({{1, 1}, {2, 1}, {1, 2}}));
  CHECK(kind_of([&] { polar_dual(off); }) == ErrorKind::OriginNotInterior);

  const auto big = hull(rows({{2, 0}, {0, 2}, {-2, -2}}));
  const auto d = polar_dual(big);
  REQUIRE(std::holds_alternative<RationalPolytope>(d));
  CHECK(std::get<RationalPolytope>(d).vertices.size() == 3);
}

TEST_CASE("reflexivity") {
  CHECK(is_reflexive(hull(quintic())).reflexive);
  CHECK(is_reflexive(hull(rows({{1, 0}, {0, 1}, {-1, -1}}))).reflexive);
  const auto big = hull(rows({{2, 0}, {0, 2}, {-2, -2}}));
  const auto chk = is_reflexive(big);
  CHECK(!chk.reflexive);
  REQUIRE(chk.witness_facet);
  CHECK(big.facets()[*chk.witness_facet].offset == 2);
}

TEST_CASE("integral distance") {
  CHECK(integral_distance(vec({1, 1}), 1, vec({0, 0})) == 1);
  CHECK(integral_distance(vec({1, 1, 1, 1}), 1, vec({0, 0, 0, 0})) == 1);
  CHECK(integral_distance(vec({1, 0}), 3, vec({1, 0})) == 2);
  CHECK(kind_of([] { integral_distance(vec({2, 0}), 3, vec({1, 0})); }) == ErrorKind::NonPrimitiveNormal);
}

TEST_CASE("lattice points") {
  const auto p = hull(quintic());
  CHECK(p.lattice_points().count() == static_cast<std::size_t>(binom(9, 4)));
  CHECK(p.lattice_points().interior == 1);
  const auto sq = hull(cube(2));
  CHECK(sq.lattice_points().count() == 9);
  CHECK(sq.lattice_points().interior == 1);
  const auto c4 = hull(cube(4));
  CHECK(c4.lattice_points().count() == 81);
}

TEST_CASE("lattice points agree with the bounding-box scan") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    std::vector<IntVector> pts;
    for (int k = 0; k < 7; ++k) {
      IntVector v(n);
      for (auto& x : v) x = coord(rng);
      pts.push_back(v);
    }
    if (affine_rank(pts) != n) continue;
    const auto p = hull(pts);
    const auto ref = kernels::enumerate_lattice_points_bbox(p);
    CHECK(kernels::enumerate_lattice_points(p, kernels::Mode::serial) == ref);
    CHECK(kernels::enumerate_lattice_points(p, kernels::Mode::parallel) == ref);
  }
}

TEST_CASE("normalized volumes") {
  CHECK(hull(rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).volume() == 1);
  const auto p = hull(quintic());
  CHECK(p.volume() == 625);
  CHECK(reflexive_dual(p).volume() == 5);
  CHECK(hull(cube(3)).volume() == 48);
  // Facets of the quintic simplex have lattice volume 125 each.
  for (auto id : p.face_lattice().of_dim(3)) CHECK(p.face_volume(id) == 125);
  // Edge of lattice length 5.
  for (auto id : p.face_lattice().of_dim(1)) CHECK(p.face_volume(id) == 5);
}

TEST_CASE("facet-degree identity for reflexive polytopes") {
  for (const auto& verts : {quintic(), quintic_dual(), cube(4), cross_polytope(4), cube(3)}) {
    const auto p = hull(verts);
    Integer sum = 0;
    for (auto id : p.face_lattice().of_dim(p.dim() - 1)) sum += p.face_volume(id);
    CHECK(sum == p.volume());
  }
}

TEST_CASE("face lattices and dual faces") {
  const auto p = hull(quintic());
  CHECK(p.face_lattice().f_vector() == std::vector<std::size_t>{5, 10, 10, 5});
  const auto q = reflexive_dual(p);
  const auto map = dual_faces(p, q);
  for (auto id : p.face_lattice().of_dim(3)) {
    REQUIRE(map[id]);
    CHECK(q.face_lattice().face(*map[id]).dim == 0);
  }
  const auto sq = hull(cube(2));
  const auto dia = reflexive_dual(sq);
  const auto m2 = dual_faces(sq, dia);
  for (auto id : sq.face_lattice().of_dim(1)) {
    REQUIRE(m2[id]);
    const auto& v = dia.face_lattice().face(*m2[id]);
    CHECK(v.dim == 0);
    // The edge lies on the facet whose normal is that diamond vertex.
    const auto& normal = dia.vertices()[v.vertices.front()];
    for (auto vi : sq.face_lattice().face(id).vertices) CHECK(dot(sq.vertices()[vi], normal) == -1);
  }
  // Incidence reverses: children of a face map to parents of its dual.
  const auto c = hull(cube(3));
  const auto cd = reflexive_dual(c);
  const auto m3 = dual_faces(c, cd);
  for (const auto& f : c.face_lattice().faces()) {
    if (!m3[f.id]) continue;
    for (auto ch : f.children) {
      if (!m3[ch]) continue;
      const auto& kids = cd.face_lattice().face(*m3[ch]).children;
      CHECK(std::find(kids.begin(), kids.end(), *m3[f.id]) != kids.end());
    }
  }
}

TEST_CASE("normal forms") {
  std::mt19937_64 rng(17);
  for (const auto& verts : {quintic(), cube(3), rows({{1, 0}, {0, 1}, {-1, -2}}), cross_polytope(3)}) {
    const auto p = hull(verts);
    const auto nf = p.normal_form();
    for (int t = 0; t < 5; ++t) {
      const auto u = random_unimodular(p.dim(), rng);
      CHECK(hull(apply(verts, u)).normal_form() == nf);
    }
    CHECK(hull(normal_form_vertices(nf)).normal_form() == nf);
  }
  CHECK(hull(quintic()).normal_form() != hull(quintic_dual()).normal_form());
}
