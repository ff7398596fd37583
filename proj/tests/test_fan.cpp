#include <doctest.h>

#include <functional>
#include <set>

#include "reflexive/error.hpp"
#include "reflexive/fan.hpp"
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

std::size_t count_smooth(const std::vector<SingularityReport>& reps) {
  return static_cast<std::size_t>(std::count_if(reps.begin(), reps.end(), [](const auto& r) { return r.smooth; }));
}

// Maximal cones as sets of ray vectors, for comparing fans built from different ray orders.
std::set<std::set<IntVector>> cone_sets(const Fan& f) {
  std::set<std::set<IntVector>> out;
  for (auto id : f.maximal_cones()) {
    std::set<IntVector> s;
    for (auto i : f.cones()[id].rays) s.insert(f.rays()[i]);
    out.insert(s);
  }
  return out;
}

Fan hirzebruch2() {
  return Fan::from_maximal_cones(2, rows({{1, 0}, {0, 1}, {-1, 2}, {0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan product(const Fan& a, const Fan& b) {
  std::vector<IntVector> rays;
  const std::size_t n = a.rank() + b.rank();
  for (const auto& r : a.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    IntVector v(n);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(a.rank()));
    rays.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cones;
  for (auto ca : a.maximal_cones())
    for (auto cb : b.maximal_cones()) {
      std::vector<std::size_t> c = a.cones()[ca].rays;
      for (auto i : b.cones()[cb].rays) c.push_back(i + a.rays().size());
      cones.push_back(c);
    }
  return Fan::from_maximal_cones(n, rays, cones);
}

}  // namespace

TEST_CASE("face fans") {
  const auto p4 = face_fan(hull(quintic_dual()));
  CHECK(p4.complete());
  CHECK(p4.maximal_cones().size() == 5);
  CHECK(count_smooth(classify_fan(p4)) == 5);

  const auto sq = face_fan(hull(cube(2)));
  CHECK(sq.maximal_cones().size() == 4);
  CHECK(sq.complete());

  const auto f = face_fan(hull(rows({{1, 0}, {0, 1}, {-1, -2}})));
  const auto reps = classify_fan(f);
  CHECK(reps.size() == 3);
  CHECK(count_smooth(reps) == 2);
  for (const auto& r : reps)
    if (!r.smooth) CHECK(abs(determinant(IntMatrix::from_rows(r.rays))) == 2);

  CHECK(kind_of([] { face_fan(hull(rows({{1, 1}, {2, 1}, {1, 2}}))); }) == ErrorKind::OriginNotInterior);
}

TEST_CASE("normal fans") {
  const auto q = hull(quintic());
  const auto nf = normal_fan(q);
  std::set<IntVector> rays(nf.rays().begin(), nf.rays().end());
  std::set<IntVector> expected;
  for (const auto& v : quintic_dual()) expected.insert(v);
  CHECK(rays == expected);

  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<IntVector> unit;
    for (const auto& v : cube(n)) {
      IntVector w;
      for (const auto& x : v) w.push_back(x > 0 ? Integer(1) : Integer(0));
      unit.push_back(w);
    }
    const auto fan = normal_fan(hull(unit));
    CHECK(fan.maximal_cones().size() == (std::size_t{1} << n));
    CHECK(fan.complete());
    CHECK(count_smooth(classify_fan(fan)) == (std::size_t{1} << n));
  }

  for (const auto& verts : {quintic(), cube(3), rows({{1, 0}, {0, 1}, {-1, -2}}), cross_polytope(4)}) {
    const auto p = hull(verts);
    CHECK(cone_sets(normal_fan(p)) == cone_sets(face_fan(reflexive_dual(p))));
  }
}

TEST_CASE("cone classification") {
  const auto smooth = classify_cone(Cone::from_rays(rows({{1, 0}, {0, 1}})));
  CHECK(smooth.smooth);
  CHECK(smooth.terminal);

  const auto a1 = classify_cone(Cone::from_rays(rows({{1, 0}, {1, 2}})));
  CHECK(a1.gorenstein);
  CHECK(a1.canonical);
  CHECK(a1.simplicial);
  CHECK(!a1.terminal);
  CHECK(!a1.smooth);
  CHECK(*a1.k_sigma == vec({1, 0}));

  const auto conifold = classify_cone(Cone::from_rays(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}})));
  CHECK(conifold.gorenstein);
  CHECK(!conifold.simplicial);
  CHECK(*conifold.k_sigma == vec({1, 1, 1}));

  const auto lower = classify_cone(Cone::from_rays(rows({{1, 0, 0}, {1, 2, 0}})));
  CHECK(lower.dim == 2);
  CHECK(lower.gorenstein);
  CHECK(!lower.terminal);

  // k = (1, -1/3); the point (1,1) sits at height 2/3.
  const auto qg = classify_cone(Cone::from_rays(rows({{1, 0}, {2, 3}})));
  CHECK(qg.q_gorenstein);
  CHECK(!qg.gorenstein);
  CHECK(!qg.canonical);
  CHECK(!qg.terminal);
  // Terminal but not Gorenstein: the 3-fold quotient singularity 1/2(1,1,1).
  const auto half = classify_cone(Cone::from_rays(rows({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}})));
  CHECK(half.terminal);
  CHECK(!half.gorenstein);

  CHECK(kind_of([] { classify_cone(Cone::from_rays(rows({{1, 0}, {-1, 0}, {0, 1}}))); }) ==
        ErrorKind::NotStronglyConvex);
}

TEST_CASE("fan fundamental groups") {
  const auto p2 = face_fan(hull(rows({{1, 0}, {0, 1}, {-1, -1}})));
  CHECK(fan_fundamental_group(p2).trivial());
  const auto q3 = face_fan(hull(rows({{2, -1}, {-1, 2}, {-1, -1}})));
  CHECK(fan_fundamental_group(q3).invariant_factors == vec({3}));
  const auto q = face_fan(hull(quintic()));
  CHECK(fan_fundamental_group(q).invariant_factors == vec({5, 5, 5}));

  const auto half = Fan::from_maximal_cones(2, rows({{1, 0}, {0, 1}}), {{0, 1}});
  CHECK(!half.complete());
  CHECK(kind_of([&] { fan_fundamental_group(half); }) == ErrorKind::FanNotComplete);
}

TEST_CASE("Gorenstein Fano fans") {
  for (const auto& verts : {quintic(), quintic_dual(), cube(3), cross_polytope(3)})
    CHECK(is_fano_gorenstein(face_fan(hull(verts))));
  const auto p2 = face_fan(hull(rows({{1, 0}, {0, 1}, {-1, -1}})));
  CHECK(is_fano_gorenstein(p2));
  // Weak Fano: the ray (-1,2) lies on the hyperplane of the cone <(1,0),(0,1)>.
  const auto f2 = hirzebruch2();
  CHECK(f2.complete());
  CHECK(!is_fano_gorenstein(f2));
  CHECK(!is_fano_gorenstein(product(f2, p2)));
  CHECK(is_fano_gorenstein(product(p2, p2)));
  const auto ng = face_fan(hull(rows({{1, 0}, {0, 1}, {-1, -3}})));
  CHECK(kind_of([&] { is_fano_gorenstein(ng); }) == ErrorKind::NotGorenstein);
}

TEST_CASE("face fan cones of reflexive polytopes are Gorenstein with k = -(facet normal)") {
  for (const auto& verts : {quintic(), cube(4), cross_polytope(4)}) {
    const auto p = hull(verts);
    const auto fan = face_fan(p);
    const auto reps = classify_fan(fan, kernels::Mode::serial);
    const auto par = classify_fan(fan, kernels::Mode::parallel);
    REQUIRE(reps.size() == p.facets().size());
    std::set<IntVector> ks, normals;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      REQUIRE(reps[i].gorenstein);
      CHECK(*reps[i].k_sigma == *par[i].k_sigma);
      ks.insert(*reps[i].k_sigma);
    }
    for (const auto& f : p.facets()) {
      IntVector neg;
      for (const auto& x : f.normal) neg.push_back(-x);
      normals.insert(neg);
    }
    CHECK(ks == normals);
  }
}
