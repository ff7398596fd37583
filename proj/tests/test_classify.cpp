#include <doctest.h>

#include <functional>
#include <set>

#include "reflexive/classify.hpp"
#include "reflexive/error.hpp"
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

using NormalForms = std::set<IntMatrix, bool (*)(const IntMatrix&, const IntMatrix&)>;

// Every reflexive polygon is equivalent to a subpolygon of one of three maximal ones.
NormalForms subset_oracle() {
  NormalForms out(matrix_less);
  const std::vector<std::vector<IntVector>> maximal{
      rows({{2, -1}, {-1, 2}, {-1, -1}}),
      rows({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}),
      rows({{-1, -1}, {3, -1}, {-1, 1}}),
  };
  for (const auto& m : maximal) {
    const auto pts = hull(m).lattice_points().points;
    for (std::size_t mask = 1; mask < (std::size_t{1} << pts.size()); ++mask) {
      std::vector<IntVector> sub;
      for (std::size_t i = 0; i < pts.size(); ++i)
        if (mask >> i & 1) sub.push_back(pts[i]);
      if (sub.size() < 3 || affine_rank(sub) != 2) continue;
      const auto p = hull(sub);
      if (!p.has_interior_origin() || p.lattice_points().interior != 1) continue;
      out.insert(normal_form(p));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("sixteen reflexive polygons") {
  const auto r = enumerate_reflexive(2);
  REQUIRE(r.classes.size() == 16);
  NormalForms got(matrix_less);
  for (const auto& c : r.classes) {
    got.insert(c.normal_form);
    CHECK(is_reflexive(c.polytope).reflexive);
    CHECK(c.interior_points == 1);
    CHECK(c.boundary_points + r.classes[c.dual].boundary_points == 12);
    CHECK(r.classes[c.dual].dual == &c - r.classes.data());
  }
  CHECK(got.size() == 16);
  const auto oracle = subset_oracle();
  CHECK(oracle.size() == 16);
  CHECK(got == oracle);

  // The P^2 triangle and its dual are exchanged.
  const auto small = normal_form(hull(rows({{1, 0}, {0, 1}, {-1, -1}})));
  const auto big = normal_form(hull(rows({{2, -1}, {-1, 2}, {-1, -1}})));
  std::size_t s = 16, b = 16;
  for (std::size_t i = 0; i < 16; ++i) {
    if (r.classes[i].normal_form == small) s = i;
    if (r.classes[i].normal_form == big) b = i;
  }
  REQUIRE(s < 16);
  REQUIRE(b < 16);
  CHECK(r.classes[s].dual == b);
  CHECK(r.classes[s].volume == 3);
  CHECK(r.classes[b].volume == 9);
}

TEST_CASE("catalog invariants") {
  const auto r = enumerate_reflexive(2);
  const auto rows_ = catalog_invariants(r);
  CHECK(rows_.size() == 16);
  std::size_t self_dual = 0;
  for (const auto& row : rows_) {
    CHECK(row.volume == row.facet_volume_sum);
    CHECK(row.pi1_order >= 1);
    CHECK(row.self_dual == (row.dual == row.index));
    if (row.self_dual) ++self_dual;
    // Galois correspondence in the plane: pi1 of a class and its dual have equal order.
    CHECK(rows_[row.dual].pi1_order == row.pi1_order);
  }
  // Self-dual polygons: the four with 6 boundary points.
  CHECK(self_dual == 4);
  for (const auto& row : rows_) CHECK((row.boundary_points == 6) == row.self_dual);
}

TEST_CASE("unsupported dimensions") {
  CHECK(kind_of([] { enumerate_reflexive(3); }) == ErrorKind::UnsupportedDimension);
  CHECK(kind_of([] { enumerate_reflexive(4); }) == ErrorKind::UnsupportedDimension);
  CHECK(kind_of([] { enumerate_reflexive(1); }) == ErrorKind::UnsupportedDimension);
}

TEST_CASE("classifying an explicit list") {
  const IntMatrix shear = matrix({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  const std::vector<LatticePolytope> list{hull(quintic()), hull(quintic_dual()), hull(testing_support::apply(quintic(), shear))};
  const auto r = classify_polytopes(list);
  CHECK(r.classes.size() == 2);
  CHECK(r.classes[0].dual == 1);
  CHECK(kind_of([] { classify_polytopes(std::vector<LatticePolytope>{hull(quintic())}); }) == ErrorKind::InvariantViolation);
}
