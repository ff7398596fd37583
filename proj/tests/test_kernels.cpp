#include <doctest.h>

#include <random>

#include "reflexive/fan.hpp"
#include "reflexive/kernels.hpp"
#include "reflexive/polytope.hpp"
#include "reflexive/triangulate.hpp"
#include "support.hpp"

using namespace reflexive;
using namespace testing_support;
using kernels::Mode;

namespace {

// Restores the global kernel settings on scope exit.
struct ModeGuard {
  Mode mode = kernels::default_mode();
  int cap = kernels::thread_cap();
  ~ModeGuard() {
    kernels::set_default_mode(mode);
    kernels::set_thread_cap(cap);
  }
};

std::vector<LatticePolytope> random_polytopes(std::size_t n, int count, int bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-bound, bound);
  std::vector<LatticePolytope> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<IntVector> pts;
    for (std::size_t k = 0; k < n + 4; ++k) {
      IntVector v(n);
      for (auto& x : v) x = coord(rng);
      pts.push_back(v);
    }
    if (affine_rank(pts) == n) out.push_back(hull(pts));
  }
  return out;
}

bool same_reports(const std::vector<SingularityReport>& a, const std::vector<SingularityReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.rays != y.rays || x.simplicial != y.simplicial || x.gorenstein != y.gorenstein ||
        x.terminal != y.terminal || x.canonical != y.canonical || x.smooth != y.smooth || x.k_sigma != y.k_sigma)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lattice point enumeration: serial, parallel and bounding box agree") {
  ModeGuard guard;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& p : random_polytopes(n, n <= 3 ? 20 : 6, n <= 3 ? 5 : 2, 100 + n)) {
      const auto ref = kernels::enumerate_lattice_points_bbox(p);
      for (int cap : {0, 1, 3}) {
        kernels::set_thread_cap(cap);
        CHECK(kernels::enumerate_lattice_points(p, Mode::serial) == ref);
        CHECK(kernels::enumerate_lattice_points(p, Mode::parallel) == ref);
      }
    }
  }
  const auto q = hull(quintic());
  CHECK(kernels::enumerate_lattice_points(q, Mode::parallel) == kernels::enumerate_lattice_points_bbox(q));
}

TEST_CASE("tight facet sets agree") {
  for (const auto& pts : {quintic(), cube(4), cross_polytope(4)}) {
    const auto p = hull(pts);
    const auto points = kernels::enumerate_lattice_points(p, Mode::serial);
    const auto serial = kernels::tight_facet_sets(points, p.facets(), Mode::serial);
    CHECK(kernels::tight_facet_sets(points, p.facets(), Mode::parallel) == serial);
    // Direct check of the serial reference.
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<std::size_t> want;
      for (std::size_t f = 0; f < p.facets().size(); ++f)
        if (dot(points[i], p.facets()[f].normal) == -p.facets()[f].offset) want.push_back(f);
      CHECK(serial[i] == want);
    }
  }
}

TEST_CASE("cone classification agrees across modes") {
  ModeGuard guard;
  for (const auto& pts : {quintic(), cube(3), cross_polytope(4)}) {
    const auto fan = mpcp_fan(hull(pts)).fan;
    const auto serial = classify_fan(fan, Mode::serial);
    for (int cap : {0, 1, 2}) {
      kernels::set_thread_cap(cap);
      CHECK(same_reports(classify_fan(fan, Mode::parallel), serial));
    }
  }
}

TEST_CASE("triangulation is independent of the mode") {
  ModeGuard guard;
  const auto cfg = PointConfig::all_lattice_points(hull(quintic()));
  kernels::set_default_mode(Mode::serial);
  const auto a = regular_fine_triangulation(cfg);
  kernels::set_default_mode(Mode::parallel);
  const auto b = regular_fine_triangulation(cfg);
  CHECK(a.simplices == b.simplices);
  CHECK(a.heights == b.heights);
}
