#include "reflexive/classify.hpp"

#include <algorithm>
#include <cstdint>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "reflexive/error.hpp"
#include "reflexive/pairs.hpp"

namespace reflexive {

namespace {

using P2 = std::array<std::int64_t, 2>;

std::int64_t cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }
std::int64_t cross(const P2& o, const P2& a, const P2& b) {
  return cross(P2{a[0] - o[0], a[1] - o[1]}, P2{b[0] - o[0], b[1] - o[1]});
}
std::int64_t edge_points(const P2& a, const P2& b) { return std::gcd(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

// Interior lattice points of a convex polygon with vertices in counterclockwise order (Pick).
std::int64_t pick_interior(const std::vector<P2>& poly) {
  std::int64_t twice_area = 0, boundary = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice_area += cross(a, b);
    boundary += edge_points(a, b);
  }
  return (std::abs(twice_area) - boundary + 2) / 2;
}

IntVector to_int(const P2& p) { return {Integer(static_cast<long>(p[0])), Integer(static_cast<long>(p[1]))}; }

std::vector<IntVector> box_points(std::size_t dim, long b) {
  std::vector<IntVector> out;
  IntVector x(dim, Integer(-b));
  while (true) {
    out.push_back(x);
    std::size_t i = dim;
    while (i > 0 && x[i - 1] == b) x[--i] = -b;
    if (i == 0) return out;
    ++x[i - 1];
  }
}

// Polygons with the origin as the only interior point that every reflexive polygon
// in the box contains: triangles around the origin and crosses conv(+-u, +-v).
std::vector<std::vector<IntVector>> polygon_seeds(long b) {
  std::vector<P2> pts;
  for (long x = -b; x <= b; ++x)
    for (long y = -b; y <= b; ++y)
      if (x != 0 || y != 0) pts.push_back({x, y});
  const P2 origin{0, 0};
  std::vector<std::vector<IntVector>> seeds;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        P2 a = pts[i], c = pts[j], e = pts[k];
        const auto o = cross(a, c, e);
        if (o == 0) continue;
        if (o < 0) std::swap(c, e);
        if (cross(a, c, origin) <= 0 || cross(c, e, origin) <= 0 || cross(e, a, origin) <= 0) continue;
        if (pick_interior({a, c, e}) != 1) continue;
        seeds.push_back({to_int(a), to_int(c), to_int(e)});
      }
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      P2 u = pts[i], v = pts[j];
      if (std::gcd(std::abs(u[0]), std::abs(u[1])) != 1 || std::gcd(std::abs(v[0]), std::abs(v[1])) != 1) continue;
      const auto det = cross(u, v);
      if (det == 0) continue;
      if (det < 0) std::swap(u, v);
      const P2 mu{-u[0], -u[1]}, mv{-v[0], -v[1]};
      if (pick_interior({u, v, mu, mv}) != 1) continue;
      seeds.push_back({to_int(u), to_int(v), to_int(mu), to_int(mv)});
    }
  return seeds;
}

// Simplices with lattice points of [-1, 1]^n as vertices, the origin as their only interior point.
std::vector<std::vector<IntVector>> simplex_seeds(std::size_t dim) {
  std::vector<IntVector> pts;
  for (auto& p : box_points(dim, 1))
    if (std::any_of(p.begin(), p.end(), [](const Integer& x) { return x != 0; })) pts.push_back(p);
  std::vector<std::vector<IntVector>> seeds;
  std::vector<std::size_t> idx(dim + 1);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == dim + 1) {
      std::vector<IntVector> vs;
      for (auto i : idx) vs.push_back(pts[i]);
      if (affine_rank(vs) != dim) return;
      const auto p = hull(vs);
      if (p.has_interior_origin() && p.lattice_points().interior == 1) seeds.push_back(vs);
      return;
    }
    for (std::size_t i = from; i < pts.size(); ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return seeds;
}

ReflexiveClass make_class(const IntMatrix& nf) {
  ReflexiveClass c;
  c.normal_form = nf;
  c.polytope = hull(normal_form_vertices(nf));
  const auto& lp = c.polytope.lattice_points();
  c.points = lp.count();
  c.interior_points = lp.interior;
  c.boundary_points = c.points - c.interior_points;
  c.volume = c.polytope.volume();
  return c;
}

ClassificationResult finish(std::size_t dim, const std::map<IntMatrix, LatticePolytope, bool (*)(const IntMatrix&, const IntMatrix&)>& found) {
  ClassificationResult r;
  r.dim = dim;
  std::map<IntMatrix, std::size_t, bool (*)(const IntMatrix&, const IntMatrix&)> index(matrix_less);
  for (const auto& [nf, p] : found) {
    index.emplace(nf, r.classes.size());
    r.classes.push_back(make_class(nf));
  }
  for (auto& c : r.classes) {
    const auto it = index.find(normal_form(reflexive_dual(c.polytope)));
    if (it == index.end()) fail(ErrorKind::InvariantViolation, "dual of a class is missing from the list");
    c.dual = it->second;
  }
  for (std::size_t i = 0; i < r.classes.size(); ++i)
    if (r.classes[r.classes[i].dual].dual != i) fail(ErrorKind::InvariantViolation, "duality is not an involution");
  return r;
}

}  // namespace

ClassificationResult classify_polytopes(const std::vector<LatticePolytope>& polytopes) {
  std::map<IntMatrix, LatticePolytope, bool (*)(const IntMatrix&, const IntMatrix&)> found(matrix_less);
  std::size_t dim = 0;
  for (const auto& p : polytopes) {
    const auto check = is_reflexive(p);
    if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
    dim = p.dim();
    found.emplace(normal_form(p), p);
  }
  return finish(dim, found);
}

ClassificationResult enumerate_reflexive(std::size_t dim, const EnumerateOptions& options) {
  if (dim != 2 && !(dim == 3 && options.allow_long_running))
    fail(ErrorKind::UnsupportedDimension,
         dim == 3 ? "dimension 3 requires the long-running option" : "dimension " + std::to_string(dim));
  const long b = options.box > 0 ? options.box : (dim == 2 ? 4 : 2);
  const auto seeds = dim == 2 ? polygon_seeds(b) : simplex_seeds(dim);
  const auto candidates = box_points(dim, b);

  // Breadth-first growth; one representative per normal form is expanded.
  std::map<IntMatrix, LatticePolytope, bool (*)(const IntMatrix&, const IntMatrix&)> found(matrix_less);
  std::deque<LatticePolytope> queue;
  for (const auto& s : seeds) {
    auto p = hull(s);
    if (found.emplace(normal_form(p), p).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    const auto p = std::move(queue.front());
    queue.pop_front();
    for (const auto& x : candidates) {
      if (p.contains(x)) continue;
      auto pts = p.vertices();
      pts.push_back(x);
      auto q = hull(pts);
      if (q.lattice_points().interior != 1) continue;
      if (found.emplace(normal_form(q), q).second) queue.push_back(q);
    }
  }
  for (const auto& [nf, p] : found)
    if (!is_reflexive(p).reflexive) fail(ErrorKind::InvariantViolation, "enumerated polytope is not reflexive");
  return finish(dim, found);
}

std::vector<CatalogRow> catalog_invariants(const ClassificationResult& result) {
  std::vector<CatalogRow> rows;
  for (std::size_t i = 0; i < result.classes.size(); ++i) {
    const auto& c = result.classes[i];
    CatalogRow row;
    row.index = i;
    row.points = c.points;
    row.interior_points = c.interior_points;
    row.boundary_points = c.boundary_points;
    row.volume = c.volume;
    row.facet_volume_sum = 0;
    for (auto id : c.polytope.face_lattice().of_dim(c.polytope.dim() - 1)) row.facet_volume_sum += c.polytope.face_volume(id);
    row.pi1_order = polytope_fundamental_group(c.polytope).order;
    row.dual = c.dual;
    row.self_dual = c.dual == i;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace reflexive
