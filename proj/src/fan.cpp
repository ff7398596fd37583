#include "reflexive/fan.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "reflexive/error.hpp"

namespace reflexive {

namespace {

// Coordinates of vectors in a basis of the saturation of their span.
struct SpanCoordinates {
  IntMatrix basis;  // d x n
  std::vector<IntVector> coords;
};

SpanCoordinates span_coordinates(const std::vector<IntVector>& vs) {
  SpanCoordinates out;
  out.basis = saturated_basis(IntMatrix::from_rows(vs));
  for (const auto& v : vs) {
    auto c = solve_integral(out.basis, v);
    if (!c) fail(ErrorKind::InvariantViolation, "vector outside its saturated span");
    out.coords.push_back(std::move(*c));
  }
  return out;
}

void expect(bool cond, const char* what) {
  if (!cond) fail(ErrorKind::InvariantViolation, what);
}

// Facets of the cone spanned by the given rays, as sorted subsets of `ids`.
std::vector<std::vector<std::size_t>> cone_facets(const std::vector<std::size_t>& ids,
                                                  const std::vector<IntVector>& rays) {
  std::vector<IntVector> vs;
  for (auto i : ids) vs.push_back(rays[i]);
  const std::size_t d = rank(IntMatrix::from_rows(vs));
  std::vector<std::vector<std::size_t>> out;
  if (d <= 1) return out;
  if (ids.size() == d) {
    for (std::size_t skip = 0; skip < ids.size(); ++skip) {
      std::vector<std::size_t> f;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if (k != skip) f.push_back(ids[k]);
      out.push_back(std::move(f));
    }
    return out;
  }
  const auto sc = span_coordinates(vs);
  for (const auto& u : cone_extreme_rays(sc.coords, d)) {
    std::vector<std::size_t> f;
    for (std::size_t k = 0; k < ids.size(); ++k)
      if (dot(u, sc.coords[k]) == 0) f.push_back(ids[k]);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Inner facet normals of a full-dimensional cone paired with their tight ray sets.
std::vector<std::pair<IntVector, std::vector<std::size_t>>> full_cone_facets(
    const std::vector<std::size_t>& ids, const std::vector<IntVector>& rays, std::size_t n) {
  std::vector<IntVector> vs;
  for (auto i : ids) vs.push_back(rays[i]);
  std::vector<std::pair<IntVector, std::vector<std::size_t>>> out;
  for (auto& u : cone_extreme_rays(vs, n)) {
    std::vector<std::size_t> f;
    for (auto i : ids)
      if (dot(u, rays[i]) == 0) f.push_back(i);
    out.emplace_back(std::move(u), std::move(f));
  }
  return out;
}

}  // namespace

Cone Cone::from_rays(std::vector<IntVector> rays) {
  Cone c;
  for (auto& r : rays) {
    if (content(r) == 0) fail(ErrorKind::InvariantViolation, "zero ray generator");
    c.rays.push_back(primitive_part(r));
  }
  std::sort(c.rays.begin(), c.rays.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); });
  c.rays.erase(std::unique(c.rays.begin(), c.rays.end()), c.rays.end());
  c.dim = c.rays.empty() ? 0 : rank(IntMatrix::from_rows(c.rays));
  return c;
}

SingularityReport classify_cone(const Cone& c) {
  if (c.rays.empty()) fail(ErrorKind::InvariantViolation, "cone without rays");
  SingularityReport rep;
  const auto sc = span_coordinates(c.rays);
  const std::size_t d = sc.basis.rows();
  rep.dim = d;

  const auto dual = cone_extreme_rays(sc.coords, d);
  IntVector interior(d);
  for (const auto& u : dual)
    for (std::size_t j = 0; j < d; ++j) interior[j] += u[j];
  for (const auto& r : sc.coords)
    if (dot(interior, r) <= 0) fail(ErrorKind::NotStronglyConvex, "cone contains a line");

  std::vector<IntVector> ext;  // span coordinates
  for (std::size_t i = 0; i < sc.coords.size(); ++i) {
    std::vector<IntVector> tight;
    for (const auto& u : dual)
      if (dot(u, sc.coords[i]) == 0) tight.push_back(u);
    const std::size_t r = tight.empty() ? 0 : rank(IntMatrix::from_rows(tight));
    if (r + 1 == d) {
      ext.push_back(sc.coords[i]);
      rep.rays.push_back(c.rays[i]);
    }
  }
  rep.simplicial = ext.size() == d;

  const IntMatrix cols = IntMatrix::from_rows(ext).transposed();  // d x m
  const IntVector ones(ext.size(), Integer(1));
  const auto k = solve_rational(cols, ones);
  rep.q_gorenstein = k.has_value();
  if (rep.q_gorenstein) {
    rep.gorenstein = std::all_of(k->begin(), k->end(), [](const Rational& x) { return x.get_den() == 1; });
    if (rep.gorenstein) {
      IntVector kk;
      for (const auto& x : *k) kk.push_back(x.get_num());
      auto ambient = solve_integral(sc.basis.transposed(), kk);
      expect(ambient.has_value(), "support element does not lift");
      rep.k_sigma = std::move(*ambient);
    }
    std::vector<IntVector> slab{IntVector(d)};
    slab.insert(slab.end(), ext.begin(), ext.end());
    const auto q = LatticePolytope::hull(slab);
    const auto& pts = q.lattice_points().points;
    bool below = false;
    for (const auto& y : pts) {
      if (std::all_of(y.begin(), y.end(), [](const Integer& x) { return x == 0; })) continue;
      Rational h = 0;
      for (std::size_t j = 0; j < d; ++j) h += (*k)[j] * y[j];
      if (h < 1) below = true;
    }
    rep.canonical = !below;
    rep.terminal = !below && pts.size() == ext.size() + 1;
  }
  rep.smooth = rep.simplicial && abs(determinant(IntMatrix::from_rows(ext))) == 1;

  expect(!rep.smooth || (rep.terminal && rep.gorenstein && rep.simplicial), "smooth cone that is not terminal");
  expect(!rep.gorenstein || rep.canonical, "Gorenstein cone that is not canonical");
  expect(!rep.terminal || rep.canonical, "terminal cone that is not canonical");
  if (d <= 3 && rep.gorenstein && rep.simplicial && rep.terminal)
    expect(rep.smooth, "elementary simplex of dimension <= 2 that is not regular");
  return rep;
}

// ---------------------------------------------------------------------------
// fans

bool check_complete(std::size_t rank, const std::vector<IntVector>& rays,
                    const std::vector<std::vector<std::size_t>>& maximal) {
  if (maximal.empty()) return false;
  std::vector<std::vector<IntVector>> normals(maximal.size());
  std::map<std::vector<std::size_t>, std::vector<IntVector>> walls;
  for (std::size_t c = 0; c < maximal.size(); ++c) {
    std::vector<IntVector> vs;
    for (auto i : maximal[c]) vs.push_back(rays[i]);
    if (reflexive::rank(IntMatrix::from_rows(vs)) != rank) return false;
    for (auto& [u, f] : full_cone_facets(maximal[c], rays, rank)) {
      normals[c].push_back(u);
      walls[f].push_back(std::move(u));
    }
  }
  for (const auto& [f, us] : walls) {
    if (us.size() != 2) return false;
    for (std::size_t j = 0; j < rank; ++j)
      if (us[0][j] != -us[1][j]) return false;
  }
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> coord(-1000, 1000);
  for (int sample = 0, tries = 0; sample < 8 && tries < 200; ++tries) {
    IntVector x(rank);
    for (auto& v : x) v = coord(rng);
    bool on_wall = false;
    std::size_t hits = 0;
    for (const auto& ns : normals) {
      bool inside = true;
      for (const auto& u : ns) {
        const Integer s = dot(u, x);
        if (s == 0) on_wall = true;
        if (s <= 0) inside = false;
      }
      if (inside) ++hits;
    }
    if (on_wall) continue;
    if (hits != 1) return false;
    ++sample;
  }
  return true;
}

Fan Fan::from_maximal_cones(std::size_t rank, std::vector<IntVector> rays,
                            std::vector<std::vector<std::size_t>> maximal) {
  Fan f;
  f.rank_ = rank;
  for (auto& r : rays)
    if (!is_primitive(r)) fail(ErrorKind::InvariantViolation, "fan ray " + to_string(r) + " is not primitive");
  f.rays_ = std::move(rays);
  for (auto& m : maximal) std::sort(m.begin(), m.end());
  std::sort(maximal.begin(), maximal.end());

  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> stack;
  for (const auto& m : maximal)
    if (seen.insert(m).second) stack.push_back(m);
  while (!stack.empty()) {
    auto s = std::move(stack.back());
    stack.pop_back();
    for (auto& g : cone_facets(s, f.rays_))
      if (seen.insert(g).second) stack.push_back(std::move(g));
  }
  for (const auto& s : seen) {
    std::vector<IntVector> vs;
    for (auto i : s) vs.push_back(f.rays_[i]);
    f.cones_.push_back(FanCone{s, reflexive::rank(IntMatrix::from_rows(vs))});
  }
  std::stable_sort(f.cones_.begin(), f.cones_.end(),
                   [](const FanCone& a, const FanCone& b) { return a.dim < b.dim; });
  f.by_dim_.assign(rank + 1, {});
  for (std::size_t i = 0; i < f.cones_.size(); ++i) f.by_dim_[f.cones_[i].dim].push_back(i);
  for (std::size_t i = 0; i < f.cones_.size(); ++i)
    if (std::binary_search(maximal.begin(), maximal.end(), f.cones_[i].rays)) f.maximal_.push_back(i);
  f.complete_ = check_complete(rank, f.rays_, maximal);
  return f;
}

std::vector<std::size_t> Fan::maximal_cones() const { return maximal_; }

Cone Fan::cone(std::size_t index) const {
  Cone c;
  for (auto i : cones_.at(index).rays) c.rays.push_back(rays_[i]);
  c.dim = cones_[index].dim;
  return c;
}

Fan face_fan(const LatticePolytope& p) {
  if (!p.has_interior_origin()) fail(ErrorKind::OriginNotInterior, "face fan needs the origin in the interior");
  std::vector<IntVector> rays;
  for (const auto& v : p.vertices()) rays.push_back(primitive_part(v));
  std::vector<std::vector<std::size_t>> maximal;
  const auto& lattice = p.face_lattice();
  for (auto id : lattice.of_dim(p.dim() - 1)) maximal.push_back(lattice.face(id).vertices);
  return Fan::from_maximal_cones(p.dim(), std::move(rays), std::move(maximal));
}

Fan normal_fan(const LatticePolytope& p) {
  std::vector<IntVector> rays;
  for (const auto& f : p.facets()) rays.push_back(f.normal);
  std::vector<std::vector<std::size_t>> maximal;
  const auto& lattice = p.face_lattice();
  for (auto id : lattice.of_dim(0)) maximal.push_back(lattice.face(id).facets);
  return Fan::from_maximal_cones(p.dim(), std::move(rays), std::move(maximal));
}

std::vector<SingularityReport> classify_fan(const Fan& f, kernels::Mode mode) {
  const auto ids = f.maximal_cones();
  std::vector<SingularityReport> out(ids.size());
  const auto count = static_cast<std::int64_t>(ids.size());
  if (mode == kernels::Mode::parallel) {
    std::vector<std::exception_ptr> errors(ids.size());
    const int cap = kernels::thread_cap();
#pragma omp parallel for schedule(dynamic) num_threads(cap > 0 ? cap : omp_get_max_threads())
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        out[i] = classify_cone(f.cone(ids[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::int64_t i = 0; i < count; ++i) out[i] = classify_cone(f.cone(ids[i]));
  }
  return out;
}

AbelianQuotient fan_fundamental_group(const Fan& f) {
  if (!f.complete()) fail(ErrorKind::FanNotComplete, "fan is not complete");
  return lattice_quotient(f.rays(), f.rank());
}

bool is_fano_gorenstein(const Fan& f) {
  if (!f.complete()) fail(ErrorKind::FanNotComplete, "fan is not complete");
  const auto ids = f.maximal_cones();
  const auto reports = classify_fan(f);
  for (std::size_t c = 0; c < ids.size(); ++c) {
    const auto& rep = reports[c];
    if (!rep.gorenstein) fail(ErrorKind::NotGorenstein, "maximal cone " + std::to_string(c) + " has no integral k");
    const auto& members = f.cones()[ids[c]].rays;
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
      if (std::binary_search(members.begin(), members.end(), r)) continue;
      if (dot(*rep.k_sigma, f.rays()[r]) >= 1) return false;
    }
  }
  return true;
}

}  // namespace reflexive
