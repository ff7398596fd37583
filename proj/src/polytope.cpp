#include "reflexive/polytope.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <functional>
#include <mutex>
#include <set>

#include "reflexive/error.hpp"
#include "reflexive/kernels.hpp"

namespace reflexive {

using Bits = boost::dynamic_bitset<>;

struct LatticePolytope::Cache {
  std::once_flag faces_once, points_once, volume_once, nf_once;
  FaceLattice faces;
  LatticePoints points;
  Integer volume;
  IntMatrix nf;
};

namespace {

std::vector<std::size_t> bits_to_indices(const Bits& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

bool facet_less(const Facet& a, const Facet& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

Integer slack(const Facet& f, std::span<const Integer> x) { return dot(x, f.normal) + f.offset; }

// Incremental row echelon basis over Q, used to pick independent constraints.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  bool add(std::span<const Integer> v) {
    RatVector r(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (r[p] == 0) continue;
      const Rational f = r[p] / rows_[k][p];
      for (std::size_t j = 0; j < dim_; ++j) r[j] -= f * rows_[k][j];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
    if (it == r.end()) return false;
    pivots_.push_back(static_cast<std::size_t>(it - r.begin()));
    rows_.push_back(std::move(r));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<RatVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

// ---------------------------------------------------------------------------
// double description

std::vector<IntVector> cone_extreme_rays(std::span<const IntVector> constraints, std::size_t dim) {
  const std::size_t m = constraints.size();
  std::vector<std::size_t> basis;
  {
    Echelon ech(dim);
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i)
      if (ech.add(constraints[i])) basis.push_back(i);
  }
  if (basis.size() < dim) fail(ErrorKind::InvariantViolation, "cone constraints do not span the space");

  struct Ray {
    IntVector v;
    Bits zero;
  };
  std::vector<Ray> rays;
  {
    std::vector<IntVector> a0rows;
    for (auto i : basis) a0rows.push_back(constraints[i]);
    const ScaledInverse inv = scaled_inverse(IntMatrix::from_rows(a0rows));
    for (std::size_t j = 0; j < dim; ++j) {
      Ray r{primitive_part(inv.adjugate.col(j)), Bits(m)};
      for (std::size_t k = 0; k < dim; ++k)
        if (k != j) r.zero.set(basis[k]);
      rays.push_back(std::move(r));
    }
  }
  Bits in_basis(m);
  for (auto i : basis) in_basis.set(i);

  for (std::size_t c = 0; c < m; ++c) {
    if (in_basis.test(c)) continue;
    const auto& a = constraints[c];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r].v);
      if (val[r] > 0) pos.push_back(r);
      else if (val[r] < 0) neg.push_back(r);
      else zer.push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zer) rays[r].zero.set(c);
      continue;
    }
    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size());
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zer) {
      next.push_back(rays[r]);
      next.back().zero.set(c);
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        IntVector v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
        common.set(c);
        next.push_back(Ray{primitive_part(v), std::move(common)});
      }
    rays = std::move(next);
  }
  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end(), [](const IntVector& x, const IntVector& y) { return lex_less(x, y); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// construction

LatticePolytope LatticePolytope::hull(std::span<const IntVector> points) {
  if (points.empty()) fail(ErrorKind::NotFullDimensional, "no points");
  const std::size_t n = points.front().size();
  if (n == 0) fail(ErrorKind::NotFullDimensional, "points of dimension 0");
  std::vector<IntVector> pts(points.begin(), points.end());
  for (const auto& p : pts)
    if (p.size() != n) fail(ErrorKind::InvariantViolation, "points of mixed dimension");
  std::sort(pts.begin(), pts.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t ar = affine_rank(pts);
  if (ar != n)
    fail(ErrorKind::NotFullDimensional,
         "affine span has dimension " + std::to_string(ar) + " in rank " + std::to_string(n));

  std::vector<IntVector> homog;
  homog.reserve(pts.size());
  for (const auto& p : pts) {
    IntVector h(p);
    h.emplace_back(1);
    homog.push_back(std::move(h));
  }
  std::vector<Facet> facets;
  for (auto& ray : cone_extreme_rays(homog, n + 1)) {
    IntVector normal(ray.begin(), ray.begin() + static_cast<std::ptrdiff_t>(n));
    if (std::all_of(normal.begin(), normal.end(), [](const Integer& x) { return x == 0; })) continue;
    facets.push_back(Facet{std::move(normal), ray[n]});
  }
  std::vector<IntVector> vertices;
  for (const auto& p : pts) {
    std::vector<IntVector> tight;
    for (const auto& f : facets)
      if (slack(f, p) == 0) tight.push_back(f.normal);
    if (tight.size() >= n && rank(IntMatrix::from_rows(tight)) == n) vertices.push_back(p);
  }
  return from_representations(std::move(vertices), std::move(facets));
}

LatticePolytope LatticePolytope::from_representations(std::vector<IntVector> vertices, std::vector<Facet> facets) {
  if (vertices.empty()) fail(ErrorKind::NotFullDimensional, "no vertices");
  LatticePolytope p;
  p.dim_ = vertices.front().size();
  std::sort(vertices.begin(), vertices.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); });
  std::sort(facets.begin(), facets.end(), facet_less);
  const std::size_t n = p.dim_;

  // V/H cross-check.
  std::vector<std::vector<IntVector>> on_facet(facets.size());
  std::vector<std::size_t> facets_at_vertex(vertices.size(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < facets.size(); ++j) {
      const Integer s = slack(facets[j], vertices[i]);
      if (s < 0) fail(ErrorKind::InvariantViolation, "vertex " + to_string(vertices[i]) + " violates a facet");
      if (s == 0) {
        on_facet[j].push_back(vertices[i]);
        ++facets_at_vertex[i];
      }
    }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (facets_at_vertex[i] < n) fail(ErrorKind::InvariantViolation, "vertex on fewer than n facets");
  for (std::size_t j = 0; j < facets.size(); ++j) {
    if (!is_primitive(facets[j].normal)) fail(ErrorKind::NonPrimitiveNormal, "facet normal is not primitive");
    if (affine_rank(on_facet[j]) + 1 != n) fail(ErrorKind::InvariantViolation, "facet is not (n-1)-dimensional");
  }
  p.vertices_ = std::move(vertices);
  p.facets_ = std::move(facets);
  p.cache_ = std::make_shared<Cache>();
  return p;
}

LatticePolytope hull(std::span<const IntVector> points) { return LatticePolytope::hull(points); }

bool LatticePolytope::contains(std::span<const Integer> x) const {
  return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return slack(f, x) >= 0; });
}

bool LatticePolytope::has_interior_origin() const {
  return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.offset > 0; });
}

std::vector<std::size_t> LatticePolytope::tight_facets(std::span<const Integer> x) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < facets_.size(); ++j)
    if (slack(facets_[j], x) == 0) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------------------
// face lattice

FaceLattice::FaceLattice(std::vector<Face> faces, std::size_t dim) : faces_(std::move(faces)), dim_(dim) {
  by_dim_.assign(dim + 1, {});
  for (const auto& f : faces_) {
    by_dim_.at(f.dim).push_back(f.id);
    by_vertices_.emplace(f.vertices, f.id);
    by_facets_.emplace(f.facets, f.id);
  }
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < dim_; ++k) out.push_back(by_dim_[k].size());
  return out;
}

std::optional<std::size_t> FaceLattice::find_by_vertices(const std::vector<std::size_t>& vertices) const {
  auto it = by_vertices_.find(vertices);
  if (it == by_vertices_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FaceLattice::find_by_facets(const std::vector<std::size_t>& facets) const {
  auto it = by_facets_.find(facets);
  if (it == by_facets_.end()) return std::nullopt;
  return it->second;
}

namespace {

FaceLattice build_face_lattice(const std::vector<IntVector>& vertices, const std::vector<Facet>& facets,
                               std::size_t n) {
  const std::size_t nv = vertices.size(), nf = facets.size();
  std::vector<Bits> facet_vertices(nf, Bits(nv));
  for (std::size_t j = 0; j < nf; ++j)
    for (std::size_t i = 0; i < nv; ++i)
      if (slack(facets[j], vertices[i]) == 0) facet_vertices[j].set(i);

  struct Raw {
    std::size_t dim;
    Bits verts;
    Bits tight;
    std::vector<std::size_t> children;
  };
  std::vector<Raw> raw;
  std::map<Bits, std::size_t> index;
  auto facets_of = [&](const Bits& vs) {
    Bits t(nf);
    for (std::size_t j = 0; j < nf; ++j)
      if (vs.is_subset_of(facet_vertices[j])) t.set(j);
    return t;
  };

  Bits all(nv);
  all.set();
  raw.push_back(Raw{n, all, Bits(nf), {}});
  index.emplace(all, 0);
  std::vector<std::size_t> level;
  for (std::size_t j = 0; j < nf; ++j) {
    Bits t(nf);
    t.set(j);
    raw.push_back(Raw{n - 1, facet_vertices[j], t, {}});
    index.emplace(facet_vertices[j], raw.size() - 1);
    raw[0].children.push_back(raw.size() - 1);
    level.push_back(raw.size() - 1);
  }
  for (std::size_t k = n - 1; k >= 1; --k) {
    std::vector<std::size_t> next;
    for (auto fid : level) {
      std::vector<Bits> cands;
      for (std::size_t j = 0; j < nf; ++j) {
        if (raw[fid].tight.test(j)) continue;
        Bits c = raw[fid].verts & facet_vertices[j];
        if (c.none()) continue;
        if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(std::move(c));
      }
      for (std::size_t a = 0; a < cands.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < cands.size() && maximal; ++b)
          if (a != b && cands[a].is_proper_subset_of(cands[b])) maximal = false;
        if (!maximal) continue;
        auto it = index.find(cands[a]);
        std::size_t cid;
        if (it == index.end()) {
          raw.push_back(Raw{k - 1, cands[a], facets_of(cands[a]), {}});
          cid = raw.size() - 1;
          index.emplace(cands[a], cid);
          next.push_back(cid);
        } else {
          cid = it->second;
        }
        raw[fid].children.push_back(cid);
      }
    }
    level = std::move(next);
  }

  // Renumber by (dim, vertex list) for deterministic ids.
  std::vector<std::size_t> order(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::vector<std::size_t>> vlists(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) vlists[i] = bits_to_indices(raw[i].verts);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (raw[a].dim != raw[b].dim) return raw[a].dim < raw[b].dim;
    return vlists[a] < vlists[b];
  });
  std::vector<std::size_t> new_id(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = i;
  std::vector<Face> faces(raw.size());
  for (std::size_t old = 0; old < raw.size(); ++old) {
    Face& f = faces[new_id[old]];
    f.id = new_id[old];
    f.dim = raw[old].dim;
    f.vertices = vlists[old];
    f.facets = bits_to_indices(raw[old].tight);
    for (auto c : raw[old].children) f.children.push_back(new_id[c]);
    std::sort(f.children.begin(), f.children.end());
  }
  for (const auto& f : faces)
    for (auto c : f.children) faces[c].parents.push_back(f.id);
  for (auto& f : faces) std::sort(f.parents.begin(), f.parents.end());
  return FaceLattice(std::move(faces), n);
}

}  // namespace

const FaceLattice& LatticePolytope::face_lattice() const {
  std::call_once(cache_->faces_once, [&] { cache_->faces = build_face_lattice(vertices_, facets_, dim_); });
  return cache_->faces;
}

const LatticePoints& LatticePolytope::lattice_points() const {
  std::call_once(cache_->points_once, [&] {
    const FaceLattice& lattice = face_lattice();
    const auto mode = kernels::default_mode();
    LatticePoints lp;
    lp.points = kernels::enumerate_lattice_points(*this, mode);
    const auto tight = kernels::tight_facet_sets(lp.points, facets_, mode);
    lp.face_interior.assign(lattice.faces().size(), 0);
    lp.carrier.reserve(lp.points.size());
    for (const auto& t : tight) {
      const auto id = lattice.find_by_facets(t);
      if (!id) fail(ErrorKind::InvariantViolation, "lattice point tight set matches no face");
      lp.carrier.push_back(*id);
      ++lp.face_interior[*id];
      if (t.empty()) ++lp.interior;
    }
    cache_->points = std::move(lp);
  });
  return cache_->points;
}

std::vector<IntVector> LatticePolytope::face_points(std::size_t face_id) const {
  const auto& lp = lattice_points();
  const auto& lattice = face_lattice();
  const auto& need = lattice.face(face_id).facets;
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < lp.points.size(); ++i) {
    const auto& have = lattice.face(lp.carrier[i]).facets;
    if (std::includes(have.begin(), have.end(), need.begin(), need.end())) out.push_back(lp.points[i]);
  }
  return out;
}

std::size_t LatticePolytope::face_point_count(std::size_t face_id) const {
  const auto& lp = lattice_points();
  const auto& lattice = face_lattice();
  const auto& need = lattice.face(face_id).facets;
  std::size_t count = 0;
  for (std::size_t id = 0; id < lp.face_interior.size(); ++id) {
    const auto& have = lattice.face(id).facets;
    if (std::includes(have.begin(), have.end(), need.begin(), need.end())) count += lp.face_interior[id];
  }
  return count;
}

// ---------------------------------------------------------------------------
// volumes

Integer simplex_volume(std::span<const IntVector> vertices) {
  if (vertices.size() <= 1) return 1;
  const std::size_t k = vertices.size() - 1;
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < vertices.size(); ++i) edges.push_back(subtract(vertices[i], vertices[0]));
  const IntMatrix e = IntMatrix::from_rows(edges);
  if (k == e.cols()) return abs(determinant(e));
  const SmithForm s = smith_normal_form(e);
  if (s.rank < k) return 0;
  Integer v = 1;
  for (std::size_t i = 0; i < k; ++i) v *= s.d(i, i);
  return v;
}

std::vector<std::vector<std::size_t>> LatticePolytope::pulling_triangulation(std::size_t face_id) const {
  const FaceLattice& lattice = face_lattice();
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  std::function<const std::vector<std::vector<std::size_t>>&(std::size_t)> tri =
      [&](std::size_t id) -> const std::vector<std::vector<std::size_t>>& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Face& f = lattice.face(id);
    std::vector<std::vector<std::size_t>> out;
    if (f.dim == 0) {
      out.push_back({f.vertices.front()});
    } else {
      const std::size_t apex = f.vertices.front();
      for (auto c : f.children) {
        const Face& g = lattice.face(c);
        if (std::binary_search(g.vertices.begin(), g.vertices.end(), apex)) continue;
        for (const auto& s : tri(c)) {
          std::vector<std::size_t> t{apex};
          t.insert(t.end(), s.begin(), s.end());
          out.push_back(std::move(t));
        }
      }
    }
    return memo.emplace(id, std::move(out)).first->second;
  };
  return tri(face_id);
}

Integer LatticePolytope::face_volume(std::size_t face_id) const {
  Integer total = 0;
  for (const auto& s : pulling_triangulation(face_id)) {
    std::vector<IntVector> pts;
    for (auto i : s) pts.push_back(vertices_[i]);
    total += simplex_volume(pts);
  }
  return total;
}

const Integer& LatticePolytope::volume() const {
  std::call_once(cache_->volume_once, [&] { cache_->volume = face_volume(face_lattice().top()); });
  return cache_->volume;
}

const LatticePoints& lattice_points(const LatticePolytope& p) { return p.lattice_points(); }
const Integer& normalized_volume(const LatticePolytope& p) { return p.volume(); }
Integer normalized_volume(const LatticePolytope& p, std::size_t face_id) { return p.face_volume(face_id); }
const FaceLattice& face_lattice(const LatticePolytope& p) { return p.face_lattice(); }

// ---------------------------------------------------------------------------
// duality

std::variant<LatticePolytope, RationalPolytope> polar_dual(const LatticePolytope& p) {
  if (!p.has_interior_origin()) fail(ErrorKind::OriginNotInterior, "the origin is not an interior point");
  const bool integral =
      std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.offset == 1; });
  if (integral) {
    std::vector<IntVector> verts;
    for (const auto& f : p.facets()) verts.push_back(f.normal);
    std::vector<Facet> facets;
    for (const auto& v : p.vertices()) facets.push_back(Facet{v, Integer(1)});
    return LatticePolytope::from_representations(std::move(verts), std::move(facets));
  }
  RationalPolytope q;
  q.dim = p.dim();
  for (const auto& f : p.facets()) {
    RatVector v;
    for (const auto& x : f.normal) v.emplace_back(x, f.offset);
    for (auto& x : v) x.canonicalize();
    q.vertices.push_back(std::move(v));
  }
  for (const auto& v : p.vertices()) {
    const Integer g = content(v);
    q.normals.push_back(primitive_part(v));
    q.offsets.emplace_back(1, g);
  }
  return q;
}

LatticePolytope reflexive_dual(const LatticePolytope& p) {
  const auto check = is_reflexive(p);
  if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
  return std::get<LatticePolytope>(polar_dual(p));
}

ReflexivityCheck is_reflexive(const LatticePolytope& p) {
  ReflexivityCheck out;
  for (std::size_t j = 0; j < p.facets().size(); ++j) {
    const auto& f = p.facets()[j];
    if (f.offset <= 0) {
      out.witness_facet = j;
      out.reason = "origin is not interior: facet " + to_string(f.normal) + " has offset " + f.offset.get_str();
      return out;
    }
  }
  for (std::size_t j = 0; j < p.facets().size(); ++j) {
    const auto& f = p.facets()[j];
    if (f.offset != 1) {
      out.witness_facet = j;
      out.reason = "facet " + to_string(f.normal) + " is at integral distance " + f.offset.get_str();
      return out;
    }
  }
  out.reflexive = true;
  return out;
}

Integer integral_distance(std::span<const Integer> normal, const Integer& c, std::span<const Integer> point) {
  if (!is_primitive(normal)) fail(ErrorKind::NonPrimitiveNormal, "normal " + to_string(normal) + " is not primitive");
  return abs(c - dot(point, normal));
}

std::vector<std::optional<std::size_t>> dual_faces(const LatticePolytope& p, const LatticePolytope& q) {
  const auto& lp = p.face_lattice();
  const auto& lq = q.face_lattice();
  std::vector<std::optional<std::size_t>> out(lp.faces().size());
  for (const auto& f : lp.faces()) {
    if (f.facets.empty()) continue;
    out[f.id] = lq.find_by_vertices(f.facets);
    if (!out[f.id] || lq.face(*out[f.id]).dim + f.dim + 1 != p.dim())
      fail(ErrorKind::InvariantViolation, "face has no dual face of complementary dimension");
  }
  return out;
}

// ---------------------------------------------------------------------------
// normal form

bool matrix_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row_span(i), rb = b.row_span(i);
    if (!std::equal(ra.begin(), ra.end(), rb.begin())) return lex_less(ra, rb);
  }
  return false;
}

namespace {

struct NfState {
  std::vector<bool> used;
  IntMatrix u;
  std::size_t rank = 0;
};

// Column of the Hermite form obtained by appending vertex v to the state's prefix.
IntVector extend_column(const NfState& s, std::span<const Integer> v, IntMatrix& u, std::size_t& rank) {
  const std::size_t n = s.u.rows();
  u = s.u;
  rank = s.rank;
  IntVector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = dot(u.row_span(i), v);
  bool below = false;
  for (std::size_t i = rank; i < n; ++i)
    if (c[i] != 0) below = true;
  if (!below) return c;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(c[a], c[b]);
    u.swap_rows(a, b);
  };
  while (true) {
    std::size_t best = n;
    for (std::size_t i = rank; i < n; ++i)
      if (c[i] != 0 && (best == n || abs(c[i]) < abs(c[best]))) best = i;
    swap_rows(rank, best);
    bool remaining = false;
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (c[i] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), c[i].get_mpz_t(), c[rank].get_mpz_t());
      c[i] -= q * c[rank];
      u.add_row_multiple(i, rank, -q);
      if (c[i] != 0) remaining = true;
    }
    if (!remaining) break;
  }
  if (c[rank] < 0) {
    c[rank] = -c[rank];
    u.negate_row(rank);
  }
  for (std::size_t i = 0; i < rank; ++i) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), c[i].get_mpz_t(), c[rank].get_mpz_t());
    if (q == 0) continue;
    c[i] -= q * c[rank];
    u.add_row_multiple(i, rank, -q);
  }
  ++rank;
  return c;
}

}  // namespace

IntMatrix compute_normal_form(std::span<const IntVector> vertices, std::size_t dim) {
  const std::size_t nv = vertices.size();
  IntMatrix nf(dim, nv);
  std::vector<NfState> states{NfState{std::vector<bool>(nv, false), IntMatrix::identity(dim), 0}};
  for (std::size_t level = 0; level < nv; ++level) {
    std::optional<IntVector> best;
    std::vector<NfState> next;
    std::set<std::vector<Integer>> seen;
    for (const auto& s : states)
      for (std::size_t i = 0; i < nv; ++i) {
        if (s.used[i]) continue;
        IntMatrix u;
        std::size_t r = 0;
        IntVector col = extend_column(s, vertices[i], u, r);
        if (best && lex_less(*best, col)) continue;
        if (!best || lex_less(col, *best)) {
          best = col;
          next.clear();
          seen.clear();
        }
        NfState t{s.used, std::move(u), r};
        t.used[i] = true;
        std::vector<Integer> key;
        key.reserve(nv + dim * dim);
        for (bool b : t.used) key.emplace_back(b ? 1 : 0);
        for (std::size_t a = 0; a < dim; ++a)
          for (const auto& x : t.u.row_span(a)) key.push_back(x);
        if (seen.insert(std::move(key)).second) next.push_back(std::move(t));
      }
    for (std::size_t a = 0; a < dim; ++a) nf(a, level) = (*best)[a];
    states = std::move(next);
  }
  return nf;
}

const IntMatrix& LatticePolytope::normal_form() const {
  std::call_once(cache_->nf_once, [&] { cache_->nf = compute_normal_form(vertices_, dim_); });
  return cache_->nf;
}

const IntMatrix& normal_form(const LatticePolytope& p) { return p.normal_form(); }

std::vector<IntVector> normal_form_vertices(const IntMatrix& nf) {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < nf.cols(); ++j) out.push_back(nf.col(j));
  return out;
}

}  // namespace reflexive
