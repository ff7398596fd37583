#include "reflexive/triangulate.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "reflexive/error.hpp"

namespace reflexive {

namespace {

// Coordinates of the points in a basis of the lattice of their affine span.
struct Frame {
  std::size_t dim = 0;
  std::vector<IntVector> coords;
};

Frame make_frame(const std::vector<IntVector>& points) {
  Frame f;
  if (points.empty()) return f;
  std::vector<IntVector> diffs;
  for (const auto& p : points) diffs.push_back(subtract(p, points.front()));
  const auto basis = saturated_basis(IntMatrix::from_rows(diffs, points.front().size()));
  f.dim = basis.rows();
  for (const auto& d : diffs) {
    if (f.dim == 0) {
      f.coords.emplace_back();
      continue;
    }
    auto x = solve_integral(basis, d);
    if (!x) fail(ErrorKind::InvariantViolation, "point outside the saturated span");
    f.coords.push_back(std::move(*x));
  }
  return f;
}

int sign_of(const Integer& x) { return sgn(x); }

// Sign of det(x_f - x_face0 ..., y - x_face0) restricted to the given columns.
int orientation(const std::vector<IntVector>& x, const std::vector<std::size_t>& face, std::size_t y,
                const std::vector<std::size_t>& cols) {
  const std::size_t m = cols.size();
  IntMatrix a(m, m);
  const auto& base = x[face.front()];
  for (std::size_t r = 1; r < face.size(); ++r)
    for (std::size_t c = 0; c < m; ++c) a(r - 1, c) = x[face[r]][cols[c]] - base[cols[c]];
  for (std::size_t c = 0; c < m; ++c) a(m - 1, c) = x[y][cols[c]] - base[cols[c]];
  return sign_of(determinant(a));
}

std::vector<std::size_t> without(const std::vector<std::size_t>& s, std::size_t j) {
  std::vector<std::size_t> out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != j) out.push_back(s[i]);
  return out;
}

struct FaceUse {
  std::size_t count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> uses;  // (simplex, opposite point)
};

std::map<std::vector<std::size_t>, FaceUse> codim_one_faces(const std::vector<std::vector<std::size_t>>& simplices) {
  std::map<std::vector<std::size_t>, FaceUse> faces;
  for (std::size_t s = 0; s < simplices.size(); ++s)
    for (std::size_t j = 0; j < simplices[s].size(); ++j) {
      auto& use = faces[without(simplices[s], j)];
      ++use.count;
      use.uses.emplace_back(s, simplices[s][j]);
    }
  return faces;
}

// Placing triangulation of points already in lexicographic order.
std::vector<std::vector<std::size_t>> place(const std::vector<IntVector>& x, std::size_t k) {
  std::vector<std::vector<std::size_t>> simplices{{0}};
  std::vector<IntVector> frame_diffs;
  std::vector<std::size_t> cols;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (frame_diffs.size() < k) {
      auto trial = frame_diffs;
      trial.push_back(subtract(x[i], x[0]));
      const auto h = hermite_normal_form(IntMatrix::from_rows(trial, k));
      if (h.rank == trial.size()) {
        frame_diffs = std::move(trial);
        cols = h.pivot_cols;
        for (auto& s : simplices) s.push_back(i);
        continue;
      }
    }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [face, use] : codim_one_faces(simplices)) {
      if (use.count != 1) continue;
      const auto opposite = use.uses.front().second;
      if (orientation(x, face, opposite, cols) * orientation(x, face, i, cols) < 0) {
        auto s = face;
        s.push_back(i);
        added.push_back(std::move(s));
      }
    }
    if (added.empty()) fail(ErrorKind::InvariantViolation, "placed point is not outside the current hull");
    for (auto& s : added) simplices.push_back(std::move(s));
  }
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

Integer frame_volume(const std::vector<IntVector>& x, const std::vector<std::size_t>& s, std::size_t k) {
  if (k == 0) return 1;
  IntMatrix a(k, k);
  for (std::size_t r = 1; r < s.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) a(r - 1, c) = x[s[r]][c] - x[s[0]][c];
  return abs(determinant(a));
}

struct Wall {
  std::size_t beyond = 0;                                   // vertex of the second simplex
  std::vector<std::pair<std::size_t, Rational>> combination;  // beyond = sum lambda_i v_i over the first
};

[[noreturn]] void malformed(const std::string& msg) { fail(ErrorKind::MalformedTriangulation, msg); }

// Validates t and returns its interior walls.
std::vector<Wall> analyse(const Triangulation& t) {
  const auto& pts = t.config.points;
  const auto frame = make_frame(pts);
  const std::size_t k = frame.dim;
  if (t.simplices.empty()) malformed("no simplices");
  for (const auto& s : t.simplices) {
    if (s.size() != k + 1) malformed("simplex of wrong size");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= pts.size()) malformed("point index out of range");
      if (i > 0 && s[i - 1] >= s[i]) malformed("simplex indices not strictly increasing");
    }
    if (frame_volume(frame.coords, s, k) == 0) malformed("degenerate simplex");
  }
  if (k == 0) {
    if (t.simplices.size() != 1) malformed("overlapping simplices");
    return {};
  }

  Integer total = 0;
  for (const auto& s : t.simplices) total += frame_volume(frame.coords, s, k);
  const auto hull_of = LatticePolytope::hull(frame.coords);
  if (total != hull_of.volume())
    malformed("simplex volumes sum to " + total.get_str() + ", hull volume is " + hull_of.volume().get_str());

  std::vector<std::size_t> all_cols(k);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  std::vector<Wall> walls;
  for (const auto& [face, use] : codim_one_faces(t.simplices)) {
    if (use.count > 2) malformed("a wall lies in more than two simplices");
    if (use.count == 1) {
      bool on_boundary = false;
      for (const auto& f : hull_of.facets()) {
        bool tight = true;
        for (auto v : face)
          if (dot(frame.coords[v], f.normal) + f.offset != 0) {
            tight = false;
            break;
          }
        if (tight) {
          on_boundary = true;
          break;
        }
      }
      if (!on_boundary) malformed("an interior wall bounds only one simplex");
      continue;
    }
    const auto [s1, a] = use.uses[0];
    const auto [s2, b] = use.uses[1];
    if (orientation(frame.coords, face, a, all_cols) * orientation(frame.coords, face, b, all_cols) >= 0)
      malformed("simplices overlap across a wall");
    IntMatrix m(k + 1, k + 1);
    const auto& first = t.simplices[s1];
    for (std::size_t r = 0; r <= k; ++r) {
      for (std::size_t c = 0; c < k; ++c) m(r, c) = frame.coords[first[r]][c];
      m(r, k) = 1;
    }
    IntVector rhs = frame.coords[b];
    rhs.push_back(1);
    auto lambda = solve_rational(m, rhs);
    if (!lambda) fail(ErrorKind::InvariantViolation, "barycentric coordinates unavailable");
    Wall w;
    w.beyond = b;
    for (std::size_t r = 0; r <= k; ++r) w.combination.emplace_back(first[r], (*lambda)[r]);
    walls.push_back(std::move(w));
  }
  return walls;
}

bool walls_convex(const std::vector<Wall>& walls, std::span<const Rational> h) {
  const auto count = static_cast<std::int64_t>(walls.size());
  bool ok = true;
  const int cap = kernels::thread_cap();
#pragma omp parallel for schedule(static) reduction(&& : ok) num_threads(cap > 0 ? cap : omp_get_max_threads()) \
    if (kernels::default_mode() == kernels::Mode::parallel && count > 256)
  for (std::int64_t i = 0; i < count; ++i) {
    Rational below = 0;
    for (const auto& [v, l] : walls[i].combination) below += l * h[v];
    ok = ok && h[walls[i].beyond] > below;
  }
  return ok;
}

// max c.x subject to a x <= b, x >= 0, with b >= 0; Bland's rule on a dense tableau.
std::optional<std::vector<Rational>> maximize(const std::vector<std::vector<Rational>>& a,
                                              const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t m = a.size(), n = c.size();
  const std::size_t width = n + m + 1;
  std::vector<std::vector<Rational>> tab(m + 1, std::vector<Rational>(width));
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
    tab[i][n + i] = 1;
    tab[i][width - 1] = b[i];
    basic[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) tab[m][j] = -c[j];

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (sgn(tab[m][j]) < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(tab[i][enter]) <= 0) continue;
      Rational ratio = tab[i][width - 1] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;
    const Rational pivot = tab[leave][enter];
    for (auto& x : tab[leave]) x /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(tab[i][enter]) == 0) continue;
      const Rational factor = tab[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (sgn(tab[leave][j]) != 0) tab[i][j] -= factor * tab[leave][j];
    }
    basic[leave] = enter;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < n) x[basic[i]] = tab[i][width - 1];
  return x;
}

}  // namespace

PointConfig PointConfig::from_points(std::vector<IntVector> points) {
  if (points.empty()) fail(ErrorKind::NotAdmissible, "empty point configuration");
  for (const auto& p : points)
    if (p.size() != points.front().size()) fail(ErrorKind::NotAdmissible, "points of mixed dimension");
  std::sort(points.begin(), points.end(), [](const IntVector& a, const IntVector& b) { return lex_less(a, b); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointConfig cfg;
  cfg.points = std::move(points);
  return cfg;
}

PointConfig PointConfig::for_polytope(std::vector<IntVector> points, const LatticePolytope& target) {
  auto cfg = from_points(std::move(points));
  const std::set<IntVector> have(cfg.points.begin(), cfg.points.end());
  for (const auto& v : target.vertices())
    if (!have.count(v)) cfg.admissible = false;
  for (const auto& p : cfg.points)
    if (p.size() != target.dim() || !target.contains(p)) cfg.admissible = false;
  return cfg;
}

PointConfig PointConfig::all_lattice_points(const LatticePolytope& p) {
  return for_polytope(p.lattice_points().points, p);
}

std::size_t PointConfig::index_of(std::span<const Integer> x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x,
                             [](const IntVector& a, std::span<const Integer> b) { return lex_less(a, b); });
  if (it == points.end() || !std::equal(it->begin(), it->end(), x.begin(), x.end()))
    fail(ErrorKind::InvariantViolation, "point " + to_string(x) + " is not in the configuration");
  return static_cast<std::size_t>(it - points.begin());
}

Triangulation regular_fine_triangulation(const PointConfig& cfg) {
  if (!cfg.admissible) fail(ErrorKind::NotAdmissible, "configuration misses a vertex of its target polytope");
  if (cfg.points.empty()) fail(ErrorKind::NotAdmissible, "empty point configuration");
  const auto frame = make_frame(cfg.points);
  Triangulation t;
  t.config = cfg;
  t.simplices = place(frame.coords, frame.dim);

  const auto walls = analyse(t);
  // Later points sit higher; t^i separates the lift once t is large enough.
  for (Integer base = 2; base < (Integer(1) << 64); base *= 2) {
    std::vector<Rational> h(cfg.points.size());
    Integer power = 1;
    for (auto& x : h) {
      x = power;
      power *= base;
    }
    if (walls_convex(walls, h)) {
      t.heights = std::move(h);
      return t;
    }
  }
  fail(ErrorKind::InvariantViolation, "no height certificate found for a placing triangulation");
}

void check_well_formed(const Triangulation& t) { analyse(t); }

bool check_heights(const Triangulation& t, std::span<const Rational> heights) {
  if (heights.size() != t.config.points.size()) return false;
  return walls_convex(analyse(t), heights);
}

RegularityResult verify_regularity(const Triangulation& t) {
  const auto walls = analyse(t);
  const std::size_t n = t.config.points.size();
  if (t.heights && t.heights->size() == n && walls_convex(walls, *t.heights)) return {true, t.heights};

  // Variables h_0..h_{n-1}, eps; eps + sum lambda_i h_i - h_beyond <= 0 per wall, eps <= 1.
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& w : walls) {
    std::vector<Rational> row(n + 1);
    for (const auto& [v, l] : w.combination) row[v] += l;
    row[w.beyond] -= 1;
    row[n] = 1;
    a.push_back(std::move(row));
    b.emplace_back(0);
  }
  std::vector<Rational> cap(n + 1);
  cap[n] = 1;
  a.push_back(std::move(cap));
  b.emplace_back(1);
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  const auto x = maximize(a, b, c);
  if (!x || sgn((*x)[n]) <= 0) return {false, std::nullopt};
  std::vector<Rational> h(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(n));
  if (!walls_convex(walls, h)) fail(ErrorKind::InvariantViolation, "LP heights fail the wall check");
  return {true, std::move(h)};
}

std::vector<Integer> simplex_volumes(const Triangulation& t) {
  const auto frame = make_frame(t.config.points);
  std::vector<Integer> out;
  for (const auto& s : t.simplices) out.push_back(frame_volume(frame.coords, s, frame.dim));
  return out;
}

MpcpResult mpcp_fan(const LatticePolytope& p) {
  const auto check = is_reflexive(p);
  if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
  const std::size_t n = p.dim();
  auto cfg = PointConfig::all_lattice_points(p);
  auto t = regular_fine_triangulation(cfg);

  const IntVector origin(n, Integer(0));
  const auto zero = cfg.index_of(origin);
  std::vector<std::size_t> ray_of(cfg.points.size(), cfg.points.size());
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    if (i != zero) {
      ray_of[i] = rays.size();
      rays.push_back(cfg.points[i]);
    }

  std::vector<std::vector<std::size_t>> maximal;
  std::vector<bool> used(rays.size(), false);
  for (const auto& [face, use] : codim_one_faces(t.simplices)) {
    if (use.count != 1) continue;
    std::vector<std::size_t> cone;
    for (auto v : face) {
      if (v == zero) fail(ErrorKind::InvariantViolation, "boundary simplex contains the origin");
      cone.push_back(ray_of[v]);
      used[ray_of[v]] = true;
    }
    maximal.push_back(std::move(cone));
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    fail(ErrorKind::InvariantViolation, "a boundary lattice point is not a ray of the refinement");

  auto fan = Fan::from_maximal_cones(n, std::move(rays), std::move(maximal));
  if (!fan.complete()) fail(ErrorKind::InvariantViolation, "refined fan is not complete");
  auto reports = classify_fan(fan);
  for (const auto& r : reports) {
    if (!r.simplicial || !r.terminal || !r.gorenstein || !r.k_sigma)
      fail(ErrorKind::InvariantViolation, "MPCP cone is not elementary");
    for (const auto& ray : r.rays)
      if (dot(*r.k_sigma, ray) != 1) fail(ErrorKind::InvariantViolation, "MPCP cone is not crepant");
  }
  return {std::move(fan), std::move(reports), std::move(t)};
}

std::size_t count_elementary(const LatticePolytope& p, std::size_t face_id) {
  const auto& face = p.face_lattice().face(face_id);
  if (face.dim > 2) fail(ErrorKind::DimensionTooHigh, "face of dimension " + std::to_string(face.dim));
  if (face.dim == 0) return 1;
  const auto t = regular_fine_triangulation(PointConfig::from_points(p.face_points(face_id)));
  for (const auto& v : simplex_volumes(t))
    if (v != 1) fail(ErrorKind::InvariantViolation, "non-elementary simplex in a maximal triangulation");
  return t.simplices.size();
}

}  // namespace reflexive
