#include "reflexive/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>

#include "reflexive/polytope.hpp"

namespace reflexive::kernels {

namespace {

std::atomic<int> g_thread_cap{0};
std::atomic<Mode> g_mode{Mode::parallel};

int threads() {
  const int cap = g_thread_cap.load();
  return cap > 0 ? cap : omp_get_max_threads();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

template <class T>
T convert(const Integer& x) {
  if constexpr (std::is_same_v<T, Integer>) return x;
  else return static_cast<T>(x.get_si());
}

template <class T>
Integer to_integer(const T& x) {
  if constexpr (std::is_same_v<T, Integer>) return x;
  else return Integer(static_cast<long>(x));
}

// Facets of the projection onto the first k coordinates, split by the sign of the
// last coefficient.
template <class T>
struct Level {
  std::vector<std::vector<T>> lower_normals, upper_normals;  // a_k > 0, a_k < 0
  std::vector<T> lower_offsets, upper_offsets;
};

template <class T>
std::vector<Level<T>> make_levels(const std::vector<std::vector<Facet>>& projected) {
  std::vector<Level<T>> levels;
  for (const auto& facets : projected) {
    Level<T> lv;
    for (const auto& f : facets) {
      const Integer& last = f.normal.back();
      if (last == 0) continue;
      std::vector<T> a;
      for (const auto& x : f.normal) a.push_back(convert<T>(x));
      if (last > 0) {
        lv.lower_normals.push_back(std::move(a));
        lv.lower_offsets.push_back(convert<T>(f.offset));
      } else {
        lv.upper_normals.push_back(std::move(a));
        lv.upper_offsets.push_back(convert<T>(f.offset));
      }
    }
    levels.push_back(std::move(lv));
  }
  return levels;
}

// Range of x_k given x_0..x_{k-1}: a_k x_k >= -b - <prefix, a'>.
template <class T>
bool fibre(const Level<T>& lv, const std::vector<T>& prefix, std::size_t k, T& lo, T& hi) {
  bool have_lo = false, have_hi = false;
  for (std::size_t f = 0; f < lv.lower_normals.size(); ++f) {
    const auto& a = lv.lower_normals[f];
    T rhs = -lv.lower_offsets[f];
    for (std::size_t i = 0; i < k; ++i) rhs -= a[i] * prefix[i];
    T b = ceil_div(rhs, a[k]);
    if (!have_lo || b > lo) lo = b;
    have_lo = true;
  }
  for (std::size_t f = 0; f < lv.upper_normals.size(); ++f) {
    const auto& a = lv.upper_normals[f];
    T rhs = -lv.upper_offsets[f];
    for (std::size_t i = 0; i < k; ++i) rhs -= a[i] * prefix[i];
    T b = floor_div(rhs, a[k]);
    if (!have_hi || b < hi) hi = b;
    have_hi = true;
  }
  return have_lo && have_hi && lo <= hi;
}

template <class T>
void descend(const std::vector<Level<T>>& levels, std::vector<T>& prefix, std::size_t k,
             std::vector<IntVector>& out) {
  const std::size_t n = levels.size();
  if (k == n) {
    IntVector p;
    p.reserve(n);
    for (const auto& x : prefix) p.push_back(to_integer(x));
    out.push_back(std::move(p));
    return;
  }
  T lo{}, hi{};
  if (!fibre(levels[k], prefix, k, lo, hi)) return;
  for (T x = lo; x <= hi; ++x) {
    prefix[k] = x;
    descend(levels, prefix, k + 1, out);
  }
}

template <class T>
std::vector<IntVector> slice(const std::vector<std::vector<Facet>>& projected, Mode mode) {
  const auto levels = make_levels<T>(projected);
  const std::size_t n = levels.size();
  std::vector<T> empty;
  T lo{}, hi{};
  if (!fibre(levels[0], empty, 0, lo, hi)) return {};
  std::vector<T> firsts;
  for (T x = lo; x <= hi; ++x) firsts.push_back(x);
  std::vector<std::vector<IntVector>> buckets(firsts.size());
  const auto count = static_cast<std::int64_t>(firsts.size());
  if (mode == Mode::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<T> prefix(n);
      prefix[0] = firsts[i];
      descend(levels, prefix, 1, buckets[i]);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      std::vector<T> prefix(n);
      prefix[0] = firsts[i];
      descend(levels, prefix, 1, buckets[i]);
    }
  }
  std::vector<IntVector> out;
  for (auto& b : buckets)
    for (auto& p : b) out.push_back(std::move(p));
  return out;
}

bool fits_small(const std::vector<std::vector<Facet>>& projected, std::size_t n) {
  const Integer limit = Integer(1) << 24;
  for (const auto& facets : projected)
    for (const auto& f : facets) {
      if (abs(f.offset) > limit * limit) return false;
      for (const auto& x : f.normal)
        if (abs(x) > limit) return false;
    }
  return n <= 16;
}

}  // namespace

void set_thread_cap(int t) { g_thread_cap.store(t < 0 ? 0 : t); }
int thread_cap() { return g_thread_cap.load(); }
void set_default_mode(Mode mode) { g_mode.store(mode); }
Mode default_mode() { return g_mode.load(); }

std::vector<IntVector> enumerate_lattice_points(const LatticePolytope& p, Mode mode) {
  const std::size_t n = p.dim();
  std::vector<std::vector<Facet>> projected(n);
  projected[n - 1] = p.facets();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<IntVector> pts;
    for (const auto& v : p.vertices()) pts.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    projected[k - 1] = LatticePolytope::hull(pts).facets();
  }
  // Coordinates of lattice points are bounded by the vertex coordinates.
  Integer bound = 0;
  for (const auto& v : p.vertices())
    for (const auto& x : v) bound = std::max(bound, Integer(abs(x)));
  if (bound < (Integer(1) << 24) && fits_small(projected, n)) return slice<std::int64_t>(projected, mode);
  return slice<Integer>(projected, mode);
}

std::vector<IntVector> enumerate_lattice_points_bbox(const LatticePolytope& p) {
  const std::size_t n = p.dim();
  IntVector lo = p.vertices().front(), hi = p.vertices().front();
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  std::vector<IntVector> out;
  IntVector x = lo;
  while (true) {
    if (p.contains(x)) out.push_back(x);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        for (std::size_t j = i + 1; j < n; ++j) x[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

std::vector<std::vector<std::size_t>> tight_facet_sets(std::span<const IntVector> points,
                                                       std::span<const Facet> facets, Mode mode) {
  std::vector<std::vector<std::size_t>> out(points.size());
  const auto count = static_cast<std::int64_t>(points.size());
  auto work = [&](std::int64_t i) {
    for (std::size_t j = 0; j < facets.size(); ++j)
      if (dot(points[i], facets[j].normal) + facets[j].offset == 0) out[i].push_back(j);
  };
  if (mode == Mode::parallel) {
#pragma omp parallel for schedule(static) num_threads(threads())
    for (std::int64_t i = 0; i < count; ++i) work(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) work(i);
  }
  return out;
}

}  // namespace reflexive::kernels
