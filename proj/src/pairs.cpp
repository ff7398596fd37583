#include "reflexive/pairs.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

#include "reflexive/error.hpp"

namespace reflexive {

namespace {

IntMatrix scaled(const IntMatrix& m, const Integer& f) {
  IntMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) *= f;
  return out;
}

IntMatrix first_rows(const HermiteForm& h) { return h.h.submatrix_rows(0, h.rank); }

[[noreturn]] void violated(const std::string& msg) { fail(ErrorKind::InvariantViolation, msg); }

void require_simplex(const LatticePolytope& p) {
  if (p.vertices().size() != p.dim() + 1)
    fail(ErrorKind::NotASimplex, std::to_string(p.vertices().size()) + " vertices in dimension " +
                                     std::to_string(p.dim()));
}

void require_unit(std::span<const Integer> degrees) {
  if (degrees.size() < 2) fail(ErrorKind::DegreesNotUnit, "need at least two degrees");
  Rational sum = 0;
  for (const auto& d : degrees) {
    if (d <= 0) fail(ErrorKind::DegreesNotUnit, "degree " + d.get_str() + " is not positive");
    sum += Rational(1, d);
  }
  if (sum != 1) fail(ErrorKind::DegreesNotUnit, "sum of 1/d_i is " + sum.get_str());
}

}  // namespace

Lattice Lattice::standard(std::size_t n) { return {IntMatrix::identity(n), 1}; }

Lattice Lattice::normalized() const {
  const auto h = hermite_normal_form(basis);
  Lattice out{first_rows(h), denominator};
  Integer g = denominator;
  for (std::size_t i = 0; i < out.basis.rows(); ++i) g = gcd(g, content(out.basis.row_span(i)));
  if (g > 1) {
    for (std::size_t i = 0; i < out.basis.rows(); ++i)
      for (std::size_t j = 0; j < out.basis.cols(); ++j) out.basis(i, j) /= g;
    out.denominator /= g;
  }
  return out;
}

bool operator==(const Lattice& a, const Lattice& b) {
  const auto x = a.normalized(), y = b.normalized();
  return x.basis == y.basis && x.denominator == y.denominator;
}

bool Lattice::contains(std::span<const Integer> ambient) const {
  IntVector target(ambient.begin(), ambient.end());
  for (auto& x : target) x *= denominator;
  return solve_integral(basis, target).has_value();
}

IntVector Lattice::coordinates(std::span<const Integer> ambient) const {
  IntVector target(ambient.begin(), ambient.end());
  for (auto& x : target) x *= denominator;
  auto c = solve_integral(basis, target);
  if (!c) fail(ErrorKind::NotInLattice, to_string(ambient) + " is not in the lattice");
  return *c;
}

AbelianQuotient lattice_index(const Lattice& outer, const Lattice& inner) {
  // c * outer.basis / outer.den = row / inner.den
  const IntMatrix a = scaled(outer.basis, inner.denominator);
  std::vector<IntVector> coords;
  for (std::size_t i = 0; i < inner.basis.rows(); ++i) {
    IntVector r = inner.basis.row(i);
    for (auto& x : r) x *= outer.denominator;
    auto c = solve_integral(a, r);
    if (!c) fail(ErrorKind::NotInLattice, "inner lattice is not contained in the outer one");
    coords.push_back(std::move(*c));
  }
  return lattice_quotient(coords, outer.basis.cols());
}

ReflexivePair ReflexivePair::make(LatticePolytope polytope, Lattice lattice) {
  ReflexivePair pair{std::move(polytope), lattice.normalized()};
  const auto check = is_reflexive(pair.in_lattice_coordinates());
  if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
  return pair;
}

LatticePolytope ReflexivePair::in_lattice_coordinates() const {
  std::vector<IntVector> coords;
  for (const auto& v : polytope.vertices()) coords.push_back(lattice.coordinates(v));
  return hull(coords);
}

ReflexivePair dual_pair(const ReflexivePair& pair) {
  const auto q = reflexive_dual(pair.in_lattice_coordinates());
  return ReflexivePair::make(q, Lattice::standard(q.dim()));
}

Sublattice vertex_sublattice(const ReflexivePair& pair) {
  const auto p = pair.in_lattice_coordinates();
  const auto h = hermite_normal_form(p.vertex_matrix());
  Sublattice out;
  out.lattice = Lattice{first_rows(h) * pair.lattice.basis, pair.lattice.denominator}.normalized();
  out.quotient = lattice_quotient(p.vertices(), p.dim());
  out.index = out.quotient.order();
  return out;
}

ReflexivePair minimal_pair(const ReflexivePair& pair) {
  return ReflexivePair::make(pair.polytope, vertex_sublattice(pair).lattice);
}

ReflexivePair maximal_pair(const ReflexivePair& pair) {
  // Dual lattice of the span of the dual vertices: basis K^{-T} in lattice coordinates.
  const auto q = reflexive_dual(pair.in_lattice_coordinates());
  const auto k = first_rows(hermite_normal_form(q.vertex_matrix()));
  const auto inv = scaled_inverse(k);
  Lattice finer{inv.adjugate.transposed() * pair.lattice.basis, inv.det * pair.lattice.denominator};
  return ReflexivePair::make(pair.polytope, finer);
}

AbelianQuotient pair_fundamental_group(const ReflexivePair& pair) {
  const auto q = reflexive_dual(pair.in_lattice_coordinates());
  return lattice_quotient(q.vertices(), q.dim());
}

FundamentalGroup polytope_fundamental_group(const LatticePolytope& p) {
  const auto pair = ReflexivePair::make(p, Lattice::standard(p.dim()));
  const auto dual = dual_pair(pair);
  FundamentalGroup out;
  out.group = lattice_index(maximal_pair(dual).lattice, minimal_pair(dual).lattice);
  out.order = out.group.order();
  const Integer product = pair_fundamental_group(pair).order() * pair_fundamental_group(dual).order();
  if (product != out.order)
    violated("fundamental group order " + out.order.get_str() + " differs from the product " + product.get_str());
  return out;
}

MorphismInfo morphism_check(const IntMatrix& map, const ReflexivePair& from, const ReflexivePair& to) {
  const auto a = from.in_lattice_coordinates();
  const auto b = to.in_lattice_coordinates();
  if (map.rows() != a.dim() || map.cols() != b.dim() || a.dim() != b.dim())
    fail(ErrorKind::NotAMorphism, "map has shape " + std::to_string(map.rows()) + "x" + std::to_string(map.cols()));
  std::set<IntVector> image;
  for (const auto& v : a.vertices()) image.insert(v * map);
  const std::set<IntVector> target(b.vertices().begin(), b.vertices().end());
  if (image != target) fail(ErrorKind::NotAMorphism, "vertex images differ from the target vertices");
  MorphismInfo out;
  out.degree = abs(determinant(map));
  if (out.degree == 0) fail(ErrorKind::NotAMorphism, "map is singular");
  if (out.degree * a.volume() != b.volume()) violated("degree disagrees with the volume ratio");
  if (reflexive_dual(a).volume() != out.degree * reflexive_dual(b).volume())
    violated("degree disagrees with the dual volume ratio");
  out.cokernel = lattice_quotient(map.row_vectors(), map.cols());
  return out;
}

WeightSystem simplex_weights(const LatticePolytope& p) {
  require_simplex(p);
  const auto check = is_reflexive(p);
  if (!check.reflexive) fail(ErrorKind::NotReflexive, check.reason);
  const std::size_t n = p.dim();
  const auto& vs = p.vertices();
  WeightSystem ws;
  ws.weights = primitive_relation(vs);
  ws.b = IntMatrix(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const Facet* opposite = nullptr;
    for (const auto& f : p.facets())
      if (dot(vs[j], f.normal) + f.offset != 0) opposite = &f;
    for (std::size_t i = 0; i <= n; ++i) ws.b(i, j) = dot(vs[i], opposite->normal);
  }
  if (!(ws.b == ws.b.transposed())) violated("simplex matrix is not symmetric");
  if (rank(ws.b) != n) violated("simplex matrix does not have rank n");
  Rational sum = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (ws.b(i, i) <= 0) violated("nonpositive diagonal entry");
    ws.degrees.push_back(ws.b(i, i) + 1);
    sum += Rational(1, ws.degrees.back());
  }
  if (sum != 1) violated("sum of 1/(b_ii + 1) is " + sum.get_str());
  const Integer l = lcm_of(ws.degrees);
  ws.total_degree = std::accumulate(ws.weights.begin(), ws.weights.end(), Integer(0));
  if (ws.total_degree != l) violated("total degree differs from the lcm of the degrees");
  for (std::size_t i = 0; i <= n; ++i)
    if (ws.weights[i] * ws.degrees[i] != l) violated("weight differs from lcm / degree");
  const auto wb = ws.weights * ws.b;
  if (std::any_of(wb.begin(), wb.end(), [](const Integer& x) { return x != 0; }))
    violated("weights do not solve the simplex matrix");
  return ws;
}

ReflexivePair weighted_simplex(std::span<const Integer> degrees) {
  require_unit(degrees);
  const std::size_t m = degrees.size();
  const Integer l = lcm_of(degrees);
  IntMatrix w(m, 1);
  for (std::size_t i = 0; i < m; ++i) w(i, 0) = l / degrees[i];
  const auto basis = first_rows(hermite_normal_form(left_kernel(w)));
  std::vector<IntVector> coords;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector row(m, Integer(-1));
    row[i] = degrees[i] - 1;
    auto c = solve_integral(basis, row);
    if (!c) violated("simplex vertex outside the weight lattice");
    coords.push_back(std::move(*c));
  }
  auto pair = ReflexivePair::make(hull(coords), Lattice::standard(m - 1));
  if (!pair_fundamental_group(pair).trivial()) violated("weighted simplex pair is not maximal");
  return pair;
}

namespace {

void degree_search(std::size_t slots, const Rational& rest, const Integer& minimum, std::vector<Integer>& cur,
                   std::vector<std::vector<Integer>>& out) {
  if (slots == 1) {
    if (rest.get_num() == 1 && rest.get_den() >= minimum) {
      cur.push_back(rest.get_den());
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  // 1/d < rest leaves room for the others; d <= slots / rest since d is the smallest left.
  Integer lo = rest.get_den() / rest.get_num() + 1;
  if (lo < minimum) lo = minimum;
  const Integer hi = Integer(static_cast<unsigned long>(slots)) * rest.get_den() / rest.get_num();
  for (Integer d = lo; d <= hi; ++d) {
    cur.push_back(d);
    degree_search(slots - 1, rest - Rational(1, d), d, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<Integer>> enumerate_degree_tuples(std::size_t n) {
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> cur;
  degree_search(n + 1, Rational(1), Integer(1), cur, out);
  return out;
}

AbelianQuotient fermat_character_kernel(std::span<const Integer> degrees) {
  require_unit(degrees);
  const std::size_t m = degrees.size();
  const Integer big_l = lcm_of(degrees);
  if (!big_l.fits_slong_p()) fail(ErrorKind::UnsupportedDimension, "degrees too large");
  std::vector<std::int64_t> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = degrees[i].get_si();
  // Put the largest degree last; its coordinate is solved for.
  const auto top = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  std::swap(d[top], d[m - 1]);
  const std::int64_t l = big_l.get_si();
  std::vector<std::int64_t> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = l / d[i];

  Integer space = 1;
  for (std::size_t i = 0; i + 1 < m; ++i) space *= d[i];
  if (space > 50'000'000) fail(ErrorKind::UnsupportedDimension, "group too large to enumerate");

  std::vector<std::int64_t> divisors;
  for (std::int64_t k = 1; k <= l; ++k)
    if (l % k == 0) divisors.push_back(k);
  std::vector<std::int64_t> g(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[i * m + j] = std::gcd(d[i], d[j]);
  // k * a is a multiple of the diagonal iff its coordinates agree modulo pairwise gcds.
  auto on_diagonal = [&](const std::vector<std::int64_t>& a, std::int64_t k) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if ((k * (a[i] - a[j])) % g[i * m + j] != 0) return false;
    return true;
  };

  std::map<std::int64_t, std::int64_t> by_order;
  std::vector<std::int64_t> a(m, 0);
  while (true) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) s = (s + w[i] * a[i]) % l;
    if (s % w[m - 1] == 0) {
      a[m - 1] = (((-s / w[m - 1]) % d[m - 1]) + d[m - 1]) % d[m - 1];
      for (auto k : divisors)
        if (on_diagonal(a, k)) {
          ++by_order[k];
          break;
        }
    }
    std::size_t i = 0;
    while (i + 1 < m && ++a[i] == d[i]) a[i++] = 0;
    if (i + 1 == m) break;
  }

  // |H[k]| for prime powers k, each coset of the diagonal having l elements.
  auto torsion = [&](std::int64_t k) {
    std::int64_t c = 0;
    for (const auto& [order, count] : by_order)
      if (k % order == 0) c += count;
    return c / l;
  };
  std::vector<std::vector<std::size_t>> parts;  // per prime, exponents of cyclic factors
  std::vector<std::int64_t> primes;
  std::int64_t rest = l;
  for (std::int64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    std::size_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    std::vector<std::size_t> ranks;  // number of cyclic factors of exponent >= j
    std::int64_t prev = 1, pj = 1;
    for (std::size_t j = 1; j <= e; ++j) {
      pj *= p;
      const std::int64_t c = torsion(pj);
      std::size_t r = 0;
      for (std::int64_t q = c / prev; q > 1; q /= p) ++r;
      ranks.push_back(r);
      prev = c;
    }
    std::vector<std::size_t> exps;
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      const std::size_t next = j + 1 < ranks.size() ? ranks[j + 1] : 0;
      for (std::size_t c = next; c < ranks[j]; ++c) exps.push_back(j + 1);
    }
    std::sort(exps.rbegin(), exps.rend());
    primes.push_back(p);
    parts.push_back(std::move(exps));
  }
  std::size_t width = 0;
  for (const auto& e : parts) width = std::max(width, e.size());
  std::vector<Integer> factors(width, Integer(1));
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t k = 0; k < parts[i].size(); ++k) {
      Integer pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(primes[i]), parts[i][k]);
      factors[k] *= pk;
    }
  std::reverse(factors.begin(), factors.end());
  return quotient_from_diagonal(factors, factors.size());
}

FermatGroup fermat_group(std::span<const Integer> degrees) {
  require_unit(degrees);
  const auto pair = weighted_simplex(degrees);
  const auto simplex = pair.in_lattice_coordinates();
  FermatGroup out;
  out.group = lattice_quotient(simplex.vertices(), simplex.dim());
  const auto kernel = fermat_character_kernel(degrees);
  if (!(kernel == out.group))
    violated("character kernel " + kernel.to_string() + " differs from the lattice quotient " +
             out.group.to_string());
  out.order = out.group.order();
  Integer product = 1;
  for (const auto& d : degrees) product *= d;
  const Integer l = lcm_of(degrees);
  if (out.order * l * l != product) violated("group order differs from the product of degrees over lcm^2");
  return out;
}

bool is_selfdual_simplex(const LatticePolytope& p) {
  const auto ws = simplex_weights(p);  // B(p*) is the transpose of B(p), checked symmetric there
  const auto pair = ReflexivePair::make(p, Lattice::standard(p.dim()));
  const auto a = maximal_pair(pair).in_lattice_coordinates();
  const auto b = maximal_pair(dual_pair(pair)).in_lattice_coordinates();
  return ws.b == ws.b.transposed() && normal_form(a) == normal_form(b);
}

}  // namespace reflexive
