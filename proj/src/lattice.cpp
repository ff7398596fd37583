#include "reflexive/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "reflexive/error.hpp"

namespace reflexive {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoPositiveRelation: return "NoPositiveRelation";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::NonPrimitiveNormal: return "NonPrimitiveNormal";
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorKind::FanNotComplete: return "FanNotComplete";
    case ErrorKind::NotGorenstein: return "NotGorenstein";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::MalformedTriangulation: return "MalformedTriangulation";
    case ErrorKind::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorKind::DimensionBelowFour: return "DimensionBelowFour";
    case ErrorKind::DimensionNotFour: return "DimensionNotFour";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::NotASimplex: return "NotASimplex";
    case ErrorKind::DegreesNotUnit: return "DegreesNotUnit";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::StoreCorrupt: return "StoreCorrupt";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t width) {
  if (!rows.empty()) width = rows.front().size();
  IntMatrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) fail(ErrorKind::InvariantViolation, "ragged rows in IntMatrix::from_rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row_span(i).begin());
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  auto r = row_span(i);
  return {r.begin(), r.end()};
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix_rows(std::size_t begin, std::size_t end) const {
  IntMatrix s(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i - begin, j) = (*this)(i, j);
  return s;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (auto& x : row_span(i)) x = -x;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << reflexive::to_string(row_span(i));
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::InvariantViolation, "matrix dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntVector operator*(const IntVector& x, const IntMatrix& a) {
  if (x.size() != a.rows()) fail(ErrorKind::InvariantViolation, "vector/matrix dimension mismatch");
  IntVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a(i, j);
  }
  return y;
}

// ---------------------------------------------------------------------------
// vectors

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

bool is_primitive(std::span<const Integer> v) { return content(v) == 1; }

IntVector primitive_part(std::span<const Integer> v) {
  Integer g = content(v);
  IntVector out(v.begin(), v.end());
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVector subtract(std::span<const Integer> a, std::span<const Integer> b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool lex_less(std::span<const Integer> a, std::span<const Integer> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(std::span<const Integer> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

Integer lcm_of(std::span<const Integer> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_mpz_t());
  return l;
}

// ---------------------------------------------------------------------------
// determinant / rank

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::InvariantViolation, "determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  return hermite_normal_form(m).rank;
}

std::size_t affine_rank(std::span<const IntVector> points) {
  if (points.size() <= 1) return 0;
  std::vector<IntVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(subtract(points[i], points[0]));
  return rank(IntMatrix::from_rows(diffs));
}

// ---------------------------------------------------------------------------
// Hermite normal form

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out;
  out.h = m;
  out.u = IntMatrix::identity(m.rows());
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const std::size_t rows = m.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows; ++c) {
    bool pivot = false;
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        if (best == rows || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == rows) break;
      pivot = true;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool remaining = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
        h.add_row_multiple(i, r, -q);
        u.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) remaining = true;
      }
      if (!remaining) break;
    }
    if (!pivot) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Pos {
  std::size_t i, j;
};

// Smallest nonzero |d(i,j)| with i, j >= t.
std::optional<Pos> smallest_in_block(const IntMatrix& d, std::size_t t) {
  std::optional<Pos> best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      if (!best || abs(d(i, j)) < abs(d(best->i, best->j))) best = Pos{i, j};
    }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out;
  out.d = m;
  out.u = IntMatrix::identity(m.rows());
  out.v = IntMatrix::identity(m.cols());
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto start = smallest_in_block(d, t);
    if (!start) break;
    d.swap_rows(t, start->i);
    u.swap_rows(t, start->i);
    d.swap_cols(t, start->j);
    v.swap_cols(t, start->j);
    while (true) {
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
      }
      // Remainders left in the pivot row/column are smaller than the pivot.
      std::optional<Pos> smaller;
      for (std::size_t i = t + 1; i < d.rows(); ++i)
        if (d(i, t) != 0 && (!smaller || abs(d(i, t)) < abs(d(smaller->i, smaller->j)))) smaller = Pos{i, t};
      for (std::size_t j = t + 1; j < d.cols(); ++j)
        if (d(t, j) != 0 && (!smaller || abs(d(t, j)) < abs(d(smaller->i, smaller->j)))) smaller = Pos{t, j};
      if (smaller) {
        if (smaller->j == t) {
          d.swap_rows(t, smaller->i);
          u.swap_rows(t, smaller->i);
        } else {
          d.swap_cols(t, smaller->j);
          v.swap_cols(t, smaller->j);
        }
        continue;
      }
      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < d.rows() && !offending_row; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            offending_row = i;
            break;
          }
      if (!offending_row) break;
      d.add_row_multiple(t, *offending_row, 1);
      u.add_row_multiple(t, *offending_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

// ---------------------------------------------------------------------------
// quotients and kernels

Integer AbelianQuotient::order() const {
  Integer o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

std::string AbelianQuotient::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& f : invariant_factors) {
    if (!first) os << " + ";
    os << "Z/" << f;
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " + ";
    os << "Z^" << free_rank;
  }
  return os.str();
}

AbelianQuotient quotient_from_diagonal(std::span<const Integer> diagonal, std::size_t ambient_rank) {
  AbelianQuotient q;
  std::size_t nonzero = 0;
  for (const auto& x : diagonal) {
    if (x == 0) continue;
    ++nonzero;
    Integer a = abs(x);
    if (a > 1) q.invariant_factors.push_back(a);
  }
  std::sort(q.invariant_factors.begin(), q.invariant_factors.end());
  q.free_rank = ambient_rank - nonzero;
  return q;
}

AbelianQuotient lattice_quotient(std::span<const IntVector> generators, std::size_t ambient_rank) {
  if (generators.empty()) return AbelianQuotient{{}, ambient_rank};
  const IntMatrix m = IntMatrix::from_rows(generators);
  if (m.cols() != ambient_rank) fail(ErrorKind::InvariantViolation, "generator rank mismatch in lattice_quotient");
  const SmithForm s = smith_normal_form(m);
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < s.rank; ++i) diag.push_back(s.d(i, i));
  return quotient_from_diagonal(diag, ambient_rank);
}

IntMatrix left_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  return s.u.submatrix_rows(s.rank, m.rows());
}

IntMatrix saturated_basis(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  // Row space of m equals the span of the first rank rows of v^{-1}.
  const HermiteForm inv = hermite_normal_form(s.v);
  const IntMatrix vinv = inv.u;  // inv.u * v = I
  return hermite_normal_form(vinv.submatrix_rows(0, s.rank)).h;
}

std::optional<IntVector> solve_integral(const IntMatrix& a, std::span<const Integer> b) {
  const SmithForm s = smith_normal_form(a);
  const IntVector c = IntVector(b.begin(), b.end()) * s.v;
  IntVector y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (j < s.rank) {
      if (!mpz_divisible_p(c[j].get_mpz_t(), s.d(j, j).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[j].get_mpz_t(), c[j].get_mpz_t(), s.d(j, j).get_mpz_t());
    } else if (c[j] != 0) {
      return std::nullopt;
    }
  }
  return y * s.u;
}

std::optional<RatVector> solve_rational(const IntMatrix& a, std::span<const Integer> b) {
  const SmithForm s = smith_normal_form(a);
  const IntVector c = IntVector(b.begin(), b.end()) * s.v;
  RatVector y(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (j < s.rank) {
      y[j] = Rational(c[j], s.d(j, j));
      y[j].canonicalize();
    } else if (c[j] != 0) {
      return std::nullopt;
    }
  }
  RatVector x(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < a.rows(); ++j) x[j] += y[i] * s.u(i, j);
  }
  return x;
}

ScaledInverse scaled_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::InvariantViolation, "inverse of a non-square matrix");
  std::vector<RatVector> a(n, RatVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(ErrorKind::InvariantViolation, "singular matrix has no inverse");
    std::swap(a[p], a[c]);
    const Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ScaledInverse out;
  out.det = abs(determinant(m));
  out.adjugate = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = a[i][n + j] * out.det;
      out.adjugate(i, j) = v.get_num();
    }
  return out;
}

IntVector primitive_relation(std::span<const IntVector> points) {
  if (points.empty()) fail(ErrorKind::NoPositiveRelation, "empty point set");
  const IntMatrix p = IntMatrix::from_rows(points);
  const IntMatrix k = left_kernel(p);
  if (k.rows() != 1)
    fail(ErrorKind::NoPositiveRelation,
         "relation space has dimension " + std::to_string(k.rows()) + ", expected 1");
  IntVector w = primitive_part(k.row_span(0));
  if (w[0] < 0)
    for (auto& x : w) x = -x;
  for (const auto& x : w)
    if (x <= 0) fail(ErrorKind::NoPositiveRelation, "relation " + to_string(w) + " is not strictly positive");
  return w;
}

}  // namespace reflexive
