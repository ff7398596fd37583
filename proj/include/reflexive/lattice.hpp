#pragma once

// Exact integer linear algebra: matrices over arbitrary-precision integers,
// Smith and Hermite normal forms, lattice quotients and integer kernels.
//
// Vectors are treated as row vectors throughout: a linear map is applied as
// x * A, and the rows of a matrix are the generators of a lattice.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reflexive {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  // All rows must have the same length. An empty list yields a 0 x width matrix.
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t width = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> row_vectors() const;

  IntMatrix transposed() const;
  IntMatrix submatrix_rows(std::size_t begin, std::size_t end) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
// Row vector times matrix.
IntVector operator*(const IntVector& x, const IntMatrix& a);

Integer dot(std::span<const Integer> a, std::span<const Integer> b);
// gcd of the entries; 0 for the zero vector.
Integer content(std::span<const Integer> v);
bool is_primitive(std::span<const Integer> v);
// v divided by its content (zero vector is returned unchanged).
IntVector primitive_part(std::span<const Integer> v);
IntVector subtract(std::span<const Integer> a, std::span<const Integer> b);
bool lex_less(std::span<const Integer> a, std::span<const Integer> b);
std::string to_string(std::span<const Integer> v);

// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);
// Rank of the affine span of a point set.
std::size_t affine_rank(std::span<const IntVector> points);

struct SmithForm {
  IntMatrix d;  // diagonal, d(0,0) | d(1,1) | ..., nonnegative
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix v;  // unimodular, cols x cols
  std::size_t rank = 0;
};

// u * m * v = d.
SmithForm smith_normal_form(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;  // row-style echelon form, positive pivots, reduced above pivots
  IntMatrix u;  // unimodular with u * m = h
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

// Finitely generated abelian group Z^free_rank + Z/f1 + ... + Z/fk with
// f1 | f2 | ... | fk and every fi > 1.
struct AbelianQuotient {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  bool trivial() const { return invariant_factors.empty() && free_rank == 0; }
  bool finite() const { return free_rank == 0; }
  // Order of the torsion part (the group order when finite).
  Integer order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianQuotient&, const AbelianQuotient&) = default;
};

// Invariant factors read off a diagonal with the divisibility chain; 1s dropped.
AbelianQuotient quotient_from_diagonal(std::span<const Integer> diagonal, std::size_t ambient_rank);

// Z^ambient_rank / span(generators).
AbelianQuotient lattice_quotient(std::span<const IntVector> generators, std::size_t ambient_rank);

// The unique primitive strictly positive w with sum_i w_i * points[i] = 0.
// Throws ErrorKind::NoPositiveRelation otherwise.
IntVector primitive_relation(std::span<const IntVector> points);

// Rows form a basis of { x in Z^m.rows() : x * m = 0 }.
IntMatrix left_kernel(const IntMatrix& m);

// Rows form a basis of span_Q(rows of m) intersected with Z^cols.
IntMatrix saturated_basis(const IntMatrix& m);

// Integral solution x of x * a = b, if one exists.
std::optional<IntVector> solve_integral(const IntMatrix& a, std::span<const Integer> b);
// Rational solution x of x * a = b, if one exists (minimal support on the pivot rows).
std::optional<RatVector> solve_rational(const IntMatrix& a, std::span<const Integer> b);

// Exact inverse over the rationals of a square nonsingular matrix, as (adjugate, det)
// with adjugate * m = det * I and det > 0.
struct ScaledInverse {
  IntMatrix adjugate;
  Integer det;
};
ScaledInverse scaled_inverse(const IntMatrix& m);

Integer lcm_of(std::span<const Integer> values);

}  // namespace reflexive
