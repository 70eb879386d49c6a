#pragma once

// Exact integer and rational linear algebra.
//
// Every geometric predicate in the library bottoms out here. Integers are
// GMP integers, rationals are GMP rationals kept in canonical form
// (reduced, positive denominator). Nothing in this header touches floating
// point.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace unicover {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Thrown when operand shapes do not fit (non-square determinant, ragged rows...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows);
  static IntMatrix from_columns(std::span<const IntVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntVector operator*(const IntVector& v) const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// ---- vector helpers -------------------------------------------------------

RatVector to_rational(const IntVector& v);
bool is_integral(const RatVector& v);
/// Requires is_integral(v).
IntVector to_integer(const RatVector& v);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const RatVector& b);
Rational dot(const IntVector& a, const RatVector& b);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Integer& s, const IntVector& v);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& s, const RatVector& v);

Integer gcd_of(const IntVector& v);
/// Least common multiple of the denominators.
Integer common_denominator(const RatVector& v);

/// Positive primitive multiple of a nonzero rational direction.
IntVector primitive_direction(const RatVector& v);

/// v divided by the gcd of its coordinates. Throws DomainError on the zero vector.
IntVector primitive_vector(const IntVector& v);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

// ---- determinants and normal forms ----------------------------------------

/// Exact determinant (fraction-free Bareiss elimination).
Integer integer_determinant(const IntMatrix& m);

/// Exact determinant of a square rational matrix given by rows.
Rational rational_determinant(std::vector<RatVector> rows);

struct SmithForm {
  std::vector<Integer> diagonal;  // min(rows, cols) entries, d_i | d_{i+1}, all >= 0
  IntMatrix left;                 // rows x rows, det = +-1
  IntMatrix right;                // cols x cols, det = +-1
};

/// left * m * right = diag(diagonal).
SmithForm smith_normal_form(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;  // row echelon form, pivots > 0, entries above a pivot in [0, pivot)
  IntMatrix u;  // unimodular, u * m = h
  std::vector<std::size_t> pivot_columns;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(std::span<const IntVector> rows);
std::size_t rank(std::span<const RatVector> rows);

/// Basis (as rows) of the Z-span of the given integer rows.
std::vector<IntVector> lattice_basis(std::span<const IntVector> rows);

/// Basis of Z^n intersected with the real span of the given rows (the
/// saturation). Rows of the result span the same real subspace.
std::vector<IntVector> saturated_basis(std::span<const IntVector> rows);

/// Inverse of a square nonsingular rational matrix given by rows.
std::vector<RatVector> inverse(const std::vector<RatVector>& rows);

// ---- linear systems --------------------------------------------------------

struct LinearSolution {
  enum class Status { unique, non_unique, none };
  Status status = Status::none;
  RatVector x;  // a particular solution unless status == none

  bool consistent() const { return status != Status::none; }
};

/// Solves a * x = b exactly (a given by rows).
LinearSolution solve_linear_rational(const std::vector<RatVector>& a, const RatVector& b);
LinearSolution solve_linear_rational(const IntMatrix& a, const RatVector& b);

/// Coefficients x with sum_i x_i * columns[i] = target, when they exist and are unique.
std::optional<RatVector> solve_in_columns(std::span<const RatVector> columns, const RatVector& target);
std::optional<RatVector> solve_in_columns(std::span<const IntVector> columns, const RatVector& target);

// ---- misc -----------------------------------------------------------------

/// num/den in lowest terms; den must be nonzero.
Rational fraction(const Integer& num, const Integer& den);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Rational frac_of(const Rational& q);
Rational pow(const Rational& base, long exponent);
/// Smallest integer n >= 0 with n*n >= q (q >= 0).
Integer ceil_sqrt(const Rational& q);

}  // namespace unicover
