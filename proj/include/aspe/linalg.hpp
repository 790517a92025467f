#pragma once

// Exact linear algebra over the rationals.
//
// Every "real" handled by the scheme lives on a fixed-point grid, so all
// arithmetic here is exact: rank and span decisions never depend on a
// tolerance. Scalars are GMP rationals, which stay in canonical form
// (positive denominator, coprime parts) after every arithmetic operation.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspe {

using Scalar = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws kParseError on den == 0.
Scalar make_scalar(const Integer& num, const Integer& den);

/// "p/q" with q > 0 and gcd(|p|, q) = 1; integers are written "p/1".
std::string scalar_to_string(const Scalar& x);

/// Accepts "p/q" or a plain integer "p"; the result is canonicalized.
Scalar scalar_from_string(std::string_view text);

bool is_canonical(const Scalar& x);

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t size) : entries_(size) {}
  explicit Vector(std::vector<Scalar> entries) : entries_(std::move(entries)) {}
  Vector(std::initializer_list<Scalar> entries) : entries_(entries) {}

  static Vector zeros(std::size_t size) { return Vector(size); }
  static Vector unit(std::size_t size, std::size_t index);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Scalar> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool is_zero() const;

  /// Contiguous copy of entries [first, first + count).
  Vector slice(std::size_t first, std::size_t count) const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(const Scalar& factor);

  friend Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
  friend Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
  friend Vector operator*(Vector lhs, const Scalar& factor) { return lhs *= factor; }
  friend Vector operator*(const Scalar& factor, Vector rhs) { return rhs *= factor; }
  friend bool operator==(const Vector& lhs, const Vector& rhs) = default;

 private:
  std::vector<Scalar> entries_;
};

/// Sum of squared entries.
Scalar squared_norm(const Vector& v);

/// Concatenation of the given pieces in order.
Vector concat(std::initializer_list<const Vector*> pieces);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;

  friend bool operator==(const Matrix& lhs, const Matrix& rhs) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

Matrix operator*(const Matrix& lhs, const Matrix& rhs);

/// Row vector times matrix.
Vector operator*(const Vector& row, const Matrix& m);

/// A matrix stored as an integer grid over one common denominator.
///
/// Multiplying a row vector through this form costs one big-integer
/// multiply-add per entry and a single canonicalization per output
/// coordinate, which is what makes encryption at eta ~ 140 cheap.
class ScaledMatrix {
 public:
  ScaledMatrix() = default;
  explicit ScaledMatrix(const Matrix& m);
  /// numerators / denominator, entry by entry. Throws kParseError on a zero
  /// denominator and kDimensionMismatch on a wrong numerator count.
  ScaledMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> numerators, Integer denominator);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  /// row * m, exact.
  Vector left_multiply(const Vector& row) const;

  /// Canonical rational form.
  Matrix to_matrix() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> numerators_;  // row-major
  Integer denominator_ = 1;
};

/// Exact inverse. Denominators are cleared row by row, the integer matrix
/// is inverted modulo a run of 62-bit primes, and the adjugate and
/// determinant are recovered by Chinese remaindering.
/// Throws kNonSquare or kNotInvertible.
Matrix mat_invert(const Matrix& m);

/// mat_invert without the per-entry canonicalization.
ScaledMatrix mat_invert_scaled(const Matrix& m);

/// Exact inverse by fraction-free (Bareiss) Gauss-Jordan elimination. Same
/// contract as mat_invert; slower, kept as an independent route.
Matrix mat_invert_fraction_free(const Matrix& m);

/// Exact rank by rational Gaussian elimination (first nonzero pivot).
std::size_t rank(const Matrix& m);

/// A linearly independent set of vectors with a cached echelon form.
///
/// The echelon rows are kept as primitive integer vectors, each with a
/// distinct pivot column and zeros at the pivots of earlier rows. A span
/// query reduces the candidate against the rows in insertion order, which
/// costs O(rank * dim) big-integer operations.
class Basis {
 public:
  explicit Basis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return vectors_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }

  /// True iff v is a linear combination of the basis vectors.
  /// Throws kDimensionMismatch.
  bool contains(const Vector& v) const;

  /// Appends v. Throws kRedundantVector when v is already in the span.
  void insert(const Vector& v);

 private:
  using IntRow = std::vector<Integer>;

  IntRow to_primitive_row(const Vector& v) const;
  void reduce(IntRow& row) const;

  std::size_t dim_;
  std::vector<Vector> vectors_;
  std::vector<IntRow> echelon_;
  std::vector<std::size_t> pivots_;
};

bool in_span(const Basis& basis, const Vector& v);
Basis basis_insert(Basis basis, const Vector& v);

}  // namespace aspe
