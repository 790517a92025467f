#include "aspe/linalg.hpp"

#include <algorithm>
#include <cctype>

#include "aspe/error.hpp"
#include "modular.hpp"

namespace aspe {

namespace {

void check_same_size(const Vector& lhs, const Vector& rhs) {
  if (lhs.size() != rhs.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector sizes " + std::to_string(lhs.size()) + " and " + std::to_string(rhs.size()));
  }
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

Integer lcm_of_denominators(std::span<const Scalar> xs) {
  Integer l = 1;
  for (const auto& x : xs) {
    if (x.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  return l;
}

// Numerators of xs scaled onto the common denominator l.
std::vector<Integer> scale_to(std::span<const Scalar> xs, const Integer& l) {
  std::vector<Integer> out(xs.size());
  Integer factor;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0) continue;
    mpz_divexact(factor.get_mpz_t(), l.get_mpz_t(), xs[i].get_den_mpz_t());
    out[i] = xs[i].get_num() * factor;
  }
  return out;
}

}  // namespace

Scalar make_scalar(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::kParseError, "zero denominator");
  Scalar x(num, den);
  x.canonicalize();
  return x;
}

std::string scalar_to_string(const Scalar& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Scalar scalar_from_string(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  std::string_view num_digits = num.starts_with('-') ? num.substr(1) : num;
  if (!is_digits(num_digits) || !is_digits(den)) {
    throw Error(ErrorCode::kParseError, "malformed scalar '" + std::string(text) + "'");
  }
  return make_scalar(Integer(std::string(num)), Integer(std::string(den)));
}

bool is_canonical(const Scalar& x) {
  if (x.get_den() <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return g == 1;
}

// ---------------------------------------------------------------------------
// Vector

Vector Vector::unit(std::size_t size, std::size_t index) {
  Vector v(size);
  v[index] = 1;
  return v;
}

bool Vector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& x) { return x == 0; });
}

Vector Vector::slice(std::size_t first, std::size_t count) const {
  if (first + count > size()) {
    throw Error(ErrorCode::kDimensionMismatch, "slice out of range");
  }
  return Vector(std::vector<Scalar>(entries_.begin() + first, entries_.begin() + first + count));
}

Vector& Vector::operator+=(const Vector& other) {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  check_same_size(*this, other);
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other[i];
  return *this;
}

Vector& Vector::operator*=(const Scalar& factor) {
  for (auto& x : entries_) x *= factor;
  return *this;
}

Scalar squared_norm(const Vector& v) {
  Scalar acc = 0;
  for (const auto& x : v) acc += x * x;
  return acc;
}

Vector concat(std::initializer_list<const Vector*> pieces) {
  std::vector<Scalar> out;
  for (const Vector* piece : pieces) out.insert(out.end(), piece->begin(), piece->end());
  return Vector(std::move(out));
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> row_major)
    : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix grid does not have rows*cols entries");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw Error(ErrorCode::kDimensionMismatch, "ragged row list");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(std::vector<Scalar>(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_));
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw Error(ErrorCode::kDimensionMismatch, "matrix product shapes");
  const ScaledMatrix scaled(rhs);
  std::vector<Vector> rows;
  rows.reserve(lhs.rows());
  for (std::size_t i = 0; i < lhs.rows(); ++i) rows.push_back(scaled.left_multiply(lhs.row(i)));
  if (rows.empty()) return Matrix(0, rhs.cols());
  return Matrix::from_rows(rows);
}

Vector operator*(const Vector& row, const Matrix& m) {
  if (row.size() != m.rows()) throw Error(ErrorCode::kDimensionMismatch, "row vector times matrix");
  Vector out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (row[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ScaledMatrix

ScaledMatrix::ScaledMatrix(const Matrix& m) : rows_(m.rows()), cols_(m.cols()) {
  std::vector<Scalar> flat;
  flat.reserve(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) flat.push_back(m(r, c));
  }
  denominator_ = lcm_of_denominators(flat);
  numerators_ = scale_to(flat, denominator_);
}

ScaledMatrix::ScaledMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> numerators,
                           Integer denominator)
    : rows_(rows), cols_(cols), numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
  if (numerators_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "scaled matrix needs " + std::to_string(rows_ * cols_) + " numerators");
  }
  if (denominator_ == 0) throw Error(ErrorCode::kParseError, "zero denominator");
  if (denominator_ < 0) {
    denominator_ = -denominator_;
    for (auto& x : numerators_) x = -x;
  }
}

Matrix ScaledMatrix::to_matrix() const {
  Matrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = make_scalar(numerators_[r * cols_ + c], denominator_);
  }
  return out;
}

Vector ScaledMatrix::left_multiply(const Vector& row) const {
  if (row.size() != rows_) throw Error(ErrorCode::kDimensionMismatch, "row vector times matrix");
  const Integer row_den = lcm_of_denominators(row.entries());
  const std::vector<Integer> row_num = scale_to(row.entries(), row_den);
  const Integer den = row_den * denominator_;

  std::vector<Integer> acc(cols_);
  for (std::size_t k = 0; k < rows_; ++k) {
    if (row_num[k] == 0) continue;
    const Integer* m_row = &numerators_[k * cols_];
    for (std::size_t j = 0; j < cols_; ++j) {
      mpz_addmul(acc[j].get_mpz_t(), row_num[k].get_mpz_t(), m_row[j].get_mpz_t());
    }
  }
  Vector out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = make_scalar(acc[j], den);
  return out;
}

// ---------------------------------------------------------------------------
// Inversion and rank

namespace {

// m = diag(row_scale)^-1 * A with A integral, so m^-1 = A^-1 * diag(row_scale).
struct ClearedRows {
  std::vector<Integer> row_scale;
  std::vector<Integer> entries;  // A, row-major
};

ClearedRows clear_row_denominators(const Matrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::kNonSquare,
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix has no inverse");
  }
  const std::size_t n = m.rows();
  ClearedRows out;
  out.row_scale.resize(n);
  out.entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = m(i, j);
    out.row_scale[i] = lcm_of_denominators(r);
    for (auto& x : scale_to(r, out.row_scale[i])) out.entries.push_back(std::move(x));
  }
  return out;
}

}  // namespace

ScaledMatrix mat_invert_scaled(const Matrix& m) {
  const std::size_t n = m.rows();
  const ClearedRows cleared = clear_row_denominators(m);
  auto inverse = detail::invert_multimodular(cleared.entries, n);
  if (!inverse) throw Error(ErrorCode::kNotInvertible, "matrix is singular");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse->adjugate[i * n + j] *= cleared.row_scale[j];
  }
  return ScaledMatrix(n, n, std::move(inverse->adjugate), std::move(inverse->det));
}

Matrix mat_invert(const Matrix& m) { return mat_invert_scaled(m).to_matrix(); }

Matrix mat_invert_fraction_free(const Matrix& m) {
  const std::size_t n = m.rows();
  const ClearedRows cleared = clear_row_denominators(m);
  const std::vector<Integer>& row_scale = cleared.row_scale;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cleared.entries[i * n + j];
    a[i][n + i] = 1;
  }

  // Fraction-free Gauss-Jordan on [A | I]. Every division is exact; on exit
  // the left block is prev * I and the right block is prev * A^-1.
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw Error(ErrorCode::kNotInvertible, "matrix is singular");
    std::swap(a[p], a[k]);

    const mpz_srcptr pivot = a[k][k].get_mpz_t();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const mpz_srcptr factor = a[i][k].get_mpz_t();
      for (std::size_t j = k + 1; j < 2 * n; ++j) {
        mpz_mul(t.get_mpz_t(), pivot, a[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), factor, a[k][j].get_mpz_t());
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      if (i < k) a[i][i] = a[k][k];
      a[i][k] = 0;
    }
    prev = a[k][k];
  }

  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = make_scalar(a[i][n + j] * row_scale[j], prev);
  }
  return inv;
}

std::size_t rank(const Matrix& m) {
  Matrix w = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
    std::size_t p = r;
    while (p < w.rows() && w(p, c) == 0) ++p;
    if (p == w.rows()) continue;
    if (p != r) {
      for (std::size_t j = c; j < w.cols(); ++j) std::swap(w(p, j), w(r, j));
    }
    const Scalar inv_pivot = 1 / w(r, c);
    for (std::size_t j = c; j < w.cols(); ++j) w(r, j) *= inv_pivot;
    for (std::size_t i = r + 1; i < w.rows(); ++i) {
      if (w(i, c) == 0) continue;
      const Scalar factor = w(i, c);
      for (std::size_t j = c; j < w.cols(); ++j) w(i, j) -= factor * w(r, j);
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Basis

namespace {

void make_primitive(std::vector<Integer>& row) {
  Integer g = 0;
  for (const auto& x : row) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& x : row) {
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

Basis::IntRow Basis::to_primitive_row(const Vector& v) const {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector of size " + std::to_string(v.size()) + " against basis of dimension " +
                    std::to_string(dim_));
  }
  IntRow row = scale_to(v.entries(), lcm_of_denominators(v.entries()));
  make_primitive(row);
  return row;
}

void Basis::reduce(IntRow& row) const {
  Integer g, a, b;
  for (std::size_t r = 0; r < echelon_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (row[p] == 0) continue;
    const IntRow& e = echelon_[r];
    // row <- a*row - b*e with a*row[p] == b*e[p].
    mpz_gcd(g.get_mpz_t(), e[p].get_mpz_t(), row[p].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), e[p].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), row[p].get_mpz_t(), g.get_mpz_t());
    for (std::size_t j = 0; j < dim_; ++j) {
      if (row[j] != 0) row[j] *= a;
      if (e[j] != 0) mpz_submul(row[j].get_mpz_t(), b.get_mpz_t(), e[j].get_mpz_t());
    }
    make_primitive(row);
  }
}

bool Basis::contains(const Vector& v) const {
  IntRow row = to_primitive_row(v);
  reduce(row);
  return std::all_of(row.begin(), row.end(), [](const Integer& x) { return x == 0; });
}

void Basis::insert(const Vector& v) {
  IntRow row = to_primitive_row(v);
  reduce(row);
  const auto it = std::find_if(row.begin(), row.end(), [](const Integer& x) { return x != 0; });
  if (it == row.end()) throw Error(ErrorCode::kRedundantVector, "vector already lies in the span");
  pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
  echelon_.push_back(std::move(row));
  vectors_.push_back(v);
}

bool in_span(const Basis& basis, const Vector& v) { return basis.contains(v); }

Basis basis_insert(Basis basis, const Vector& v) {
  basis.insert(v);
  return basis;
}

}  // namespace aspe
