#include "unicover/exactmath.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

namespace unicover {

// ---- IntMatrix -------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows) {
  if (rows.empty()) return IntMatrix();
  const std::size_t cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns) {
  return from_rows(columns).transpose();
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(target, c) += factor * (*this)(source, c);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, target) += factor * (*this)(r, source);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product size mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

// ---- vector helpers -------------------------------------------------------

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntVector to_integer(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) {
    if (q.get_den() != 1) throw DomainError("vector is not integral: " + to_string(v));
    out.push_back(q.get_num());
  }
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum size mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference size mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector operator*(const Integer& s, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum size mismatch");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference size mismatch");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector operator*(const Rational& s, const RatVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer common_denominator(const RatVector& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

IntVector primitive_direction(const RatVector& v) {
  const Integer den = common_denominator(v);
  IntVector scaled;
  scaled.reserve(v.size());
  for (const auto& q : v) scaled.push_back(q.get_num() * (den / q.get_den()));
  return primitive_vector(scaled);
}

IntVector primitive_vector(const IntVector& v) {
  const Integer g = gcd_of(v);
  if (g == 0) throw DomainError("primitive_vector: zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const RatVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

// ---- determinants -----------------------------------------------------------

Integer integer_determinant(const IntMatrix& m) {
  if (!m.square()) throw DimensionError("integer_determinant: matrix is not square");
  const std::size_t n = m.rows();
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
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational rational_determinant(std::vector<RatVector> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k].size() != n) throw DimensionError("rational_determinant: matrix is not square");
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// ---- Smith normal form ------------------------------------------------------

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);

  auto row_op = [&](std::size_t target, std::size_t source, const Integer& f) {
    a.add_row_multiple(target, source, f);
    left.add_row_multiple(target, source, f);
  };
  auto col_op = [&](std::size_t target, std::size_t source, const Integer& f) {
    a.add_col_multiple(target, source, f);
    right.add_col_multiple(target, source, f);
  };

  for (std::size_t t = 0; t < steps; ++t) {
    bool finished = false;
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (pr == rows || abs(a(i, j)) < abs(a(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      if (pr == rows) {
        finished = true;
        break;
      }
      a.swap_rows(t, pr);
      left.swap_rows(t, pr);
      a.swap_cols(t, pc);
      right.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the remaining block by the pivot
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      row_op(t, bad_row, Integer(1));
    }
    if (finished) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
  }

  SmithForm out;
  out.diagonal.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal.push_back(a(i, i));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

// ---- Hermite normal form ----------------------------------------------------

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  std::vector<std::size_t> pivots;
  std::size_t p = 0;
  for (std::size_t j = 0; j < cols && p < rows; ++j) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = p; i < rows; ++i)
        if (a(i, j) != 0 && (best == rows || abs(a(i, j)) < abs(a(best, j)))) best = i;
      if (best == rows) break;
      a.swap_rows(p, best);
      u.swap_rows(p, best);
      bool clean = true;
      for (std::size_t i = p + 1; i < rows; ++i) {
        if (a(i, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(p, j).get_mpz_t());
        a.add_row_multiple(i, p, -q);
        u.add_row_multiple(i, p, -q);
        if (a(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(p, j) == 0) continue;
    if (a(p, j) < 0) {
      a.negate_row(p);
      u.negate_row(p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(p, j).get_mpz_t());
      a.add_row_multiple(i, p, -q);
      u.add_row_multiple(i, p, -q);
    }
    pivots.push_back(j);
    ++p;
  }
  return HermiteForm{std::move(a), std::move(u), std::move(pivots)};
}

std::size_t rank(std::span<const RatVector> rows_in) {
  std::vector<RatVector> a(rows_in.begin(), rows_in.end());
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < a.size(); ++j) {
    std::size_t p = r;
    while (p < a.size() && a[p][j] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][j] == 0) continue;
      const Rational f = a[i][j] / a[r][j];
      for (std::size_t k = j; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

std::size_t rank(std::span<const IntVector> rows) {
  std::vector<RatVector> q;
  q.reserve(rows.size());
  for (const auto& r : rows) q.push_back(to_rational(r));
  return rank(std::span<const RatVector>(q));
}

std::size_t rank(const IntMatrix& m) {
  const auto rows = m.row_vectors();
  return rank(std::span<const IntVector>(rows));
}

std::vector<IntVector> lattice_basis(std::span<const IntVector> rows) {
  if (rows.empty()) return {};
  const HermiteForm hf = hermite_normal_form(IntMatrix::from_rows(rows));
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < hf.pivot_columns.size(); ++i) out.push_back(hf.h.row(i));
  return out;
}

std::vector<RatVector> inverse(const std::vector<RatVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<RatVector> a = rows;
  std::vector<RatVector> inv(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw DimensionError("inverse: matrix is not square");
    inv[i][i] = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = j;
    while (p < n && a[p][j] == 0) ++p;
    if (p == n) throw DomainError("inverse: singular matrix");
    std::swap(a[p], a[j]);
    std::swap(inv[p], inv[j]);
    const Rational piv = a[j][j];
    for (std::size_t k = 0; k < n; ++k) {
      a[j][k] /= piv;
      inv[j][k] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || a[i][j] == 0) continue;
      const Rational f = a[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        a[i][k] -= f * a[j][k];
        inv[i][k] -= f * inv[j][k];
      }
    }
  }
  return inv;
}

std::vector<IntVector> saturated_basis(std::span<const IntVector> rows) {
  if (rows.empty()) return {};
  const IntMatrix m = IntMatrix::from_rows(rows);
  const SmithForm sf = smith_normal_form(m);
  std::size_t r = 0;
  while (r < sf.diagonal.size() && sf.diagonal[r] != 0) ++r;
  std::vector<RatVector> right;
  for (std::size_t i = 0; i < sf.right.rows(); ++i) right.push_back(to_rational(sf.right.row(i)));
  const auto right_inv = inverse(right);
  std::vector<IntVector> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) out.push_back(to_integer(right_inv[i]));
  return out;
}

// ---- linear systems ----------------------------------------------------------

LinearSolution solve_linear_rational(const std::vector<RatVector>& a_in, const RatVector& b) {
  const std::size_t m = a_in.size();
  if (b.size() != m) throw DimensionError("solve_linear_rational: right-hand side size mismatch");
  const std::size_t n = m == 0 ? 0 : a_in.front().size();
  std::vector<RatVector> a;
  a.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a_in[i].size() != n) throw DimensionError("solve_linear_rational: ragged matrix");
    RatVector row = a_in[i];
    row.push_back(b[i]);
    a.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t p = r;
    while (p < m && a[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    const Rational piv = a[r][j];
    for (std::size_t k = j; k <= n; ++k) a[r][k] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][j] == 0) continue;
      const Rational f = a[i][j];
      for (std::size_t k = j; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (a[i][n] != 0) return LinearSolution{LinearSolution::Status::none, {}};
  LinearSolution sol;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) sol.x[pivot_col[i]] = a[i][n];
  sol.status = r == n ? LinearSolution::Status::unique : LinearSolution::Status::non_unique;
  return sol;
}

LinearSolution solve_linear_rational(const IntMatrix& a, const RatVector& b) {
  std::vector<RatVector> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_rational(a.row(i)));
  return solve_linear_rational(rows, b);
}

std::optional<RatVector> solve_in_columns(std::span<const RatVector> columns, const RatVector& target) {
  const std::size_t n = target.size();
  std::vector<RatVector> rows(n, RatVector(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw DimensionError("solve_in_columns: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) rows[i][j] = columns[j][i];
  }
  LinearSolution s = solve_linear_rational(rows, target);
  if (s.status != LinearSolution::Status::unique) return std::nullopt;
  return std::move(s.x);
}

std::optional<RatVector> solve_in_columns(std::span<const IntVector> columns, const RatVector& target) {
  std::vector<RatVector> q;
  q.reserve(columns.size());
  for (const auto& c : columns) q.push_back(to_rational(c));
  return solve_in_columns(std::span<const RatVector>(q), target);
}

// ---- misc -------------------------------------------------------------------

Rational fraction(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("fraction: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac_of(const Rational& q) { return q - Rational(floor_of(q)); }

Rational pow(const Rational& base, long exponent) {
  Rational result = 1;
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  unsigned long e = exponent >= 0 ? static_cast<unsigned long>(exponent)
                                   : static_cast<unsigned long>(-exponent);
  while (e) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Integer ceil_sqrt(const Rational& q) {
  if (q <= 0) return 0;
  Integer s;
  const Integer c = ceil_of(q);
  mpz_sqrt(s.get_mpz_t(), c.get_mpz_t());
  while (Rational(s * s) < q) ++s;
  while (s > 0 && Rational((s - 1) * (s - 1)) >= q) --s;
  return s;
}

}  // namespace unicover
