#pragma once

// Exact integer and rational linear algebra on top of GMP.
//
// Everything here is value-semantic and free of floating point. The lattice
// helpers (Hermite normal form, primitive vectors, basis completion) are the
// substrate for unimodular transformations used throughout the library.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/error.hpp"

namespace polyrank {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()) {
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(ErrorKind::DimensionMismatch, "row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) fail(ErrorKind::DimensionMismatch, "column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Scalars

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline int sign_of(const Integer& a) { return sgn(a); }
inline int sign_of(const Rational& a) { return sgn(a); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// ---------------------------------------------------------------------------
// Vectors

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product of different lengths");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  return dot<Integer>(std::span<const Integer>(a), std::span<const Integer>(b));
}
inline Rational dot(const RatVector& a, const RatVector& b) {
  return dot<Rational>(std::span<const Rational>(a), std::span<const Rational>(b));
}
inline Rational dot(const IntVector& a, const RatVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product of different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

inline bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
}

inline IntVector to_integer(const RatVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) fail(ErrorKind::NotIntegral, "vector has a fractional entry");
    out[i] = v[i].get_num();
  }
  return out;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}
inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd_of(g, x);
  return g;
}

/// Divides out the gcd of the entries.
inline IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) fail(ErrorKind::ZeroVector, "primitive() of the zero vector");
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

/// Positive multiple of a rational vector with coprime integer entries
/// (zero stays zero).
inline IntVector primitive_multiple(const RatVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm_of(l, q.get_den());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
  }
  Integer g = content(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector difference");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector sum");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector difference");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "vector sum");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVector scaled(const RatVector& a, const Rational& s) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

/// Canonical representative of the line spanned by v: primitive with first
/// nonzero entry positive.
inline IntVector line_representative(const IntVector& v) {
  IntVector p = primitive(v);
  for (const auto& x : p) {
    if (x != 0) {
      if (x < 0) p = negated(std::move(p));
      break;
    }
  }
  return p;
}

template <class T>
std::string to_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Matrix products

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::DimensionMismatch, "matrix product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntVector operator*(const IntMatrix& m, const IntVector& v) {
  if (m.cols() != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector product");
  IntVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline RatVector operator*(const IntMatrix& m, const RatVector& v) {
  if (m.cols() != v.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector product");
  RatVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += Rational(m(i, j)) * v[j];
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Determinant, rank, elimination

/// Fraction-free (Bareiss) determinant.
inline Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
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
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline Rational det(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rational d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

struct RowEchelon {
  RatMatrix reduced;                 // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form over the rationals.
inline RowEchelon rref(RatMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  RatMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return {std::move(out), std::move(pivots)};
}

inline std::size_t rank_of(const RatMatrix& a) { return rref(a).pivots.size(); }
inline std::size_t rank_of(const IntMatrix& a) { return rank_of(to_rational(a)); }

inline std::size_t rank_of(const std::vector<IntVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank_of(IntMatrix::from_rows(vectors, dim));
}

/// Some solution of M x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
inline std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) fail(ErrorKind::DimensionMismatch, "right-hand side length differs from row count");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  RatVector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

inline std::optional<RatVector> solve_rational(const IntMatrix& m, const RatVector& b) {
  return solve_rational(to_rational(m), b);
}

/// Basis of {x : M x = 0} over the rationals, scaled to primitive integer vectors.
inline std::vector<IntVector> rational_kernel(const RatMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(m.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(primitive_multiple(x));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Hermite normal form and unimodular machinery

struct HermiteForm {
  IntMatrix H;  // M * U
  IntMatrix U;  // unimodular
};

/// Column-style Hermite normal form: H = M U is lower triangular (echelon in
/// columns), pivots positive, entries left of a pivot reduced into
/// [0, pivot). Rank deficiency leaves trailing zero columns.
inline HermiteForm hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.cols());
  const std::size_t n = m.cols();

  auto combine = [&](IntMatrix& mat, std::size_t c, std::size_t j, const Integer& x, const Integer& y,
                     const Integer& p, const Integer& q) {
    // col_c <- x col_c + y col_j ; col_j <- p col_c + q col_j
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      Integer a = mat(i, c);
      Integer b = mat(i, j);
      mat(i, c) = x * a + y * b;
      mat(i, j) = p * a + q * b;
    }
  };

  std::size_t col = 0;
  for (std::size_t row = 0; row < h.rows() && col < n; ++row) {
    for (std::size_t j = col + 1; j < n; ++j) {
      if (h(row, j) == 0) continue;
      Integer a = h(row, col);
      Integer b = h(row, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer p = -b / g;
      Integer q = a / g;
      combine(h, col, j, s, t, p, q);
      combine(u, col, j, s, t, p, q);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, col) = -h(i, col);
      for (std::size_t i = 0; i < n; ++i) u(i, col) = -u(i, col);
    }
    const Integer pivot = h(row, col);
    for (std::size_t j = 0; j < col; ++j) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), h(row, j).get_mpz_t(), pivot.get_mpz_t());
      if (f == 0) continue;
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, j) -= f * h(i, col);
      for (std::size_t i = 0; i < n; ++i) u(i, j) -= f * u(i, col);
    }
    ++col;
  }
  return {std::move(h), std::move(u)};
}

inline bool is_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  Integer d = det(u);
  return d == 1 || d == -1;
}

/// Integer inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (!is_unimodular(u)) fail(ErrorKind::NotUnimodular, "matrix is not unimodular");
  const std::size_t n = u.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = u(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = e.reduced(i, n + j);
      if (!is_integer(q)) fail(ErrorKind::InvariantViolation, "inverse of unimodular matrix is fractional");
      inv(i, j) = q.get_num();
    }
  return inv;
}

/// Unimodular U with U * B = [I_d; 0] for an n x d integer matrix B whose
/// columns form a basis of a saturated sublattice (lattice = span ∩ Z^n).
inline IntMatrix lattice_completion(const IntMatrix& basis) {
  const std::size_t d = basis.cols();
  HermiteForm f = hnf(basis.transpose());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < basis.rows(); ++j) {
      const Integer expect = (i == j) ? 1 : 0;
      if (f.H(i, j) != expect)
        fail(ErrorKind::NotPrimitive, "columns do not form a basis of a saturated lattice");
    }
  return f.U.transpose();
}

/// Unimodular U with U * v = e_n and det U = +1 whenever n >= 2.
inline IntMatrix unimodular_complete(const IntVector& v) {
  if (v.empty()) fail(ErrorKind::DimensionMismatch, "empty vector");
  if (is_zero(v)) fail(ErrorKind::ZeroVector, "cannot complete the zero vector");
  if (content(v) != 1) fail(ErrorKind::NotPrimitive, "vector entries are not coprime");
  const std::size_t n = v.size();
  IntMatrix u = lattice_completion(IntMatrix::from_columns({v}, n));
  u.swap_rows(0, n - 1);
  if (n >= 2 && det(u) < 0)
    for (std::size_t j = 0; j < n; ++j) u(0, j) = -u(0, j);
  return u;
}

/// Basis of the lattice {x in Z^n : E x = 0}.
inline std::vector<IntVector> integer_kernel(const IntMatrix& e) {
  const std::size_t n = e.cols();
  if (e.rows() == 0) {
    std::vector<IntVector> basis;
    IntMatrix id = IntMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j) basis.push_back(id.column(j));
    return basis;
  }
  HermiteForm f = hnf(e);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < f.H.rows(); ++i) nonzero = nonzero || f.H(i, j) != 0;
    if (nonzero) r = j + 1;
  }
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < n; ++j) basis.push_back(f.U.column(j));
  return basis;
}

}  // namespace polyrank
