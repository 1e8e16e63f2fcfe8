#pragma once

// Dense matrices over an exact field, with deterministic Gaussian
// elimination.  Row-vector convention throughout the library: module elements
// are rows, maps act on the right, so "apply f then g" is the product F*G.

#include "envlab/field.hpp"

#include <optional>
#include <vector>

namespace envlab {

template <class K>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(int r, int c) : r_(r), c_(c), d_(static_cast<size_t>(r) * c) {
    if (r < 0 || c < 0) fail(ErrorCode::DimMismatch, "negative matrix dimension");
  }

  static Matrix zero(int r, int c) { return Matrix(r, c); }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows, int cols) {
    Matrix m(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != cols)
        fail(ErrorCode::DimMismatch, "ragged row list");
      for (int j = 0; j < cols; ++j) m(static_cast<int>(i), j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  K& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
  const K& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (size_t i = 0; i < d_.size(); ++i)
      if (!(d_[i] == o.d_[i])) return false;
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) fail(ErrorCode::DimMismatch, "matrix product shape mismatch");
    Matrix p(r_, o.c_);
    for (int i = 0; i < r_; ++i)
      for (int k = 0; k < c_; ++k) {
        const K& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (int j = 0; j < o.c_; ++j) {
          const K& b = o(k, j);
          if (!b.is_zero()) p(i, j) += a * b;
        }
      }
    return p;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix s(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) s.d_[i] = d_[i] + o.d_[i];
    return s;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix s(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) s.d_[i] = d_[i] - o.d_[i];
    return s;
  }
  Matrix operator-() const {
    Matrix s(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) s.d_[i] = -d_[i];
    return s;
  }
  Matrix scaled(const K& a) const {
    Matrix s(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) s.d_[i] = d_[i] * a;
    return s;
  }

  std::vector<K> row(int i) const {
    std::vector<K> v(c_);
    for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  void set_row(int i, const std::vector<K>& v) {
    if (static_cast<int>(v.size()) != c_) fail(ErrorCode::DimMismatch, "row length mismatch");
    for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }

  /// Horizontal concatenation [A | B].
  static Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_) fail(ErrorCode::DimMismatch, "hconcat row mismatch");
    Matrix m(a.r_, a.c_ + b.c_);
    for (int i = 0; i < a.r_; ++i) {
      for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
      for (int j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
    }
    return m;
  }

  /// Vertical concatenation: A stacked above B.
  static Matrix vconcat(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.c_) fail(ErrorCode::DimMismatch, "vconcat column mismatch");
    Matrix m(a.r_ + b.r_, a.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.r_; ++i)
      for (int j = 0; j < b.c_; ++j) m(a.r_ + i, j) = b(i, j);
    return m;
  }

  /// Copies this whole matrix into `dst` with top-left corner at (di, dj).
  void paste_into(Matrix& dst, int di, int dj) const {
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) dst(di + i, dj + j) = (*this)(i, j);
  }

  Matrix block(int i0, int j0, int r, int c) const {
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) fail(ErrorCode::DimMismatch, "matrix shape mismatch");
  }

  int r_, c_;
  std::vector<K> d_;
};

template <class K>
struct Rref {
  Matrix<K> reduced;          // row echelon form, pivots normalized to 1
  Matrix<K> transform;        // invertible T with T * input = reduced
  std::vector<int> pivot_cols;  // column of each pivot row, ascending
  int rank = 0;
};

/// Deterministic reduced row echelon form with transform tracking.  Pivot
/// choice is the first row with a nonzero entry in the leftmost open column.
template <class K>
Rref<K> rref(const Matrix<K>& a) {
  Rref<K> out;
  out.reduced = a;
  out.transform = Matrix<K>::identity(a.rows());
  Matrix<K>& m = out.reduced;
  Matrix<K>& t = out.transform;
  int lead = 0;
  for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
    int piv = -1;
    for (int i = lead; i < a.rows(); ++i)
      if (!m(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != lead) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(lead, j));
      for (int j = 0; j < t.cols(); ++j) std::swap(t(piv, j), t(lead, j));
    }
    K inv = m(lead, col).inverse();
    for (int j = 0; j < m.cols(); ++j) m(lead, j) *= inv;
    for (int j = 0; j < t.cols(); ++j) t(lead, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == lead || m(i, col).is_zero()) continue;
      K f = m(i, col);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(lead, j);
      for (int j = 0; j < t.cols(); ++j) t(i, j) -= f * t(lead, j);
    }
    out.pivot_cols.push_back(col);
    ++lead;
  }
  out.rank = static_cast<int>(out.pivot_cols.size());
  return out;
}

template <class K>
int rank(const Matrix<K>& a) {
  return rref(a).rank;
}

/// Basis of the left kernel {x : x * A = 0}, one solution per row.
/// Deterministic: computed from the RREF of A^T, free variables in column order.
template <class K>
Matrix<K> left_kernel(const Matrix<K>& a) {
  Matrix<K> at = a.transpose();
  Rref<K> r = rref(at);  // at is cols(a) x rows(a); solutions x with at * x^T = 0
  int n = at.cols();
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix<K> ker(static_cast<int>(free_cols.size()), n);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    ker(static_cast<int>(k), fc) = K(1);
    for (int prow = 0; prow < r.rank; ++prow)
      ker(static_cast<int>(k), r.pivot_cols[prow]) = -r.reduced(prow, fc);
  }
  return ker;
}

/// Solve X * A = B for X (rows of B expressed over the row space of A).
/// Returns std::nullopt when some row of B lies outside the row space.
template <class K>
std::optional<Matrix<K>> solve_left(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) fail(ErrorCode::DimMismatch, "solve_left shape mismatch");
  Rref<K> r = rref(a);
  Matrix<K> x(b.rows(), a.rows());
  for (int i = 0; i < b.rows(); ++i) {
    std::vector<K> residual = b.row(i);
    std::vector<K> y(static_cast<size_t>(a.rows()));
    for (int p = 0; p < r.rank; ++p) {
      // Copy, not reference: the subtraction below rewrites this very entry.
      K c = residual[static_cast<size_t>(r.pivot_cols[p])];
      if (c.is_zero()) continue;
      y[static_cast<size_t>(p)] = c;
      for (int j = 0; j < a.cols(); ++j) residual[static_cast<size_t>(j)] -= c * r.reduced(p, j);
    }
    for (const K& v : residual)
      if (!v.is_zero()) return std::nullopt;
    // x_i = y * T, since (y * T) * A = y * reduced = b_i.
    for (int j = 0; j < a.rows(); ++j) {
      K acc = K(0);
      for (int p = 0; p < a.rows(); ++p) acc += y[static_cast<size_t>(p)] * r.transform(p, j);
      x(i, j) = acc;
    }
  }
  return x;
}

/// True when every row of B lies in the row space of A.
template <class K>
bool row_space_contains(const Matrix<K>& a, const Matrix<K>& b) {
  return solve_left(a, b).has_value();
}

/// Deterministic row-space basis: the nonzero rows of the RREF.
template <class K>
Matrix<K> row_space_basis(const Matrix<K>& a) {
  Rref<K> r = rref(a);
  Matrix<K> out(r.rank, a.cols());
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = r.reduced(i, j);
  return out;
}

/// Basis of the sum of two row spaces.
template <class K>
Matrix<K> row_space_sum(const Matrix<K>& a, const Matrix<K>& b) {
  return row_space_basis(Matrix<K>::vconcat(a, b));
}

/// Basis of the intersection of two row spaces (Zassenhaus-style, via the
/// kernel of the stacked matrix).
template <class K>
Matrix<K> row_space_intersect(const Matrix<K>& a, const Matrix<K>& b) {
  // x in both spaces: x = u*A = v*B.  Solve (u, v) with u*A - v*B = 0.
  Matrix<K> stacked = Matrix<K>::vconcat(a, -b);
  Matrix<K> ker = left_kernel(stacked);  // rows (u | v)
  Matrix<K> u = ker.block(0, 0, ker.rows(), a.rows());
  return row_space_basis(u * a);
}

/// Square-matrix invertibility (exact).
template <class K>
bool is_invertible(const Matrix<K>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

/// Inverse of a square invertible matrix.
template <class K>
Matrix<K> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimMismatch, "inverse of non-square matrix");
  Rref<K> r = rref(a);
  if (r.rank != a.rows()) fail(ErrorCode::BadInput, "inverse of singular matrix");
  return r.transform;
}

}  // namespace envlab
