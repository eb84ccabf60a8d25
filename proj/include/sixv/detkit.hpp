#pragma once

// Dense complex determinants: LU with partial pivoting, minors with deleted
// rows/columns, and the Laplace expansion along two leading "operator" columns.
// Row/column indices in this header are 0-based.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/jets.hpp"

namespace sixv {

/// Row-major dense matrix.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, S fill = S(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  S* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const S* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
  const std::vector<S>& data() const { return data_; }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(S x, Matrix a) {
    for (auto& v : a.data_) v *= x;
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      S* out = r.row_ptr(i);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S aik = a(i, k);
        if (aik == S(0)) continue;
        const S* brow = b.row_ptr(k);
        for (std::size_t j = 0; j < b.cols_; ++j) out[j] += aik * brow[j];
      }
    }
    return r;
  }
  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
    std::vector<S> r(a.rows_, S(0));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const S* arow = a.row_ptr(i);
      S acc(0);
      for (std::size_t k = 0; k < a.cols_; ++k) acc += arow[k] * v[k];
      r[i] = acc;
    }
    return r;
  }

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0;
    for (const auto& v : data_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

/// Determinant by LU with partial pivoting. Magnitude is accumulated as a sum
/// of logs and the phase as a unit complex number; a pivot below pivot_tol
/// yields exactly zero.
template <class S>
S lu_det(Matrix<S> m, double pivot_tol = 1e-300) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw IndexOutOfRange("lu_det: matrix is not square");
  if (n == 0) return S(1);
  using Real = typename S::value_type;
  Real log_mag = 0;
  S phase(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    Real best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const Real a = std::abs(m(r, k));
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (static_cast<double>(best) <= pivot_tol) return S(0);
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      phase = -phase;
    }
    const S p = m(k, k);
    log_mag += std::log(best);
    phase *= p / best;
    for (std::size_t r = k + 1; r < n; ++r) {
      const S f = m(r, k) / p;
      if (f == S(0)) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  return std::exp(log_mag) * phase;
}

/// Submatrix keeping the rows/columns not listed, in their original order.
template <class S>
Matrix<S> submatrix(const Matrix<S>& m, const std::vector<std::size_t>& drop_rows,
                    const std::vector<std::size_t>& drop_cols) {
  const std::set<std::size_t> dr(drop_rows.begin(), drop_rows.end());
  const std::set<std::size_t> dc(drop_cols.begin(), drop_cols.end());
  if (dr.size() != drop_rows.size() || dc.size() != drop_cols.size()) {
    throw IndexOutOfRange("submatrix: repeated index in drop set");
  }
  for (auto r : dr)
    if (r >= m.rows()) throw IndexOutOfRange("submatrix: row index " + std::to_string(r) + " out of range");
  for (auto c : dc)
    if (c >= m.cols()) throw IndexOutOfRange("submatrix: column index " + std::to_string(c) + " out of range");
  Matrix<S> out(m.rows() - dr.size(), m.cols() - dc.size());
  std::size_t oi = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (dr.count(i)) continue;
    std::size_t oj = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (dc.count(j)) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

template <class S>
S minor_det(const Matrix<S>& m, const std::vector<std::size_t>& drop_rows, const std::vector<std::size_t>& drop_cols,
            double pivot_tol = 1e-300) {
  if (drop_rows.size() != drop_cols.size()) throw IndexOutOfRange("minor_det: drop sets differ in size");
  return lu_det(submatrix(m, drop_rows, drop_cols), pivot_tol);
}

/// Sign of the term placing rows p, q (0-based, p != q) into the two leading
/// columns, with row p feeding column 1. The value multiplies coef(p, q)
/// where coef is the column-1 entry of row p times the column-2 entry of row q.
inline int laplace_pair_sign(std::size_t p, std::size_t q) {
  const std::size_t lo = std::min(p, q), hi = std::max(p, q);
  // 1-based rows lo+1, hi+1 into columns 1, 2; the 2x2 block contributes
  // u_lo v_hi - u_hi v_lo.
  int s = ((lo + hi + 1) % 2 == 0) ? 1 : -1;
  return p < q ? s : -s;
}

/// det[ u | v | block ] expanded along the two leading columns, where the
/// product u_p v_q is supplied by coef(p, q). block must be n x (n-2).
template <class S, class Coef>
S laplace_two_column_expand(std::size_t n, Coef&& coef, const Matrix<S>& block, double pivot_tol = 1e-300) {
  if (n < 2) throw IndexOutOfRange("laplace_two_column_det: need at least two rows");
  if (block.rows() != n || block.cols() != n - 2) {
    throw IndexOutOfRange("laplace_two_column_det: block must be n x (n-2)");
  }
  std::vector<std::size_t> all_cols;  // nothing dropped from the block columns
  S total(0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      const S c = coef(p, q);
      if (c == S(0)) continue;
      const S minor = n == 2 ? S(1) : lu_det(submatrix(block, {std::min(p, q), std::max(p, q)}, all_cols), pivot_tol);
      total += S(double(laplace_pair_sign(p, q))) * c * minor;
    }
  }
  return total;
}

/// Operator-column determinant det(d_{e1}^{j-1} | d_{e2}^{j-1} | block) applied
/// to f(e1, e2) and evaluated at e1 = e2 = 0.
template <class S>
S laplace_two_column_det(const Series2<S>& f, const Matrix<S>& block, double pivot_tol = 1e-300) {
  const std::size_t n = block.rows();
  if (f.orders()[0] + 1 < n || f.orders()[1] + 1 < n) {
    throw OrderExceeded("laplace_two_column_det: series orders below n-1");
  }
  return laplace_two_column_expand(
      n, [&](std::size_t p, std::size_t q) { return partial_coefficient(f, p, q); }, block, pivot_tol);
}

}  // namespace sixv
