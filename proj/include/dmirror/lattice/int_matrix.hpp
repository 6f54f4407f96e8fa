#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmirror/lattice/integer.hpp"

namespace dmirror {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      ensure(r.size() == cols_, "IntMatrix: ragged initializer");
      for (long long x : r) data_.emplace_back(x);
    }
  }

  /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows,
                             std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ensure(rows[i].size() == cols, "IntMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    ensure(!rows.empty(), "IntMatrix::from_rows: column count unknown");
    return from_rows(rows, rows.front().size());
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Integer> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  IntVector row(std::size_t i) const {
    auto r = row_span(i);
    return IntVector(r.begin(), r.end());
  }
  IntVector col(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<IntVector> row_vectors() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  void set_row(std::size_t i, std::span<const Integer> v) {
    ensure(v.size() == cols_, "IntMatrix::set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void append_row(std::span<const Integer> v) {
    if (rows_ == 0 && data_.empty()) cols_ = v.size();
    ensure(v.size() == cols_, "IntMatrix::append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Rows [begin, end).
  IntMatrix row_range(std::size_t begin, std::size_t end) const {
    IntMatrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
  }
  IntMatrix col_range(std::size_t begin, std::size_t end) const {
    IntMatrix m(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVector apply(std::span<const Integer> x) const {
    ensure(x.size() == cols_, "IntMatrix::apply: length mismatch");
    IntVector y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row_span(i), x);
    return y;
  }

  /// Row vector times matrix.
  IntVector apply_left(std::span<const Integer> x) const {
    ensure(x.size() == rows_, "IntMatrix::apply_left: length mismatch");
    IntVector y(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) y[j] += x[i] * (*this)(i, j);
    }
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    ensure(a.cols_ == b.rows_, "IntMatrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Vertical concatenation; both operands must agree on column count unless empty.
inline IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  ensure(top.cols() == bottom.cols(), "stack: column mismatch");
  IntMatrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) m.set_row(i, top.row_span(i));
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    m.set_row(top.rows() + i, bottom.row_span(i));
  return m;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntMatrix& a) {
  ensure(a.rows() == a.cols(), "determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Rank over the rationals.
inline std::size_t rank(const IntMatrix& a) {
  IntMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer g = gcd(m(r, c), m(i, c));
      Integer fr = m(i, c) / g, fi = m(r, c) / g;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * fi - m(r, j) * fr;
    }
    ++r;
  }
  return r;
}

inline bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  Integer d = determinant(a);
  return d == 1 || d == -1;
}

}  // namespace dmirror
