#pragma once

#include <vector>

#include "dmirror/mirror/field.hpp"

namespace dmirror {

using FpVector = std::vector<Fp>;
using FpMatrix = std::vector<FpVector>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(FpMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    Fp inv = m[row][c].inverse();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Fp f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline std::size_t rank_fp(FpMatrix m, std::size_t cols) { return row_reduce(m, cols).size(); }

inline Fp determinant_fp(FpMatrix m, std::uint64_t p) {
  const std::size_t n = m.size();
  Fp det(1, p);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Fp(0, p);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Fp inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Fp f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// Basis of {x : m x = 0}.
inline FpMatrix right_kernel(FpMatrix m, std::size_t cols, std::uint64_t p) {
  auto pivots = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    FpVector v(cols, Fp(0, p));
    v[f] = Fp(1, p);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline FpMatrix transpose(const FpMatrix& m, std::size_t cols) {
  FpMatrix t(cols, FpVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace dmirror
