#pragma once

#include <cstddef>
#include <utility>

#include "dmirror/lattice/int_matrix.hpp"

namespace dmirror {

struct HermiteForm {
  IntMatrix h;  // u * a
  IntMatrix u;  // unimodular, rows x rows
  std::size_t rank = 0;
};

struct SmithForm {
  IntMatrix s;  // u * a * v, diagonal
  IntMatrix u;
  IntMatrix v;
  std::size_t rank = 0;
};

namespace detail {

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                             const Integer& f);

// Replaces rows (r, i) by [[x, y], [-b/g, a/g]] applied to them, where
// a = m(r,c), b = m(i,c); afterwards m(i,c) == 0 and m(r,c) == gcd.
inline void combine_rows(IntMatrix& m, IntMatrix& u, std::size_t r,
                         std::size_t i, std::size_t c) {
  const Integer a = m(r, c), b = m(i, c);
  if (b % a == 0) {
    const Integer q = b / a;
    add_row_multiple(m, i, r, -q);
    add_row_multiple(u, i, r, -q);
    return;
  }
  auto [g, x, y] = extended_gcd(a, b);
  const Integer p = -b / g, q = a / g;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer top = x * m(r, j) + y * m(i, j);
    m(i, j) = p * m(r, j) + q * m(i, j);
    m(r, j) = std::move(top);
  }
  for (std::size_t j = 0; j < u.cols(); ++j) {
    Integer top = x * u(r, j) + y * u(i, j);
    u(i, j) = p * u(r, j) + q * u(i, j);
    u(r, j) = std::move(top);
  }
}

inline void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                             const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

inline void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                             const Integer& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

inline void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace detail

/// Row Hermite normal form: pivots positive, entries above a pivot in
/// [0, pivot), zero rows last.
inline HermiteForm hnf(const IntMatrix& a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    std::size_t p = r;
    while (p < h.rows() && h(p, c) == 0) ++p;
    if (p == h.rows()) continue;
    h.swap_rows(r, p);
    u.swap_rows(r, p);
    for (std::size_t i = r + 1; i < h.rows(); ++i)
      if (h(i, c) != 0) detail::combine_rows(h, u, r, i, c);
    if (h(r, c) < 0) {
      detail::negate_row(h, r);
      detail::negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      detail::add_row_multiple(h, i, r, -q);
      detail::add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

/// Checks the row Hermite normal form conventions used by `hnf`.
inline bool is_hermite_form(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && c <= last_pivot) return false;
    if (h(i, c) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, c) < 0 || h(k, c) >= h(i, c)) return false;
    for (std::size_t k = i + 1; k < h.rows(); ++k)
      if (h(k, c) != 0) return false;
    last_pivot = c;
  }
  return true;
}

/// Smith normal form s = u*a*v with d1 | d2 | ... and di >= 0.
inline SmithForm snf(const IntMatrix& a) {
  SmithForm out{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()), 0};
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t m = s.rows(), n = s.cols();
  std::size_t t = 0;
  for (; t < m && t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (s(i, j) != 0 && (!found || abs(s(i, j)) < best)) {
          found = true;
          best = abs(s(i, j));
          pi = i;
          pj = j;
        }
    if (!found) break;
    s.swap_rows(t, pi);
    u.swap_rows(t, pi);
    detail::swap_cols(s, t, pj);
    detail::swap_cols(v, t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i)
        if (s(i, t) != 0) detail::combine_rows(s, u, t, i, t);
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        // Same elimination on columns; the transform accumulates in v.
        const Integer x0 = s(t, t), y0 = s(t, j);
        dirty = true;
        if (y0 % x0 == 0) {
          detail::add_col_multiple(s, j, t, -(y0 / x0));
          detail::add_col_multiple(v, j, t, -(y0 / x0));
          continue;
        }
        auto [g, x, y] = extended_gcd(x0, y0);
        const Integer p = -y0 / g, q = x0 / g;
        for (std::size_t i = 0; i < m; ++i) {
          Integer left = x * s(i, t) + y * s(i, j);
          s(i, j) = p * s(i, t) + q * s(i, j);
          s(i, t) = std::move(left);
        }
        for (std::size_t i = 0; i < n; ++i) {
          Integer left = x * v(i, t) + y * v(i, j);
          v(i, j) = p * v(i, t) + q * v(i, j);
          v(i, t) = std::move(left);
        }
        dirty = true;
      }
      if (dirty) {
        bool column_clear = true;
        for (std::size_t i = t + 1; i < m; ++i)
          if (s(i, t) != 0) column_clear = false;
        if (!column_clear) continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row == m) break;
      detail::add_row_multiple(s, t, bad_row, 1);
      detail::add_row_multiple(u, t, bad_row, 1);
    }
    if (s(t, t) < 0) {
      detail::negate_row(s, t);
      detail::negate_row(u, t);
    }
  }
  out.rank = t;
  return out;
}

inline bool is_smith_form(const IntMatrix& s) {
  const std::size_t k = std::min(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (s(i, i) < 0) return false;
    if (i + 1 < k) {
      const Integer& d = s(i, i);
      const Integer& e = s(i + 1, i + 1);
      if (d == 0 ? e != 0 : e % d != 0) return false;
    }
  }
  return true;
}

/// Inverse of a unimodular matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::input,
          "inverse_unimodular: matrix not square");
  HermiteForm f = hnf(a);
  require(f.h == IntMatrix::identity(a.rows()), ErrorKind::input,
          "inverse_unimodular: matrix is not unimodular");
  return f.u;
}

}  // namespace dmirror
