#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "dmirror/lattice/normal_forms.hpp"

namespace dmirror {

/// Rows of the Hermite form with zero rows dropped.
inline IntMatrix hermite_basis(const IntMatrix& a) {
  HermiteForm f = hnf(a);
  return f.h.row_range(0, f.rank);
}

/// Basis (rows, in Hermite form) of {x in Z^cols : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  HermiteForm f = hnf(a.transpose());
  IntMatrix k = f.u.row_range(f.rank, n);
  if (k.rows() == 0) return IntMatrix(0, n);
  return hermite_basis(k);
}

struct Saturation {
  IntMatrix basis;  // Hermite form
  Integer index;
};

/// Saturation of the row span of `b` inside Z^cols and its index.
inline Saturation saturate(const IntMatrix& b) {
  if (b.rows() == 0) return {IntMatrix(0, b.cols()), Integer(1)};
  SmithForm f = snf(b);
  require(f.rank == b.rows(), ErrorKind::rank_deficient,
          "saturate: rows are linearly dependent (rank " + std::to_string(f.rank) +
              " of " + std::to_string(b.rows()) + ")");
  Integer index = 1;
  for (std::size_t i = 0; i < f.rank; ++i) index *= f.s(i, i);
  IntMatrix vinv = inverse_unimodular(f.v);
  return {hermite_basis(vinv.row_range(0, b.rows())), index};
}

/// Completes the rows of `vs` to a unimodular ambient_rank x ambient_rank matrix.
inline IntMatrix extend_to_basis(const IntMatrix& vs, std::size_t ambient_rank) {
  if (vs.rows() == 0) return IntMatrix::identity(ambient_rank);
  require(vs.cols() == ambient_rank, ErrorKind::input,
          "extend_to_basis: vectors do not live in the ambient lattice");
  SmithForm f = snf(vs);
  require(f.rank == vs.rows(), ErrorKind::rank_deficient,
          "extend_to_basis: vectors are linearly dependent");
  Integer index = 1;
  for (std::size_t i = 0; i < f.rank; ++i) index *= f.s(i, i);
  require(index == 1, ErrorKind::not_saturated,
          "extend_to_basis: vectors span a sublattice of index " + index.str() +
              " in their saturation");
  IntMatrix vinv = inverse_unimodular(f.v);
  IntMatrix full = stack(vs, vinv.row_range(vs.rows(), ambient_rank));
  ensure(is_unimodular(full), "extend_to_basis: completion not unimodular");
  return full;
}

/// Reduces x modulo the lattice spanned by the rows of `hermite` (a Hermite
/// basis), giving the representative with pivot coordinates in [0, pivot).
inline IntVector reduce_modulo(IntVector x, const IntMatrix& hermite) {
  for (std::size_t i = 0; i < hermite.rows(); ++i) {
    std::size_t c = 0;
    while (hermite(i, c) == 0) ++c;
    Integer q = floor_div(x[c], hermite(i, c));
    if (q != 0)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] -= q * hermite(i, j);
  }
  return x;
}

/// Some integer solution of a x = b (canonical modulo the kernel), or nothing.
inline std::optional<IntVector> solve_linear_integer(const IntMatrix& a,
                                                     const IntVector& b) {
  require(b.size() == a.rows(), ErrorKind::input,
          "solve_linear_integer: right-hand side has wrong length");
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntVector(n, 0);
  SmithForm f = snf(a);
  IntVector c = f.u.apply(b);
  IntVector z(n, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < f.rank) {
      if (c[i] % f.s(i, i) != 0) return std::nullopt;
      z[i] = c[i] / f.s(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x = f.v.apply(z);
  return reduce_modulo(std::move(x), kernel_basis(a));
}

/// Rational solution of a x = b by Gaussian elimination, when one exists.
inline std::optional<std::vector<Rational>> solve_linear_rational(
    const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = Rational(a(i, j));
    t[i][n] = Rational(b[i]);
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && t[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(t[r], t[p]);
    Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j = c; j <= n; ++j) t[i][j] -= f * t[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (t[i][n] != 0) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = t[i][n];
  return x;
}

}  // namespace dmirror
