#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dmirror/lattice/int_matrix.hpp"

namespace dmirror {

/// Extreme rays of a pointed cone {x : A x >= 0} together with, for each ray,
/// the set of constraint rows it makes tight.
struct ConeRays {
  std::vector<IntVector> rays;  // primitive, lexicographically sorted
  std::vector<boost::dynamic_bitset<>> tight;
};

namespace dd {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}
inline int sign(std::int64_t a) { return (a > 0) - (a < 0); }

inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer gcd_of(const Integer& a, const Integer& b) { return dmirror::gcd(a, b); }
inline int sign(const Integer& a) { return a.sign(); }

template <class S>
S inner(const std::vector<S>& a, const std::vector<S>& b) {
  S s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = add(s, mul(a[i], b[i]));
  return s;
}

template <class S>
void make_primitive(std::vector<S>& v) {
  S g = 0;
  for (const auto& x : v) {
    if (x != 0) g = gcd_of(g, x);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : v) x /= g;
}

template <class S>
struct Ray {
  std::vector<S> v;
  boost::dynamic_bitset<> zero;
};

// Picks rows forming a basis of the row space, in order of appearance.
inline std::vector<std::size_t> independent_rows(const IntMatrix& a) {
  std::vector<std::size_t> picked;
  std::vector<std::vector<Rational>> echelon;  // reduced rows with pivot columns
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < a.rows() && picked.size() < a.cols(); ++i) {
    std::vector<Rational> r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = Rational(a(i, j));
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      if (r[pivots[k]] == 0) continue;
      Rational f = r[pivots[k]] / echelon[k][pivots[k]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * echelon[k][j];
    }
    std::size_t p = 0;
    while (p < r.size() && r[p] == 0) ++p;
    if (p == r.size()) continue;
    picked.push_back(i);
    echelon.push_back(std::move(r));
    pivots.push_back(p);
  }
  return picked;
}

template <class S>
std::vector<S> convert_row(std::span<const Integer> r) {
  std::vector<S> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if constexpr (std::is_same_v<S, std::int64_t>) {
      if (!fits_int64(r[i])) throw Overflow{};
      out[i] = r[i].template convert_to<std::int64_t>();
    } else {
      out[i] = r[i];
    }
  }
  return out;
}

template <class S>
ConeRays run(const IntMatrix& a, const std::vector<std::size_t>& basis) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<S>> rows(m);
  for (std::size_t i = 0; i < m; ++i) rows[i] = convert_row<S>(a.row_span(i));

  // Initial simplicial cone: columns of adj(A_B), oriented so A_B r_j = c e_j, c > 0.
  IntMatrix ab(n, n);
  for (std::size_t k = 0; k < n; ++k) ab.set_row(k, a.row_span(basis[k]));
  std::vector<Ray<S>> rays;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector rhs(n, 0);
    rhs[j] = 1;
    auto sol = solve_linear_rational(ab, rhs);
    ensure(sol.has_value(), "double description: singular initial basis");
    Integer den = 1;
    for (const auto& q : *sol) {
      const Integer& d = boost::multiprecision::denominator(q);
      den = den / gcd(den, d) * d;
    }
    IntVector r(n);
    for (std::size_t k = 0; k < n; ++k)
      r[k] = boost::multiprecision::numerator((*sol)[k]) *
             (den / boost::multiprecision::denominator((*sol)[k]));
    Ray<S> ray{convert_row<S>(r), boost::dynamic_bitset<>(m)};
    make_primitive(ray.v);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) ray.zero.set(basis[k]);
    rays.push_back(std::move(ray));
  }

  std::vector<char> in_basis(m, 0);
  for (std::size_t b : basis) in_basis[b] = 1;

  for (std::size_t i = 0; i < m; ++i) {
    if (in_basis[i]) continue;
    std::vector<S> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = inner(rows[i], rays[r].v);
      int sg = sign(val[r]);
      if (sg > 0) pos.push_back(r);
      else if (sg < 0) neg.push_back(r);
      else rays[r].zero.set(i);
    }
    if (neg.empty()) continue;

    std::vector<Ray<S>> next;
    next.reserve(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sign(val[r]) >= 0) next.push_back(rays[r]);

    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        boost::dynamic_bitset<> common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < n) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray<S> fresh{std::vector<S>(n), common};
        for (std::size_t k = 0; k < n; ++k)
          fresh.v[k] = sub(mul(val[p], rays[q].v[k]), mul(val[q], rays[p].v[k]));
        make_primitive(fresh.v);
        fresh.zero.set(i);
        next.push_back(std::move(fresh));
      }
    rays = std::move(next);
  }

  ConeRays out;
  std::vector<std::pair<IntVector, boost::dynamic_bitset<>>> sorted;
  for (auto& r : rays) {
    IntVector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = Integer(r.v[k]);
    sorted.emplace_back(std::move(v), std::move(r.zero));
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [v, z] : sorted) {
    out.rays.push_back(std::move(v));
    out.tight.push_back(std::move(z));
  }
  return out;
}

}  // namespace dd

/// Double description method for the extreme rays of {x : A x >= 0}.
/// The constraint matrix must have full column rank (pointed cone).
inline ConeRays extreme_rays(const IntMatrix& a) {
  std::vector<std::size_t> basis = dd::independent_rows(a);
  ensure(basis.size() == a.cols(),
         "extreme_rays: constraint system does not define a pointed cone");
  try {
    return dd::run<std::int64_t>(a, basis);
  } catch (const dd::Overflow&) {
    return dd::run<Integer>(a, basis);
  }
}

}  // namespace dmirror
