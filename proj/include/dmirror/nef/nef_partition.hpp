#pragma once

#include <string>
#include <vector>

#include "dmirror/polytope/polytope.hpp"

namespace dmirror {

/// Parts Delta_1..Delta_s of a nef-partition, with their Minkowski sum.
struct NefPartition {
  std::size_t dim = 0;
  std::vector<Polytope> parts;
  Polytope sum;

  std::size_t length() const noexcept { return parts.size(); }
};

/// Parts nabla_1..nabla_s of the dual nef-partition.
struct DualNefPartition {
  std::size_t dim = 0;
  std::vector<Polytope> parts;
  Polytope hull;  // Conv(union of the parts) = dual of the sum
};

inline Polytope minkowski_sum(std::size_t dim, const std::vector<Polytope>& parts) {
  Polytope acc = Polytope::hull(dim, std::vector<IntVector>{IntVector(dim, 0)});
  for (const auto& p : parts) acc = minkowski_sum(acc, p);
  return acc;
}

inline NefPartition validate_nef_partition(std::vector<Polytope> parts) {
  require(!parts.empty(), ErrorKind::input, "nef-partition has no parts");
  const std::size_t dim = parts.front().ambient_dim();
  const IntVector origin(dim, 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Polytope& p = parts[i];
    const std::string name = "part " + std::to_string(i + 1);
    require(p.ambient_dim() == dim, ErrorKind::lattice_mismatch,
            name + " lives in a lattice of different rank");
    require(!p.empty(), ErrorKind::input, name + " is empty");
    require(p.is_lattice_polytope(), ErrorKind::input, name + " is not a lattice polytope");
    require(!(p.vertices().size() == 1 && is_zero(p.vertices().front().num)),
            ErrorKind::degenerate_part, name + " is the single point {0}");
    require(p.contains(origin), ErrorKind::missing_origin,
            name + " does not contain the origin");
  }
  NefPartition np;
  np.dim = dim;
  np.sum = minkowski_sum(dim, parts);
  require(np.sum.full_dimensional(), ErrorKind::not_full_dimensional,
          "Minkowski sum of the parts has dimension " + std::to_string(np.sum.dim()) +
              " in a lattice of rank " + std::to_string(dim));
  ReflexivityCertificate cert = is_reflexive(np.sum);
  if (!cert.is_reflexive)
    throw Error(ErrorKind::not_reflexive,
                cert.origin_interior && cert.witness
                    ? "Minkowski sum of the parts is not reflexive (dual vertex " +
                          cert.witness->to_string() + ")"
                    : "Minkowski sum of the parts does not contain 0 in its interior");
  np.parts = std::move(parts);
  return np;
}

/// Translates the first part so that the unique interior lattice point of the
/// sum becomes the origin. Returns the parts unchanged when the origin already
/// is interior.
inline std::vector<Polytope> normalize_shift(const std::vector<Polytope>& parts) {
  require(!parts.empty(), ErrorKind::input, "nef-partition has no parts");
  const std::size_t dim = parts.front().ambient_dim();
  Polytope sum = minkowski_sum(dim, parts);
  require(sum.full_dimensional(), ErrorKind::not_full_dimensional,
          "Minkowski sum of the parts is not full-dimensional");
  std::vector<IntVector> interior;
  for (const auto& x : sum.lattice_points())
    if (sum.relative_interior_contains(QPoint(x))) interior.push_back(x);
  require(interior.size() == 1, ErrorKind::not_reflexive,
          "Minkowski sum has " + std::to_string(interior.size()) +
              " interior lattice points; a reflexive polytope has exactly one");
  if (is_zero(interior.front())) return parts;
  std::vector<Polytope> out = parts;
  out.front() = out.front().translate(QPoint(scale(interior.front(), -1)));
  return out;
}

/// m_i = -min over Delta_i of <x, w>.
inline IntVector pairing_minima(const NefPartition& np, std::span<const Integer> w) {
  IntVector m;
  for (const auto& p : np.parts) {
    Rational mn = p.min_pairing(w);
    ensure(boost::multiprecision::denominator(mn) == 1, "pairing_minima: non-integral minimum");
    m.push_back(-boost::multiprecision::numerator(mn));
  }
  return m;
}

namespace detail {

/// Halfspaces <x, y> >= -delta_ij for the vertices x of each Delta_i.
inline std::vector<Facet> dual_part_halfspaces(const NefPartition& np, std::size_t j) {
  std::vector<Facet> hs;
  for (std::size_t i = 0; i < np.length(); ++i)
    for (const auto& v : np.parts[i].vertices()) {
      if (is_zero(v.num)) continue;
      Integer g = content(v.num);
      IntVector n = v.num;
      for (auto& x : n) x /= g;
      hs.push_back({std::move(n), Rational(i == j ? 1 : 0, 1) / Rational(g)});
    }
  return hs;
}

}  // namespace detail

/// Checks min<Delta_i, nabla_j> >= -delta_ij, attained at every nonzero vertex of nabla_j.
inline bool satisfies_nef_duality(const NefPartition& np, const DualNefPartition& dual,
                                  std::string* failure = nullptr) {
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  for (std::size_t j = 0; j < dual.parts.size(); ++j)
    for (const auto& w : dual.parts[j].vertices())
      for (std::size_t i = 0; i < np.length(); ++i) {
        Rational target = i == j ? -1 : 0;
        Rational mn = np.parts[i].min_pairing(w.num) / Rational(w.den);
        if (mn < target)
          return fail("min <Delta_" + std::to_string(i + 1) + ", nabla_" + std::to_string(j + 1) +
                      "> is below -delta");
        if (!is_zero(w.num) && mn != target)
          return fail("vertex " + w.to_string() + " of nabla_" + std::to_string(j + 1) +
                      " does not attain -delta on Delta_" + std::to_string(i + 1));
      }
  return true;
}

inline DualNefPartition dual_nef_partition(const NefPartition& np) {
  DualNefPartition dual;
  dual.dim = np.dim;
  for (std::size_t j = 0; j < np.length(); ++j)
    dual.parts.push_back(Polytope::from_halfspaces(np.dim, detail::dual_part_halfspaces(np, j)));
  dual.hull = convex_union(np.dim, dual.parts);
  ensure(dual.hull.vertices() == dual_polytope(np.sum).vertices(),
         "dual nef-partition: Conv(union of nabla_j) differs from the dual of the sum");
  std::string why;
  ensure(satisfies_nef_duality(np, dual, &why), "dual nef-partition: " + why);
  return dual;
}

/// The dual partition viewed as a nef-partition in its own right.
inline NefPartition as_nef_partition(const DualNefPartition& dual) {
  return validate_nef_partition(dual.parts);
}

/// Subsets {k_1..k_n} of parts with dim(Delta_k1 + ... + Delta_kn) <= n, as
/// zero-based index lists; empty when the partition is 2-independent.
inline std::vector<std::vector<std::size_t>> two_independence_violations(
    const std::vector<Polytope>& parts) {
  std::vector<std::vector<std::size_t>> bad;
  const std::size_t s = parts.size();
  if (s == 0 || s > 20) return bad;
  const std::size_t dim = parts.front().ambient_dim();
  for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
    std::vector<IntVector> directions;
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < s; ++k) {
      if (!(mask >> k & 1)) continue;
      subset.push_back(k);
      const auto& vs = parts[k].vertices();
      for (std::size_t i = 1; i < vs.size(); ++i) directions.push_back((vs[i] - vs[0]).num);
    }
    std::size_t d = directions.empty() ? 0 : rank(IntMatrix::from_rows(directions, dim));
    if (d <= subset.size()) bad.push_back(std::move(subset));
  }
  return bad;
}

}  // namespace dmirror
