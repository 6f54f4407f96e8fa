#pragma once

#include <utility>
#include <vector>

#include "dmirror/polytope/polytope.hpp"

namespace dmirror {

/// A level condition <x, functional> = level.
struct LevelFunctional {
  IntVector functional;
  Integer level;
};

/// Facet normals (primitive) of the cone generated by the given vectors,
/// expressed in ambient coordinates; the cone must be full-dimensional.
inline std::vector<IntVector> cone_facets(std::size_t dim,
                                          const std::vector<IntVector>& generators) {
  require(!generators.empty(), ErrorKind::input, "cone_facets: no generators");
  IntMatrix g = IntMatrix::from_rows(generators, dim);
  require(rank(g) == dim, ErrorKind::not_full_dimensional,
          "cone_facets: cone is not full-dimensional");
  return extreme_rays(g).rays;
}

namespace detail {

inline Polytope slice_general(std::size_t dim, const std::vector<IntVector>& gens,
                              const std::vector<LevelFunctional>& levels) {
  // Work inside the linear span of the cone, where it is full-dimensional.
  IntMatrix span = saturate(hermite_basis(IntMatrix::from_rows(gens, dim))).basis;
  const std::size_t k = span.rows();
  IntMatrix inv = inverse_unimodular(extend_to_basis(span, dim));
  std::vector<IntVector> local;
  for (const auto& g : gens) {
    IntVector c = inv.apply_left(g);
    c.resize(k);
    local.push_back(std::move(c));
  }
  std::vector<IntVector> facets = cone_facets(k, local);
  // Affine subspace {c : <c * span, phi> = t}; parametrize as c0 + z * ker.
  IntMatrix eq(levels.size(), k);
  IntVector rhs(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    IntVector restricted = span.apply(levels[i].functional);
    eq.set_row(i, restricted);
    rhs[i] = levels[i].level;
  }
  auto c0 = solve_linear_rational(eq, rhs);
  if (!c0) return Polytope::hull(dim, std::vector<QPoint>{});
  QPoint base = QPoint::from_rationals(*c0);
  IntMatrix ker = kernel_basis(eq);
  std::vector<QPoint> pts;
  if (ker.rows() == 0) {
    bool inside = std::all_of(facets.begin(), facets.end(),
                              [&](const IntVector& f) { return base.pair(f) >= 0; });
    if (inside) pts.push_back(base);
  } else {
    std::vector<Facet> hs;
    for (const auto& f : facets) {
      IntVector n = ker.apply(f);
      Rational off = base.pair(f);
      if (is_zero(n)) {
        if (off < 0) return Polytope::hull(dim, std::vector<QPoint>{});
        continue;
      }
      Integer g = content(n);
      for (auto& x : n) x /= g;
      hs.push_back({std::move(n), off / g});
    }
    for (const auto& z : halfspace_vertices(ker.rows(), hs)) {
      IntVector shift = ker.apply_left(z.num);
      pts.push_back(base + QPoint(std::move(shift), z.den));
    }
  }
  std::vector<QPoint> ambient;
  for (const auto& c : pts) ambient.emplace_back(span.apply_left(c.num), c.den);
  return Polytope::hull(dim, std::move(ambient));
}

}  // namespace detail

/// {x in cone(generators) : <x, phi> = t for each level functional}.
///
/// When one functional is a positive height on every generator and each other
/// condition cuts out a face of the cone, the vertices are read off the
/// rescaled generators; otherwise the cone is converted to halfspaces.
inline Polytope slice(std::size_t dim, const std::vector<IntVector>& generators,
                      const std::vector<LevelFunctional>& levels) {
  require(!levels.empty(), ErrorKind::unbounded, "slice: no level functionals given");
  for (const auto& g : generators)
    require(g.size() == dim, ErrorKind::lattice_mismatch, "slice: generator of wrong length");
  for (const auto& l : levels)
    require(l.functional.size() == dim, ErrorKind::lattice_mismatch,
            "slice: functional of wrong length");
  if (generators.empty()) return Polytope::hull(dim, std::vector<QPoint>{});

  std::optional<std::size_t> height;
  for (std::size_t i = 0; i < levels.size() && !height; ++i) {
    if (levels[i].level <= 0) continue;
    bool positive = std::all_of(generators.begin(), generators.end(), [&](const IntVector& g) {
      return dot(g, levels[i].functional) > 0;
    });
    if (positive) height = i;
  }
  if (height) {
    const LevelFunctional& h = levels[*height];
    std::vector<IntVector> kept = generators;
    bool faces_only = true;
    for (std::size_t i = 0; i < levels.size() && faces_only; ++i) {
      if (i == *height) continue;
      const LevelFunctional& f = levels[i];
      std::vector<Integer> psi;
      int signs = 0;  // bit 0: positive seen, bit 1: negative seen
      for (const auto& g : kept) {
        Integer v = f.level * dot(g, h.functional) - h.level * dot(g, f.functional);
        if (v > 0) signs |= 1;
        if (v < 0) signs |= 2;
        psi.push_back(std::move(v));
      }
      if (signs == 3) {
        faces_only = false;
        break;
      }
      std::vector<IntVector> next;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (psi[j] == 0) next.push_back(std::move(kept[j]));
      kept = std::move(next);
    }
    if (faces_only) {
      std::vector<QPoint> pts;
      for (const auto& g : kept) pts.emplace_back(scale(g, h.level), dot(g, h.functional));
      return Polytope::hull(dim, std::move(pts));
    }
    return detail::slice_general(dim, generators, levels);
  }
  return detail::slice_general(dim, generators, levels);
}

}  // namespace dmirror
