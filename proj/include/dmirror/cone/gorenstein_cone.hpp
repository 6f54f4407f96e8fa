#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dmirror/nef/nef_partition.hpp"
#include "dmirror/polytope/slice.hpp"

namespace dmirror {

/// Reflexive Gorenstein cone K in M-bar with its dual K^v in N-bar. All
/// vectors are in basis coordinates; N-bar uses the dual basis, so the
/// pairing is the dot product.
struct GorensteinConePair {
  LatticeEmbedding lattice_bar_m;
  LatticeEmbedding lattice_bar_n;
  std::vector<IntVector> k_generators;
  std::vector<IntVector> k_dual_generators;
  IntVector deg;
  IntVector deg_dual;
  Integer index;

  std::size_t rank() const noexcept { return deg.size(); }
};

struct GorensteinCheck {
  bool ok = false;
  Integer index;
  std::string failure;
};

/// Generators of K^v for the cone of a nef-partition:
/// {(m_1j..m_sj; w_j) : w_j in Ver(nabla)} u {(delta_i; 0)}.
inline std::vector<IntVector> dual_generators(const NefPartition& np) {
  const std::size_t s = np.length();
  Polytope nabla = dual_polytope(np.sum);
  std::vector<IntVector> out;
  for (const auto& w : nabla.vertices()) {
    ensure(w.integral(), "dual_generators: dual of the sum has a non-integral vertex");
    out.push_back(concat(pairing_minima(np, w.num), w.num));
  }
  for (std::size_t i = 0; i < s; ++i) out.push_back(concat(unit_vector(s, i), IntVector(np.dim, 0)));
  std::sort(out.begin(), out.end());
  return out;
}

inline GorensteinCheck verify_reflexive_gorenstein(const GorensteinConePair& pair) {
  GorensteinCheck c;
  c.index = dot(pair.deg, pair.deg_dual);
  auto fail = [&](std::string why) {
    c.failure = std::move(why);
    return c;
  };
  const std::size_t n = pair.rank();
  if (pair.k_generators.empty() || pair.k_dual_generators.empty())
    return fail("missing generators");
  for (const auto& v : pair.k_generators)
    if (dot(v, pair.deg_dual) != 1) return fail("a generator of K is off the hyperplane <., deg_dual> = 1");
  for (const auto& w : pair.k_dual_generators)
    if (dot(pair.deg, w) != 1) return fail("a generator of K^v is off the hyperplane <deg, .> = 1");
  for (const auto& v : pair.k_generators)
    for (const auto& w : pair.k_dual_generators)
      if (dot(v, w) < 0) return fail("generators of K and K^v pair negatively");
  if (rank(IntMatrix::from_rows(pair.k_generators, n)) != n) return fail("K is not full-dimensional");
  if (rank(IntMatrix::from_rows(pair.k_dual_generators, n)) != n)
    return fail("K^v is not full-dimensional");
  // Every facet normal of K must occur among the K^v generators.
  std::vector<IntVector> prim;
  for (const auto& w : pair.k_dual_generators) prim.push_back(primitive(w));
  std::sort(prim.begin(), prim.end());
  for (const auto& f : cone_facets(n, pair.k_generators))
    if (!std::binary_search(prim.begin(), prim.end(), f))
      return fail("K^v generators do not generate the dual of K");
  if (c.index <= 0) return fail("index is not positive");
  c.ok = true;
  return c;
}

/// Cone of a nef-partition: K = {(a; sum a_i Delta_i)}, generated by the
/// (delta_i; v) for v a vertex of Delta_i.
inline GorensteinConePair build_cone(const NefPartition& np) {
  const std::size_t s = np.length(), n = s + np.dim;
  GorensteinConePair pair;
  pair.lattice_bar_m = LatticeEmbedding::full(n);
  pair.lattice_bar_n = LatticeEmbedding::full(n);
  for (std::size_t i = 0; i < s; ++i)
    for (const auto& v : np.parts[i].vertices()) pair.k_generators.push_back(concat(unit_vector(s, i), v.num));
  // (delta_i; 0) lies on the boundary of K once s >= 2 and is listed with the
  // vertices; for s = 1 it is the interior point deg.
  if (s >= 2)
    for (std::size_t i = 0; i < s; ++i) pair.k_generators.push_back(concat(unit_vector(s, i), IntVector(np.dim, 0)));
  std::sort(pair.k_generators.begin(), pair.k_generators.end());
  pair.k_generators.erase(std::unique(pair.k_generators.begin(), pair.k_generators.end()),
                          pair.k_generators.end());
  pair.k_dual_generators = dual_generators(np);
  pair.deg = concat(IntVector(s, 1), IntVector(np.dim, 0));
  pair.deg_dual = pair.deg;
  pair.index = s;
  GorensteinCheck check = verify_reflexive_gorenstein(pair);
  ensure(check.ok, "build_cone: " + check.failure);
  ensure(check.index == Integer(s), "build_cone: index differs from the number of parts");
  return pair;
}

/// Cone entered directly by generators of K (basis coordinates) and degree elements.
inline GorensteinConePair cone_from_generators(const LatticeEmbedding& lattice,
                                               std::vector<IntVector> generators,
                                               IntVector deg, IntVector deg_dual) {
  const std::size_t n = lattice.rank();
  require(deg.size() == n && deg_dual.size() == n, ErrorKind::lattice_mismatch,
          "cone: degree elements have the wrong rank");
  GorensteinConePair pair;
  pair.lattice_bar_m = lattice;
  pair.lattice_bar_n = lattice.kind() == Presentation::sublattice ? LatticeEmbedding::full(n)
                                                                   : lattice.dual();
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  pair.k_generators = std::move(generators);
  pair.k_dual_generators = cone_facets(n, pair.k_generators);
  pair.deg = std::move(deg);
  pair.deg_dual = std::move(deg_dual);
  pair.index = dot(pair.deg, pair.deg_dual);
  return pair;
}

/// The degree-one slice S = {x in K : <x, deg_dual> = 1}.
inline Polytope degree_slice(const GorensteinConePair& pair) {
  return slice(pair.rank(), pair.k_generators, {{pair.deg_dual, 1}});
}

/// The dual slice T = {y in K^v : <deg, y> = 1}.
inline Polytope dual_degree_slice(const GorensteinConePair& pair) {
  return slice(pair.rank(), pair.k_dual_generators, {{pair.deg, 1}});
}

/// S_i = {x in K : <x, e_i> = 1, <x, e_j> = 0 for j != i}.
inline Polytope part_slice(const GorensteinConePair& pair, const std::vector<IntVector>& e,
                           std::size_t i) {
  std::vector<LevelFunctional> levels{{pair.deg_dual, 1}};
  for (std::size_t j = 0; j < e.size(); ++j) levels.push_back({e[j], j == i ? 1 : 0});
  return slice(pair.rank(), pair.k_generators, levels);
}

/// Coordinates adapted to a decomposition deg_dual = sum e_i:
/// M-bar = Z^s + Ann(e) via x -> (<x, e_i>; x - sum <x, e_i> m_i), where the
/// lifts m_i are lattice points of S_i summing to deg.
struct ConeFrame {
  std::size_t s = 0;
  std::vector<IntVector> e;
  std::vector<IntVector> lifts;
  std::vector<Polytope> slices;  // S_i
  LatticeEmbedding ann;          // Ann(e) inside M-bar coordinates
  IntMatrix dual_matrix;         // rows m_1..m_s then the Ann(e) basis
  IntMatrix dual_matrix_inverse;

  std::size_t d() const { return ann.rank(); }

  IntVector to_frame(std::span<const Integer> x) const {
    IntVector a(s), rest(x.begin(), x.end());
    for (std::size_t i = 0; i < s; ++i) {
      a[i] = dot(x, e[i]);
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= a[i] * lifts[i][j];
    }
    return concat(a, ann.to_coords(rest));
  }
  /// Ann(e)-coordinates of x - sum <x, e_i> m_i.
  IntVector to_ann(std::span<const Integer> x) const {
    IntVector f = to_frame(x);
    return IntVector(f.begin() + static_cast<std::ptrdiff_t>(s), f.end());
  }
  IntVector from_frame(std::span<const Integer> a) const {
    IntVector x = ann.from_coords(a.subspan(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += a[i] * lifts[i][j];
    return x;
  }
  IntVector dual_to_frame(std::span<const Integer> y) const { return dual_matrix.apply(y); }
  IntVector dual_from_frame(std::span<const Integer> y) const {
    return dual_matrix_inverse.apply(y);
  }
  /// N-coordinates (pairings with the Ann(e) basis) of a dual vector.
  IntVector dual_to_n(std::span<const Integer> y) const { return ann.dual_coords(y); }

  /// Delta_i = S_i - m_i in Ann(e) coordinates.
  std::vector<Polytope> nef_parts() const {
    std::vector<Polytope> parts;
    for (std::size_t i = 0; i < s; ++i) {
      std::vector<IntVector> pts;
      for (const auto& v : slices[i].integral_vertices()) pts.push_back(ann.to_coords(sub(v, lifts[i])));
      parts.push_back(Polytope::hull(d(), pts));
    }
    return parts;
  }
};

namespace detail {

// Lattice points m_i of S_i with sum deg; candidates tried by (L1 norm, lex).
inline std::optional<std::vector<IntVector>> find_lifts(const std::vector<Polytope>& slices,
                                                        const IntVector& deg) {
  const std::size_t s = slices.size(), n = deg.size();
  std::vector<std::vector<IntVector>> cand(s);
  for (std::size_t i = 0; i < s; ++i) {
    cand[i] = slices[i].lattice_points();
    if (cand[i].empty()) return std::nullopt;
    std::stable_sort(cand[i].begin(), cand[i].end(), [](const IntVector& a, const IntVector& b) {
      Integer na = 0, nb = 0;
      for (const auto& x : a) na += abs(x);
      for (const auto& x : b) nb += abs(x);
      return na < nb;
    });
  }
  // Suffix coordinate bounds for pruning.
  std::vector<IntVector> lo(s + 1, IntVector(n, 0)), hi(s + 1, IntVector(n, 0));
  for (std::size_t i = s; i-- > 0;)
    for (std::size_t j = 0; j < n; ++j) {
      Integer mn = cand[i][0][j], mx = mn;
      for (const auto& c : cand[i]) {
        mn = std::min(mn, c[j]);
        mx = std::max(mx, c[j]);
      }
      lo[i][j] = lo[i + 1][j] + mn;
      hi[i][j] = hi[i + 1][j] + mx;
    }
  std::vector<IntVector> chosen(s);
  IntVector remaining = deg;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == s) return is_zero(remaining);
    for (const auto& c : cand[i]) {
      IntVector rest = sub(remaining, c);
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) ok = rest[j] >= lo[i + 1][j] && rest[j] <= hi[i + 1][j];
      if (!ok) continue;
      chosen[i] = c;
      std::swap(remaining, rest);
      if (rec(i + 1)) return true;
      std::swap(remaining, rest);
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return chosen;
}

}  // namespace detail

/// Checks deg_dual = sum e_i with nonzero integral e_i in K^v.
inline void check_decomposition(const GorensteinConePair& pair, const std::vector<IntVector>& e) {
  require(!e.empty(), ErrorKind::decomposition, "decomposition has no summands");
  IntVector total(pair.rank(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string name = "summand " + std::to_string(i + 1);
    require(e[i].size() == pair.rank(), ErrorKind::lattice_mismatch, name + " has the wrong rank");
    require(!is_zero(e[i]), ErrorKind::decomposition, name + " is zero");
    for (const auto& v : pair.k_generators)
      require(dot(v, e[i]) >= 0, ErrorKind::decomposition, name + " is not in the dual cone");
    total = add(total, e[i]);
  }
  require(total == pair.deg_dual, ErrorKind::decomposition, "summands do not add up to deg_dual");
}

inline ConeFrame make_frame(const GorensteinConePair& pair, const std::vector<IntVector>& e) {
  check_decomposition(pair, e);
  ConeFrame f;
  f.s = e.size();
  f.e = e;
  for (std::size_t i = 0; i < f.s; ++i) f.slices.push_back(part_slice(pair, e, i));
  auto lifts = detail::find_lifts(f.slices, pair.deg);
  require(lifts.has_value(), ErrorKind::decomposition,
          "deg is not a sum of lattice points of the slices S_i");
  f.lifts = std::move(*lifts);
  f.ann = LatticeEmbedding::kernel(IntMatrix::from_rows(e, pair.rank()));
  f.dual_matrix = stack(IntMatrix::from_rows(f.lifts, pair.rank()), f.ann.basis());
  f.dual_matrix_inverse = inverse_unimodular(f.dual_matrix);
  return f;
}

/// Nef-partition attached to a decomposition of deg_dual, in Ann(e) coordinates.
inline std::vector<Polytope> cone_to_nef_partition(const GorensteinConePair& pair,
                                                   const std::vector<IntVector>& e_tilde) {
  ConeFrame f = make_frame(pair, e_tilde);
  return validate_nef_partition(f.nef_parts()).parts;
}

/// Toric cone sigma generated by primitive vectors, with Reid's criteria.
struct FanCone {
  std::vector<IntVector> generators;
  bool gorenstein = false;
  bool canonical = false;
  bool terminal = false;
  bool smooth = false;
  std::optional<IntVector> gorenstein_functional;
};

inline FanCone classify_singularity(std::vector<IntVector> generators) {
  require(!generators.empty(), ErrorKind::input, "classify_singularity: no generators");
  const std::size_t n = generators.front().size();
  for (const auto& g : generators)
    require(content(g) == 1, ErrorKind::input, "classify_singularity: generator is not primitive");
  FanCone c;
  c.generators = generators;
  IntMatrix g = IntMatrix::from_rows(generators, n);
  c.gorenstein_functional = solve_linear_integer(g, IntVector(generators.size(), 1));
  c.gorenstein = c.gorenstein_functional.has_value();
  if (rank(g) == generators.size()) c.smooth = saturate(g).index == 1;
  if (c.gorenstein) {
    // sigma meets {<k, y> <= 1} in conv(0, n_1..n_r).
    std::vector<IntVector> pts = generators;
    pts.push_back(IntVector(n, 0));
    auto low = Polytope::hull(n, pts).lattice_points();
    c.canonical = true;
    std::size_t at_most_one = 0;
    for (const auto& y : low) {
      Integer h = dot(*c.gorenstein_functional, y);
      if (h < 1 && !is_zero(y)) c.canonical = false;
      if (h <= 1) ++at_most_one;
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    c.terminal = c.canonical && at_most_one == generators.size() + 1;
  }
  return c;
}

/// Vertex sets of the facets of a full-dimensional polytope.
inline std::vector<std::vector<QPoint>> facet_vertex_sets(const Polytope& p) {
  std::vector<std::vector<QPoint>> out;
  for (const auto& f : p.facets()) {
    std::vector<QPoint> vs;
    for (const auto& v : p.vertices())
      if (f.tight(v)) vs.push_back(v);
    out.push_back(std::move(vs));
  }
  return out;
}

}  // namespace dmirror
