#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dmirror/mirror/decomposition.hpp"
#include "dmirror/mirror/laurent.hpp"

namespace dmirror {

/// Coefficients c_v indexed by the lattice points v of the degree slice S
/// (M-bar basis coordinates). Every polynomial built from the same cone
/// reads its coefficients from this single map.
template <class Coeff>
struct CoefficientAssignment {
  std::vector<IntVector> points;  // sorted
  std::vector<Coeff> values;
  std::optional<std::uint64_t> seed;

  const Coeff& at(const IntVector& v) const {
    auto it = std::lower_bound(points.begin(), points.end(), v);
    require(it != points.end() && *it == v, ErrorKind::input,
            "coefficient requested for a point outside the degree slice");
    return values[static_cast<std::size_t>(it - points.begin())];
  }
};

inline std::vector<IntVector> slice_points(const GorensteinConePair& pair) {
  return degree_slice(pair).lattice_points();
}

/// Uniform nonzero F_p values, drawn in lexicographic order of l(S).
inline CoefficientAssignment<Fp> random_coefficients(const GorensteinConePair& pair,
                                                     std::uint64_t seed, std::uint64_t prime) {
  require(is_probable_prime(prime), ErrorKind::input, "coefficient field: modulus is not prime");
  CoefficientAssignment<Fp> c;
  c.points = slice_points(pair);
  c.seed = seed;
  std::mt19937_64 rng(mix64(seed));
  for (std::size_t i = 0; i < c.points.size(); ++i) c.values.push_back(random_nonzero(rng, prime));
  return c;
}

/// Random nonzero rationals a/b with |a| <= 50, 1 <= b <= 9.
inline CoefficientAssignment<Rational> random_rational_coefficients(const GorensteinConePair& pair,
                                                                    std::uint64_t seed) {
  CoefficientAssignment<Rational> c;
  c.points = slice_points(pair);
  c.seed = seed;
  std::mt19937_64 rng(mix64(seed));
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    auto a = static_cast<long long>(uniform_in(rng, 1, 100));
    a = a <= 50 ? a : 50 - a;
    auto b = static_cast<long long>(uniform_in(rng, 1, 9));
    c.values.push_back(Rational(a, b));
  }
  return c;
}

/// Lattice data shared by both sides of a pair of decompositions.
///
/// Exponents live in M-bar' coordinates: pairings with the basis
/// [e_1..e_s, p_{k2}..p_{kn_k} (all k), xi_1..xi_m] of N-bar' = Z^s + N',
/// where N-bar = Z^s + N is split by the frame of e. Slot layout:
/// [0, s) e-slots, [s, s + (s - r)) p-slots, the rest xi-slots.
struct BridgeContext {
  ConeFrame frame_e;
  ConeFrame frame_etilde;
  std::vector<IntVector> e;              // N-bar coordinates
  std::vector<IntVector> e_tilde;        // reordered so e~_i has first block delta_i
  std::vector<std::size_t> permutation;  // e_tilde[i] = input e~[permutation[i]]
  std::vector<IntVector> p;              // e~_i - e_i in the N coordinates of frame_e
  BlockPartition blocks;
  IntMatrix n_prime_basis;               // rows p_{k,i>=2}, then xi, in N coordinates
  Integer saturation_index;
  std::size_t xi_count = 0;
  std::vector<std::vector<std::size_t>> p_slot;  // p_slot[k][i] for i >= 1; [k][0] unused
  std::vector<std::vector<IntVector>> w;         // w[k][0] = 0
  std::vector<std::vector<IntVector>> u;
  LatticeEmbedding ann_e_etilde;  // basis xi*_l in M-bar basis coordinates
  IntMatrix ann_e_etilde_in_ann_e;  // the same basis in Ann(e) coordinates
  IntMatrix ann_e_etilde_in_ann_etilde;

  std::size_t s() const { return e.size(); }
  std::size_t d() const { return frame_e.d(); }
  std::size_t r() const { return blocks.size(); }
  std::size_t mprime_rank() const { return s() + d(); }
  std::size_t xi_begin() const { return mprime_rank() - xi_count; }
  std::vector<std::size_t> xi_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = xi_begin(); i < mprime_rank(); ++i) out.push_back(i);
    return out;
  }

  /// M-bar' coordinates of an M-bar vector.
  IntVector to_mprime(std::span<const Integer> x) const {
    IntVector f = frame_e.to_frame(x);
    IntVector a(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(s()));
    IntVector c(f.begin() + static_cast<std::ptrdiff_t>(s()), f.end());
    return concat(a, n_prime_basis.apply(c));
  }
  /// Pairing of an M-bar' vector with e~_i.
  Integer pair_etilde(std::span<const Integer> z, std::size_t i) const {
    Integer v = z[i];
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto& b = blocks[k];
      for (std::size_t j = 1; j < b.size(); ++j) {
        if (b[j] == i) v += z[p_slot[k][j]];
        if (b[0] == i) v -= z[p_slot[k][j]];
      }
    }
    return v;
  }
};

namespace detail {

// Pairing tables of the bridge vectors as a linear system over M-bar'.
inline IntMatrix bridge_constraints(const BridgeContext& c) {
  const std::size_t s = c.s(), n = c.mprime_rank();
  IntMatrix a(2 * s, n);
  for (std::size_t i = 0; i < s; ++i) {
    a(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) {
      IntVector z = unit_vector(n, j);
      a(s + i, j) = c.pair_etilde(z, i);
    }
  }
  return a;
}

}  // namespace detail

/// Basis of N' = span(p_{k,i>=2} : all k) + span(xi), the xi completing the
/// saturation of the p-rows to a basis of N, and the index [N : N'].
struct AuxiliaryLattice {
  IntMatrix basis;  // p-rows first, then xi
  Integer index;
  std::size_t p_rows = 0;
};

inline AuxiliaryLattice build_auxiliary_lattice(const std::vector<IntVector>& p, const BlockPartition& blocks) {
  require(!p.empty(), ErrorKind::input, "auxiliary lattice: empty tuple");
  const std::size_t d = p.front().size();
  std::vector<IntVector> prow;
  for (const auto& b : blocks)
    for (std::size_t i = 1; i < b.size(); ++i) prow.push_back(p[b[i]]);
  IntMatrix pm = IntMatrix::from_rows(prow, d);
  Saturation sat = saturate(pm);
  IntMatrix full = extend_to_basis(sat.basis, d);
  AuxiliaryLattice aux;
  aux.p_rows = prow.size();
  aux.index = sat.index;
  aux.basis = stack(pm, full.row_range(prow.size(), d));
  ensure(abs(determinant(aux.basis)) == aux.index,
         "auxiliary lattice: index of N' differs from the product of elementary divisors");
  return aux;
}

/// Frames, block partition, N' and the bridge vectors for a pair (e, e~).
inline BridgeContext make_bridge_context(const GorensteinConePair& pair, const Decomposition& dec_e,
                                         const Decomposition& dec_etilde) {
  BridgeContext c;
  const std::size_t s = dec_e.s();
  require(dec_etilde.s() == s, ErrorKind::decomposition, "bridge: decompositions of different lengths");
  c.e = dec_e.e_tilde;
  c.frame_e = make_frame(pair, c.e);
  const std::size_t d = c.frame_e.d();

  // Pin each e~ to the slot given by its first-block unit vector.
  c.e_tilde.assign(s, {});
  c.permutation.assign(s, s);
  c.p.assign(s, {});
  for (std::size_t j = 0; j < s; ++j) {
    IntVector f = c.frame_e.dual_to_frame(dec_etilde.e_tilde[j]);
    IntVector head(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(s));
    std::size_t slot = s;
    for (std::size_t i = 0; i < s; ++i)
      if (head == unit_vector(s, i)) slot = i;
    ensure(slot < s && c.permutation[slot] == s, "bridge: summand of e~ is not pinned to a unique slot");
    c.permutation[slot] = j;
    c.e_tilde[slot] = dec_etilde.e_tilde[j];
    c.p[slot] = IntVector(f.begin() + static_cast<std::ptrdiff_t>(s), f.end());
  }
  c.frame_etilde = make_frame(pair, c.e_tilde);
  c.blocks = block_partition(c.p);
  const std::size_t r = c.blocks.size();

  // N' = span of the p_{k,i>=2} completed by xi from the SNF of the p-rows.
  c.p_slot.assign(r, {});
  std::size_t next = s;
  for (std::size_t k = 0; k < r; ++k) {
    c.p_slot[k].assign(c.blocks[k].size(), 0);
    for (std::size_t i = 1; i < c.blocks[k].size(); ++i) c.p_slot[k][i] = next++;
  }
  AuxiliaryLattice aux = build_auxiliary_lattice(c.p, c.blocks);
  c.n_prime_basis = aux.basis;
  c.saturation_index = aux.index;
  c.xi_count = d - aux.p_rows;
  const std::size_t p_rows = aux.p_rows;

  // Bridge vectors from the pairing tables.
  IntMatrix a = detail::bridge_constraints(c);
  const std::size_t n = c.mprime_rank();
  c.w.assign(r, {});
  c.u.assign(r, {});
  for (std::size_t k = 0; k < r; ++k) {
    const auto& b = c.blocks[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      IntVector rhs_w(2 * s, 0), rhs_u(2 * s, 0);
      if (i == 0) {
        c.w[k].push_back(IntVector(n, 0));
      } else {
        rhs_w[s + b[0]] = -1;
        rhs_w[s + b[i]] = 1;
        auto sol = solve_linear_integer(a, rhs_w);
        ensure(sol.has_value(), "bridge: no integral w vector");
        c.w[k].push_back(*sol);
      }
      rhs_u[b[i]] = 1;
      rhs_u[s + b[0]] = 1;
      auto sol = solve_linear_integer(a, rhs_u);
      ensure(sol.has_value(), "bridge: no integral u vector");
      c.u[k].push_back(*sol);
    }
  }

  // Ann(e, e~) is spanned by the xi-slots of M-bar', and these lie in M-bar.
  IntMatrix ann_rows(c.xi_count, pair.rank());
  auto dual_xi = [&] {
    c.ann_e_etilde_in_ann_e = IntMatrix(c.xi_count, d);
    c.ann_e_etilde_in_ann_etilde = IntMatrix(c.xi_count, d);
    for (std::size_t l = 0; l < c.xi_count; ++l) {
      auto sol = solve_linear_integer(c.n_prime_basis, unit_vector(d, p_rows + l));
      ensure(sol.has_value(), "bridge: Ann(e, e~)' is larger than Ann(e, e~)");
      IntVector x = c.frame_e.from_frame(concat(IntVector(s, 0), *sol));
      ann_rows.set_row(l, x);
      c.ann_e_etilde_in_ann_e.set_row(l, *sol);
      c.ann_e_etilde_in_ann_etilde.set_row(l, c.frame_etilde.to_ann(x));
      ensure(c.to_mprime(x) == unit_vector(n, c.xi_begin() + l), "bridge: xi dual vector mismatch");
    }
  };
  dual_xi();
  // Change xi so that its dual basis is the Hermite basis of Ann(e, e~) in
  // M-bar: torus coordinates then do not depend on the order of the pair.
  if (c.xi_count > 0) {
    HermiteForm hf = hnf(ann_rows);
    IntMatrix g_inv_t = inverse_unimodular(hf.u).transpose();
    IntMatrix xi = c.n_prime_basis.row_range(p_rows, d);
    c.n_prime_basis = stack(c.n_prime_basis.row_range(0, p_rows), g_inv_t * xi);
    dual_xi();
    ensure(ann_rows == hf.h, "bridge: Hermite change of the xi basis failed");
  }
  c.ann_e_etilde = LatticeEmbedding::with_basis(ann_rows);

  // Direct sums: Ann(e)' = Ann(e,e~) + span(w), Ann(e~)' = Ann(e,e~) + span(u_ki - u_k1).
  std::vector<IntVector> e_side, et_side;
  for (std::size_t l = 0; l < c.xi_count; ++l) {
    e_side.push_back(unit_vector(n, c.xi_begin() + l));
    et_side.push_back(unit_vector(n, c.xi_begin() + l));
  }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 1; i < c.blocks[k].size(); ++i) {
      e_side.push_back(c.w[k][i]);
      et_side.push_back(sub(c.u[k][i], c.u[k][0]));
    }
  for (const auto& z : e_side)
    for (std::size_t i = 0; i < s; ++i) ensure(z[i] == 0, "bridge: w vector pairs with e");
  for (const auto& z : et_side)
    for (std::size_t i = 0; i < s; ++i) ensure(c.pair_etilde(z, i) == 0, "bridge: u difference pairs with e~");
  ensure(e_side.size() == d && et_side.size() == d, "bridge: direct-sum bases have the wrong size");
  ensure(saturate(IntMatrix::from_rows(e_side, n)).index == 1, "bridge: Ann(e)' is not Ann(e,e~) + span(w)");
  ensure(saturate(IntMatrix::from_rows(et_side, n)).index == 1,
         "bridge: Ann(e~)' is not Ann(e,e~) + span(u_ki - u_k1)");
  return c;
}

/// Checks the pairing tables of w and u exactly.
inline bool bridge_vectors_valid(const BridgeContext& c, std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  const std::size_t s = c.s();
  for (std::size_t k = 0; k < c.r(); ++k) {
    const auto& b = c.blocks[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        Integer we = c.w[k][i][j], wet = c.pair_etilde(c.w[k][i], j);
        Integer ue = c.u[k][i][j], uet = c.pair_etilde(c.u[k][i], j);
        if (we != 0) return fail("w pairs nonzero with some e");
        Integer want_wet = i == 0 ? 0 : j == b[i] ? 1 : j == b[0] ? -1 : 0;
        if (wet != want_wet) return fail("w has the wrong pairing with e~");
        if (ue != (j == b[i] ? 1 : 0)) return fail("u has the wrong pairing with e");
        if (uet != (j == b[0] ? 1 : 0)) return fail("u has the wrong pairing with e~");
      }
    }
  }
  return true;
}

/// Slice polynomials and the matrices A_k over Coeff.
template <class Coeff>
struct BridgeData {
  BridgeContext context;
  std::map<std::pair<std::size_t, std::size_t>, LaurentPoly<Coeff>> slice_polys;  // g_{i,j}
  std::map<std::pair<std::size_t, std::size_t>, std::vector<IntVector>> slice_points;  // l(S_{i,j})
  std::vector<LaurentPoly<Coeff>> g;        // g_i from S_i (e side)
  std::vector<LaurentPoly<Coeff>> g_tilde;  // g~_j from S~_j
  std::vector<PolyMatrix<Coeff>> matrices;  // A_k in M-bar' coordinates
  std::vector<PolyMatrix<Coeff>> matrices_restricted;  // A_k over Ann(e, e~) coordinates
  bool partition_identities = false;
  bool matrix_identities = false;
};

namespace detail {

template <class Coeff>
LaurentPoly<Coeff> poly_from_points(const BridgeContext& c, const std::vector<IntVector>& pts,
                                    const CoefficientAssignment<Coeff>& coeffs) {
  LaurentPoly<Coeff> f(c.mprime_rank());
  for (const auto& v : pts) f.add_term(to_exponent(c.to_mprime(v)), coeffs.at(v));
  return f;
}

inline LevelFunctional level(const IntVector& f, long l) { return {f, Integer(l)}; }

}  // namespace detail

/// Assembles the bridge over a prepared context; any w, u satisfying the
/// pairing tables are accepted.
template <class Coeff>
BridgeData<Coeff> build_bridge(const GorensteinConePair& pair, BridgeContext context,
                               const CoefficientAssignment<Coeff>& coeffs) {
  BridgeData<Coeff> bd;
  bd.context = std::move(context);
  const BridgeContext& c = bd.context;
  std::string why;
  ensure(bridge_vectors_valid(c, &why), "bridge: " + why);
  const std::size_t s = c.s(), n = c.mprime_rank();

  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Polytope sij = slice(pair.rank(), pair.k_generators,
                           {detail::level(pair.deg_dual, 1), detail::level(c.e[i], 1), detail::level(c.e_tilde[j], 1)});
      auto pts = sij.lattice_points();
      bd.slice_polys.emplace(std::pair{i, j}, detail::poly_from_points(c, pts, coeffs));
      bd.slice_points.emplace(std::pair{i, j}, std::move(pts));
    }
  std::vector<std::vector<IntVector>> row_pts(s), col_pts(s);
  for (std::size_t i = 0; i < s; ++i) {
    row_pts[i] = c.frame_e.slices[i].lattice_points();
    col_pts[i] = c.frame_etilde.slices[i].lattice_points();
    bd.g.push_back(detail::poly_from_points(c, row_pts[i], coeffs));
    bd.g_tilde.push_back(detail::poly_from_points(c, col_pts[i], coeffs));
  }

  // l(S_ki) is the disjoint union of l(S_{ki,kj}) over its own block, and
  // likewise for l(S~_kj); every other S_{i,j} is empty.
  std::vector<std::size_t> block_of(s);
  for (std::size_t k = 0; k < c.r(); ++k)
    for (auto i : c.blocks[k]) block_of[i] = k;
  bool ok = true;
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<IntVector> rows, cols;
    for (std::size_t j = 0; j < s; ++j) {
      const auto& rij = bd.slice_points.at({i, j});
      const auto& rji = bd.slice_points.at({j, i});
      if (block_of[i] != block_of[j]) {
        ok = ok && rij.empty();
        continue;
      }
      rows.insert(rows.end(), rij.begin(), rij.end());
      cols.insert(cols.end(), rji.begin(), rji.end());
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    ok = ok && std::adjacent_find(rows.begin(), rows.end()) == rows.end() && rows == row_pts[i];
    ok = ok && std::adjacent_find(cols.begin(), cols.end()) == cols.end() && cols == col_pts[i];
    LaurentPoly<Coeff> gr(n), gc(n);
    for (std::size_t j = 0; j < s; ++j) {
      gr += bd.slice_polys.at({i, j});
      gc += bd.slice_polys.at({j, i});
    }
    ok = ok && gr == bd.g[i] && gc == bd.g_tilde[i];
  }
  ensure(ok, "bridge: slice point partition identities fail");
  bd.partition_identities = ok;

  // A_k(i,j) = X^{-u_ki - w_kj} g_{ki,kj}.
  auto ex = [](const IntVector& v) { return to_exponent(v); };
  const auto xi = c.xi_slots();
  bool ids = true;
  for (std::size_t k = 0; k < c.r(); ++k) {
    const auto& b = c.blocks[k];
    const std::size_t nk = b.size();
    PolyMatrix<Coeff> a(nk, std::vector<LaurentPoly<Coeff>>(nk, LaurentPoly<Coeff>(n)));
    PolyMatrix<Coeff> ar(nk, std::vector<LaurentPoly<Coeff>>(nk, LaurentPoly<Coeff>(xi.size())));
    for (std::size_t i = 0; i < nk; ++i)
      for (std::size_t j = 0; j < nk; ++j) {
        a[i][j] = bd.slice_polys.at({b[i], b[j]}).shifted(-ex(add(c.u[k][i], c.w[k][j])));
        ar[i][j] = a[i][j].restricted(xi);
      }
    // A_k (1, X^{w_k2}, ...)^t = (X^{-u_ki} g_ki)_i.
    for (std::size_t i = 0; i < nk; ++i) {
      LaurentPoly<Coeff> lhs(n);
      for (std::size_t j = 0; j < nk; ++j) lhs += a[i][j].shifted(ex(c.w[k][j]));
      ids = ids && lhs == bd.g[b[i]].shifted(-ex(c.u[k][i]));
    }
    // (X^{u_k1}, ..., X^{u_kn}) A_k = (X^{-w_kj} g~_kj)_j.
    for (std::size_t j = 0; j < nk; ++j) {
      LaurentPoly<Coeff> lhs(n);
      for (std::size_t i = 0; i < nk; ++i) lhs += a[i][j].shifted(ex(c.u[k][i]));
      ids = ids && lhs == bd.g_tilde[b[j]].shifted(-ex(c.w[k][j]));
    }
    bd.matrices.push_back(std::move(a));
    bd.matrices_restricted.push_back(std::move(ar));
  }
  ensure(ids, "bridge: matrix identities fail");
  bd.matrix_identities = ids;
  return bd;
}

template <class Coeff>
BridgeData<Coeff> build_bridge(const GorensteinConePair& pair, const Decomposition& dec_e,
                               const Decomposition& dec_etilde, const CoefficientAssignment<Coeff>& coeffs) {
  return build_bridge(pair, make_bridge_context(pair, dec_e, dec_etilde), coeffs);
}

/// det A_k over Ann(e, e~) coordinates, with the diagonal witness monomial.
template <class Coeff>
struct DeterminantData {
  std::vector<LaurentPoly<Coeff>> dets;
  std::vector<Exponent> witness;             // exponent of the diagonal identity-point term
  std::vector<bool> witness_generic;         // coefficient nonzero as a polynomial in the c_v
  std::vector<std::optional<bool>> witness_checked;  // nullopt when the expansion was too large
};

namespace detail {

// Coefficient of the monomial `target` in det A_k as a polynomial in the
// c_v: a map from sorted point multisets to integer multiplicities.
template <class Coeff>
std::optional<bool> witness_generic(const BridgeData<Coeff>& bd, std::size_t k, const Exponent& target) {
  const BridgeContext& c = bd.context;
  const auto& b = c.blocks[k];
  const std::size_t nk = b.size();
  const auto xi = c.xi_slots();
  // Terms of entry (i,j) as (restricted exponent, point).
  std::vector<std::vector<std::vector<std::pair<Exponent, IntVector>>>> terms(nk, std::vector<std::vector<std::pair<Exponent, IntVector>>>(nk));
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < nk; ++j) {
      const Exponent shift = -to_exponent(add(c.u[k][i], c.w[k][j]));
      for (const auto& v : bd.slice_points.at({b[i], b[j]})) {
        Exponent full = to_exponent(c.to_mprime(v)) + shift;
        Exponent x;
        for (auto l : xi) x.push_back(full[l]);
        terms[i][j].push_back({x, v});
      }
    }
  }
  // Number of expansion terms: the permanent of the term-count matrix.
  std::vector<double> perm(std::size_t{1} << nk, 0.0);
  perm[0] = 1;
  for (std::uint32_t mask = 1; mask < perm.size(); ++mask) {
    const auto row = static_cast<std::size_t>(__builtin_popcount(mask)) - 1;
    for (std::size_t j = 0; j < nk; ++j)
      if (mask >> j & 1) perm[mask] += perm[mask & ~(1u << j)] * static_cast<double>(terms[row][j].size());
  }
  if (perm.back() > 5e6) return std::nullopt;
  std::map<std::vector<IntVector>, long long> coeff;
  std::vector<bool> used(nk, false);
  std::vector<IntVector> chosen;
  Exponent acc(xi.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int sign) {
    if (i == nk) {
      if (acc != target) return;
      auto key = chosen;
      std::sort(key.begin(), key.end());
      coeff[key] += sign;
      return;
    }
    int parity = 0;  // number of used columns left of j, for the permutation sign
    for (std::size_t j = 0; j < nk; ++j) {
      if (used[j]) {
        ++parity;
        continue;
      }
      used[j] = true;
      const int sgn = ((j - static_cast<std::size_t>(parity)) % 2 == 0) ? sign : -sign;
      for (const auto& [x, v] : terms[i][j]) {
        acc = acc + x;
        chosen.push_back(v);
        rec(i + 1, sgn);
        chosen.pop_back();
        acc = acc - x;
      }
      used[j] = false;
    }
  };
  rec(0, 1);
  for (const auto& [key, m] : coeff)
    if (m != 0) return true;
  return false;
}

}  // namespace detail

template <class Coeff>
DeterminantData<Coeff> determinants(const BridgeData<Coeff>& bd) {
  const BridgeContext& c = bd.context;
  DeterminantData<Coeff> out;
  const auto xi = c.xi_slots();
  for (std::size_t k = 0; k < c.r(); ++k) {
    const auto& b = c.blocks[k];
    LaurentPoly<Coeff> det = determinant(bd.matrices_restricted[k], xi.size());
    // Diagonal witness: the lifts m_ki lie in S_{ki,ki}.
    Exponent target(xi.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      Exponent full = to_exponent(sub(c.to_mprime(c.frame_e.lifts[b[i]]), add(c.u[k][i], c.w[k][i])));
      for (std::size_t l = 0; l < xi.size(); ++l) target[l] += full[xi[l]];
    }
    out.witness_checked.push_back(detail::witness_generic(bd, k, target));
    out.witness_generic.push_back(out.witness_checked.back().value_or(true));
    ensure(out.witness_generic.back(), "determinants: diagonal witness cancels identically");
    require(!det.is_zero(), ErrorKind::degenerate_coefficients,
            "det A_" + std::to_string(k + 1) + " vanishes identically for these coefficients; resample");
    require(det.coefficient(target).has_value(), ErrorKind::degenerate_coefficients,
            "det A_" + std::to_string(k + 1) + " loses its diagonal witness term for these coefficients; resample");
    out.witness.push_back(std::move(target));
    out.dets.push_back(std::move(det));
  }
  return out;
}

}  // namespace dmirror
