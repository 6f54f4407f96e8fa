#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dmirror/cone/gorenstein_cone.hpp"

namespace dmirror {

using BlockPartition = std::vector<std::vector<std::size_t>>;

/// A decomposition deg_dual = sum e~_i. In the frame of the base
/// decomposition e, e~_i = (delta_i; p_i) with p_i a lattice point of nabla_i.
struct Decomposition {
  std::vector<IntVector> p;        // N coordinates in the base frame
  std::vector<IntVector> e_tilde;  // N-bar basis coordinates
  BlockPartition blocks;           // zero-based indices, blocks sorted by first element

  std::size_t s() const noexcept { return p.size(); }
  std::size_t r() const noexcept { return blocks.size(); }
  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& b : blocks) out.push_back(b.size());
    return out;
  }
  bool trivial() const {
    for (const auto& x : p)
      if (!is_zero(x)) return false;
    return true;
  }
};

/// Finest partition of {0..s-1} into blocks with zero-sum p-vectors: indices
/// share a block iff their columns in a kernel basis of a -> sum a_i p_i agree.
inline BlockPartition block_partition(const std::vector<IntVector>& p) {
  const std::size_t s = p.size();
  require(s > 0, ErrorKind::input, "block_partition: empty tuple");
  const std::size_t d = p.front().size();
  IntVector total(d, 0);
  for (const auto& x : p) {
    require(x.size() == d, ErrorKind::lattice_mismatch, "block_partition: vectors of different lengths");
    total = add(total, x);
  }
  require(is_zero(total), ErrorKind::decomposition, "block_partition: vectors do not sum to zero");
  IntMatrix a(d, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < d; ++j) a(j, i) = p[i][j];
  IntMatrix k = d == 0 ? IntMatrix::identity(s) : kernel_basis(a);
  BlockPartition blocks;
  std::vector<bool> used(s, false);
  for (std::size_t i = 0; i < s; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> block{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < s; ++j) {
      if (used[j]) continue;
      bool same = true;
      for (std::size_t row = 0; row < k.rows() && same; ++row) same = k(row, i) == k(row, j);
      if (same) {
        block.push_back(j);
        used[j] = true;
      }
    }
    blocks.push_back(std::move(block));
  }
  const std::size_t rk = d == 0 ? 0 : rank(a);
  for (const auto& b : blocks) {
    IntVector sum(d, 0);
    for (auto i : b) sum = add(sum, p[i]);
    require(is_zero(sum), ErrorKind::decomposition,
            "block_partition: kernel classes are not zero-sum blocks; the tuple has no block structure");
  }
  require(blocks.size() == s - rk, ErrorKind::decomposition,
          "block_partition: number of blocks differs from s - rank");
  return blocks;
}

/// All decompositions of deg_dual into lattice points of T, the base
/// decomposition first and the rest in lexicographic order of their p-tuples.
inline std::vector<Decomposition> enumerate_decompositions(const GorensteinConePair& pair,
                                                           const ConeFrame& frame,
                                                           const DualNefPartition& dual) {
  const std::size_t s = frame.s, d = frame.d();
  require(dual.parts.size() == s && dual.dim == d, ErrorKind::lattice_mismatch,
          "enumerate_decompositions: dual nef-partition does not match the frame");
  std::vector<std::vector<IntVector>> cand(s);
  for (std::size_t i = 0; i < s; ++i) cand[i] = dual.parts[i].lattice_points();
  std::vector<IntVector> lo(s + 1, IntVector(d, 0)), hi(s + 1, IntVector(d, 0));
  for (std::size_t i = s; i-- > 0;) {
    ensure(!cand[i].empty(), "enumerate_decompositions: nabla_i has no lattice points");
    for (std::size_t j = 0; j < d; ++j) {
      Integer mn = cand[i][0][j], mx = mn;
      for (const auto& c : cand[i]) {
        mn = std::min(mn, c[j]);
        mx = std::max(mx, c[j]);
      }
      lo[i][j] = lo[i + 1][j] + mn;
      hi[i][j] = hi[i + 1][j] + mx;
    }
  }
  std::vector<std::vector<IntVector>> tuples;
  std::vector<IntVector> chosen(s);
  std::function<void(std::size_t, const IntVector&)> rec = [&](std::size_t i, const IntVector& acc) {
    if (i == s) {
      if (is_zero(acc)) tuples.push_back(chosen);
      return;
    }
    for (const auto& c : cand[i]) {
      IntVector next = add(acc, c);
      bool ok = true;
      for (std::size_t j = 0; j < d && ok; ++j) ok = -next[j] >= lo[i + 1][j] && -next[j] <= hi[i + 1][j];
      if (!ok) continue;
      chosen[i] = c;
      rec(i + 1, next);
    }
  };
  rec(0, IntVector(d, 0));
  std::sort(tuples.begin(), tuples.end());
  std::stable_partition(tuples.begin(), tuples.end(), [](const std::vector<IntVector>& t) {
    for (const auto& x : t)
      if (!is_zero(x)) return false;
    return true;
  });
  std::vector<Decomposition> out;
  for (auto& t : tuples) {
    Decomposition dec;
    dec.p = std::move(t);
    for (std::size_t i = 0; i < s; ++i) {
      IntVector y = frame.dual_from_frame(concat(unit_vector(s, i), dec.p[i]));
      for (const auto& v : pair.k_generators)
        ensure(dot(v, y) >= 0, "enumerate_decompositions: summand outside the dual cone");
      dec.e_tilde.push_back(std::move(y));
    }
    dec.blocks = block_partition(dec.p);
    out.push_back(std::move(dec));
  }
  ensure(!out.empty() && out.front().trivial(), "enumerate_decompositions: base decomposition missing");
  return out;
}

/// Some decomposition of deg_dual into index-many lattice points of T:
/// the lexicographically smallest sorted tuple.
inline std::optional<std::vector<IntVector>> find_decomposition(const GorensteinConePair& pair) {
  require(pair.index > 0 && pair.index <= 64, ErrorKind::input, "cone index out of range");
  const auto s = static_cast<std::size_t>(pair.index);
  std::vector<IntVector> pts = dual_degree_slice(pair).lattice_points();
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](const IntVector& y) { return is_zero(y); }), pts.end());
  std::vector<IntVector> chosen;
  std::function<bool(std::size_t, const IntVector&)> rec = [&](std::size_t from, const IntVector& rest) {
    if (chosen.size() == s) return is_zero(rest);
    for (std::size_t k = from; k < pts.size(); ++k) {
      IntVector next = sub(rest, pts[k]);
      // What remains must pair to the remaining count with deg.
      if (dot(pair.deg, next) != Integer(s - chosen.size() - 1)) continue;
      chosen.push_back(pts[k]);
      if (rec(k, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0, pair.deg_dual)) return std::nullopt;
  return chosen;
}

/// Everything derived from a cone and its base decomposition.
struct MirrorSetup {
  GorensteinConePair pair;
  std::vector<IntVector> base;  // e_1..e_s in N-bar coordinates
  ConeFrame frame;
  NefPartition nef;
  DualNefPartition dual;
  std::vector<Decomposition> decompositions;
};

inline MirrorSetup setup_mirror(GorensteinConePair pair, std::vector<IntVector> base) {
  MirrorSetup m;
  m.pair = std::move(pair);
  m.base = std::move(base);
  m.frame = make_frame(m.pair, m.base);
  m.nef = validate_nef_partition(m.frame.nef_parts());
  m.dual = dual_nef_partition(m.nef);
  m.decompositions = enumerate_decompositions(m.pair, m.frame, m.dual);
  return m;
}

inline MirrorSetup setup_mirror(const NefPartition& np) {
  const std::size_t s = np.length();
  std::vector<IntVector> base;
  for (std::size_t i = 0; i < s; ++i) base.push_back(concat(unit_vector(s, i), IntVector(np.dim, 0)));
  return setup_mirror(build_cone(np), std::move(base));
}

}  // namespace dmirror
