#include <gtest/gtest.h>

#include "corpus.hpp"
#include "dmirror/cone/examples.hpp"
#include "dmirror/mirror/bridge.hpp"
#include "oracles.hpp"

using namespace dmirror;
using corpus::iv;

namespace {

// Permutation expansion, independent of the cofactor recursion in the library.
template <class Coeff>
LaurentPoly<Coeff> leibniz(const PolyMatrix<Coeff>& a, std::size_t nvars) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  LaurentPoly<Coeff> det(nvars);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    LaurentPoly<Coeff> term = a[0][perm[0]];
    for (std::size_t i = 1; i < n; ++i) term = term * a[i][perm[i]];
    if (inversions % 2) det -= term;
    else det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

MirrorSetup product_setup(std::size_t n, std::size_t t) {
  ProductProjective pp = product_projective(n, t);
  return setup_mirror(pp.pair, pp.block_functionals[0]);
}

std::size_t count_multisets(const GorensteinConePair& pair) {
  std::vector<IntVector> pts = dual_degree_slice(pair).lattice_points();
  const auto s = static_cast<std::size_t>(pair.index);
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t, IntVector)> rec = [&](std::size_t depth, std::size_t from, IntVector acc) {
    if (depth == s) {
      if (acc == pair.deg_dual) ++count;
      return;
    }
    for (std::size_t k = from; k < pts.size(); ++k) rec(depth + 1, k, add(acc, pts[k]));
  };
  rec(0, 0, IntVector(pair.rank(), 0));
  return count;
}

}  // namespace

TEST(BlockPartition, Examples) {
  auto zeros = block_partition(iv({{0, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(zeros, (BlockPartition{{0}, {1}, {2}}));
  auto two = block_partition(iv({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  EXPECT_EQ(two, (BlockPartition{{0, 1}, {2, 3}}));
  auto one = block_partition(iv({{1, 0}, {0, 1}, {-1, -1}}));
  EXPECT_EQ(one, (BlockPartition{{0, 1, 2}}));
  EXPECT_THROW(block_partition(iv({{1, 0}, {1, 0}})), Error);
  // {1,1,-2}: the only zero-sum partition is the whole set, but the rank is 1.
  EXPECT_THROW(block_partition(iv({{1}, {1}, {-2}})), Error);
}

TEST(BlockPartition, MatchesSubsetOracle) {
  std::mt19937_64 rng(7);
  int accepted = 0;
  while (accepted < 200) {
    const std::size_t s = 1 + rng() % 7, dim = 1 + rng() % 4;
    auto p = oracle::planted_zero_sum(rng, s, dim);
    auto expected = oracle::zero_sum_partition(p);
    if (!expected || !oracle::has_block_structure(p, *expected)) continue;
    ++accepted;
    EXPECT_EQ(block_partition(p), *expected);
  }
}

TEST(Enumerate, TwoSegmentsOnlyTrivial) {
  MirrorSetup m = setup_mirror(validate_nef_partition(corpus::nef_partitions()[0].parts));
  ASSERT_EQ(m.decompositions.size(), 1u);
  EXPECT_TRUE(m.decompositions[0].trivial());
  EXPECT_EQ(m.decompositions[0].r(), 2u);
}

TEST(Enumerate, ProductProjective) {
  MirrorSetup m = product_setup(3, 3);
  ASSERT_EQ(m.decompositions.size(), 3u);
  EXPECT_TRUE(m.decompositions[0].trivial());
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(m.decompositions[i].r(), 1u);
    EXPECT_EQ(m.decompositions[i].block_sizes(), (std::vector<std::size_t>{3}));
  }
  // The block functionals of blocks 2 and 3 are the other decompositions.
  ProductProjective pp = product_projective(3, 3);
  for (std::size_t b = 1; b < 3; ++b) {
    auto want = pp.block_functionals[b];
    std::sort(want.begin(), want.end());
    bool found = false;
    for (const auto& d : m.decompositions) {
      auto got = d.e_tilde;
      std::sort(got.begin(), got.end());
      found = found || got == want;
    }
    EXPECT_TRUE(found);
  }
}

TEST(Enumerate, MatchesMultisetOracle) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    MirrorSetup m = setup_mirror(validate_nef_partition(entry.parts));
    EXPECT_EQ(m.decompositions.size(), count_multisets(m.pair));
    for (const auto& d : m.decompositions) {
      IntVector sum(m.pair.rank(), 0);
      for (std::size_t i = 0; i < d.s(); ++i) {
        sum = add(sum, d.e_tilde[i]);
        // e~_i - e_i = (0; p_i).
        EXPECT_EQ(sub(d.e_tilde[i], m.base[i]), concat(IntVector(d.s(), 0), d.p[i]));
        EXPECT_TRUE(m.dual.parts[i].contains(d.p[i]));
      }
      EXPECT_EQ(sum, m.pair.deg_dual);
    }
  }
  MirrorSetup pp = product_setup(2, 2);
  EXPECT_EQ(pp.decompositions.size(), count_multisets(pp.pair));
}

TEST(FindDecomposition, ConeMode) {
  ProductProjective pp = product_projective(3, 2);
  auto e = find_decomposition(pp.pair);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->size(), 3u);
  IntVector sum(pp.pair.rank(), 0);
  for (const auto& x : *e) sum = add(sum, x);
  EXPECT_EQ(sum, pp.pair.deg_dual);
}

TEST(AuxiliaryLattice, Examples) {
  auto trivial = build_auxiliary_lattice(iv({{0, 0}, {0, 0}}), {{0}, {1}});
  EXPECT_EQ(trivial.index, 1);
  EXPECT_EQ(trivial.basis, IntMatrix::identity(2));
  auto doubled = build_auxiliary_lattice(iv({{2, 0}, {-2, 0}}), {{0, 1}});
  EXPECT_EQ(doubled.index, 2);
  EXPECT_EQ(doubled.p_rows, 1u);
  EXPECT_EQ(abs(determinant(doubled.basis)), 2);
  // Index equals the product of the elementary divisors of the p-rows.
  auto three = build_auxiliary_lattice(iv({{2, 2, 0}, {0, 3, 3}, {-2, -5, -3}}), {{0, 1, 2}});
  SmithForm f = snf(IntMatrix::from_rows(iv({{-2, -5, -3}, {0, 3, 3}})));
  Integer prod = 1;
  for (std::size_t i = 0; i < f.rank; ++i) prod *= f.s(i, i);
  EXPECT_EQ(three.index, prod);
}

TEST(Bridge, ProductProjectiveTables) {
  MirrorSetup m = product_setup(3, 3);
  for (std::size_t j = 1; j < 3; ++j) {
    BridgeContext c = make_bridge_context(m.pair, m.decompositions[0], m.decompositions[j]);
    std::string why;
    EXPECT_TRUE(bridge_vectors_valid(c, &why)) << why;
    EXPECT_EQ(c.r(), 1u);
    EXPECT_EQ(c.ann_e_etilde.rank(), 2u);
    // Substitution: map w, u back to rational M-bar vectors in frame
    // coordinates and pair them with the original N-bar vectors.
    auto pairing = [&](const IntVector& z, const IntVector& y) {
      IntVector q(z.begin() + static_cast<std::ptrdiff_t>(c.s()), z.end());
      auto cc = solve_linear_rational(c.n_prime_basis, q);
      EXPECT_TRUE(cc.has_value());
      IntVector fy = c.frame_e.dual_to_frame(y);
      Rational v = 0;
      for (std::size_t i = 0; i < c.s(); ++i) v += Rational(z[i] * fy[i]);
      for (std::size_t i = 0; i < cc->size(); ++i) v += (*cc)[i] * Rational(fy[c.s() + i]);
      return v;
    };
    for (std::size_t k = 0; k < c.r(); ++k) {
      const auto& b = c.blocks[k];
      for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t l = 0; l < c.s(); ++l) {
          EXPECT_EQ(pairing(c.u[k][i], c.e[l]), Rational(b[i] == l ? 1 : 0));
          EXPECT_EQ(pairing(c.u[k][i], c.e_tilde[l]), Rational(b[0] == l ? 1 : 0));
          EXPECT_EQ(pairing(c.w[k][i], c.e[l]), Rational(0));
          int want = i == 0 ? 0 : l == b[i] ? 1 : l == b[0] ? -1 : 0;
          EXPECT_EQ(pairing(c.w[k][i], c.e_tilde[l]), Rational(want));
        }
    }
    // Ann(e, e~) basis pairs to zero with every e and e~.
    for (std::size_t l = 0; l < c.ann_e_etilde.rank(); ++l) {
      IntVector x = c.ann_e_etilde.basis().row(l);
      for (std::size_t i = 0; i < c.s(); ++i) {
        EXPECT_EQ(dot(x, c.e[i]), 0);
        EXPECT_EQ(dot(x, c.e_tilde[i]), 0);
      }
    }
  }
}

TEST(Bridge, TrivialDecompositionHasNoW) {
  MirrorSetup m = setup_mirror(validate_nef_partition(corpus::nef_partitions()[2].parts));
  BridgeContext c = make_bridge_context(m.pair, m.decompositions[0], m.decompositions[0]);
  EXPECT_EQ(c.r(), 3u);
  EXPECT_EQ(c.saturation_index, 1);
  for (const auto& wk : c.w) {
    ASSERT_EQ(wk.size(), 1u);
    EXPECT_TRUE(is_zero(wk[0]));
  }
}

TEST(SlicePolys, LengthOne) {
  MirrorSetup m = setup_mirror(validate_nef_partition(corpus::nef_partitions()[1].parts));
  auto coeffs = random_coefficients(m.pair, 3, 10007);
  auto bd = build_bridge(m.pair, m.decompositions[0], m.decompositions[0], coeffs);
  ASSERT_EQ(bd.matrices.size(), 1u);
  ASSERT_EQ(bd.matrices[0].size(), 1u);
  EXPECT_EQ(bd.slice_polys.at({0, 0}).size(), slice_points(m.pair).size());
  EXPECT_EQ(bd.slice_polys.at({0, 0}), bd.g[0]);
  auto dets = determinants(bd);
  EXPECT_EQ(dets.dets[0].size(), 9u);
}

TEST(SlicePolys, ProductProjectiveSupports) {
  MirrorSetup m = product_setup(3, 3);
  auto coeffs = random_coefficients(m.pair, 1, 10007);
  for (std::size_t j = 1; j < 3; ++j) {
    auto bd = build_bridge(m.pair, m.decompositions[0], m.decompositions[j], coeffs);
    for (const auto& [ij, pts] : bd.slice_points) EXPECT_EQ(pts.size(), 3u);
    EXPECT_TRUE(bd.partition_identities);
    EXPECT_TRUE(bd.matrix_identities);
    ASSERT_EQ(bd.matrices.size(), 1u);
    EXPECT_EQ(bd.matrices[0].size(), 3u);
  }
}

TEST(SlicePolys, RationalIdentitiesOnCorpus) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    MirrorSetup m = setup_mirror(validate_nef_partition(entry.parts));
    auto coeffs = random_rational_coefficients(m.pair, 11);
    for (const auto& de : m.decompositions)
      for (const auto& det : m.decompositions) {
        auto bd = build_bridge(m.pair, de, det, coeffs);
        EXPECT_TRUE(bd.partition_identities && bd.matrix_identities);
      }
  }
}

TEST(Determinants, CofactorMatchesPermutationExpansion) {
  MirrorSetup m = product_setup(3, 3);
  auto coeffs = random_coefficients(m.pair, 5, 10007);
  auto bd = build_bridge(m.pair, m.decompositions[0], m.decompositions[1], coeffs);
  auto dd = determinants(bd);
  ASSERT_EQ(dd.dets.size(), 1u);
  EXPECT_EQ(dd.dets[0], leibniz(bd.matrices_restricted[0], 2));
  EXPECT_EQ(dd.witness_checked[0], std::optional<bool>(true));
  // A degree-3 form in three z-variables on a 2-torus: the exponents, shifted
  // by the witness, span a triangle with 10 lattice points at most.
  EXPECT_LE(dd.dets[0].size(), 10u);
  EXPECT_GE(dd.dets[0].size(), 3u);
  auto rational = random_rational_coefficients(m.pair, 5);
  auto bq = build_bridge(m.pair, m.decompositions[0], m.decompositions[1], rational);
  EXPECT_EQ(determinants(bq).dets[0], leibniz(bq.matrices_restricted[0], 2));
}

// Other valid choices of w and u (shifted by elements of Ann(e, e~)) change
// det A_k by a monomial factor only.
TEST(Determinants, InvariantUnderBridgeVectorChoice) {
  MirrorSetup m = product_setup(3, 3);
  auto coeffs = random_coefficients(m.pair, 9, 10007);
  BridgeContext c = make_bridge_context(m.pair, m.decompositions[0], m.decompositions[2]);
  auto base = determinants(build_bridge(m.pair, c, coeffs)).dets[0];
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    BridgeContext alt = c;
    for (auto& row : alt.w)
      for (std::size_t i = 1; i < row.size(); ++i)
        for (auto l : alt.xi_slots()) row[i][l] += static_cast<long>(rng() % 7) - 3;
    for (auto& row : alt.u)
      for (auto& v : row)
        for (auto l : alt.xi_slots()) v[l] += static_cast<long>(rng() % 7) - 3;
    std::string why;
    ASSERT_TRUE(bridge_vectors_valid(alt, &why)) << why;
    auto det = determinants(build_bridge(m.pair, alt, coeffs)).dets[0];
    ASSERT_EQ(det.size(), base.size());
    // Same coefficients, exponents differing by one constant vector.
    auto it = det.terms().begin();
    auto jt = base.terms().begin();
    Exponent shift = it->first - jt->first;
    for (; it != det.terms().end(); ++it, ++jt) {
      EXPECT_EQ(it->first - jt->first, shift);
      EXPECT_EQ(it->second, jt->second);
    }
  }
}
