#include <gtest/gtest.h>

#include "corpus.hpp"
#include "dmirror/cone/examples.hpp"
#include "oracles.hpp"

using namespace dmirror;
using corpus::hull;
using corpus::iv;

namespace {

// Facet normals of a pointed full-dimensional cone: facets through 0 of
// conv(0, generators), found by the brute-force facet oracle.
std::vector<IntVector> oracle_dual_rays(const std::vector<IntVector>& gens) {
  std::vector<IntVector> pts = gens;
  pts.push_back(IntVector(gens.front().size(), 0));
  std::vector<IntVector> out;
  for (const auto& h : oracle::brute_force_facets(pts))
    if (h.offset == 0) out.push_back(h.normal);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Projection M-bar = Z^s + M -> M of a nef-mode cone point.
IntVector project(const IntVector& x, std::size_t s) { return IntVector(x.begin() + static_cast<std::ptrdiff_t>(s), x.end()); }

}  // namespace

TEST(BuildCone, TwoSegments) {
  NefPartition np = validate_nef_partition(corpus::nef_partitions()[0].parts);
  GorensteinConePair pair = build_cone(np);
  EXPECT_EQ(pair.k_generators,
            sorted(iv({{1, 0, 1, 0}, {1, 0, -1, 0}, {1, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 0, -1}, {0, 1, 0, 0}})));
  EXPECT_EQ(pair.index, 2);
  EXPECT_EQ(pair.k_dual_generators,
            sorted(iv({{1, 0, 1, 0}, {1, 0, -1, 0}, {0, 1, 0, 1}, {0, 1, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}})));
  // Same cone as the extremal rays found by the oracle.
  std::vector<IntVector> rays = oracle_dual_rays(pair.k_generators);
  EXPECT_EQ(rays, sorted(iv({{1, 0, 1, 0}, {1, 0, -1, 0}, {0, 1, 0, 1}, {0, 1, 0, -1}})));
  EXPECT_EQ(sorted(cone_facets(4, pair.k_dual_generators)), sorted(cone_facets(4, rays)));
}

TEST(BuildCone, SquareLengthOne) {
  GorensteinConePair pair =
      build_cone(validate_nef_partition({hull(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}))}));
  EXPECT_EQ(pair.k_generators.size(), 4u);
  EXPECT_EQ(pair.index, 1);
  EXPECT_EQ(pair.k_dual_generators, sorted(iv({{1, 1, 0}, {1, -1, 0}, {1, 0, 1}, {1, 0, -1}, {1, 0, 0}})));
  // (1;0) is not extremal in K^v but belongs to the generating set.
  std::vector<IntVector> rays = oracle_dual_rays(pair.k_generators);
  for (const auto& r : rays)
    EXPECT_TRUE(std::binary_search(pair.k_dual_generators.begin(), pair.k_dual_generators.end(), r));
}

TEST(BuildCone, CorpusIsReflexiveGorenstein) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    GorensteinConePair pair = build_cone(np);
    GorensteinCheck c = verify_reflexive_gorenstein(pair);
    EXPECT_TRUE(c.ok) << c.failure;
    EXPECT_EQ(c.index, Integer(np.length()));
    // Every extremal ray of K^v (oracle) is among the generators; the
    // oracle is exponential, so only small cones are checked.
    if (pair.rank() > 5) continue;
    for (const auto& r : oracle_dual_rays(pair.k_generators))
      EXPECT_TRUE(std::binary_search(pair.k_dual_generators.begin(), pair.k_dual_generators.end(), r));
  }
}

TEST(BuildCone, SymmetricDualDescription) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    DualNefPartition dual = dual_nef_partition(np);
    GorensteinConePair pair = build_cone(np);
    const std::size_t s = np.length();
    std::vector<IntVector> sym;
    for (std::size_t i = 0; i < s; ++i)
      for (const auto& v : dual.parts[i].integral_vertices()) sym.push_back(concat(unit_vector(s, i), v));
    for (std::size_t i = 0; i < s; ++i) sym.push_back(concat(unit_vector(s, i), IntVector(np.dim, 0)));
    for (const auto& y : sym)
      for (const auto& x : pair.k_generators) EXPECT_GE(dot(x, y), 0);
    std::vector<IntVector> sym_facets = cone_facets(pair.rank(), sym);
    for (const auto& w : pair.k_dual_generators)
      for (const auto& f : sym_facets) EXPECT_GE(dot(w, f), 0);
  }
}

TEST(VerifyGorenstein, NonReflexiveDiamond) {
  GorensteinConePair pair = cone_from_generators(
      LatticeEmbedding::full(3), iv({{1, 2, 0}, {1, -2, 0}, {1, 0, 1}, {1, 0, -1}}), IntVector{1, 0, 0},
      IntVector{1, 0, 0});
  GorensteinCheck c = verify_reflexive_gorenstein(pair);
  EXPECT_FALSE(c.ok);
}

TEST(VerifyGorenstein, ProductProjectiveIndexFive) {
  ProductProjective pp = product_projective(5, 3);
  EXPECT_EQ(pp.pair.rank(), 13u);
  EXPECT_EQ(pp.pair.k_generators.size(), 125u);
  EXPECT_EQ(pp.pair.k_dual_generators.size(), 15u);
  GorensteinCheck c = verify_reflexive_gorenstein(pp.pair);
  EXPECT_TRUE(c.ok) << c.failure;
  EXPECT_EQ(c.index, 5);
  // Each block functional is a facet normal of K.
  for (const auto& block : pp.block_functionals)
    for (const auto& e : block)
      EXPECT_TRUE(std::binary_search(pp.pair.k_dual_generators.begin(), pp.pair.k_dual_generators.end(), e));
}

TEST(ConeToNef, TrivialDecompositionGivesBack) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    GorensteinConePair pair = build_cone(np);
    const std::size_t s = np.length();
    std::vector<IntVector> e;
    for (std::size_t i = 0; i < s; ++i) e.push_back(concat(unit_vector(s, i), IntVector(np.dim, 0)));
    auto parts = cone_to_nef_partition(pair, e);
    ASSERT_EQ(parts.size(), s);
    for (std::size_t i = 0; i < s; ++i) EXPECT_EQ(parts[i].vertices(), np.parts[i].vertices());
  }
}

// Every decomposition of deg_dual into lattice points of T: the slices
// project onto parts whose hull union is Conv(union Delta_i), and the sum of
// the recovered parts is reflexive with dual the image of T.
TEST(ConeToNef, CorpusDecompositions) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    GorensteinConePair pair = build_cone(np);
    const std::size_t s = np.length();
    Polytope t = dual_degree_slice(pair);
    std::vector<IntVector> pts = t.lattice_points();
    Polytope hull_delta = convex_union(np.dim, np.parts);
    std::size_t seen = 0;
    std::vector<std::size_t> pick(s, 0);
    std::function<void(std::size_t, IntVector)> rec = [&](std::size_t i, IntVector acc) {
      if (i == s) {
        if (acc != pair.deg_dual) return;
        std::vector<IntVector> e;
        for (auto k : pick) e.push_back(pts[k]);
        ++seen;
        std::vector<IntVector> projected;
        for (std::size_t j = 0; j < s; ++j)
          for (const auto& v : part_slice(pair, e, j).integral_vertices()) projected.push_back(project(v, s));
        EXPECT_EQ(Polytope::hull(np.dim, projected).vertices(), hull_delta.vertices());
        ConeFrame f = make_frame(pair, e);
        NefPartition tilde = validate_nef_partition(f.nef_parts());
        std::vector<IntVector> images;
        for (const auto& y : t.integral_vertices()) images.push_back(f.dual_to_n(y));
        EXPECT_EQ(dual_polytope(tilde.sum).vertices(), Polytope::hull(f.d(), images).vertices());
        return;
      }
      for (std::size_t k = i == 0 ? 0 : pick[i - 1]; k < pts.size(); ++k) {
        pick[i] = k;
        rec(i + 1, add(acc, pts[k]));
      }
    };
    rec(0, IntVector(pair.rank(), 0));
    EXPECT_GE(seen, 1u);
  }
}

TEST(ConeToNef, ProductProjectiveBlocks) {
  ProductProjective pp = product_projective(3, 3);
  for (std::size_t b = 0; b < pp.t; ++b) {
    auto parts = cone_to_nef_partition(pp.pair, pp.block_functionals[b]);
    ASSERT_EQ(parts.size(), 3u);
    for (const auto& p : parts) EXPECT_EQ(p.ambient_dim(), 4u);
  }
}

TEST(ConeToNef, RejectsBadDecompositions) {
  NefPartition np = validate_nef_partition(corpus::nef_partitions()[0].parts);
  GorensteinConePair pair = build_cone(np);
  auto kind = [&](const std::vector<IntVector>& e) {
    try {
      cone_to_nef_partition(pair, e);
    } catch (const Error& err) {
      return err.kind();
    }
    return ErrorKind::internal;
  };
  EXPECT_EQ(kind(iv({{1, 1, 0, 0}, {0, 0, 0, 0}})), ErrorKind::decomposition);
  EXPECT_EQ(kind(iv({{1, 0, 0, 0}, {1, 0, 0, 0}})), ErrorKind::decomposition);
  EXPECT_EQ(kind(iv({{2, 0, 1, 0}, {-1, 1, -1, 0}})), ErrorKind::decomposition);
}

TEST(Singularity, Examples) {
  FanCone a = classify_singularity(iv({{1, 0}, {0, 1}}));
  EXPECT_TRUE(a.gorenstein && a.canonical && a.terminal && a.smooth);
  FanCone b = classify_singularity(iv({{1, 0}, {1, 2}}));
  EXPECT_TRUE(b.gorenstein);
  EXPECT_EQ(*b.gorenstein_functional, (IntVector{1, 0}));
  EXPECT_TRUE(b.canonical);
  EXPECT_FALSE(b.terminal);
  EXPECT_FALSE(b.smooth);
  // Cone over (1,0),(1,3) with k = (1,0): still Gorenstein, not smooth.
  FanCone c = classify_singularity(iv({{1, 0}, {1, 3}}));
  EXPECT_TRUE(c.gorenstein && c.canonical);
  EXPECT_FALSE(c.terminal);
  // <k,(0,1)> = 1 and <k,(2,1)> = 1 force k = (0,1), which gives 3 on (1,3).
  FanCone d = classify_singularity(iv({{2, 1}, {0, 1}, {1, 3}}));
  EXPECT_FALSE(d.gorenstein);
  EXPECT_THROW(classify_singularity(iv({{2, 0}})), Error);
}

// Reid's criteria on the fan over faces of reflexive polytopes, compared with
// a bounded scan of the cone below level one.
TEST(Singularity, ReflexiveFans) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    Polytope nabla = dual_polytope(np.sum);
    for (const auto& face : facet_vertex_sets(nabla)) {
      std::vector<IntVector> gens;
      for (const auto& v : face) gens.push_back(v.num);
      FanCone c = classify_singularity(gens);
      EXPECT_TRUE(c.gorenstein);
      EXPECT_TRUE(c.canonical);
      std::vector<IntVector> pts = gens;
      pts.push_back(IntVector(np.dim, 0));
      const Polytope below = Polytope::hull(np.dim, pts);
      bool found = false;
      oracle::for_each_box_point(np.dim, 3, [&](const IntVector& y) {
        if (is_zero(y) || dot(*c.gorenstein_functional, y) >= 1) return;
        // Below level one the cone is conv(0, generators).
        if (below.contains(y)) found = true;
      });
      EXPECT_FALSE(found);
    }
    for (const auto& v : nabla.vertices()) {
      FanCone ray = classify_singularity({v.num});
      EXPECT_TRUE(ray.gorenstein && ray.canonical && ray.terminal && ray.smooth);
    }
  }
}
