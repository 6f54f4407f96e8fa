#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracles.hpp"

using namespace dmirror;
using corpus::hull;
using corpus::iv;

namespace {

std::vector<QPoint> qv(const std::vector<IntVector>& pts) {
  std::vector<QPoint> out(pts.begin(), pts.end());
  std::sort(out.begin(), out.end());
  return out;
}

NefPartition two_segments() { return validate_nef_partition(corpus::nef_partitions()[0].parts); }

ErrorKind kind_of(const std::vector<Polytope>& parts) {
  try {
    validate_nef_partition(parts);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST(Validate, TwoSegments) {
  NefPartition np = two_segments();
  EXPECT_EQ(np.length(), 2u);
  EXPECT_EQ(np.sum.vertices(), qv(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}})));
}

TEST(Validate, SquareLengthOne) {
  NefPartition np = validate_nef_partition({hull(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}))});
  EXPECT_EQ(np.length(), 1u);
}

TEST(Validate, ErrorKinds) {
  Polytope seg = hull(iv({{0, 0}, {1, 0}}));
  EXPECT_EQ(kind_of({seg, seg}), ErrorKind::not_full_dimensional);
  EXPECT_EQ(kind_of({hull(iv({{1, 0}, {1, 1}})), hull(iv({{0, 0}, {-1, 0}, {0, -1}}))}),
            ErrorKind::missing_origin);
  EXPECT_EQ(kind_of({hull(iv({{0, 0}})), hull(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}))}),
            ErrorKind::degenerate_part);
  EXPECT_EQ(kind_of({hull(iv({{2, 0}, {-2, 0}, {0, 1}, {0, -1}}))}), ErrorKind::not_reflexive);
  EXPECT_EQ(kind_of({hull(iv({{0, 0}, {1, 0}})), hull(iv({{0, 0, 0}, {0, 1, 0}}))}),
            ErrorKind::lattice_mismatch);
  EXPECT_EQ(kind_of({hull(iv({{0, 0}, {1, 0}, {0, 1}}))}), ErrorKind::not_reflexive);
}

TEST(Validate, ShiftNormalization) {
  // Square translated by (1,1): unique interior point moves to the origin.
  auto shifted = normalize_shift({hull(iv({{0, 0}, {2, 0}, {0, 2}, {2, 2}}))});
  EXPECT_EQ(shifted[0].vertices(), qv(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}})));
}

TEST(DualNef, TwoSegments) {
  DualNefPartition dual = dual_nef_partition(two_segments());
  ASSERT_EQ(dual.parts.size(), 2u);
  EXPECT_EQ(dual.parts[0].vertices(), qv(iv({{-1, 0}, {1, 0}})));
  EXPECT_EQ(dual.parts[1].vertices(), qv(iv({{0, -1}, {0, 1}})));
}

TEST(DualNef, LengthOneIsPolarDual) {
  Polytope sq = hull(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
  DualNefPartition dual = dual_nef_partition(validate_nef_partition({sq}));
  EXPECT_EQ(dual.parts[0].vertices(), dual_polytope(sq).vertices());
}

TEST(PairingMinima, Examples) {
  NefPartition np = two_segments();
  EXPECT_EQ(pairing_minima(np, IntVector{1, 0}), (IntVector{1, 0}));
  EXPECT_EQ(pairing_minima(np, IntVector{0, 0}), (IntVector{0, 0}));
  EXPECT_EQ(pairing_minima(np, IntVector{2, -3}), (IntVector{2, 3}));
}

// Pairing minima and the duality relations, checked by a direct vertex scan rather
// than through the halfspace description.
TEST(DualNef, CorpusDualityByVertexScan) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    DualNefPartition dual = dual_nef_partition(np);
    const std::size_t s = np.length();
    for (std::size_t j = 0; j < s; ++j) {
      ASSERT_TRUE(dual.parts[j].is_lattice_polytope());
      auto nabla_pts = dual.parts[j].integral_vertices();
      for (std::size_t i = 0; i < s; ++i) {
        auto delta_pts = np.parts[i].integral_vertices();
        const Integer bound = i == j ? -1 : 0;
        for (const auto& y : nabla_pts)
          for (const auto& x : delta_pts) EXPECT_GE(dot(x, y), bound);
        for (const auto& w : dual.parts[j].vertices()) {
          if (is_zero(w.num)) continue;
          Integer mn = dot(delta_pts.front(), w.num);
          for (const auto& x : delta_pts) mn = std::min(mn, dot(x, w.num));
          EXPECT_EQ(mn, bound);
          EXPECT_EQ(pairing_minima(np, w.num)[i], -bound);
        }
      }
    }
    // Conv(union nabla_j) is the polar dual of the sum.
    EXPECT_EQ(dual.hull.vertices(), dual_polytope(np.sum).vertices());
  }
}

TEST(DualNef, DoubleDualPreservesHull) {
  for (const auto& entry : corpus::nef_partitions()) {
    SCOPED_TRACE(entry.name);
    NefPartition np = validate_nef_partition(entry.parts);
    NefPartition back = as_nef_partition(dual_nef_partition(np));
    DualNefPartition again = dual_nef_partition(back);
    EXPECT_EQ(again.hull.vertices(), convex_union(np.dim, np.parts).vertices());
    for (std::size_t i = 0; i < np.length(); ++i)
      EXPECT_EQ(again.parts[i].vertices(), np.parts[i].vertices());
  }
}

TEST(TwoIndependence, Examples) {
  // Each segment alone spans a line: dimension 1 <= subset size 1.
  EXPECT_FALSE(two_independence_violations(two_segments().parts).empty());
  auto p3 = corpus::nef_partitions()[4].parts;
  auto bad = two_independence_violations(p3);
  for (const auto& subset : bad) EXPECT_EQ(subset.size(), p3.size());
}
