#include <gtest/gtest.h>

#include "corpus.hpp"
#include "dmirror/cone/examples.hpp"
#include "dmirror/verify/evidence.hpp"

using namespace dmirror;

namespace {

constexpr std::uint64_t kPrime = 10007;

MirrorSetup product_setup(std::size_t n, std::size_t t) {
  ProductProjective pp = product_projective(n, t);
  return setup_mirror(pp.pair, pp.block_functionals[0]);
}

struct Fixture {
  MirrorSetup m;
  CoefficientAssignment<Fp> coeffs;
  BridgeData<Fp> bd;
};

Fixture pp33(std::size_t a, std::size_t b, std::uint64_t seed = 3) {
  MirrorSetup m = product_setup(3, 3);
  auto coeffs = random_coefficients(m.pair, seed, kPrime);
  auto bd = build_bridge(m.pair, m.decompositions[a], m.decompositions[b], coeffs);
  return {std::move(m), std::move(coeffs), std::move(bd)};
}

std::vector<std::uint64_t> raw(const FpVector& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.v);
  return out;
}

}  // namespace

TEST(Finite, LinearAlgebra) {
  FpMatrix m{{Fp(1, 7), Fp(2, 7), Fp(3, 7)}, {Fp(2, 7), Fp(4, 7), Fp(6, 7)}};
  EXPECT_EQ(rank_fp(m, 3), 1u);
  FpMatrix k = right_kernel(m, 3, 7);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_TRUE((v[0] + Fp(2, 7) * v[1] + Fp(3, 7) * v[2]).is_zero());
  FpMatrix sq{{Fp(2, 7), Fp(1, 7)}, {Fp(1, 7), Fp(1, 7)}};
  EXPECT_EQ(determinant_fp(sq, 7), Fp(1, 7));
}

TEST(Sampling, PointsLieOnD) {
  Fixture f = pp33(0, 1);
  VerifyContext v = make_verify_context(f.bd, f.coeffs, kPrime);
  SamplingResult sr = sample_determinantal_points(v, 30, 0);
  EXPECT_GE(sr.points.size(), 28u);
  for (const auto& sp : sr.points) {
    ASSERT_EQ(sp.y.size(), 2u);
    EXPECT_TRUE(v.dets[0].evaluate(sp.y).is_zero());
    EXPECT_TRUE(determinant_fp(evaluate_matrix(f.bd.matrices_restricted[0], sp.y, kPrime), kPrime).is_zero());
  }
}

TEST(Fiber, SinglePointsOnProductProjective) {
  for (std::size_t j = 1; j < 3; ++j) {
    Fixture f = pp33(0, j);
    EvidenceReport rep = birationality_evidence(f.bd, f.coeffs, 40, kPrime, 1);
    EXPECT_EQ(rep.samples_on_d, 40u);
    EXPECT_GE(rep.single_point_both_sides * 100, 95 * rep.generic_samples);
    EXPECT_TRUE(rep.birational_evidence);
    EXPECT_GT(rep.fiber_points_checked, 0u);
    EXPECT_GE(rep.delta_regular_pass * 100, 95 * rep.delta_regular_total);
  }
}

TEST(Fiber, EmptyOffD) {
  Fixture f = pp33(0, 1);
  VerifyContext v = make_verify_context(f.bd, f.coeffs, kPrime);
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    FpVector y{random_nonzero(rng, kPrime), random_nonzero(rng, kPrime)};
    if (v.dets[0].evaluate(y).is_zero()) continue;
    ++checked;
    FiberResult e = fiber(v, y, Side::e), et = fiber(v, y, Side::etilde);
    EXPECT_TRUE(e.points.empty());
    EXPECT_TRUE(et.points.empty());
    EXPECT_EQ(e.kernel_dims, std::vector<std::size_t>{0});
  }
  EXPECT_GT(checked, 15);
  EXPECT_THROW(fiber(v, FpVector{Fp(0, kPrime), Fp(1, kPrime)}, Side::e), Error);
}

// Swapping e and e~ exchanges the two sides; Ann(e, e~) coordinates agree.
TEST(Fiber, SideSymmetry) {
  Fixture f = pp33(0, 2);
  MirrorSetup& m = f.m;
  auto swapped = build_bridge(m.pair, m.decompositions[2], m.decompositions[0], f.coeffs);
  VerifyContext v = make_verify_context(f.bd, f.coeffs, kPrime);
  VerifyContext w = make_verify_context(swapped, f.coeffs, kPrime);
  SamplingResult sr = sample_determinantal_points(v, 20, 5);
  ASSERT_FALSE(sr.points.empty());
  for (const auto& sp : sr.points) {
    EXPECT_TRUE(w.dets[0].evaluate(sp.y).is_zero());
    FiberResult a = fiber(v, sp.y, Side::e), b = fiber(w, sp.y, Side::etilde);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(raw(a.points[i]), raw(b.points[i]));
    FiberResult c = fiber(v, sp.y, Side::etilde), d = fiber(w, sp.y, Side::e);
    ASSERT_EQ(c.points.size(), d.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) EXPECT_EQ(raw(c.points[i]), raw(d.points[i]));
  }
}

TEST(Evidence, Deterministic) {
  Fixture f = pp33(0, 1);
  EvidenceReport a = birationality_evidence(f.bd, f.coeffs, 15, kPrime, 42);
  EvidenceReport b = birationality_evidence(f.bd, f.coeffs, 15, kPrime, 42);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(raw(a.samples[i].y), raw(b.samples[i].y));
  EXPECT_EQ(a.fiber_histogram_e, b.fiber_histogram_e);
  EXPECT_EQ(a.warnings, b.warnings);
  EvidenceReport c = birationality_evidence(f.bd, f.coeffs, 15, kPrime, 43);
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.samples.size(), c.samples.size()); ++i)
    differs = differs || raw(a.samples[i].y) != raw(c.samples[i].y);
  EXPECT_TRUE(differs);
}

// Repeating an equation makes the log-Jacobian rank-deficient everywhere.
TEST(Regularity, DuplicatedEquationFails) {
  Fixture f = pp33(0, 1);
  VerifyContext v = make_verify_context(f.bd, f.coeffs, kPrime);
  SamplingResult sr = sample_determinantal_points(v, 10, 2);
  std::vector<FpVector> pts;
  for (const auto& sp : sr.points)
    for (const auto& x : fiber(v, sp.y, Side::e).points) pts.push_back(x);
  ASSERT_FALSE(pts.empty());
  auto good = delta_regularity_probe(v.equations_e, pts, kPrime);
  EXPECT_EQ(good.first, good.second);
  auto eqs = v.equations_e;
  eqs[1] = eqs[0];
  auto bad = delta_regularity_probe(eqs, pts, kPrime);
  EXPECT_EQ(bad.first, 0u);
  EXPECT_EQ(bad.second, pts.size());
}

// A vanishing block matrix has a kernel of full dimension: the sample is
// flagged and kept out of the verdict.
TEST(Fiber, DegenerateKernelIsFlagged) {
  Fixture f = pp33(0, 1);
  BridgeData<Fp> zeroed = f.bd;
  for (auto& row : zeroed.matrices_restricted[0])
    for (auto& entry : row) entry = LaurentPoly<Fp>(entry.nvars());
  VerifyContext v = make_verify_context(f.bd, f.coeffs, kPrime);
  v.bridge = &zeroed;
  FiberResult r = fiber(v, FpVector{Fp(2, kPrime), Fp(3, kPrime)}, Side::e);
  EXPECT_FALSE(r.generic);
  EXPECT_FALSE(r.enumerated);
  EXPECT_EQ(r.kernel_dims, std::vector<std::size_t>{3});
  EXPECT_EQ(histogram_key(r), "non-generic");
}

// With one part, D is the hypersurface itself and every fiber is the point y.
TEST(Fiber, SinglePartRoots) {
  for (std::size_t idx : {1u, 6u}) {
    MirrorSetup m = setup_mirror(validate_nef_partition(corpus::nef_partitions()[idx].parts));
    ASSERT_EQ(m.decompositions.size(), 1u);
    auto coeffs = random_coefficients(m.pair, 7, kPrime);
    auto bd = build_bridge(m.pair, m.decompositions[0], m.decompositions[0], coeffs);
    VerifyContext v = make_verify_context(bd, coeffs, kPrime);
    ASSERT_EQ(bd.context.xi_count, 2u);
    SamplingResult sr = sample_determinantal_points(v, 20, 0);
    EXPECT_EQ(sr.points.size(), 20u);
    for (const auto& sp : sr.points) {
      EXPECT_TRUE(v.equations_e[0].evaluate(sp.y).is_zero());
      FiberResult e = fiber(v, sp.y, Side::e);
      ASSERT_EQ(e.points.size(), 1u);
      EXPECT_EQ(raw(e.points[0]), raw(sp.y));
    }
  }
}
