#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dmirror/mirror/bridge.hpp"
#include "dmirror/verify/linear_fp.hpp"

namespace dmirror {

enum class Side { e, etilde };

inline const char* to_string(Side s) { return s == Side::e ? "e" : "etilde"; }

/// Nef-partition equations f_i = sum_{v in l(S_i)} c_v X^{v - m_i} over
/// Ann(e) coordinates of the frame.
template <class Coeff>
std::vector<LaurentPoly<Coeff>> nef_equations(const ConeFrame& frame, const CoefficientAssignment<Coeff>& coeffs) {
  std::vector<LaurentPoly<Coeff>> out;
  for (std::size_t i = 0; i < frame.s; ++i) {
    LaurentPoly<Coeff> f(frame.d());
    for (const auto& v : frame.slices[i].lattice_points()) f.add_term(to_exponent(frame.to_ann(v)), coeffs.at(v));
    out.push_back(std::move(f));
  }
  return out;
}

/// Precomputed data for fiber reconstruction over F_p.
struct VerifyContext {
  const BridgeData<Fp>* bridge = nullptr;
  std::uint64_t prime = 0;
  std::vector<LaurentPoly<Fp>> equations_e, equations_etilde;
  std::vector<LaurentPoly<Fp>> dets;
  // Exponents of the torus coordinates of X in terms of the X' coordinates
  // (block kernel entries i >= 2 in block order, then y).
  std::vector<std::vector<std::int64_t>> rho_e, rho_etilde;
};

inline VerifyContext make_verify_context(const BridgeData<Fp>& bd, const CoefficientAssignment<Fp>& coeffs,
                                         std::uint64_t prime) {
  VerifyContext v;
  v.bridge = &bd;
  v.prime = prime;
  const BridgeContext& c = bd.context;
  v.equations_e = nef_equations(c.frame_e, coeffs);
  v.equations_etilde = nef_equations(c.frame_etilde, coeffs);
  v.dets = determinants(bd).dets;
  const std::size_t d = c.d(), s = c.s();
  // X' coordinates are the kernel entries (values of X^{w_ki} on the e side,
  // of X^{u_ki - u_k1} on the e~ side) and y. A character z of M-bar' is the
  // product of those characters with exponents z[slot ki], times y to the
  // remaining xi part.
  auto exponents = [&](const IntVector& z, bool e_side) {
    IntVector row, xi;
    for (auto l : c.xi_slots()) xi.push_back(z[l]);
    for (std::size_t k = 0; k < c.r(); ++k)
      for (std::size_t i = 1; i < c.blocks[k].size(); ++i) {
        const Integer a = z[e_side ? c.p_slot[k][i] : c.blocks[k][i]];
        IntVector vec = e_side ? c.w[k][i] : sub(c.u[k][i], c.u[k][0]);
        row.push_back(a);
        for (std::size_t l = 0; l < xi.size(); ++l) xi[l] -= a * vec[c.xi_begin() + l];
      }
    return to_exponent(concat(row, xi));
  };
  // e side: Ann(e) basis vector j has M-bar' coordinates (0; column j of the N' basis).
  for (std::size_t j = 0; j < d; ++j) {
    IntVector z(s + d);
    for (std::size_t r = 0; r < d; ++r) z[s + r] = c.n_prime_basis(r, j);
    v.rho_e.push_back(exponents(z, true));
  }
  const IntMatrix& b = c.frame_etilde.ann.basis();
  for (std::size_t j = 0; j < b.rows(); ++j) v.rho_etilde.push_back(exponents(c.to_mprime(b.row(j)), false));
  return v;
}

struct FiberResult {
  std::vector<std::size_t> kernel_dims;
  bool generic = true;        // every block kernel has dimension <= 1
  bool enumerated = true;     // false when a degenerate kernel was too large to enumerate
  std::size_t prime_points = 0;  // points on X' before restriction
  std::vector<FpVector> points;  // torus points of X, sorted
};

inline FpMatrix evaluate_matrix(const PolyMatrix<Fp>& a, const FpVector& y, std::uint64_t p) {
  FpMatrix m(a.size(), FpVector(a.size(), Fp(0, p)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Fp v = a[i][j].evaluate(y);
      v.p = p;  // the zero polynomial evaluates to a default Fp
      m[i][j] = v;
    }
  return m;
}

namespace detail {

inline FpVector normalize_leading(FpVector v) {
  if (v.empty() || v[0].is_zero()) return {};
  Fp inv = v[0].inverse();
  for (auto& x : v) {
    x *= inv;
    if (x.is_zero()) return {};
  }
  return v;
}

inline Fp eval_monomial(const FpVector& vals, const std::vector<std::int64_t>& exps, std::uint64_t p) {
  Fp out(1, p);
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (exps[i] != 0) out *= vals[i].pow(exps[i]);
  return out;
}

}  // namespace detail

/// Torus points of X_(e) or X_(e~) over y, reconstructed from kernels of
/// the matrices A_k(y) and pushed down to the unprimed torus.
inline FiberResult fiber(const VerifyContext& v, const FpVector& y, Side side) {
  const BridgeData<Fp>& bd = *v.bridge;
  const BridgeContext& c = bd.context;
  const std::uint64_t p = v.prime;
  require(y.size() == c.xi_count, ErrorKind::input, "fiber: point has the wrong number of coordinates");
  for (const auto& x : y) require(!x.is_zero(), ErrorKind::off_torus, "fiber: point has a zero coordinate");
  FiberResult out;
  // Per block: candidate normalized kernel vectors.
  std::vector<std::vector<FpVector>> cand(c.r());
  std::size_t excess = 0;
  for (std::size_t k = 0; k < c.r(); ++k) {
    const std::size_t nk = c.blocks[k].size();
    FpMatrix m = evaluate_matrix(bd.matrices_restricted[k], y, p);
    if (side == Side::etilde) m = transpose(m, nk);
    FpMatrix ker = right_kernel(m, nk, p);
    out.kernel_dims.push_back(ker.size());
    if (ker.empty()) return out;
    if (ker.size() == 1) {
      FpVector n = detail::normalize_leading(ker[0]);
      if (!n.empty()) cand[k].push_back(std::move(n));
    } else {
      out.generic = false;
      excess += ker.size() - 1;
      if (ker.size() == 2) {
        // All points of the kernel line, as a + t b and b.
        for (std::uint64_t t = 0; t <= p; ++t) {
          FpVector w(nk);
          for (std::size_t i = 0; i < nk; ++i)
            w[i] = t == p ? ker[1][i] : ker[0][i] + Fp(static_cast<std::int64_t>(t), p) * ker[1][i];
          FpVector n = detail::normalize_leading(w);
          if (!n.empty()) cand[k].push_back(std::move(n));
        }
        std::sort(cand[k].begin(), cand[k].end(), [](const FpVector& a, const FpVector& b) {
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                              [](const Fp& x, const Fp& y2) { return x.v < y2.v; });
        });
        cand[k].erase(std::unique(cand[k].begin(), cand[k].end()), cand[k].end());
      }
    }
  }
  if (excess > 1) {
    out.enumerated = false;
    return out;
  }
  const auto& rho = side == Side::e ? v.rho_e : v.rho_etilde;
  const auto& eqs = side == Side::e ? v.equations_e : v.equations_etilde;
  const IntMatrix& pi = side == Side::e ? c.ann_e_etilde_in_ann_e : c.ann_e_etilde_in_ann_etilde;
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::size_t> pick(c.r(), 0);
  for (;;) {
    bool any = true;
    for (std::size_t k = 0; k < c.r(); ++k) any = any && !cand[k].empty();
    if (!any) break;
    // X' coordinates: kernel entries i >= 2 of every block, then y.
    FpVector prime_coords;
    for (std::size_t k = 0; k < c.r(); ++k)
      for (std::size_t i = 1; i < cand[k][pick[k]].size(); ++i) prime_coords.push_back(cand[k][pick[k]][i]);
    prime_coords.insert(prime_coords.end(), y.begin(), y.end());
    ++out.prime_points;
    FpVector x;
    for (const auto& row : rho) x.push_back(detail::eval_monomial(prime_coords, row, p));
    for (const auto& f : eqs) {
      Fp val = f.evaluate(x);
      ensure(val.is_zero(), std::string("fiber: reconstructed point misses an equation on the ") + to_string(side) + " side");
    }
    for (std::size_t l = 0; l < y.size(); ++l) {
      Fp back(1, p);
      for (std::size_t j = 0; j < x.size(); ++j) {
        auto e = static_cast<std::int64_t>(pi(l, j));
        if (e != 0) back *= x[j].pow(e);
      }
      ensure(back == y[l], "fiber: projection of a fiber point does not return y");
    }
    std::vector<std::uint64_t> key;
    for (const auto& t : x) key.push_back(t.v);
    if (seen.insert(key).second) out.points.push_back(std::move(x));
    std::size_t k = 0;
    while (k < c.r() && ++pick[k] == cand[k].size()) pick[k++] = 0;
    if (k == c.r()) break;
  }
  std::sort(out.points.begin(), out.points.end(), [](const FpVector& a, const FpVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Fp& x, const Fp& y2) { return x.v < y2.v; });
  });
  return out;
}

/// Fraction of points where the s x d matrix of logarithmic derivatives
/// x_j df_i/dx_j has rank s.
inline std::pair<std::size_t, std::size_t> delta_regularity_probe(const std::vector<LaurentPoly<Fp>>& eqs,
                                                                  const std::vector<FpVector>& points,
                                                                  std::uint64_t prime) {
  std::size_t pass = 0;
  for (const auto& x : points) {
    const std::size_t d = x.size();
    FpMatrix jac(eqs.size(), FpVector(d, Fp(0, prime)));
    for (std::size_t i = 0; i < eqs.size(); ++i)
      for (const auto& [e, coef] : eqs[i].terms()) {
        Fp mono = coef;
        for (std::size_t j = 0; j < d; ++j)
          if (e[j] != 0) mono *= x[j].pow(e[j]);
        for (std::size_t j = 0; j < d; ++j)
          if (e[j] != 0) jac[i][j] += mono * Fp(e[j], prime);
      }
    if (rank_fp(jac, d) == eqs.size()) ++pass;
  }
  return {pass, points.size()};
}

struct SamplePoint {
  std::size_t index = 0;
  FpVector y;
  FiberResult fiber_e, fiber_etilde;
};

struct SamplingResult {
  std::vector<SamplePoint> points;
  std::size_t failures = 0;
};

namespace detail {

// Univariate restriction of det A_1 in coordinate `free`, other coordinates
// fixed: coefficients of t^lo..t^hi.
inline std::pair<std::int64_t, FpVector> restrict_by_substitution(const LaurentPoly<Fp>& det, const FpVector& y,
                                                                  std::size_t free, std::int64_t lo, std::int64_t hi,
                                                                  std::uint64_t p) {
  FpVector coef(static_cast<std::size_t>(hi - lo + 1), Fp(0, p));
  for (const auto& [e, c] : det.terms()) {
    Fp t = c;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (j != free && e[j] != 0) t *= y[j].pow(e[j]);
    ensure(e[free] >= lo && e[free] <= hi, "sampling: determinant exponent outside the row bound");
    coef[static_cast<std::size_t>(e[free] - lo)] += t;
  }
  return {lo, coef};
}

// The same restriction by evaluating the numeric determinant at hi - lo + 1
// points and interpolating.
inline FpVector restrict_by_interpolation(const PolyMatrix<Fp>& a, FpVector y, std::size_t free, std::int64_t lo,
                                          std::int64_t hi, std::uint64_t p) {
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  require(n < p, ErrorKind::input, "sampling: prime too small for the determinant degree");
  FpVector xs, vs;
  for (std::size_t i = 0; i < n; ++i) {
    Fp t(static_cast<std::int64_t>(i + 1), p);
    y[free] = t;
    xs.push_back(t);
    vs.push_back(determinant_fp(evaluate_matrix(a, y, p), p) * t.pow(-lo));
  }
  // Newton divided differences, then expansion to monomial coefficients.
  FpVector dd = vs;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  FpVector poly(n, Fp(0, p));
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (t - xs[k]) + dd[k]
    FpVector next(n, Fp(0, p));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  return poly;
}

inline Fp horner(const FpVector& coef, const Fp& t) {
  Fp acc(0, t.p);
  for (std::size_t i = coef.size(); i-- > 0;) acc = acc * t + coef[i];
  return acc;
}

}  // namespace detail

/// Points of D = {det A_k = 0 for all k} on the torus of Ann(e, e~): all
/// coordinates but one are random, the last is a root of the univariate
/// restriction of det A_1; the other determinants are tested by rejection.
inline SamplingResult sample_determinantal_points(const VerifyContext& v, std::size_t count, std::uint64_t seed,
                                                  std::size_t max_tries = 64) {
  const BridgeData<Fp>& bd = *v.bridge;
  const BridgeContext& c = bd.context;
  const std::uint64_t p = v.prime;
  require(p >= 101 && is_probable_prime(p), ErrorKind::input, "sampling: prime must be at least 101");
  SamplingResult out;
  if (c.xi_count == 0 || v.dets.empty()) {
    out.failures = count;
    return out;
  }
  const LaurentPoly<Fp>& det = v.dets[0];
  const PolyMatrix<Fp>& a = bd.matrices_restricted[0];
  const std::size_t m = c.xi_count;
  auto [det_lo, det_hi] = det.exponent_range();
  std::vector<std::size_t> movable;
  for (std::size_t j = 0; j < m; ++j)
    if (det_lo[j] < det_hi[j]) movable.push_back(j);
  for (std::size_t index = 0; index < count; ++index) {
    std::mt19937_64 rng(mix64(seed ^ mix64(index)));
    bool done = false;
    for (std::size_t attempt = 0; attempt < max_tries && !done && !movable.empty(); ++attempt) {
      const std::size_t free = movable[uniform_in(rng, 0, movable.size() - 1)];
      FpVector y(m);
      for (auto& t : y) t = random_nonzero(rng, p);
      // Row-wise exponent bound for the free coordinate.
      std::int64_t lo = 0, hi = 0;
      for (const auto& row : a) {
        std::int64_t rlo = INT64_MAX, rhi = INT64_MIN;
        for (const auto& entry : row) {
          if (entry.is_zero()) continue;
          auto [elo, ehi] = entry.exponent_range();
          rlo = std::min(rlo, elo[free]);
          rhi = std::max(rhi, ehi[free]);
        }
        if (rlo > rhi) continue;
        lo += rlo;
        hi += rhi;
      }
      auto [shift, by_sub] = detail::restrict_by_substitution(det, y, free, lo, hi, p);
      FpVector by_interp = detail::restrict_by_interpolation(a, y, free, lo, hi, p);
      ensure(by_sub == by_interp, "sampling: interpolated determinant differs from the expanded one");
      std::vector<std::uint64_t> roots;
      for (std::uint64_t t = 1; t < p; ++t)
        if (detail::horner(by_sub, Fp(static_cast<std::int64_t>(t), p)).is_zero()) roots.push_back(t);
      if (roots.empty()) continue;
      y[free] = Fp(static_cast<std::int64_t>(roots[uniform_in(rng, 0, roots.size() - 1)]), p);
      bool on_d = true;
      for (std::size_t k = 1; k < v.dets.size() && on_d; ++k) on_d = v.dets[k].evaluate(y).is_zero();
      if (!on_d) continue;
      ensure(det.evaluate(y).is_zero(), "sampling: chosen root does not annihilate det A_1");
      SamplePoint sp;
      sp.index = index;
      sp.y = std::move(y);
      out.points.push_back(std::move(sp));
      done = true;
    }
    if (!done) ++out.failures;
  }
  return out;
}

struct EvidenceReport {
  std::size_t samples_requested = 0;
  std::size_t samples_on_d = 0;
  std::size_t sampling_failures = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> fiber_histogram_e, fiber_histogram_etilde;
  std::size_t generic_samples = 0;
  std::size_t single_point_both_sides = 0;
  bool birational_evidence = false;
  std::size_t fiber_points_checked = 0;
  std::size_t delta_regular_pass = 0, delta_regular_total = 0;
  std::size_t delta_regular_pass_etilde = 0, delta_regular_total_etilde = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> caveats;
  std::vector<SamplePoint> samples;

  double delta_regular_pass_rate() const {
    return delta_regular_total ? static_cast<double>(delta_regular_pass) / static_cast<double>(delta_regular_total) : 0.0;
  }
};

inline std::string histogram_key(const FiberResult& f) {
  if (!f.generic) return "non-generic";
  return std::to_string(f.points.size());
}

inline std::string describe_subsets(const std::vector<std::vector<std::size_t>>& bad) {
  std::string out;
  for (const auto& b : bad) {
    out += out.empty() ? "{" : ", {";
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i] + 1);
    out += "}";
  }
  return out;
}

inline EvidenceReport birationality_evidence(const BridgeData<Fp>& bd, const CoefficientAssignment<Fp>& coeffs,
                                             std::size_t count, std::uint64_t prime, std::uint64_t seed) {
  EvidenceReport rep;
  rep.samples_requested = count;
  rep.prime = prime;
  rep.seed = seed;
  const BridgeContext& c = bd.context;
  VerifyContext v = make_verify_context(bd, coeffs, prime);
  SamplingResult sr = sample_determinantal_points(v, count, seed);
  rep.sampling_failures = sr.failures;
  std::vector<FpVector> pts_e, pts_et;
  for (auto& sp : sr.points) {
    sp.fiber_e = fiber(v, sp.y, Side::e);
    sp.fiber_etilde = fiber(v, sp.y, Side::etilde);
    ++rep.fiber_histogram_e[histogram_key(sp.fiber_e)];
    ++rep.fiber_histogram_etilde[histogram_key(sp.fiber_etilde)];
    rep.fiber_points_checked += sp.fiber_e.points.size() + sp.fiber_etilde.points.size();
    if (sp.fiber_e.generic && sp.fiber_etilde.generic) {
      ++rep.generic_samples;
      if (sp.fiber_e.points.size() == 1 && sp.fiber_etilde.points.size() == 1) ++rep.single_point_both_sides;
    }
    pts_e.insert(pts_e.end(), sp.fiber_e.points.begin(), sp.fiber_e.points.end());
    pts_et.insert(pts_et.end(), sp.fiber_etilde.points.begin(), sp.fiber_etilde.points.end());
  }
  rep.samples_on_d = sr.points.size();
  rep.samples = std::move(sr.points);
  std::tie(rep.delta_regular_pass, rep.delta_regular_total) = delta_regularity_probe(v.equations_e, pts_e, prime);
  std::tie(rep.delta_regular_pass_etilde, rep.delta_regular_total_etilde) =
      delta_regularity_probe(v.equations_etilde, pts_et, prime);
  rep.birational_evidence = rep.generic_samples > 0 && rep.single_point_both_sides * 100 >= 95 * rep.generic_samples;

  if (rep.samples_on_d * 2 < count)
    rep.warnings.push_back("only " + std::to_string(rep.samples_on_d) + " of " + std::to_string(count) +
                           " samples reached D; the determinantal locus may have excess dimension or the sampler "
                           "cannot reach it (r = " + std::to_string(c.r()) + ")");
  if (rep.generic_samples < rep.samples_on_d)
    rep.warnings.push_back(std::to_string(rep.samples_on_d - rep.generic_samples) +
                           " samples have a block kernel of dimension >= 2 and are excluded from the verdict");
  auto bad_e = two_independence_violations(c.frame_e.nef_parts());
  if (!bad_e.empty())
    rep.warnings.push_back("nef-partition of e is not 2-independent: parts " + describe_subsets(bad_e));
  auto bad_et = two_independence_violations(c.frame_etilde.nef_parts());
  if (!bad_et.empty())
    rep.warnings.push_back("nef-partition of e~ is not 2-independent: parts " + describe_subsets(bad_et));
  rep.caveats.push_back("irreducibility of both complete intersections and of D is assumed, not proven");
  rep.caveats.push_back("fiber counts are taken over F_p and may differ from the generic fiber on thin sets");
  rep.caveats.push_back("regularity is probed on the big torus only");
  return rep;
}

}  // namespace dmirror
