#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dmirror/lattice/embedding.hpp"
#include "dmirror/polytope/double_description.hpp"
#include "dmirror/polytope/qpoint.hpp"

namespace dmirror {

/// Supporting halfspace <x, normal> >= -offset with a primitive normal.
struct Facet {
  IntVector normal;
  Rational offset;

  bool holds(const QPoint& x) const { return x.pair(normal) >= -offset; }
  bool tight(const QPoint& x) const { return x.pair(normal) == -offset; }

  friend bool operator==(const Facet&, const Facet&) = default;
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// Integer-affine coordinates on the affine hull of a point set: points of
/// the hull are origin + c * directions with c rational, and lattice points
/// of the hull correspond to integral c whenever `lattice_origin` holds.
struct AffineChart {
  std::size_t ambient = 0;
  int dim = -1;  // -1 for the empty set
  QPoint origin;
  bool lattice_origin = false;
  IntMatrix directions;  // dim x ambient, saturated
  IntMatrix inverse;     // inverse of the completion of `directions`

  std::vector<Rational> coords_all(const QPoint& x) const {
    QPoint d = x - origin;
    IntVector w = inverse.apply_left(d.num);
    std::vector<Rational> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = Rational(w[i], d.den);
    return out;
  }

  bool in_hull(const QPoint& x) const {
    if (dim < 0) return false;
    auto all = coords_all(x);
    for (std::size_t i = static_cast<std::size_t>(dim); i < all.size(); ++i)
      if (all[i] != 0) return false;
    return true;
  }

  QPoint to_chart(const QPoint& x) const {
    auto all = coords_all(x);
    all.resize(static_cast<std::size_t>(dim));
    return QPoint::from_rationals(all);
  }

  QPoint from_chart(const QPoint& c) const {
    IntVector n = directions.rows() ? directions.apply_left(c.num) : IntVector(ambient, 0);
    return origin + QPoint(std::move(n), c.den);
  }

  static AffineChart of(std::size_t ambient, const std::vector<QPoint>& pts) {
    AffineChart ch;
    ch.ambient = ambient;
    if (pts.empty()) return ch;
    std::vector<IntVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      QPoint d = pts[i] - pts[0];
      if (!is_zero(d.num)) diffs.push_back(d.num);
    }
    IntMatrix dirs = diffs.empty() ? IntMatrix(0, ambient)
                                   : saturate(hermite_basis(IntMatrix::from_rows(diffs, ambient))).basis;
    ch.dim = static_cast<int>(dirs.rows());
    if (dirs.rows() == ambient) {
      ch.directions = IntMatrix::identity(ambient);
      ch.inverse = IntMatrix::identity(ambient);
      ch.origin = QPoint(IntVector(ambient, 0));
      ch.lattice_origin = true;
      return ch;
    }
    IntMatrix full = extend_to_basis(dirs, ambient);
    ch.directions = dirs;
    ch.inverse = inverse_unimodular(full);
    // Move the origin to a lattice point of the hull when there is one.
    IntVector w = ch.inverse.apply_left(pts[0].num);
    bool integral = true;
    IntVector tail(ambient, 0);
    for (std::size_t i = dirs.rows(); i < ambient; ++i) {
      if (w[i] % pts[0].den != 0) integral = false;
      else tail[i] = w[i] / pts[0].den;
    }
    ch.lattice_origin = integral;
    ch.origin = integral ? QPoint(full.apply_left(tail)) : pts[0];
    return ch;
  }
};

/// Facets of the convex hull of full-dimensional points, via double description.
inline std::vector<Facet> hull_facets(std::size_t dim, const std::vector<QPoint>& pts) {
  if (dim == 0) return {};
  IntMatrix gens(pts.size(), dim + 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    gens(i, 0) = pts[i].den;
    for (std::size_t j = 0; j < dim; ++j) gens(i, j + 1) = pts[i].num[j];
  }
  ConeRays cr = extreme_rays(gens);
  std::vector<Facet> facets;
  for (const auto& r : cr.rays) {
    IntVector normal(r.begin() + 1, r.end());
    Integer g = content(normal);
    ensure(g != 0, "hull_facets: degenerate facet normal");
    for (auto& x : normal) x /= g;
    facets.push_back({std::move(normal), Rational(r[0], g)});
  }
  std::sort(facets.begin(), facets.end());
  return facets;
}

/// Vertices of {x : <x, n_i> >= -b_i}; throws when the region is unbounded.
inline std::vector<QPoint> halfspace_vertices(std::size_t dim,
                                              const std::vector<Facet>& halfspaces) {
  // Homogenize: b t + <n, y> >= 0 with t >= 0, scaled to integers.
  IntMatrix a(halfspaces.size() + 1, dim + 1);
  a(0, 0) = 1;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    const auto& h = halfspaces[i];
    require(h.normal.size() == dim, ErrorKind::lattice_mismatch,
            "halfspace_vertices: normal has the wrong length");
    const Integer& d = boost::multiprecision::denominator(h.offset);
    a(i + 1, 0) = boost::multiprecision::numerator(h.offset);
    for (std::size_t j = 0; j < dim; ++j) a(i + 1, j + 1) = h.normal[j] * d;
  }
  require(dd::independent_rows(a).size() == dim + 1, ErrorKind::unbounded,
          "halfspace intersection contains a line");
  ConeRays cr = extreme_rays(a);
  std::vector<QPoint> out;
  for (const auto& r : cr.rays) {
    require(r[0] != 0, ErrorKind::unbounded, "halfspace intersection is unbounded");
    out.emplace_back(IntVector(r.begin() + 1, r.end()), r[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rational polytope in Z^dim (basis coordinates of its lattice).
class Polytope {
 public:
  Polytope() : cache_(std::make_shared<Cache>()) {}

  /// Convex hull of the given points; redundant points are dropped.
  static Polytope hull(std::size_t dim, std::vector<QPoint> pts) {
    for (const auto& p : pts)
      require(p.dim() == dim, ErrorKind::lattice_mismatch,
              "Polytope: point of dimension " + std::to_string(p.dim()) +
                  " in a rank " + std::to_string(dim) + " lattice");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polytope p;
    p.dim_ = dim;
    p.cache_->chart = AffineChart::of(dim, pts);
    const AffineChart& ch = p.cache_->chart;
    if (ch.dim <= 0) {
      p.vertices_ = pts;
      p.cache_->chart_facets = {};
      return p;
    }
    std::vector<QPoint> local;
    local.reserve(pts.size());
    for (const auto& x : pts) local.push_back(ch.to_chart(x));
    auto facets = hull_facets(static_cast<std::size_t>(ch.dim), local);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<IntVector> tight;
      for (const auto& f : facets)
        if (f.tight(local[i])) tight.push_back(f.normal);
      if (!tight.empty() &&
          rank(IntMatrix::from_rows(tight)) == static_cast<std::size_t>(ch.dim))
        p.vertices_.push_back(pts[i]);
    }
    p.cache_->chart_facets = std::move(facets);
    return p;
  }

  static Polytope hull(std::size_t dim, const std::vector<IntVector>& pts) {
    std::vector<QPoint> q;
    q.reserve(pts.size());
    for (const auto& x : pts) q.emplace_back(x);
    return hull(dim, std::move(q));
  }

  /// Intersection of halfspaces; must be bounded.
  static Polytope from_halfspaces(std::size_t dim, const std::vector<Facet>& hs) {
    return hull(dim, halfspace_vertices(dim, hs));
  }

  /// Trusted constructor: vertices and irredundant facets already known.
  static Polytope from_both(std::size_t dim, std::vector<QPoint> vertices,
                            std::vector<Facet> facets) {
    std::sort(vertices.begin(), vertices.end());
    std::sort(facets.begin(), facets.end());
    Polytope p;
    p.dim_ = dim;
    p.vertices_ = std::move(vertices);
    p.cache_->chart = AffineChart::of(dim, p.vertices_);
    ensure(p.cache_->chart.dim == static_cast<int>(dim),
           "Polytope::from_both: polytope is not full-dimensional");
    p.cache_->chart_facets = std::move(facets);
    return p;
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<QPoint>& vertices() const noexcept { return vertices_; }
  bool empty() const noexcept { return vertices_.empty(); }
  int dim() const { return chart().dim; }
  bool full_dimensional() const { return dim() == static_cast<int>(dim_); }
  bool is_lattice_polytope() const {
    return std::all_of(vertices_.begin(), vertices_.end(),
                       [](const QPoint& v) { return v.integral(); });
  }

  std::vector<IntVector> integral_vertices() const {
    std::vector<IntVector> out;
    for (const auto& v : vertices_) {
      ensure(v.integral(), "integral_vertices: vertex " + v.to_string() + " is not integral");
      out.push_back(v.num);
    }
    return out;
  }

  const AffineChart& chart() const { return cache_->chart; }
  const std::vector<Facet>& chart_facets() const { return cache_->chart_facets; }

  /// Irredundant facets; only defined for full-dimensional polytopes.
  const std::vector<Facet>& facets() const {
    require(full_dimensional(), ErrorKind::not_full_dimensional,
            "facet enumeration needs a full-dimensional polytope; affine hull has dimension " +
                std::to_string(dim()) + " in rank " + std::to_string(dim_));
    return cache_->chart_facets;
  }

  bool contains(const QPoint& x) const {
    if (empty()) return false;
    const AffineChart& ch = chart();
    if (!ch.in_hull(x)) return false;
    if (ch.dim == 0) return true;
    QPoint c = ch.to_chart(x);
    return std::all_of(chart_facets().begin(), chart_facets().end(),
                       [&](const Facet& f) { return f.holds(c); });
  }
  bool contains(const IntVector& x) const { return contains(QPoint(x)); }

  /// True when x lies in the relative interior.
  bool relative_interior_contains(const QPoint& x) const {
    if (!contains(x)) return false;
    QPoint c = chart().to_chart(x);
    return std::none_of(chart_facets().begin(), chart_facets().end(),
                        [&](const Facet& f) { return f.tight(c); });
  }

  /// Lattice points in lexicographic order.
  std::vector<IntVector> lattice_points() const {
    std::call_once(cache_->points_once, [&] { cache_->points = compute_lattice_points(); });
    return cache_->points;
  }

  /// min over the polytope of <x, y>.
  Rational min_pairing(std::span<const Integer> y) const {
    ensure(!empty(), "min_pairing on an empty polytope");
    Rational best = vertices_.front().pair(y);
    for (const auto& v : vertices_) best = std::min(best, v.pair(y));
    return best;
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

  /// Image under an integer linear map given by a matrix acting on rows (x -> x * m).
  Polytope linear_image(const IntMatrix& m) const {
    std::vector<QPoint> pts;
    for (const auto& v : vertices_) pts.emplace_back(m.apply_left(v.num), v.den);
    return hull(m.cols(), std::move(pts));
  }

  Polytope translate(const QPoint& t) const {
    std::vector<QPoint> pts;
    for (const auto& v : vertices_) pts.push_back(v + t);
    return hull(dim_, std::move(pts));
  }

 private:
  struct Cache {
    AffineChart chart;
    std::vector<Facet> chart_facets;
    std::once_flag points_once;
    std::vector<IntVector> points;
  };

  std::vector<IntVector> compute_lattice_points() const {
    std::vector<IntVector> out;
    const AffineChart& ch = chart();
    if (empty() || !ch.lattice_origin) return out;
    const std::size_t k = static_cast<std::size_t>(ch.dim);
    if (k == 0) {
      if (vertices_.front().integral()) out.push_back(vertices_.front().num);
      return out;
    }
    std::vector<QPoint> local;
    for (const auto& v : vertices_) local.push_back(ch.to_chart(v));
    std::vector<Integer> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
      Rational mn = local[0].coord(i), mx = mn;
      for (const auto& p : local) {
        mn = std::min(mn, p.coord(i));
        mx = std::max(mx, p.coord(i));
      }
      lo[i] = ceil(mn);
      hi[i] = floor(mx);
      if (lo[i] > hi[i]) return out;
    }
    const auto& fs = chart_facets();
    // suffix_max[f][i]: max over the box of sum_{j >= i} a_j c_j.
    std::vector<std::vector<Integer>> suffix(fs.size(), std::vector<Integer>(k + 1, 0));
    for (std::size_t f = 0; f < fs.size(); ++f)
      for (std::size_t i = k; i-- > 0;) {
        const Integer& a = fs[f].normal[i];
        suffix[f][i] = suffix[f][i + 1] + (a > 0 ? Integer(a * hi[i]) : Integer(a * lo[i]));
      }
    std::vector<Integer> partial(fs.size(), 0);
    IntVector c(k);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == k) {
        IntVector x = ch.origin.num;
        IntVector shift = ch.directions.apply_left(c);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += shift[j];
        out.push_back(std::move(x));
        return;
      }
      for (Integer v = lo[i]; v <= hi[i]; ++v) {
        bool ok = true;
        for (std::size_t f = 0; f < fs.size() && ok; ++f) {
          Integer s = partial[f] + fs[f].normal[i] * v + suffix[f][i + 1];
          if (Rational(s) < -fs[f].offset) ok = false;
        }
        if (!ok) continue;
        c[i] = v;
        for (std::size_t f = 0; f < fs.size(); ++f) partial[f] += fs[f].normal[i] * v;
        rec(i + 1);
        for (std::size_t f = 0; f < fs.size(); ++f) partial[f] -= fs[f].normal[i] * v;
      }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t dim_ = 0;
  std::vector<QPoint> vertices_;
  std::shared_ptr<Cache> cache_;
};

/// Facet enumeration for a vertex list.
inline std::vector<Facet> facet_enumeration(std::size_t dim, const std::vector<QPoint>& vertices) {
  require(!vertices.empty(), ErrorKind::input, "facet_enumeration: empty vertex set");
  return Polytope::hull(dim, vertices).facets();
}

struct ReflexivityCertificate {
  bool is_reflexive = false;
  bool origin_interior = false;
  std::vector<QPoint> dual_vertices;
  std::optional<QPoint> witness;  // first non-integral dual vertex
};

/// Polar dual {y : <x, y> >= -1 for all x in p}.
inline Polytope dual_polytope(const Polytope& p) {
  require(p.full_dimensional(), ErrorKind::not_full_dimensional,
          "dual_polytope: polytope is not full-dimensional (affine hull dimension " +
              std::to_string(p.dim()) + ")");
  std::vector<QPoint> verts;
  for (const auto& f : p.facets()) {
    require(f.offset > 0, ErrorKind::origin_not_interior,
            "dual_polytope: origin is not an interior point");
    verts.push_back(QPoint::from_rationals([&] {
      std::vector<Rational> y;
      for (const auto& n : f.normal) y.push_back(Rational(n) / f.offset);
      return y;
    }()));
  }
  std::vector<Facet> facets;
  for (const auto& v : p.vertices()) {
    Integer g = content(v.num);
    IntVector n = v.num;
    for (auto& x : n) x /= g;
    facets.push_back({std::move(n), Rational(v.den, g)});
  }
  return Polytope::from_both(p.ambient_dim(), std::move(verts), std::move(facets));
}

inline ReflexivityCertificate is_reflexive(const Polytope& p) {
  ReflexivityCertificate cert;
  if (p.empty() || !p.full_dimensional()) return cert;
  cert.origin_interior = std::all_of(p.facets().begin(), p.facets().end(),
                                     [](const Facet& f) { return f.offset > 0; });
  if (!cert.origin_interior) return cert;
  Polytope d = dual_polytope(p);
  cert.dual_vertices = d.vertices();
  for (const auto& v : cert.dual_vertices)
    if (!v.integral()) {
      cert.witness = v;
      break;
    }
  cert.is_reflexive = p.is_lattice_polytope() && !cert.witness.has_value();
  return cert;
}

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  require(p.ambient_dim() == q.ambient_dim(), ErrorKind::lattice_mismatch,
          "minkowski_sum: summands live in lattices of different rank");
  std::vector<QPoint> pts;
  pts.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  return Polytope::hull(p.ambient_dim(), std::move(pts));
}

/// Convex hull of a union of polytopes.
inline Polytope convex_union(std::size_t dim, const std::vector<Polytope>& parts) {
  std::vector<QPoint> pts;
  for (const auto& p : parts) pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
  return Polytope::hull(dim, std::move(pts));
}

}  // namespace dmirror
