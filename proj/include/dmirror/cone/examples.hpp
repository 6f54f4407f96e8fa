#pragma once

#include "dmirror/cone/gorenstein_cone.hpp"

namespace dmirror {

/// Cone data for complete intersections in a product of t copies of
/// P^{n-1}: the lattice {x in Z^{nt} : the t block sums agree}, the n^t
/// generators u_{i_1} + ... + u_{i_t} (one unit vector from each block),
/// deg = (1,...,1) and deg_dual = the first block sum.
struct ProductProjective {
  std::size_t n = 0, t = 0;
  GorensteinConePair pair;
  /// Block functionals x -> x_{b,i}, in dual basis coordinates; the t
  /// decompositions of deg_dual are block_functionals[b][0..n-1].
  std::vector<std::vector<IntVector>> block_functionals;
};

inline ProductProjective product_projective(std::size_t n, std::size_t t) {
  require(n >= 2 && t >= 2, ErrorKind::input, "product-projective: need n >= 2 and t >= 2");
  require(n <= 8 && t <= 4, ErrorKind::input, "product-projective: instance too large");
  const std::size_t amb = n * t;
  IntMatrix eq(t - 1, amb);
  for (std::size_t b = 1; b < t; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      eq(b - 1, i) = 1;
      eq(b - 1, b * n + i) = -1;
    }
  LatticeEmbedding lat = LatticeEmbedding::kernel(eq);
  std::vector<IntVector> gens;
  std::vector<std::size_t> idx(t, 0);
  for (;;) {
    IntVector x(amb, 0);
    for (std::size_t b = 0; b < t; ++b) x[b * n + idx[b]] = 1;
    gens.push_back(lat.to_coords(x));
    std::size_t b = 0;
    while (b < t && ++idx[b] == n) idx[b++] = 0;
    if (b == t) break;
  }
  ProductProjective pp;
  pp.n = n;
  pp.t = t;
  pp.block_functionals.resize(t);
  for (std::size_t b = 0; b < t; ++b)
    for (std::size_t i = 0; i < n; ++i)
      pp.block_functionals[b].push_back(lat.dual_coords(unit_vector(amb, b * n + i)));
  IntVector deg_dual(lat.rank(), 0);
  for (const auto& e : pp.block_functionals[0]) deg_dual = add(deg_dual, e);
  pp.pair = cone_from_generators(lat, std::move(gens), lat.to_coords(IntVector(amb, 1)), deg_dual);
  return pp;
}

}  // namespace dmirror
