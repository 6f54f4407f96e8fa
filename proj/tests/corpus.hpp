#pragma once

#include <string>
#include <vector>

#include "dmirror/nef/nef_partition.hpp"

namespace corpus {

using dmirror::Facet;
using dmirror::Integer;
using dmirror::IntVector;
using dmirror::Polytope;

inline std::vector<IntVector> iv(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) {
    IntVector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

inline Polytope hull(const std::vector<IntVector>& pts) {
  return Polytope::hull(pts.front().size(), pts);
}

/// Nef-partition of a complete smooth fan: Delta_i = {x : <x,v> >= -1 on the
/// rays of block i, >= 0 on the other rays}.
inline std::vector<Polytope> from_fan(const std::vector<IntVector>& rays,
                                      const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t dim = rays.front().size();
  std::vector<Polytope> parts;
  for (const auto& block : blocks) {
    std::vector<Facet> hs;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      bool in = std::find(block.begin(), block.end(), r) != block.end();
      hs.push_back({rays[r], in ? 1 : 0});
    }
    parts.push_back(Polytope::from_halfspaces(dim, hs));
  }
  return parts;
}

struct Entry {
  std::string name;
  std::vector<Polytope> parts;
};

inline std::vector<Entry> nef_partitions() {
  std::vector<Entry> out;
  out.push_back({"two_segments", {hull(iv({{0, 0}, {1, 0}, {-1, 0}})), hull(iv({{0, 0}, {0, 1}, {0, -1}}))}});
  out.push_back({"square", {hull(iv({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}))}});
  out.push_back({"three_segments",
                 {hull(iv({{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}})), hull(iv({{0, 0, 0}, {0, 1, 0}, {0, -1, 0}})),
                  hull(iv({{0, 0, 0}, {0, 0, 1}, {0, 0, -1}}))}});
  out.push_back({"p2_split", from_fan(iv({{1, 0}, {0, 1}, {-1, -1}}), {{0}, {1, 2}})});
  out.push_back({"p3_split", from_fan(iv({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}), {{0, 1}, {2, 3}})});
  out.push_back({"p1p1_split", from_fan(iv({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), {{0, 2}, {1, 3}})});
  out.push_back({"p2_full", from_fan(iv({{1, 0}, {0, 1}, {-1, -1}}), {{0, 1, 2}})});
  out.push_back({"hexagon_pairs",
                 from_fan(iv({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}), {{0, 1}, {2, 3}, {4, 5}})});
  out.push_back({"p1_cube_three",
                 from_fan(iv({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}),
                          {{0, 3}, {2, 5}, {4, 1}})});
  out.push_back({"p2_p2_three",
                 from_fan(iv({{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, -1, -1}}),
                          {{0, 3}, {1, 4}, {2, 5}})});
  return out;
}

}  // namespace corpus
