#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "dmirror/lattice/lattice_ops.hpp"

namespace dmirror {

enum class Presentation { full, kernel, quotient, sublattice };

inline const char* to_string(Presentation p) {
  switch (p) {
    case Presentation::full: return "full";
    case Presentation::kernel: return "kernel";
    case Presentation::quotient: return "quotient";
    case Presentation::sublattice: return "sublattice";
  }
  return "unknown";
}

/// A finite-rank lattice presented inside Z^ambient_rank.
///
/// full: Z^n itself. kernel: {x : E x = 0}. quotient: the torsion-free part of
/// Z^n / span(R), with basis rows given as lifts. sublattice: the span of given
/// independent rows, not necessarily saturated.
class LatticeEmbedding {
 public:
  LatticeEmbedding() = default;

  static LatticeEmbedding full(std::size_t n) {
    LatticeEmbedding l;
    l.kind_ = Presentation::full;
    l.ambient_ = n;
    l.presentation_ = IntMatrix(0, n);
    l.basis_ = IntMatrix::identity(n);
    l.completion_inverse_ = IntMatrix::identity(n);
    return l;
  }

  static LatticeEmbedding kernel(const IntMatrix& equations) {
    LatticeEmbedding l;
    l.kind_ = Presentation::kernel;
    l.ambient_ = equations.cols();
    l.presentation_ = equations;
    l.basis_ = kernel_basis(equations);
    l.completion_inverse_ =
        inverse_unimodular(extend_to_basis(l.basis_, l.ambient_));
    return l;
  }

  static LatticeEmbedding quotient(const IntMatrix& relations) {
    LatticeEmbedding l;
    l.kind_ = Presentation::quotient;
    l.ambient_ = relations.cols();
    l.presentation_ = relations;
    IntMatrix rel = hermite_basis(relations);
    IntMatrix sat = saturate(rel).basis;
    IntMatrix full = extend_to_basis(sat, l.ambient_);
    l.relation_rank_ = sat.rows();
    l.basis_ = full.row_range(sat.rows(), l.ambient_);
    l.completion_inverse_ = inverse_unimodular(full);
    return l;
  }

  /// Span of the rows of `generators` (they may be dependent).
  static LatticeEmbedding sublattice(const IntMatrix& generators) {
    LatticeEmbedding l;
    l.kind_ = Presentation::sublattice;
    l.ambient_ = generators.cols();
    l.presentation_ = generators;
    l.basis_ = hermite_basis(generators);
    Saturation sat = saturate(l.basis_);
    l.index_ = sat.index;
    return l;
  }

  /// Sublattice with a prescribed basis (rows must be independent).
  static LatticeEmbedding with_basis(const IntMatrix& basis) {
    require(dmirror::rank(basis) == basis.rows(), ErrorKind::rank_deficient,
            "with_basis: rows are linearly dependent");
    LatticeEmbedding l;
    l.kind_ = Presentation::sublattice;
    l.ambient_ = basis.cols();
    l.presentation_ = basis;
    l.basis_ = basis;
    l.index_ = saturate(basis).index;
    return l;
  }

  Presentation kind() const noexcept { return kind_; }
  std::size_t ambient_rank() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }
  const IntMatrix& presentation() const noexcept { return presentation_; }
  /// [saturation : lattice]; 1 except for unsaturated sublattices.
  const Integer& saturation_index() const noexcept { return index_; }

  /// Ambient vector (or lift) from basis coordinates.
  IntVector from_coords(std::span<const Integer> c) const {
    require(c.size() == rank(), ErrorKind::lattice_mismatch,
            "from_coords: expected " + std::to_string(rank()) + " coordinates");
    if (rank() == 0) return IntVector(ambient_, 0);
    return basis_.apply_left(c);
  }

  /// Basis coordinates of an ambient vector; fails if it is not in the lattice.
  IntVector to_coords(std::span<const Integer> x) const {
    require(x.size() == ambient_, ErrorKind::lattice_mismatch,
            "to_coords: expected an ambient vector of length " +
                std::to_string(ambient_));
    switch (kind_) {
      case Presentation::full:
        return IntVector(x.begin(), x.end());
      case Presentation::kernel: {
        IntVector all = completion_inverse_.apply_left(x);
        for (std::size_t i = rank(); i < all.size(); ++i)
          require(all[i] == 0, ErrorKind::lattice_mismatch,
                  "to_coords: vector does not satisfy the lattice equations");
        all.resize(rank());
        return all;
      }
      case Presentation::quotient: {
        IntVector all = completion_inverse_.apply_left(x);
        return IntVector(all.begin() + static_cast<std::ptrdiff_t>(relation_rank_),
                         all.end());
      }
      case Presentation::sublattice: {
        auto sol = solve_linear_integer(basis_.transpose(), IntVector(x.begin(), x.end()));
        require(sol.has_value(), ErrorKind::lattice_mismatch,
                "to_coords: vector is not in the sublattice");
        return *sol;
      }
    }
    throw InternalError("to_coords: unknown presentation");
  }

  bool contains(std::span<const Integer> x) const {
    if (kind_ == Presentation::quotient || kind_ == Presentation::full) return true;
    try {
      (void)to_coords(x);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  /// Coordinates, with respect to the basis dual to ours, of the functional
  /// given by pairing with the ambient dual vector y.
  IntVector dual_coords(std::span<const Integer> y) const {
    require(y.size() == ambient_, ErrorKind::lattice_mismatch,
            "dual_coords: expected a vector of length " + std::to_string(ambient_));
    return basis_.apply(y);
  }

  /// The dual lattice, presented in the same ambient rank under the standard
  /// dot product. Unsaturated sublattices have no such presentation.
  LatticeEmbedding dual() const {
    switch (kind_) {
      case Presentation::full:
        return full(ambient_);
      case Presentation::kernel:
        return quotient(kernel_basis(basis_));
      case Presentation::quotient: {
        IntMatrix eq = presentation_.rows() ? presentation_ : IntMatrix(0, ambient_);
        if (eq.rows() == 0) return full(ambient_);
        return kernel(eq);
      }
      case Presentation::sublattice:
        require(index_ == 1, ErrorKind::not_saturated,
                "dual: sublattice is not saturated");
        return quotient(kernel_basis(basis_));
    }
    throw InternalError("dual: unknown presentation");
  }

 private:
  Presentation kind_ = Presentation::full;
  std::size_t ambient_ = 0;
  IntMatrix presentation_;
  IntMatrix basis_;
  IntMatrix completion_inverse_;
  std::size_t relation_rank_ = 0;
  Integer index_ = 1;
};

/// A lattice together with its dual and the Gram matrix of the two bases.
struct DualPairing {
  LatticeEmbedding primal;
  LatticeEmbedding dual;
  IntMatrix gram;

  DualPairing(LatticeEmbedding p, LatticeEmbedding d)
      : primal(std::move(p)), dual(std::move(d)) {
    require(primal.ambient_rank() == dual.ambient_rank() &&
                primal.rank() == dual.rank(),
            ErrorKind::lattice_mismatch, "DualPairing: rank mismatch");
    gram = primal.rank() ? primal.basis() * dual.basis().transpose()
                         : IntMatrix(0, 0);
    require(primal.rank() == 0 || is_unimodular(gram), ErrorKind::lattice_mismatch,
            "DualPairing: pairing is not perfect");
  }
};

inline DualPairing make_dual_pairing(const LatticeEmbedding& l) {
  return DualPairing(l, l.dual());
}

}  // namespace dmirror
