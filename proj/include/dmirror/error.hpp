#pragma once

#include <stdexcept>
#include <string>

namespace dmirror {

enum class ErrorKind {
  input,               // malformed or out-of-range user input
  rank_deficient,      // dependent rows where independence is required
  not_saturated,       // sublattice has finite index > 1 in its saturation
  not_full_dimensional,
  origin_not_interior,
  unbounded,
  lattice_mismatch,
  missing_origin,      // nef-partition part does not contain 0
  degenerate_part,     // nef-partition part equals {0}
  not_reflexive,
  decomposition,       // degree-element decomposition constraint violated
  degenerate_coefficients,
  off_torus,
  internal,            // an invariant that should hold by construction failed
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::rank_deficient: return "rank_deficient";
    case ErrorKind::not_saturated: return "not_saturated";
    case ErrorKind::not_full_dimensional: return "not_full_dimensional";
    case ErrorKind::origin_not_interior: return "origin_not_interior";
    case ErrorKind::unbounded: return "unbounded";
    case ErrorKind::lattice_mismatch: return "lattice_mismatch";
    case ErrorKind::missing_origin: return "missing_origin";
    case ErrorKind::degenerate_part: return "degenerate_part";
    case ErrorKind::not_reflexive: return "not_reflexive";
    case ErrorKind::decomposition: return "decomposition";
    case ErrorKind::degenerate_coefficients: return "degenerate_coefficients";
    case ErrorKind::off_torus: return "off_torus";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a computation meets a state that its own construction rules out.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what)
      : Error(ErrorKind::internal, what) {}
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InternalError(what);
}

}  // namespace dmirror
