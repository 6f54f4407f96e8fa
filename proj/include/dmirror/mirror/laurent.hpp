#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "dmirror/mirror/field.hpp"

namespace dmirror {

using Exponent = std::vector<std::int64_t>;

inline Exponent to_exponent(std::span<const Integer> v) {
  Exponent e;
  e.reserve(v.size());
  for (const auto& x : v) {
    require(fits_int64(x), ErrorKind::input, "exponent does not fit in 64 bits");
    e.push_back(static_cast<std::int64_t>(x));
  }
  return e;
}

inline Exponent operator+(Exponent a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
inline Exponent operator-(Exponent a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
inline Exponent operator-(Exponent a) {
  for (auto& x : a) x = -x;
  return a;
}

/// Sparse Laurent polynomial in nvars variables over Coeff (Fp or Rational).
/// Terms are kept sorted by exponent; zero coefficients are never stored.
template <class Coeff>
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Coeff>;

  explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static LaurentPoly monomial(Exponent e, Coeff c) {
    LaurentPoly p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponent& e, const Coeff& c) {
    ensure(e.size() == nvars_, "LaurentPoly: exponent of the wrong length");
    if (dmirror::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (dmirror::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::optional<Coeff> coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// Product with the monomial X^e.
  LaurentPoly shifted(const Exponent& e) const {
    LaurentPoly r(nvars_);
    for (const auto& [x, c] : terms_) r.terms_.emplace(x + e, c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Keeps the listed coordinates; every other coordinate must be zero in every term.
  LaurentPoly restricted(const std::vector<std::size_t>& keep) const {
    LaurentPoly r(keep.size());
    for (const auto& [e, c] : terms_) {
      Exponent x;
      std::size_t k = 0;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (k < keep.size() && keep[k] == i) {
          x.push_back(e[i]);
          ++k;
        } else {
          ensure(e[i] == 0, "LaurentPoly::restricted: exponent has a dropped nonzero coordinate");
        }
      }
      r.terms_.emplace(std::move(x), c);
    }
    return r;
  }

  /// Value at a torus point (all coordinates nonzero).
  Coeff evaluate(const std::vector<Coeff>& point) const {
    ensure(point.size() == nvars_, "LaurentPoly::evaluate: point of the wrong length");
    Coeff sum{};
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Coeff t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) t *= power(point[i], e[i]);
      sum = first ? t : sum + t;
      first = false;
    }
    return sum;
  }

  /// Coordinatewise minimum and maximum exponents; empty for the zero polynomial.
  std::pair<Exponent, Exponent> exponent_range() const {
    if (terms_.empty()) return {};
    Exponent lo = terms_.begin()->first, hi = lo;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < nvars_; ++i) {
        lo[i] = std::min(lo[i], e[i]);
        hi[i] = std::max(hi[i], e[i]);
      }
    return {lo, hi};
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + dmirror::to_string(c) + ")";
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i] != 0) out += "*x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    }
    return out;
  }

 private:
  static Coeff power(const Coeff& x, std::int64_t e) {
    if constexpr (std::is_same_v<Coeff, Fp>) {
      return x.pow(e);
    } else {
      require(x != 0, ErrorKind::off_torus, "evaluation at a zero coordinate");
      Coeff base = e < 0 ? Coeff(1) / x : x, r(1);
      for (std::int64_t k = e < 0 ? -e : e; k; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
      }
      return r;
    }
  }

  std::size_t nvars_;
  Terms terms_;
};

template <class Coeff>
using PolyMatrix = std::vector<std::vector<LaurentPoly<Coeff>>>;

/// Determinant by cofactor expansion along rows, memoized on the set of used
/// columns.
template <class Coeff>
LaurentPoly<Coeff> determinant(const PolyMatrix<Coeff>& a, std::size_t nvars) {
  const std::size_t n = a.size();
  ensure(n >= 1 && n <= 20, "determinant: matrix size out of range");
  // minors[mask] = det of rows n-|mask|.. against the columns in mask.
  std::map<std::uint32_t, LaurentPoly<Coeff>> minors;
  std::function<const LaurentPoly<Coeff>&(std::uint32_t)> minor = [&](std::uint32_t mask) -> const LaurentPoly<Coeff>& {
    auto it = minors.find(mask);
    if (it != minors.end()) return it->second;
    const std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
    const std::size_t row = n - k;
    LaurentPoly<Coeff> acc(nvars);
    if (k == 1) {
      acc = a[row][static_cast<std::size_t>(__builtin_ctz(mask))];
    } else {
      std::size_t pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask >> c & 1)) continue;
        const auto& entry = a[row][c];
        if (!entry.is_zero()) {
          LaurentPoly<Coeff> term = entry * minor(mask & ~(1u << c));
          if (pos % 2 == 0) acc += term;
          else acc -= term;
        }
        ++pos;
      }
    }
    return minors.emplace(mask, std::move(acc)).first->second;
  };
  return minor((1u << n) - 1u);
}

}  // namespace dmirror
