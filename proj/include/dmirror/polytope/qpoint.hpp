#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dmirror/lattice/integer.hpp"

namespace dmirror {

/// Rational point stored as num / den with den > 0 and gcd(num, den) = 1.
struct QPoint {
  IntVector num;
  Integer den = 1;

  QPoint() = default;
  explicit QPoint(IntVector integral) : num(std::move(integral)), den(1) {}
  QPoint(IntVector n, Integer d) : num(std::move(n)), den(std::move(d)) {
    normalize();
  }

  static QPoint from_rationals(const std::vector<Rational>& x) {
    Integer d = 1;
    for (const auto& q : x) {
      const Integer& qd = boost::multiprecision::denominator(q);
      d = d / gcd(d, qd) * qd;
    }
    IntVector n(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      n[i] = boost::multiprecision::numerator(x[i]) *
             (d / boost::multiprecision::denominator(x[i]));
    return QPoint(std::move(n), d);
  }

  std::size_t dim() const noexcept { return num.size(); }
  bool integral() const noexcept { return den == 1; }
  Rational coord(std::size_t i) const { return Rational(num[i], den); }
  std::vector<Rational> rationals() const {
    std::vector<Rational> out;
    out.reserve(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) out.push_back(coord(i));
    return out;
  }

  /// Pairing with an integer functional.
  Rational pair(std::span<const Integer> y) const { return Rational(dot(num, y), den); }

  void normalize() {
    ensure(den != 0, "QPoint: zero denominator");
    if (den < 0) {
      den = -den;
      for (auto& x : num) x = -x;
    }
    Integer g = gcd(content(num), den);
    if (g > 1) {
      den /= g;
      for (auto& x : num) x /= g;
    }
  }

  friend bool operator==(const QPoint& a, const QPoint& b) {
    return a.den == b.den && a.num == b.num;
  }

  /// Lexicographic order on the rational coordinates.
  friend std::strong_ordering operator<=>(const QPoint& a, const QPoint& b) {
    for (std::size_t i = 0; i < a.num.size() && i < b.num.size(); ++i) {
      Integer l = a.num[i] * b.den, r = b.num[i] * a.den;
      if (l < r) return std::strong_ordering::less;
      if (l > r) return std::strong_ordering::greater;
    }
    return a.num.size() <=> b.num.size();
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (i) s += ",";
      s += dmirror::to_string(coord(i));
    }
    return s + ")";
  }
};

inline QPoint operator+(const QPoint& a, const QPoint& b) {
  IntVector n(a.num.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num[i] * b.den + b.num[i] * a.den;
  return QPoint(std::move(n), a.den * b.den);
}

inline QPoint operator-(const QPoint& a, const QPoint& b) {
  IntVector n(a.num.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = a.num[i] * b.den - b.num[i] * a.den;
  return QPoint(std::move(n), a.den * b.den);
}

}  // namespace dmirror
