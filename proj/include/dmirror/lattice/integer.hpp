#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmirror/error.hpp"

namespace dmirror {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(Integer a, Integer b) {
  return boost::multiprecision::gcd(a, b);
}

/// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Integer g, x, y;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Floor/ceil division for any sign combination (b != 0).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

inline Integer floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q),
                   boost::multiprecision::denominator(q));
}

inline Integer ceil(const Rational& q) {
  return ceil_div(boost::multiprecision::numerator(q),
                  boost::multiprecision::denominator(q));
}

inline Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x != 0) g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

/// Divides out the content; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline bool is_zero(std::span<const Integer> v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  ensure(a.size() == b.size(), "dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector add(std::span<const Integer> a, std::span<const Integer> b) {
  ensure(a.size() == b.size(), "add: length mismatch");
  IntVector r(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

inline IntVector sub(std::span<const Integer> a, std::span<const Integer> b) {
  ensure(a.size() == b.size(), "sub: length mismatch");
  IntVector r(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

inline IntVector scale(std::span<const Integer> a, const Integer& c) {
  IntVector r(a.begin(), a.end());
  for (auto& x : r) x *= c;
  return r;
}

inline IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n, 0);
  v.at(i) = 1;
  return v;
}

inline IntVector concat(std::span<const Integer> a, std::span<const Integer> b) {
  IntVector r(a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline bool fits_int64(const Integer& a) {
  return a >= std::numeric_limits<std::int64_t>::min() &&
         a <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& a) {
  ensure(fits_int64(a), "integer does not fit in 64 bits");
  return a.convert_to<std::int64_t>();
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  require(i < text.size(), ErrorKind::input,
          "invalid integer '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j)
    require(text[j] >= '0' && text[j] <= '9', ErrorKind::input,
            "invalid integer '" + std::string(text) + "'");
  return Integer(std::string(text));
}

/// Accepts "n" or "n/d" with d != 0.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  require(den != 0, ErrorKind::input,
          "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

}  // namespace dmirror
