#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dmirror/lattice/integer.hpp"

namespace dmirror {

/// Element of the prime field F_p; the modulus travels with the value.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(std::int64_t x, std::uint64_t prime) : p(prime) {
    std::int64_t r = x % static_cast<std::int64_t>(prime);
    v = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(prime) : r);
  }
  static Fp from_integer(const Integer& x, std::uint64_t prime) {
    Integer r = x % prime;
    if (r < 0) r += prime;
    Fp out;
    out.p = prime;
    out.v = static_cast<std::uint64_t>(r);
    return out;
  }

  bool is_zero() const noexcept { return v == 0; }
  friend bool operator==(const Fp& a, const Fp& b) noexcept { return a.v == b.v; }
  friend Fp operator+(Fp a, const Fp& b) {
    a.p = a.p ? a.p : b.p;
    a.v += b.v;
    if (a.v >= a.p) a.v -= a.p;
    return a;
  }
  friend Fp operator-(Fp a, const Fp& b) {
    a.p = a.p ? a.p : b.p;
    a.v = a.v >= b.v ? a.v - b.v : a.v + a.p - b.v;
    return a;
  }
  Fp operator-() const {
    Fp r = *this;
    r.v = v ? p - v : 0;
    return r;
  }
  friend Fp operator*(Fp a, const Fp& b) {
    a.p = a.p ? a.p : b.p;
    a.v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % a.p);
    return a;
  }
  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }

  Fp pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Fp base = *this, r(1, p);
    for (auto k = static_cast<std::uint64_t>(e); k; k >>= 1) {
      if (k & 1) r *= base;
      base *= base;
    }
    return r;
  }
  Fp inverse() const {
    require(v != 0, ErrorKind::off_torus, "inverse of zero in F_p");
    return pow(static_cast<std::int64_t>(p - 2));
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  std::string to_string() const { return std::to_string(v); }
};

inline bool is_zero(const Fp& x) noexcept { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x == 0; }
inline std::string to_string(const Fp& x) { return x.to_string(); }

inline bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// splitmix64 finalizer; used to derive independent streams from one seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform integer in [lo, hi] from raw engine output by rejection, so the
/// stream is identical across standard library implementations.
inline std::uint64_t uniform_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return lo + x % span;
  }
}

inline Fp random_nonzero(std::mt19937_64& rng, std::uint64_t p) {
  Fp x;
  x.p = p;
  x.v = uniform_in(rng, 1, p - 1);
  return x;
}

}  // namespace dmirror
