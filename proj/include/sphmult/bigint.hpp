#pragma once

// Exact integer/rational arithmetic and small modular helpers shared by the
// whole library. Big values (group orders at extension fields, incidence
// counts, estimator ratios) use boost::multiprecision; everything that fits
// u64 stays native.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sphmult {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline std::string rat_str(const BigRat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "a/b" or "a". Throws on malformed input or zero denominator.
inline BigRat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRat(BigInt(s));
  BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return BigRat(num, den);
}

// Nearest integer, halves rounding up.
inline BigInt round_rat(const BigRat& r) {
  BigInt num = numerator(r), den = denominator(r);  // den > 0
  BigInt fl;
  if (num >= 0)
    fl = num / den;
  else
    fl = BigInt(-((-num + den - 1) / den));
  if (r - BigRat(fl) >= BigRat(1, 2)) fl += 1;
  return fl;
}

inline BigRat rat_abs(const BigRat& r) { return r < 0 ? BigRat(-r) : r; }

inline u64 mul_mod(u64 a, u64 b, u64 m) { return (__uint128_t)a * b % m; }

inline u64 pow_mod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

// Inverse mod prime m.
inline u64 inv_mod(u64 a, u64 m) {
  a %= m;
  if (a == 0) throw std::domain_error("inverse of 0");
  return pow_mod(a, m - 2, m);
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 isqrt_u64(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline BigInt pow_big(const BigInt& b, u64 e) {
  BigInt r = 1, a = b;
  while (e) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

}  // namespace sphmult
