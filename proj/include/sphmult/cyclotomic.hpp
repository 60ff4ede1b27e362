#pragma once

// Exact arithmetic in the field generated over the rationals by a fixed
// root of unity of order M, represented as polynomials modulo the M-th
// cyclotomic polynomial. Everything is a vector of exact rationals; no
// floating point anywhere, so equality tests mean equality.

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace sphmult {

namespace cyc {

using Poly1 = std::vector<BigRat>;  // ascending coefficients

inline void trim(Poly1& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly1 mul(const Poly1& a, const Poly1& b) {
  if (a.empty() || b.empty()) return {};
  Poly1 c(a.size() + b.size() - 1, BigRat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

// quotient of an exact division (remainder must vanish)
inline Poly1 divide_exact(const Poly1& num, const Poly1& den) {
  Poly1 r = num, q;
  if (den.empty()) throw std::invalid_argument("division by zero polynomial");
  if (r.size() >= den.size()) q.assign(r.size() - den.size() + 1, BigRat(0));
  while (r.size() >= den.size()) {
    BigRat c = r.back() / den.back();
    size_t shift = r.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) r[shift + i] -= c * den[i];
    trim(r);
  }
  if (!r.empty()) throw std::logic_error("polynomial division left a remainder");
  return q;
}

inline Poly1 rem(Poly1 r, const Poly1& den) {
  while (r.size() >= den.size()) {
    BigRat c = r.back() / den.back();
    size_t shift = r.size() - den.size();
    for (size_t i = 0; i < den.size(); ++i) r[shift + i] -= c * den[i];
    trim(r);
  }
  return r;
}

// M-th cyclotomic polynomial: divide x^M - 1 by the cyclotomic polynomials
// of the proper divisors, recursively.
inline Poly1 cyclotomic_poly(u32 M) {
  static std::map<u32, Poly1> memo;
  auto it = memo.find(M);
  if (it != memo.end()) return it->second;
  Poly1 num(M + 1, BigRat(0));
  num[0] = BigRat(-1);
  num[M] = BigRat(1);
  for (u32 d = 1; d < M; ++d)
    if (M % d == 0) num = divide_exact(num, cyclotomic_poly(d));
  memo.emplace(M, num);
  return num;
}

}  // namespace cyc

// An element of the degree-phi(M) field: coefficients of 1, z, z^2, ...
// where z is the chosen primitive M-th root of unity.
class Cyclo {
 public:
  Cyclo() : M_(1), c_{} {}
  Cyclo(u32 M, cyc::Poly1 c) : M_(M), c_(std::move(c)) { cyc::trim(c_); }

  static Cyclo from_rat(u32 M, const BigRat& r) {
    return r == 0 ? Cyclo(M, {}) : Cyclo(M, {r});
  }
  static Cyclo zeta(u32 M) {
    if (M == 1) return from_rat(1, BigRat(1));
    if (M == 2) return from_rat(2, BigRat(-1));
    return Cyclo(M, {BigRat(0), BigRat(1)});
  }

  u32 order() const { return M_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  BigRat rational_value() const {
    if (!is_rational()) throw std::logic_error("value is irrational");
    return c_.empty() ? BigRat(0) : c_[0];
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    u32 M = check(a, b);
    cyc::Poly1 c(std::max(a.c_.size(), b.c_.size()), BigRat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Cyclo(M, std::move(c));
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    u32 M = check(a, b);
    cyc::Poly1 c(std::max(a.c_.size(), b.c_.size()), BigRat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Cyclo(M, std::move(c));
  }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    u32 M = check(a, b);
    return Cyclo(M, cyc::rem(cyc::mul(a.c_, b.c_), cyc::cyclotomic_poly(M)));
  }
  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    check(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // inverse by the extended euclidean algorithm against the modulus
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    cyc::Poly1 r0 = cyc::cyclotomic_poly(M_), r1 = c_;
    cyc::Poly1 t0 = {}, t1 = {BigRat(1)};
    while (!r1.empty()) {
      // r0 = q r1 + r2
      cyc::Poly1 r2 = r0, q;
      if (r2.size() >= r1.size()) q.assign(r2.size() - r1.size() + 1, BigRat(0));
      while (r2.size() >= r1.size()) {
        BigRat c = r2.back() / r1.back();
        size_t shift = r2.size() - r1.size();
        q[shift] += c;
        for (size_t i = 0; i < r1.size(); ++i) r2[shift + i] -= c * r1[i];
        cyc::trim(r2);
      }
      cyc::Poly1 t2 = t0;
      {
        cyc::Poly1 qt = cyc::mul(q, t1);
        if (t2.size() < qt.size()) t2.resize(qt.size(), BigRat(0));
        for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
        cyc::trim(t2);
      }
      r0 = std::move(r1);
      r1 = std::move(r2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    // r0 is the gcd, a nonzero constant since the modulus is irreducible
    if (r0.size() != 1)
      throw std::logic_error("value shares a factor with the modulus");
    cyc::Poly1 inv = t0;
    for (auto& x : inv) x /= r0[0];
    return Cyclo(M_, cyc::rem(std::move(inv), cyc::cyclotomic_poly(M_)));
  }

  Cyclo pow(u64 n) const {
    Cyclo acc = from_rat(M_, BigRat(1));
    Cyclo base = *this;
    while (n) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += rat_str(c_[i]);
      if (i == 1) s += "*z";
      if (i > 1) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static u32 check(const Cyclo& a, const Cyclo& b) {
    // exact rationals embed in any order; otherwise orders must agree
    if (a.is_rational() && !b.is_rational()) return b.M_;
    if (b.is_rational()) return a.M_;
    if (a.M_ != b.M_)
      throw std::invalid_argument("mixed root-of-unity orders");
    return a.M_;
  }

  u32 M_;
  cyc::Poly1 c_;
};

}  // namespace sphmult
