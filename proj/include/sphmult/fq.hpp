#pragma once

// Finite fields F_{p^k} with canonical moduli and compatible extension
// embeddings.
//
// Elements are encoded as u32 values sum c_i * p^i where (c_0, ..., c_{k-1})
// are the coefficients of the residue polynomial, c_0 the constant term.
// That encoding doubles as the serialized form (little-endian coefficient
// list) and as the canonical element order. The modulus of F_{p^k} is the
// first monic irreducible polynomial of degree k in ascending encoding of
// its non-leading coefficients, so independently built fields agree.
//
// Multiplication runs on exp/log tables over a fixed generator; addition is
// digitwise. Field size is capped at 2^20.

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bigint.hpp"

namespace sphmult {

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr u64 kFieldSizeCap = 1u << 20;

namespace detail {

// Dense polynomials over F_p, ascending coefficients, for modulus search.
using Poly = std::vector<u32>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_rem(Poly f, const Poly& g, u32 p) {
  // g monic
  while (f.size() >= g.size()) {
    u32 c = f.back();
    if (c) {
      size_t s = f.size() - g.size();
      for (size_t i = 0; i < g.size(); ++i)
        f[s + i] = (f[s + i] + u64(p - 1) * c % p * g[i]) % p;
    }
    f.pop_back();
    poly_trim(f);
    if (f.empty()) break;
  }
  return f;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u32 p) {
  if (a.empty() || b.empty()) return {};
  Poly acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j)
        acc[i + j] = (acc[i + j] + u64(a[i]) * b[j]) % p;
  poly_trim(acc);
  return poly_rem(std::move(acc), m, p);
}

inline Poly poly_powmod(Poly base, u64 e, const Poly& m, u32 p) {
  Poly r = {1};
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, u32 p) {
  while (!b.empty()) {
    // scale b monic
    u32 lead = b.back();
    if (lead != 1) {
      u64 li = pow_mod(lead, p - 2, p);
      for (auto& c : b) c = u64(c) * li % p;
    }
    Poly r = poly_rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline bool poly_irreducible(const Poly& f, u32 p) {
  u32 k = u32(f.size()) - 1;
  if (k == 0) return false;
  Poly x = {0, 1};
  // Rabin: x^{p^k} == x mod f, and gcd(x^{p^{k/t}} - x, f) = 1 for prime t|k.
  u64 pk = 1;
  for (u32 i = 0; i < k; ++i) pk *= p;
  Poly xq = poly_powmod(x, pk, f, p);
  if (xq != poly_rem(x, f, p)) return false;
  u32 rem = k;
  for (u32 t = 2; t <= rem; ++t) {
    if (rem % t) continue;
    while (rem % t == 0) rem /= t;
    u64 e = 1;
    for (u32 i = 0; i < k / t; ++i) e *= p;
    Poly g = poly_powmod(x, e, f, p);
    // g - x
    Poly d = g;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    poly_trim(d);
    Poly gc = poly_gcd(f, d, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> fs;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace detail

class Fq {
 public:
  Fq(u32 p, u32 k) : p_(p), k_(k) {
    if (p < 2 || k < 1) throw std::invalid_argument("bad field parameters");
    u64 q = 1;
    for (u32 i = 0; i < k; ++i) {
      q *= p;
      if (q > kFieldSizeCap) throw CapError("field size exceeds 2^20");
    }
    q_ = u32(q);
    modulus_ = canonical_modulus(p, k);
    build_tables();
  }

  u32 p() const { return p_; }
  u32 k() const { return k_; }
  u32 q() const { return q_; }
  const std::vector<u32>& modulus() const { return modulus_; }
  u32 zero() const { return 0; }
  u32 one() const { return 1; }
  u32 generator() const { return gen_; }

  // i-th power of the generator; enumerates units without repetition for
  // i in [0, q-2].
  u32 unit(u64 i) const { return exp_[i % (q_ - 1)]; }

  std::vector<u32> coeffs(u32 e) const {
    std::vector<u32> c(k_);
    for (u32 i = 0; i < k_; ++i) {
      c[i] = e % p_;
      e /= p_;
    }
    return c;
  }

  u32 from_coeffs(const std::vector<u32>& c) const {
    if (c.size() != k_) throw std::invalid_argument("coefficient count mismatch");
    u32 e = 0;
    for (u32 i = k_; i-- > 0;) {
      if (c[i] >= p_) throw std::invalid_argument("coefficient out of range");
      e = e * p_ + c[i];
    }
    return e;
  }

  u32 add(u32 a, u32 b) const {
    if (p_ == 2) return a ^ b;
    u32 r = 0, m = 1;
    for (u32 i = 0; i < k_; ++i) {
      u32 s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      r += s * m;
      a /= p_;
      b /= p_;
      m *= p_;
    }
    return r;
  }

  u32 neg(u32 a) const {
    if (p_ == 2) return a;
    u32 r = 0, m = 1;
    for (u32 i = 0; i < k_; ++i) {
      u32 d = a % p_;
      r += (d ? p_ - d : 0) * m;
      a /= p_;
      m *= p_;
    }
    return r;
  }

  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

  u32 mul(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    u64 e = u64(log_[a]) + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  u32 inv(u32 a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    u32 l = log_[a];
    return exp_[l ? q_ - 1 - l : 0];
  }

  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }

  u32 pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    u64 l = u64(log_[a]) * (e % (q_ - 1)) % (q_ - 1);
    return exp_[l];
  }

  // Multiplicative order; 0 has none.
  u64 order(u32 a) const {
    if (a == 0) throw std::domain_error("order of 0");
    u64 n = q_ - 1, l = log_[a];
    u64 g = gcd_u64(l % n, n);
    return n / (l ? g : n);
  }

  u32 frobenius(u32 a, u64 base_q) const { return pow(a, base_q); }

  static std::vector<u32> canonical_modulus(u32 p, u32 k) {
    u64 total = 1;
    for (u32 i = 0; i < k; ++i) total *= p;
    for (u64 v = 0; v < total; ++v) {
      detail::Poly f(k + 1);
      u64 t = v;
      for (u32 i = 0; i < k; ++i) {
        f[i] = u32(t % p);
        t /= p;
      }
      f[k] = 1;
      if (detail::poly_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

 private:
  // Product in the quotient ring, digit arithmetic only; feeds table build.
  u32 raw_mul(u32 a, u32 b) const {
    std::vector<u32> acc(2 * k_ - 1, 0);
    u32 av = a;
    for (u32 i = 0; i < k_; ++i, av /= p_) {
      u32 ai = av % p_;
      if (!ai) continue;
      u32 bv = b;
      for (u32 j = 0; j < k_; ++j, bv /= p_)
        acc[i + j] = u32((acc[i + j] + u64(ai) * (bv % p_)) % p_);
    }
    for (u32 d = 2 * k_ - 2; d >= k_ && d < acc.size(); --d) {
      u32 c = acc[d];
      if (c) {
        acc[d] = 0;
        for (u32 i = 0; i <= k_; ++i) {
          u64 sub = u64(c) * modulus_[i] % p_;
          acc[d - k_ + i] = u32((acc[d - k_ + i] + p_ - sub) % p_);
        }
      }
      if (d == k_) break;
    }
    u32 r = 0;
    for (u32 i = k_; i-- > 0;) r = r * p_ + acc[i];
    return r;
  }

  void build_tables() {
    u64 n = q_ - 1;
    auto fs = detail::prime_factors(n ? n : 1);
    auto raw_pow = [&](u32 a, u64 e) {
      u32 r = 1;
      while (e) {
        if (e & 1) r = raw_mul(r, a);
        a = raw_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    gen_ = 1;
    if (n > 1) {
      for (u32 c = 2; c < q_; ++c) {
        bool ok = true;
        for (u64 f : fs)
          if (raw_pow(c, n / f) == 1) {
            ok = false;
            break;
          }
        if (ok) {
          gen_ = c;
          break;
        }
      }
      if (gen_ == 1) throw std::logic_error("no field generator found");
    }
    exp_.resize(n ? n : 1);
    log_.assign(q_, 0);
    u32 cur = 1;
    for (u64 i = 0; i < exp_.size(); ++i) {
      exp_[i] = cur;
      log_[cur] = u32(i);
      cur = raw_mul(cur, gen_);
    }
    if (cur != 1) throw std::logic_error("generator order mismatch");
  }

  u32 p_, k_, q_, gen_ = 1;
  std::vector<u32> modulus_;
  std::vector<u32> exp_, log_;
};

// An embedding F_{p^a} -> F_{p^b}, stored as a full value map.
struct Embedding {
  const Fq* from = nullptr;
  const Fq* to = nullptr;
  std::vector<u32> map;  // size from->q()

  u32 operator()(u32 e) const { return map[e]; }
};

// Fields of one characteristic, with memoized compatible embeddings.
// Embeddings between chained extensions compose consistently because the
// map for a -> b routes through the largest proper intermediate degree; a
// direct least-root search happens only when b/a is prime.
class FieldTower {
 public:
  explicit FieldTower(u32 p) : p_(p) {}

  u32 p() const { return p_; }

  const Fq& field(u32 k) {
    auto it = fields_.find(k);
    if (it == fields_.end())
      it = fields_.emplace(k, std::make_unique<Fq>(p_, k)).first;
    return *it->second;
  }

  const Embedding& embed(u32 a, u32 b) {
    if (b % a != 0) throw std::invalid_argument("degrees do not divide");
    auto key = std::make_pair(a, b);
    auto it = embeds_.find(key);
    if (it != embeds_.end()) return it->second;

    const Fq& F = field(a);
    const Fq& E = field(b);
    Embedding emb;
    emb.from = &F;
    emb.to = &E;
    emb.map.resize(F.q());
    if (a == b) {
      for (u32 e = 0; e < F.q(); ++e) emb.map[e] = e;
    } else if (a == 1) {
      // prime-field constants share the encoding
      for (u32 e = 0; e < F.q(); ++e) emb.map[e] = e;
    } else {
      u32 mid = 0;
      for (u32 m = b / 2; m > a; --m)
        if (b % m == 0 && m % a == 0) {
          mid = m;
          break;
        }
      if (mid) {
        const Embedding& lo = embed(a, mid);
        const Embedding& hi = embed(mid, b);
        for (u32 e = 0; e < F.q(); ++e) emb.map[e] = hi(lo(e));
      } else {
        u32 beta = least_root(F, E);
        // e = sum c_i x^i maps to sum c_i beta^i
        for (u32 e = 0; e < F.q(); ++e) {
          auto c = F.coeffs(e);
          u32 acc = 0;
          for (u32 i = a; i-- > 0;) acc = E.add(E.mul(acc, beta), c[i]);
          emb.map[e] = acc;
        }
      }
    }
    return embeds_.emplace(key, std::move(emb)).first->second;
  }

 private:
  static u32 least_root(const Fq& F, const Fq& E) {
    const auto& m = F.modulus();
    for (u32 c = 0; c < E.q(); ++c) {
      u32 acc = 0;
      for (u32 i = u32(m.size()); i-- > 0;) acc = E.add(E.mul(acc, c), m[i]);
      if (acc == 0) return c;
    }
    throw std::logic_error("modulus has no root in extension");
  }

  u32 p_;
  std::map<u32, std::unique_ptr<Fq>> fields_;
  std::map<std::pair<u32, u32>, Embedding> embeds_;
};

}  // namespace sphmult
