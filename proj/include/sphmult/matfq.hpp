#pragma once

// Small matrices over F_q (dimensions up to 4) and conjugacy machinery for
// invertible matrices of size up to 3: characteristic polynomial, class
// invariants from the factor/partition data of the rational form, and exact
// centralizer orders from the standard product formula.

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fq.hpp"

namespace sphmult {

constexpr u32 kMaxDim = 4;

struct Mat {
  u32 r = 0, c = 0;
  std::array<u32, kMaxDim * kMaxDim> e{};

  Mat() = default;
  Mat(u32 rows, u32 cols) : r(rows), c(cols) {
    if (rows > kMaxDim || cols > kMaxDim)
      throw std::invalid_argument("matrix dimension exceeds 4");
  }

  u32& at(u32 i, u32 j) { return e[i * c + j]; }
  u32 at(u32 i, u32 j) const { return e[i * c + j]; }

  bool operator==(const Mat& o) const {
    if (r != o.r || c != o.c) return false;
    for (u32 i = 0; i < r * c; ++i)
      if (e[i] != o.e[i]) return false;
    return true;
  }

  void append_key(std::vector<u32>& out) const {
    out.insert(out.end(), e.begin(), e.begin() + r * c);
  }

  std::vector<u32> key() const {
    std::vector<u32> out;
    out.reserve(r * c);
    append_key(out);
    return out;
  }
};

// Conjugacy invariant: for each irreducible factor of the characteristic
// polynomial, its ascending coefficients (with leading 1) and the descending
// block-size partition of its multiplicity. Factors sorted by coefficients.
struct ConjClass {
  std::vector<std::pair<std::vector<u32>, std::vector<u32>>> factors;

  bool operator==(const ConjClass& o) const { return factors == o.factors; }
  bool operator<(const ConjClass& o) const { return factors < o.factors; }
};

class MatOps {
 public:
  explicit MatOps(const Fq& F) : F_(F) {}

  const Fq& field() const { return F_; }

  Mat zero(u32 r, u32 c) const { return Mat(r, c); }

  Mat identity(u32 n) const {
    Mat m(n, n);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Mat scalar(u32 n, u32 a) const {
    Mat m(n, n);
    for (u32 i = 0; i < n; ++i) m.at(i, i) = a;
    return m;
  }

  Mat add(const Mat& a, const Mat& b) const {
    Mat m(a.r, a.c);
    for (u32 i = 0; i < a.r * a.c; ++i) m.e[i] = F_.add(a.e[i], b.e[i]);
    return m;
  }

  Mat neg(const Mat& a) const {
    Mat m(a.r, a.c);
    for (u32 i = 0; i < a.r * a.c; ++i) m.e[i] = F_.neg(a.e[i]);
    return m;
  }

  Mat sub(const Mat& a, const Mat& b) const { return add(a, neg(b)); }

  Mat smul(u32 s, const Mat& a) const {
    Mat m(a.r, a.c);
    for (u32 i = 0; i < a.r * a.c; ++i) m.e[i] = F_.mul(s, a.e[i]);
    return m;
  }

  Mat mul(const Mat& a, const Mat& b) const {
    if (a.c != b.r) throw std::invalid_argument("dimension mismatch");
    Mat m(a.r, b.c);
    for (u32 i = 0; i < a.r; ++i)
      for (u32 k = 0; k < a.c; ++k) {
        u32 aik = a.at(i, k);
        if (!aik) continue;
        for (u32 j = 0; j < b.c; ++j)
          m.at(i, j) = F_.add(m.at(i, j), F_.mul(aik, b.at(k, j)));
      }
    return m;
  }

  Mat transpose(const Mat& a) const {
    Mat m(a.c, a.r);
    for (u32 i = 0; i < a.r; ++i)
      for (u32 j = 0; j < a.c; ++j) m.at(j, i) = a.at(i, j);
    return m;
  }

  u32 det(Mat a) const {
    if (a.r != a.c) throw std::invalid_argument("det of non-square");
    u32 n = a.r, d = 1;
    for (u32 col = 0; col < n; ++col) {
      u32 piv = col;
      while (piv < n && a.at(piv, col) == 0) ++piv;
      if (piv == n) return 0;
      if (piv != col) {
        for (u32 j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
        d = F_.neg(d);
      }
      d = F_.mul(d, a.at(col, col));
      u32 pinv = F_.inv(a.at(col, col));
      for (u32 i = col + 1; i < n; ++i) {
        u32 f = F_.mul(a.at(i, col), pinv);
        if (!f) continue;
        for (u32 j = col; j < n; ++j)
          a.at(i, j) = F_.sub(a.at(i, j), F_.mul(f, a.at(col, j)));
      }
    }
    return d;
  }

  Mat inv(const Mat& a) const {
    if (a.r != a.c) throw std::invalid_argument("inverse of non-square");
    u32 n = a.r;
    Mat w = a, r = identity(n);
    for (u32 col = 0; col < n; ++col) {
      u32 piv = col;
      while (piv < n && w.at(piv, col) == 0) ++piv;
      if (piv == n) throw std::domain_error("singular matrix");
      if (piv != col)
        for (u32 j = 0; j < n; ++j) {
          std::swap(w.at(piv, j), w.at(col, j));
          std::swap(r.at(piv, j), r.at(col, j));
        }
      u32 pinv = F_.inv(w.at(col, col));
      for (u32 j = 0; j < n; ++j) {
        w.at(col, j) = F_.mul(w.at(col, j), pinv);
        r.at(col, j) = F_.mul(r.at(col, j), pinv);
      }
      for (u32 i = 0; i < n; ++i) {
        if (i == col) continue;
        u32 f = w.at(i, col);
        if (!f) continue;
        for (u32 j = 0; j < n; ++j) {
          w.at(i, j) = F_.sub(w.at(i, j), F_.mul(f, w.at(col, j)));
          r.at(i, j) = F_.sub(r.at(i, j), F_.mul(f, r.at(col, j)));
        }
      }
    }
    return r;
  }

  // Reduced row echelon form; returns rank. Canonical representative for
  // row spaces, so equal row spaces give equal matrices.
  u32 rref(Mat& a) const {
    u32 rank = 0;
    for (u32 col = 0; col < a.c && rank < a.r; ++col) {
      u32 piv = rank;
      while (piv < a.r && a.at(piv, col) == 0) ++piv;
      if (piv == a.r) continue;
      if (piv != rank)
        for (u32 j = 0; j < a.c; ++j) std::swap(a.at(piv, j), a.at(rank, j));
      u32 pinv = F_.inv(a.at(rank, col));
      for (u32 j = 0; j < a.c; ++j) a.at(rank, j) = F_.mul(a.at(rank, j), pinv);
      for (u32 i = 0; i < a.r; ++i) {
        if (i == rank) continue;
        u32 f = a.at(i, col);
        if (!f) continue;
        for (u32 j = 0; j < a.c; ++j)
          a.at(i, j) = F_.sub(a.at(i, j), F_.mul(f, a.at(rank, j)));
      }
      ++rank;
    }
    return rank;
  }

  u32 rank(Mat a) const { return rref(a); }

  bool is_upper_triangular(const Mat& a) const {
    for (u32 i = 1; i < a.r; ++i)
      for (u32 j = 0; j < i; ++j)
        if (a.at(i, j)) return false;
    return true;
  }

  // Ascending coefficients of det(xI - A), leading term included. n <= 3.
  std::vector<u32> charpoly(const Mat& a) const {
    if (a.r != a.c || a.r > 3)
      throw std::invalid_argument("charpoly needs square size <= 3");
    u32 n = a.r;
    if (n == 1) return {F_.neg(a.at(0, 0)), 1};
    if (n == 2) {
      u32 tr = F_.add(a.at(0, 0), a.at(1, 1));
      return {det(a), F_.neg(tr), 1};
    }
    u32 e1 = F_.add(F_.add(a.at(0, 0), a.at(1, 1)), a.at(2, 2));
    auto minor2 = [&](u32 i, u32 j) {
      return F_.sub(F_.mul(a.at(i, i), a.at(j, j)),
                    F_.mul(a.at(i, j), a.at(j, i)));
    };
    u32 e2 = F_.add(F_.add(minor2(0, 1), minor2(0, 2)), minor2(1, 2));
    u32 e3 = det(a);
    return {F_.neg(e3), e2, F_.neg(e1), 1};
  }

  u32 eval_poly(const std::vector<u32>& f, u32 x) const {
    u32 acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = F_.add(F_.mul(acc, x), f[i]);
    return acc;
  }

  Mat eval_poly_mat(const std::vector<u32>& f, const Mat& a) const {
    Mat acc = zero(a.r, a.c);
    for (size_t i = f.size(); i-- > 0;)
      acc = add(mul(acc, a), scalar(a.r, f[i]));
    return acc;
  }

  // Conjugacy invariant of an invertible matrix, n <= 3. Triangular input
  // skips the root scan: eigenvalues are read off the diagonal.
  ConjClass classify(const Mat& a) const {
    auto cp = charpoly(a);
    u32 n = a.r;
    std::vector<std::pair<u32, u32>> roots;  // (root, multiplicity)
    std::vector<u32> rem = cp;
    if (is_upper_triangular(a)) {
      std::vector<u32> diag;
      for (u32 i = 0; i < n; ++i) diag.push_back(a.at(i, i));
      std::sort(diag.begin(), diag.end());
      for (size_t i = 0; i < diag.size();) {
        size_t j = i;
        while (j < diag.size() && diag[j] == diag[i]) ++j;
        roots.push_back({diag[i], u32(j - i)});
        i = j;
      }
      rem = {1};
    } else {
      for (u32 x = 0; x < F_.q() && rem.size() > 1; ++x) {
        u32 m = 0;
        while (rem.size() > 1 && eval_poly(rem, x) == 0) {
          rem = divide_linear(rem, x);
          ++m;
        }
        if (m) roots.push_back({x, m});
      }
    }
    ConjClass cls;
    for (auto [root, m] : roots) {
      std::vector<u32> f = {F_.neg(root), 1};
      cls.factors.push_back({f, factor_partition(a, f, m)});
    }
    if (rem.size() > 1) {
      // no roots and degree <= 3: irreducible
      u32 m = 1;  // degree of rem is 2 or 3 and n <= 3, multiplicity is 1
      cls.factors.push_back({rem, factor_partition(a, rem, m)});
    }
    std::sort(cls.factors.begin(), cls.factors.end());
    return cls;
  }

 private:
  std::vector<u32> divide_linear(const std::vector<u32>& f, u32 root) const {
    // f monic with f(root) = 0; returns f / (x - root), monic.
    std::vector<u32> q(f.size() - 1);
    u32 carry = 0;
    for (size_t i = f.size(); i-- > 1;) {
      carry = F_.add(f[i], F_.mul(carry, root));
      q[i - 1] = carry;
    }
    return q;
  }

  std::vector<u32> factor_partition(const Mat& a, const std::vector<u32>& f,
                                    u32 mult) const {
    u32 d = u32(f.size()) - 1;
    Mat fa = eval_poly_mat(f, a);
    std::vector<u32> kdim = {0};
    Mat pw = identity(a.r);
    for (u32 j = 1; j <= mult; ++j) {
      pw = mul(pw, fa);
      kdim.push_back(a.r - rank(pw));
    }
    // parts_ge[j] = number of blocks of size >= j; the partition is its
    // conjugate, read off as block counts per exact size.
    std::vector<u32> parts_ge(mult + 1, 0);
    for (u32 j = 1; j <= mult; ++j) parts_ge[j] = (kdim[j] - kdim[j - 1]) / d;
    std::vector<u32> out;
    for (u32 j = 1; j <= mult; ++j)
      for (u32 t = (j < mult ? parts_ge[j + 1] : 0); t < parts_ge[j]; ++t)
        out.push_back(j);
    std::sort(out.rbegin(), out.rend());
    u32 total = 0;
    for (u32 x : out) total += x;
    if (total != mult) throw std::logic_error("partition reconstruction failed");
    return out;
  }

  const Fq& F_;
};

inline BigInt gl_order(u32 n, const BigInt& Q) {
  BigInt qn = 1;
  for (u32 i = 0; i < n; ++i) qn *= Q;
  BigInt acc = 1, qi = 1;
  for (u32 i = 0; i < n; ++i) {
    acc *= qn - qi;
    qi *= Q;
  }
  return acc;
}

inline BigInt sl_order(u32 n, const BigInt& Q) { return gl_order(n, Q) / (Q - 1); }

// |centralizer| in GL_n(F_q) of an element with the given invariant.
// Per irreducible factor f of degree d with partition lambda of its
// multiplicity, writing Q_f = q^d, m_i = #parts equal to i and lambda' the
// conjugate partition:
//   |Z_f| = Q_f^{sum (lambda'_j)^2} * prod_i prod_{k=1..m_i} (1 - Q_f^{-k})
// and the centralizer is the product over factors.
inline BigInt centralizer_order(const ConjClass& cls, const BigInt& q) {
  BigRat z = 1;
  for (const auto& [f, lambda] : cls.factors) {
    u32 d = u32(f.size()) - 1;
    BigInt qf = pow_big(q, d);
    u32 maxpart = lambda.empty() ? 0 : lambda[0];
    u64 sumsq = 0;
    for (u32 j = 1; j <= maxpart; ++j) {
      u64 conj = 0;
      for (u32 part : lambda)
        if (part >= j) ++conj;
      sumsq += conj * conj;
    }
    BigRat zf = BigRat(pow_big(qf, sumsq));
    for (u32 i = 1; i <= maxpart; ++i) {
      u32 mi = 0;
      for (u32 part : lambda)
        if (part == i) ++mi;
      for (u32 kk = 1; kk <= mi; ++kk)
        zf *= BigRat(pow_big(qf, kk) - 1, pow_big(qf, kk));
    }
    z *= zf;
  }
  if (denominator(z) != 1) throw std::logic_error("centralizer not integral");
  return numerator(z);
}

inline BigInt class_size(const ConjClass& cls, u32 n, const BigInt& q) {
  return gl_order(n, q) / centralizer_order(cls, q);
}

}  // namespace sphmult
