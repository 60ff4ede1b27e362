#pragma once

// Exact character theory with every value in a prime field F_ell chosen so
// that all integers the run must recover (degrees, multiplicities) lift
// uniquely from their residues. Tables are computed with Dixon-Schneider:
// simultaneous eigenvectors of the class-multiplication matrices, split
// subspace by subspace, classes processed by increasing size, with seeded
// random class-matrix combinations as a recorded fallback.

#include <stdexcept>
#include <vector>

#include "group.hpp"

namespace sphmult {

struct ContextViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EllContext {
  u64 ell = 0;
  u64 zeta = 0;  // fixed element of order `exponent` in F_ell
  u64 exponent = 0;
  u64 omega_max = 0;
  u64 seed = 0;
};

namespace fl {

inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return mul_mod(a, b, p); }
inline u64 inv(u64 a, u64 p) {
  if (a == 0) throw std::domain_error("division by zero mod ell");
  return pow_mod(a, p - 2, p);
}

// Reduced row echelon form in place; returns pivot columns. Zero rows are
// removed.
inline std::vector<u32> rref(std::vector<std::vector<u64>>& m, u64 p) {
  std::vector<u32> pivots;
  if (m.empty()) return pivots;
  u32 cols = u32(m[0].size());
  u32 rank = 0;
  for (u32 col = 0; col < cols && rank < m.size(); ++col) {
    u32 piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    u64 pi = inv(m[rank][col], p);
    for (u32 j = 0; j < cols; ++j) m[rank][j] = mul(m[rank][j], pi, p);
    for (u32 i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      u64 f = m[i][col];
      for (u32 j = 0; j < cols; ++j)
        m[i][j] = sub(m[i][j], mul(f, m[rank][j], p), p);
    }
    pivots.push_back(col);
    ++rank;
  }
  m.resize(rank);
  return pivots;
}

// Kernel basis of a square matrix (row vectors x with x*m = 0 would be the
// left kernel; this computes the right kernel: m*v = 0, returned as row
// coordinate vectors).
inline std::vector<std::vector<u64>> kernel(std::vector<std::vector<u64>> m,
                                            u64 p) {
  u32 d = u32(m.size());
  auto pivots = rref(m, p);
  std::vector<bool> is_pivot(d, false);
  for (u32 c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (u32 free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(d, 0);
    v[free] = 1;
    for (u32 r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = sub(0, m[r][free], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial det(xI - A) over F_p via Hessenberg reduction;
// ascending coefficients, monic. Works for any degree relative to p (no
// divisions by integers).
inline std::vector<u64> charpoly(std::vector<std::vector<u64>> h, u64 p) {
  u32 d = u32(h.size());
  if (d == 0) return {1};
  // similarity reduction to upper Hessenberg
  for (u32 col = 0; col + 2 < d; ++col) {
    u32 piv = col + 1;
    while (piv < d && h[piv][col] == 0) ++piv;
    if (piv == d) continue;
    if (piv != col + 1) {
      std::swap(h[piv], h[col + 1]);
      for (u32 i = 0; i < d; ++i) std::swap(h[i][piv], h[i][col + 1]);
    }
    u64 pinv = inv(h[col + 1][col], p);
    for (u32 row = col + 2; row < d; ++row) {
      u64 f = mul(h[row][col], pinv, p);
      if (!f) continue;
      for (u32 j = 0; j < d; ++j)
        h[row][j] = sub(h[row][j], mul(f, h[col + 1][j], p), p);
      for (u32 i = 0; i < d; ++i)
        h[i][col + 1] = add(h[i][col + 1], mul(f, h[i][row], p), p);
    }
  }
  // p_k(x) = (x - h_kk) p_{k-1}(x) - sum_m h_mk (prod subdiag) p_{m-1}(x)
  std::vector<std::vector<u64>> pk;
  pk.push_back({1});
  for (u32 k = 1; k <= d; ++k) {
    std::vector<u64> cur(k + 1, 0);
    const auto& prev = pk[k - 1];
    u64 hkk = h[k - 1][k - 1];
    for (u32 i = 0; i < prev.size(); ++i) {
      cur[i + 1] = add(cur[i + 1], prev[i], p);
      cur[i] = sub(cur[i], mul(hkk, prev[i], p), p);
    }
    u64 subprod = 1;
    for (u32 m = k - 1; m >= 1; --m) {
      subprod = mul(subprod, h[m][m - 1], p);
      if (subprod == 0) break;
      u64 coeff = mul(h[m - 1][k - 1], subprod, p);
      if (coeff) {
        const auto& pm = pk[m - 1];
        for (u32 i = 0; i < pm.size(); ++i)
          cur[i] = sub(cur[i], mul(coeff, pm[i], p), p);
      }
    }
    pk.push_back(std::move(cur));
  }
  return pk[d];
}

inline u64 eval(const std::vector<u64>& f, u64 x, u64 p) {
  u64 acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = add(mul(acc, x, p), f[i], p);
  return acc;
}

}  // namespace fl

inline u64 primitive_root_mod(u64 ell) {
  if (ell == 2) return 1;
  u64 n = ell - 1;
  std::vector<u64> fs = detail::prime_factors(n);
  for (u64 c = 2; c < ell; ++c) {
    bool ok = true;
    for (u64 f : fs)
      if (pow_mod(c, n / f, ell) == 1) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  throw std::logic_error("no primitive root found");
}

// Smallest prime ell with ell = 1 mod exponent(G) and
// ell > 2*max(omega_max, isqrt(|G|)+1).
inline EllContext choose_ell(const GroupTable& G, u64 omega_max, u64 seed = 1) {
  EllContext ctx;
  ctx.exponent = group_exponent(G);
  ctx.omega_max = omega_max;
  ctx.seed = seed;
  u64 bound = 2 * std::max<u64>(omega_max, isqrt_u64(G.size()) + 1);
  for (u64 cand = 1 + ctx.exponent;; cand += ctx.exponent) {
    if (cand > (u64(1) << 31))
      throw CapError("no admissible ell below 2^31");
    if (cand > bound && is_prime_u64(cand)) {
      ctx.ell = cand;
      break;
    }
  }
  u64 g = primitive_root_mod(ctx.ell);
  ctx.zeta = pow_mod(g, (ctx.ell - 1) / ctx.exponent, ctx.ell);
  return ctx;
}

// Class function: one value per conjugacy class, in the table's class order.
using ClassFn = std::vector<u64>;

// a[i][j][k] = #{(x,y) in C_i x C_j : xy = z_k}, flattened (i*r+j)*r+k.
inline std::vector<u32> class_mult_coefficients(const GroupTable& G) {
  const auto& cc = G.classes();
  u32 r = cc.count();
  std::vector<u32> a(size_t(r) * r * r, 0);
  std::vector<Element> reps;
  for (u32 k = 0; k < r; ++k) reps.push_back(G.element(cc.reps[k]));
  for (u32 x = 0; x < G.size(); ++x) {
    Element ex = G.element(x);
    Element ix = G.inv_elem(ex);
    u32 i = cc.class_of[x];
    for (u32 k = 0; k < r; ++k) {
      u32 j = cc.class_of[G.index(G.mul_elems(ix, reps[k]))];
      ++a[(size_t(i) * r + j) * r + k];
    }
  }
  return a;
}

// Single class-multiplication matrix for class i, stored transposed:
// M[k][j] = a[i][j][k], reduced mod ell. Central characters are then row
// eigenvectors: (w M)_j = w_i w_j. Costs |C_i| * r group operations.
inline std::vector<std::vector<u64>> class_matrix(const GroupTable& G, u32 i,
                                                  u64 ell) {
  const auto& cc = G.classes();
  u32 r = cc.count();
  std::vector<std::vector<u64>> M(r, std::vector<u64>(r, 0));
  std::vector<Element> reps;
  for (u32 k = 0; k < r; ++k) reps.push_back(G.element(cc.reps[k]));
  for (u32 x = 0; x < G.size(); ++x) {
    if (cc.class_of[x] != i) continue;
    Element ix = G.inv_elem(G.element(x));
    for (u32 k = 0; k < r; ++k) {
      u32 j = cc.class_of[G.index(G.mul_elems(ix, reps[k]))];
      M[k][j] = fl::add(M[k][j], 1, ell);
    }
  }
  return M;
}

struct CharTable {
  const GroupTable* group = nullptr;
  EllContext ctx;
  std::vector<ClassFn> rows;  // sorted by (degree, lexicographic values)
  std::vector<u64> degrees;   // lifted integers
  u32 combos_used = 0;

  u32 count() const { return u32(rows.size()); }

  u32 trivial_row() const {
    for (u32 i = 0; i < rows.size(); ++i) {
      bool allone = degrees[i] == 1;
      for (u64 v : rows[i]) allone = allone && v == 1;
      if (allone) return i;
    }
    throw std::logic_error("trivial character missing");
  }
};

// (1/|G|) sum_j |C_j| f(C_j) g(C_j^{-1}) in F_ell.
inline u64 inner_product_mod(const GroupTable& G, u64 ell, const ClassFn& f,
                             const ClassFn& g) {
  const auto& cc = G.classes();
  u64 acc = 0;
  for (u32 j = 0; j < cc.count(); ++j) {
    u64 t = fl::mul(cc.sizes[j] % ell, f[j], ell);
    acc = fl::add(acc, fl::mul(t, g[cc.inverse_class[j]], ell), ell);
  }
  return fl::mul(acc, fl::inv(G.size() % ell, ell), ell);
}

// Lift to the least non-negative residue; the context guarantees true
// values below ell, and anything above omega_max is a context violation.
inline u64 inner_product_lifted(const GroupTable& G, const EllContext& ctx,
                                const ClassFn& f, const ClassFn& g) {
  u64 v = inner_product_mod(G, ctx.ell, f, g);
  if (v > ctx.omega_max)
    throw ContextViolation("inner product lift " + std::to_string(v) +
                           " exceeds omega_max " +
                           std::to_string(ctx.omega_max));
  return v;
}

inline CharTable character_table(const GroupTable& G, const EllContext& ctx) {
  const auto& cc = G.classes();
  const u32 r = cc.count();
  const u64 ell = ctx.ell;
  if ((ell - 1) % ctx.exponent != 0 || ctx.exponent != group_exponent(G))
    throw std::invalid_argument("context does not match the group");

  struct Subspace {
    std::vector<std::vector<u64>> basis;  // rref rows
    std::vector<u32> pivots;
  };
  std::vector<Subspace> spaces;
  {
    Subspace all;
    all.basis.assign(r, std::vector<u64>(r, 0));
    for (u32 i = 0; i < r; ++i) {
      all.basis[i][i] = 1;
      all.pivots.push_back(i);
    }
    spaces.push_back(std::move(all));
  }

  auto fully_split = [&]() {
    for (const auto& s : spaces)
      if (s.basis.size() > 1) return false;
    return true;
  };

  auto split_by = [&](const std::vector<std::vector<u64>>& A) {
    std::vector<Subspace> out;
    for (auto& s : spaces) {
      u32 d = u32(s.basis.size());
      if (d <= 1) {
        out.push_back(std::move(s));
        continue;
      }
      // restriction of A to the (invariant) subspace, in basis coordinates
      std::vector<std::vector<u64>> B(d, std::vector<u64>(d, 0));
      for (u32 bi = 0; bi < d; ++bi) {
        std::vector<u64> x(r, 0);
        for (u32 j = 0; j < r; ++j) {
          u64 bj = s.basis[bi][j];
          if (!bj) continue;
          for (u32 k = 0; k < r; ++k)
            x[k] = fl::add(x[k], fl::mul(bj, A[j][k], ell), ell);
        }
        for (u32 c = 0; c < d; ++c) B[bi][c] = x[s.pivots[c]];
        // invariance: x must reduce to zero against the basis
        for (u32 c = 0; c < d; ++c) {
          u64 f = B[bi][c];
          if (!f) continue;
          for (u32 j = 0; j < r; ++j)
            x[j] = fl::sub(x[j], fl::mul(f, s.basis[c][j], ell), ell);
        }
        for (u64 v : x)
          if (v) throw std::logic_error("subspace not invariant");
      }
      auto cp = fl::charpoly(B, ell);
      u32 split_total = 0;
      std::vector<Subspace> pieces;
      for (u64 lam = 0; lam < ell; ++lam) {
        if (fl::eval(cp, lam, ell) != 0) continue;
        auto shifted = B;
        for (u32 i = 0; i < d; ++i) shifted[i][i] = fl::sub(shifted[i][i], lam, ell);
        // row vectors v with v*B = lam*v: left kernel = right kernel of
        // the transpose
        std::vector<std::vector<u64>> tr(d, std::vector<u64>(d));
        for (u32 i = 0; i < d; ++i)
          for (u32 j = 0; j < d; ++j) tr[i][j] = shifted[j][i];
        auto ker = fl::kernel(std::move(tr), ell);
        if (ker.empty()) continue;
        Subspace piece;
        for (const auto& co : ker) {
          std::vector<u64> amb(r, 0);
          for (u32 c = 0; c < d; ++c) {
            if (!co[c]) continue;
            for (u32 j = 0; j < r; ++j)
              amb[j] = fl::add(amb[j], fl::mul(co[c], s.basis[c][j], ell), ell);
          }
          piece.basis.push_back(std::move(amb));
        }
        piece.pivots = fl::rref(piece.basis, ell);
        split_total += u32(piece.basis.size());
        pieces.push_back(std::move(piece));
      }
      if (split_total != d)
        throw std::logic_error("class matrix not diagonalizable mod ell");
      for (auto& p : pieces) out.push_back(std::move(p));
    }
    spaces = std::move(out);
  };

  // classes by increasing size (then index), identity skipped
  u32 id_class = cc.class_of[G.identity_index()];
  std::vector<u32> order;
  for (u32 i = 0; i < r; ++i)
    if (i != id_class) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
    if (cc.sizes[a] != cc.sizes[b]) return cc.sizes[a] < cc.sizes[b];
    return a < b;
  });

  u32 combos_used = 0;
  for (u32 i : order) {
    if (fully_split()) break;
    split_by(class_matrix(G, i, ell));
  }
  if (!fully_split()) {
    // fallback: seeded random combinations of all class matrices
    std::vector<std::vector<std::vector<u64>>> mats;
    for (u32 i : order) mats.push_back(class_matrix(G, i, ell));
    u64 state = ctx.seed ? ctx.seed : 1;
    auto next = [&state]() {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return state >> 16;
    };
    while (!fully_split()) {
      if (++combos_used > 64)
        throw std::logic_error("eigenspace splitting failed to separate");
      std::vector<std::vector<u64>> A(r, std::vector<u64>(r, 0));
      for (const auto& M : mats) {
        u64 c = next() % ell;
        if (!c) continue;
        for (u32 j = 0; j < r; ++j)
          for (u32 k = 0; k < r; ++k)
            A[j][k] = fl::add(A[j][k], fl::mul(c, M[j][k], ell), ell);
      }
      split_by(A);
    }
  }

  // each line is a central character; normalize at the identity class
  CharTable t;
  t.group = &G;
  t.ctx = ctx;
  t.combos_used = combos_used;
  if (spaces.size() != r) throw std::logic_error("wrong eigenvector count");
  std::vector<u64> csize_inv(r), csize_mod(r);
  for (u32 k = 0; k < r; ++k) {
    csize_mod[k] = cc.sizes[k] % ell;
    csize_inv[k] = fl::inv(csize_mod[k], ell);
  }
  u64 gmod = G.size() % ell;
  for (const auto& s : spaces) {
    const auto& v = s.basis[0];
    if (v[id_class] == 0)
      throw std::logic_error("central character vanishes at identity");
    u64 scale = fl::inv(v[id_class], ell);
    std::vector<u64> w(r);
    for (u32 k = 0; k < r; ++k) w[k] = fl::mul(v[k], scale, ell);
    // degree: d^2 = |G| / sum_k w_k w_{k*} / |C_k|
    u64 ssum = 0;
    for (u32 k = 0; k < r; ++k) {
      u64 term = fl::mul(w[k], w[cc.inverse_class[k]], ell);
      ssum = fl::add(ssum, fl::mul(term, csize_inv[k], ell), ell);
    }
    u64 d2 = fl::mul(gmod, fl::inv(ssum, ell), ell);
    u64 deg = 0;
    for (u64 s2 = 1; s2 < ell; ++s2)
      if (fl::mul(s2, s2, ell) == d2) {
        deg = std::min(s2, ell - s2);
        break;
      }
    if (!deg) throw std::logic_error("degree is not a square residue");
    ClassFn chi(r);
    for (u32 k = 0; k < r; ++k)
      chi[k] = fl::mul(fl::mul(deg % ell, w[k], ell), csize_inv[k], ell);
    t.rows.push_back(std::move(chi));
    t.degrees.push_back(deg);
  }

  // canonical order and global sanity
  std::vector<u32> perm(r);
  for (u32 i = 0; i < r; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](u32 a, u32 b) {
    if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
    return t.rows[a] < t.rows[b];
  });
  CharTable out;
  out.group = &G;
  out.ctx = ctx;
  out.combos_used = combos_used;
  for (u32 idx : perm) {
    out.rows.push_back(std::move(t.rows[idx]));
    out.degrees.push_back(t.degrees[idx]);
  }
  u64 sumsq = 0;
  for (u64 d : out.degrees) sumsq += d * d;
  if (sumsq != G.size())
    throw std::logic_error("degree squares do not sum to the group order");
  for (u32 i = 0; i < r; ++i)
    for (u32 j = 0; j < r; ++j) {
      u64 ip = inner_product_mod(G, ell, out.rows[i], out.rows[j]);
      if (ip != (i == j ? 1u : 0u))
        throw std::logic_error("orthogonality fails mod ell");
    }
  out.trivial_row();
  return out;
}

// Restriction to a subgroup: value at an H-class is the parent value at the
// class of the same element.
inline ClassFn restrict_fn(const GroupTable& parent, const ClassFn& f,
                           const GroupTable& H) {
  const auto& hc = H.classes();
  ClassFn out(hc.count());
  for (u32 c = 0; c < hc.count(); ++c) {
    auto idx = parent.find(H.key_of(H.element(hc.reps[c])));
    if (!idx)
      throw std::out_of_range("subgroup element not found in parent index");
    out[c] = f[parent.classes().class_of[*idx]];
  }
  return out;
}

// Induction from a subgroup: f^Gamma(g) = (1/|H|) sum over x in Gamma of
// f(x^{-1} g x) where defined.
inline ClassFn induce_fn(const GroupTable& parent, const GroupTable& H,
                         const ClassFn& f, u64 ell) {
  const auto& pc = parent.classes();
  const auto& hc = H.classes();
  ClassFn out(pc.count(), 0);
  u64 hinv = fl::inv(H.size() % ell, ell);
  for (u32 c = 0; c < pc.count(); ++c) {
    Element g = parent.element(pc.reps[c]);
    u64 acc = 0;
    for (u32 x = 0; x < parent.size(); ++x) {
      Element ex = parent.element(x);
      Element conj = parent.mul_elems(parent.inv_elem(ex),
                                      parent.mul_elems(g, ex));
      auto hidx = H.find(H.key_of(conj));
      if (!hidx) continue;
      acc = fl::add(acc, f[hc.class_of[*hidx]], ell);
    }
    out[c] = fl::mul(acc, hinv, ell);
  }
  return out;
}

// Character table of a product group as the tensor of factor tables. The
// factor tables must share the product's context. Column order follows the
// product table's own class order.
inline CharTable tensor_table(const GroupTable& P, const GroupTable& A,
                              const CharTable& TA, const GroupTable& B,
                              const CharTable& TB, bool check_orthogonality = true) {
  if (TA.ctx.ell != TB.ctx.ell)
    throw std::invalid_argument("factor tables use different ell");
  if (A.leaves().size() + B.leaves().size() != P.leaves().size())
    throw std::invalid_argument("leaf shapes do not compose");
  const auto& pc = P.classes();
  u32 r = pc.count();
  u32 ra = TA.count(), rb = TB.count();
  if (u64(ra) * rb != r) throw std::logic_error("product class count mismatch");
  // factor classes of each product class representative
  std::vector<u32> acls(r), bcls(r);
  size_t na = A.leaves().size();
  for (u32 c = 0; c < r; ++c) {
    Element e = P.element(pc.reps[c]);
    Element ea(e.begin(), e.begin() + na), eb(e.begin() + na, e.end());
    acls[c] = A.classes().class_of[A.index(ea)];
    bcls[c] = B.classes().class_of[B.index(eb)];
  }
  CharTable t;
  t.group = &P;
  t.ctx = TA.ctx;
  t.ctx.exponent = lcm_u64(TA.ctx.exponent, TB.ctx.exponent);
  u64 ell = t.ctx.ell;
  for (u32 i = 0; i < ra; ++i)
    for (u32 j = 0; j < rb; ++j) {
      ClassFn row(r);
      for (u32 c = 0; c < r; ++c)
        row[c] = fl::mul(TA.rows[i][acls[c]], TB.rows[j][bcls[c]], ell);
      t.rows.push_back(std::move(row));
      t.degrees.push_back(TA.degrees[i] * TB.degrees[j]);
    }
  std::vector<u32> perm(r);
  for (u32 i = 0; i < r; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](u32 a, u32 b) {
    if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
    return t.rows[a] < t.rows[b];
  });
  CharTable out;
  out.group = &P;
  out.ctx = t.ctx;
  std::vector<ClassFn> rows(r);
  std::vector<u64> degs(r);
  for (u32 i = 0; i < r; ++i) {
    rows[i] = std::move(t.rows[perm[i]]);
    degs[i] = t.degrees[perm[i]];
  }
  out.rows = std::move(rows);
  out.degrees = std::move(degs);
  u64 sumsq = 0;
  for (u64 d : out.degrees) sumsq += d * d;
  if (sumsq != P.size())
    throw std::logic_error("tensor degree squares do not sum to |P|");
  if (check_orthogonality) {
    for (u32 i = 0; i < r; ++i)
      for (u32 j = 0; j < r; ++j)
        if (inner_product_mod(P, ell, out.rows[i], out.rows[j]) !=
            (i == j ? 1u : 0u))
          throw std::logic_error("tensor table orthogonality fails");
  }
  return out;
}

}  // namespace sphmult
