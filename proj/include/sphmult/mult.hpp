#pragma once

// Permutation characters, exact multiplicity vectors, and the per-instance
// bound verdicts. Every count is an exact integer recovered from residues
// mod ell; division failures abort loudly because they signal action bugs,
// never numerics.

#include "chartable.hpp"
#include "scenario.hpp"

namespace sphmult {

struct MultiplicityVector {
  std::vector<u64> m;  // per row of the character table, in table order
  u64 mu_max = 0;
  u64 orbit_count = 0;
  u64 omega_size = 0;
};

// Value at each class = number of points fixed by the class representative,
// reduced mod ell; the identity value lifts to |Omega|.
inline ClassFn permutation_character(const GroupTable& G,
                                     const SpaceInstance& X, u64 ell) {
  const auto& cc = G.classes();
  ClassFn out(cc.count());
  for (u32 c = 0; c < cc.count(); ++c)
    out[c] = X.fixed_points(G.element(cc.reps[c])) % ell;
  return out;
}

// Same, but the group acts through a map into the space's own symmetry
// group (used for morphism-mediated actions).
inline ClassFn permutation_character_via(
    const GroupTable& G, const SpaceInstance& X, u64 ell,
    const std::function<Element(const Element&)>& through) {
  const auto& cc = G.classes();
  ClassFn out(cc.count());
  for (u32 c = 0; c < cc.count(); ++c)
    out[c] = X.fixed_points(through(G.element(cc.reps[c]))) % ell;
  return out;
}

// m_rho = <row, perm> for every row, lifted exactly. Requires
// ell > 2|Omega| so that every multiplicity (bounded by |Omega|) lifts
// uniquely from its residue.
inline MultiplicityVector multiplicities_from_character(
    const GroupTable& G, const CharTable& t, const ClassFn& perm,
    u64 omega_size) {
  const u64 ell = t.ctx.ell;
  if (ell <= 2 * omega_size)
    throw ContextViolation("ell " + std::to_string(ell) +
                           " too small for |Omega| " +
                           std::to_string(omega_size));
  MultiplicityVector v;
  v.omega_size = omega_size;
  u64 weighted = 0;
  for (u32 i = 0; i < t.count(); ++i) {
    u64 r = inner_product_mod(G, ell, t.rows[i], perm);
    if (r > omega_size)
      throw ContextViolation("multiplicity lift " + std::to_string(r) +
                             " exceeds |Omega|");
    v.m.push_back(r);
    v.mu_max = std::max(v.mu_max, r);
    weighted += r * t.degrees[i];
  }
  if (weighted != omega_size)
    throw std::logic_error("degree-weighted multiplicities miss |Omega|");
  // rank identity: <perm, perm> = sum of squared multiplicities, mod ell
  u64 sq = 0;
  for (u64 mi : v.m) sq = fl::add(sq, fl::mul(mi % ell, mi % ell, ell), ell);
  if (inner_product_mod(G, ell, perm, perm) != sq)
    throw std::logic_error("rank identity fails for the permutation module");
  v.orbit_count = v.m[t.trivial_row()];
  return v;
}

inline MultiplicityVector multiplicity_vector(const GroupTable& G,
                                              const SpaceInstance& X,
                                              const CharTable& t) {
  return multiplicities_from_character(
      G, t, permutation_character(G, X, t.ctx.ell), X.size());
}

// (1/|H|) sum of fixed-point counts; exact division enforced.
inline u64 burnside_orbits(const GroupTable& H, const SpaceInstance& X) {
  BigInt total = 0;
  for (u32 i = 0; i < H.size(); ++i)
    total += BigInt(X.fixed_points(H.element(i)));
  BigInt cnt = total / BigInt(H.size());
  if (cnt * BigInt(H.size()) != total)
    throw std::logic_error("non-integral orbit average: broken action");
  return cnt.convert_to<u64>();
}

// sum_{g in G} f(g) Fix(g) = |G| <f, perm> in F_ell. Both sides computed
// separately; equality is the trace identity for the permutation module.
inline bool frobenius_identity_check(const GroupTable& G,
                                     const SpaceInstance& X, const ClassFn& f,
                                     u64 ell) {
  const auto& cc = G.classes();
  ClassFn perm = permutation_character(G, X, ell);
  u64 lhs = 0;
  for (u32 c = 0; c < cc.count(); ++c) {
    u64 t = fl::mul(cc.sizes[c] % ell, f[c], ell);
    lhs = fl::add(lhs, fl::mul(t, perm[c], ell), ell);
  }
  u64 rhs = fl::mul(G.size() % ell, inner_product_mod(G, ell, f, perm), ell);
  return lhs == rhs;
}

}  // namespace sphmult
