#pragma once

// Bound estimation over field extensions: exact point-count ratios
// r_k = #Y(F_{q^k}) / q^{k dim G}, their rounded limit, convergence at a
// rational tolerance, and a growth-based sphericity screen. All ratios are
// exact rationals; rounding happens once, at the end.

#include <map>

#include "mult.hpp"
#include "scenario.hpp"

namespace sphmult {

struct OrbitSample {
  u32 k = 0;
  u64 orbits = 0;
  std::string route;  // "partition" or "census"
};

struct ComponentEstimate {
  std::vector<BigRat> ratios;       // r_1 .. r_K
  std::vector<OrbitSample> trace;   // per-extension orbit counts
  BigRat tol;
  u32 K = 0;
  u64 c_hat = 0;
  bool converged = false;
  bool spherical = false;
};

namespace detail {

// Distribution of the triangular subgroup of the 2x2 group over the full
// group's conjugacy classes, paired with centralizer orders. Lets the
// translation-action orbit count run at field sizes where enumerating the
// group itself would blow the space cap.
inline BigInt paired_triangular_fix_sum(const BigInt& Q) {
  const BigInt one(1);
  BigInt sum = 0;
  // split semisimple, distinct eigenvalues: (Q-1)(Q-2)/2 classes, 2Q
  // triangular members each, centralizer (Q-1)^2
  sum += (Q - 1) * (Q - 2) / 2 * (2 * Q) * (2 * Q) * ((Q - 1) * (Q - 1));
  // central: Q-1 classes, one member, centralizer is the whole group
  sum += (Q - 1) * ((Q * Q - 1) * (Q * Q - Q));
  // nontrivial Jordan block: Q-1 classes, Q-1 members, centralizer Q(Q-1)
  sum += (Q - 1) * ((Q - 1) * (Q - 1)) * (Q * (Q - 1));
  return sum;
}

inline bool is_gl2_pair_case(const Scenario& s) {
  return s.space.kind == SpaceDescriptor::Kind::GroupCase &&
         s.group.kind == GroupDescriptor::Kind::Product &&
         s.group.factors.size() == 2 &&
         s.group.factors[0].kind == GroupDescriptor::Kind::GL &&
         s.group.factors[0].n == 2;
}

}  // namespace detail

// Orbit count of the distinguished triangular subgroup on X(F_{q^k}).
// Partition refinement over the enumerated space when it fits the cap;
// for the paired 2x2 translation case past the cap, a class-census sum
// divided by the subgroup order (exactness enforced).
inline OrbitSample borel_orbit_count(const Scenario& s, FieldTower& tower,
                                     u32 k) {
  OrbitSample out;
  out.k = k;
  if (detail::is_gl2_pair_case(s)) {
    BigInt Q = pow_big(BigInt(s.p), u32(s.e * k));
    BigInt space_size = (Q * Q - 1) * (Q * Q - Q);
    if (space_size > kSpaceCap) {
      BigInt fs = detail::paired_triangular_fix_sum(Q);
      BigInt bb = borel_order(GroupDescriptor::gl(2), Q);
      bb *= bb;
      BigInt orb = fs / bb;
      if (orb * bb != fs)
        throw std::logic_error("census fix sum not divisible by pair order");
      out.orbits = orb.convert_to<u64>();
      out.route = "census";
      return out;
    }
  }
  Instance inst = instantiate(s, tower, k, false);
  auto gens = borel_generators(inst.leaves);
  out.orbits = orbit_count_partition(*inst.space, gens);
  out.route = "partition";
  return out;
}

// #Y(F_{q^k}) computed from the flag side: (number of full flags) times the
// total fixed-point count over the triangular subgroup, the latter swept
// element by element. Fixed counts are memoized per conjugacy class when
// the group has a single matrix leaf, which keeps large sweeps affordable.
inline BigInt incidence_count(const Scenario& s, FieldTower& tower, u32 k,
                              u64 sweep_cap = 20'000'000) {
  Instance inst = instantiate(s, tower, k, false);
  const SpaceInstance& X = *inst.space;
  const BigInt Q(inst.Q);

  const bool cacheable = inst.leaves.size() == 1 &&
                         (inst.leaves[0].kind == GroupDescriptor::Kind::GL ||
                          inst.leaves[0].kind == GroupDescriptor::Kind::SL);
  MatOps ops(cacheable ? *inst.leaves[0].F : tower.field(1));
  std::map<ConjClass, u64> cache;

  BigInt fix_sum = 0;
  for_each_borel(inst.leaves, sweep_cap, [&](const Element& b) {
    u64 f;
    if (cacheable) {
      ConjClass c = ops.classify(b[0]);
      auto it = cache.find(c);
      if (it == cache.end())
        it = cache.emplace(c, X.fixed_points(b)).first;
      f = it->second;
    } else {
      f = X.fixed_points(b);
    }
    fix_sum += BigInt(f);
  });
  return flag_count(inst.gdesc, Q) * fix_sum;
}

// r_k for k = 1..K plus the rounded limit and convergence verdict:
// converged when the last ratio sits within tol of its nearest integer and
// the previous ratio rounds to the same integer.
inline ComponentEstimate component_estimate(const Scenario& s,
                                            FieldTower& tower, u32 K,
                                            BigRat tol = BigRat(1, 8)) {
  if (K < 2) throw std::invalid_argument("need at least two extensions");
  ComponentEstimate est;
  est.K = K;
  est.tol = tol;
  const u32 dim = s.group.dim();
  for (u32 k = 1; k <= K; ++k) {
    OrbitSample smp = borel_orbit_count(s, tower, k);
    BigInt Q = pow_big(BigInt(s.p), u32(s.e * k));
    BigRat r = BigRat(group_order(s.group, Q) * BigInt(smp.orbits)) /
               BigRat(pow_big(Q, dim));
    est.trace.push_back(smp);
    est.ratios.push_back(r);
  }
  const BigRat& last = est.ratios.back();
  const BigRat& prev = est.ratios[K - 2];
  BigInt rounded = round_rat(last);
  est.c_hat = rounded.convert_to<u64>();
  BigRat dev = last - BigRat(rounded);
  if (dev < 0) dev = -dev;
  est.converged = dev < tol && round_rat(prev) == rounded;

  // sphericity screen: boundedness of the ratio sequence, read off the tail
  // (early steps can legitimately jump when dim G is large and q small),
  // plus stabilization of the orbit counts
  est.spherical = last < BigRat(s.q) * prev &&
                  est.trace[K - 1].orbits == est.trace[K - 2].orbits;
  return est;
}

}  // namespace sphmult
