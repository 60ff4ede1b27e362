#pragma once

// Orbit evaluation of rational functions at powers of a fixed point,
// eventual-period detection for exact value sequences, and per-extension
// multiplicity sequences for catalog scenarios.

#include <optional>

#include "cyclotomic.hpp"
#include "estimator.hpp"
#include "scenario.hpp"

namespace sphmult {

// multivariate polynomial: exponent vector -> coefficient
using MonomialMap = std::map<std::vector<u32>, Cyclo>;

struct RationalOrbitSpec {
  u32 vars = 0;
  MonomialMap num;
  MonomialMap den;
  std::vector<Cyclo> v;  // all coordinates nonzero
  u32 N = 6;             // horizon
};

namespace detail {

inline Cyclo eval_poly(const MonomialMap& p, const std::vector<Cyclo>& at) {
  Cyclo acc = Cyclo::from_rat(1, BigRat(0));
  for (const auto& [exps, coeff] : p) {
    if (exps.size() != at.size())
      throw std::invalid_argument("monomial arity mismatch");
    Cyclo term = coeff;
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) term = term * at[i].pow(exps[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

// phi(v), phi(v^2), ..., phi(v^N), each exact; refuses with the offending
// exponent if the denominator vanishes somewhere along the orbit.
inline std::vector<Cyclo> evaluate_orbit(const RationalOrbitSpec& spec) {
  std::vector<Cyclo> out;
  for (u32 n = 1; n <= spec.N; ++n) {
    std::vector<Cyclo> pt;
    for (const auto& c : spec.v) pt.push_back(c.pow(n));
    Cyclo den = detail::eval_poly(spec.den, pt);
    if (den.is_zero())
      throw std::domain_error("denominator vanishes at orbit step " +
                              std::to_string(n));
    out.push_back(detail::eval_poly(spec.num, pt) * den.inverse());
  }
  return out;
}

struct PeriodVerdict {
  std::optional<u32> period;
  u32 preperiod = 0;
};

// Smallest p with at most half the horizon, then the smallest preperiod s,
// such that values[i] = values[i+p] for all i >= s in range; at least one
// full period must be verified (s + 2p <= N). Exact comparisons only.
template <typename T>
PeriodVerdict detect_period(const std::vector<T>& values) {
  const u32 N = u32(values.size());
  for (u32 p = 1; 2 * p <= N; ++p) {
    u32 s = N - p;  // first index from which all comparisons hold
    while (s > 0 && values[s - 1 + p] == values[s - 1]) --s;
    if (s + 2 * p <= N) return {p, s};
  }
  return {std::nullopt, 0};
}

struct SequenceVerdict {
  std::vector<u64> values;
  bool is_integer_valued = true;
  std::optional<u32> period;
  u32 preperiod = 0;
  u64 limsup_witness = 0;  // max over the stabilized tail
  bool f1_le_limsup = false;
  std::string verdict;  // "periodic" or "inconclusive"
};

// Orbit counts of the full point group on X(F_{q^k}) for k = 1..K: the
// trivial-character multiplicity at every level, no tables required.
inline u64 level_orbit_count(const Scenario& s, FieldTower& tower, u32 k) {
  Instance inst = instantiate(s, tower, k, false);
  return orbit_count_partition(*inst.space,
                               standard_group_generators(inst.leaves));
}

// selector -1 = trivial character (orbit counts, any k); selector >= 0 =
// row index at each level's own table (small groups only: the table is
// rebuilt per level, and the row is matched by position).
inline SequenceVerdict multiplicity_sequence(const Scenario& s,
                                             FieldTower& tower, u32 K,
                                             int selector = -1, u32 seed = 1) {
  SequenceVerdict out;
  for (u32 k = 1; k <= K; ++k) {
    if (selector < 0) {
      out.values.push_back(level_orbit_count(s, tower, k));
    } else {
      Instance inst = instantiate(s, tower, k, true);
      EllContext ctx = choose_ell(*inst.group,
                                  std::max<u64>(inst.space->size(),
                                                inst.group->size()),
                                  seed);
      CharTable t = character_table(*inst.group, ctx);
      if (u32(selector) >= t.count())
        throw std::out_of_range("row selector beyond this level's table");
      auto v = multiplicity_vector(*inst.group, *inst.space, t);
      out.values.push_back(v.m[selector]);
    }
  }
  auto pv = detect_period(out.values);
  out.period = pv.period;
  out.preperiod = pv.preperiod;
  if (!pv.period) {
    out.verdict = "inconclusive";
    return out;
  }
  out.verdict = "periodic";
  for (u32 i = pv.preperiod; i < out.values.size(); ++i)
    out.limsup_witness = std::max(out.limsup_witness, out.values[i]);
  out.f1_le_limsup = out.values[0] <= out.limsup_witness;
  return out;
}

}  // namespace sphmult
