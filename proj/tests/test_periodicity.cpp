#include <catch2/catch_amalgamated.hpp>

#include "sphmult/periodicity.hpp"

using namespace sphmult;

namespace {

Cyclo Q(i64 n, i64 d = 1) { return Cyclo::from_rat(1, BigRat(n, d)); }

MonomialMap poly(std::initializer_list<std::pair<std::vector<u32>, Cyclo>> t) {
  MonomialMap m;
  for (auto& [e, c] : t) m.emplace(e, c);
  return m;
}

}  // namespace

TEST_CASE("cyclotomic field arithmetic is exact") {
  // z of order 5: minimal polynomial has degree 4
  Cyclo z = Cyclo::zeta(5);
  REQUIRE(z.pow(5) == Q(1));
  REQUIRE(z.pow(4) * z == Q(1));
  REQUIRE_FALSE(z.pow(3) == Q(1));
  // 1 + z + z^2 + z^3 + z^4 = 0
  Cyclo s = Q(1) + z + z.pow(2) + z.pow(3) + z.pow(4);
  REQUIRE(s.is_zero());
  // inverse round-trips
  Cyclo a = z + Q(2);
  REQUIRE(a * a.inverse() == Q(1));
  // gaussian unit
  Cyclo i = Cyclo::zeta(4);
  REQUIRE(i * i == Q(-1));
  REQUIRE((Q(1) + i) * (Q(1) - i) == Q(2));
  REQUIRE_THROWS_AS(Cyclo(5, {BigRat(0)}).inverse(), std::domain_error);
}

TEST_CASE("orbit evaluation matches hand values") {
  // phi = x at v = -1
  RationalOrbitSpec sx;
  sx.vars = 1;
  sx.num = poly({{{1}, Q(1)}});
  sx.den = poly({{{0}, Q(1)}});
  sx.v = {Cyclo::zeta(2)};
  sx.N = 4;
  auto vals = evaluate_orbit(sx);
  REQUIRE(vals == std::vector<Cyclo>{Q(-1), Q(1), Q(-1), Q(1)});

  // phi = (x + x^2)/x^2 at v = -1: 0, 2, 0, 2
  RationalOrbitSpec s2;
  s2.vars = 1;
  s2.num = poly({{{1}, Q(1)}, {{2}, Q(1)}});
  s2.den = poly({{{2}, Q(1)}});
  s2.v = {Cyclo::zeta(2)};
  s2.N = 4;
  auto v2 = evaluate_orbit(s2);
  REQUIRE(v2 == std::vector<Cyclo>{Q(0), Q(2), Q(0), Q(2)});
  auto pv = detect_period(v2);
  REQUIRE(pv.period);
  REQUIRE(*pv.period == 2);
  REQUIRE(pv.preperiod == 0);

  // phi = (x+y)/(xy) at (2,3): 5/6, 13/36, 35/216
  RationalOrbitSpec sr;
  sr.vars = 2;
  sr.num = poly({{{1, 0}, Q(1)}, {{0, 1}, Q(1)}});
  sr.den = poly({{{1, 1}, Q(1)}});
  sr.v = {Q(2), Q(3)};
  sr.N = 3;
  auto v3 = evaluate_orbit(sr);
  REQUIRE(v3 == std::vector<Cyclo>{Q(5, 6), Q(13, 36), Q(35, 216)});
}

TEST_CASE("vanishing denominators name the offending step") {
  RationalOrbitSpec s;
  s.vars = 1;
  s.num = poly({{{0}, Q(1)}});
  s.den = poly({{{1}, Q(1)}, {{0}, Q(-1)}});  // x - 1, zero at n = 2
  s.v = {Cyclo::zeta(2)};
  s.N = 4;
  try {
    evaluate_orbit(s);
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    REQUIRE(std::string(e.what()).find("step 2") != std::string::npos);
  }
}

TEST_CASE("period detector finds the least admissible period") {
  using V = std::vector<u64>;
  auto p = detect_period(V{7, 7, 7, 7});
  REQUIRE((p.period && *p.period == 1 && p.preperiod == 0));
  p = detect_period(V{1, 2, 1, 2, 1, 2});
  REQUIRE((p.period && *p.period == 2 && p.preperiod == 0));
  p = detect_period(V{9, 1, 2, 1, 2, 1, 2});
  REQUIRE((p.period && *p.period == 2 && p.preperiod == 1));
  p = detect_period(V{1, 1, 2, 1, 1, 2});
  REQUIRE((p.period && *p.period == 3 && p.preperiod == 0));
  REQUIRE_FALSE(detect_period(V{1, 2, 3, 4, 5, 6}).period);
  REQUIRE_FALSE(detect_period(V{1}).period);
}

TEST_CASE("random root-of-unity orbits have period dividing the lcm") {
  u64 state = 20240817;
  auto rnd = [&](u64 mod) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 33) % mod;
  };
  u32 tested = 0;
  while (tested < 24) {
    u32 vars = 1 + u32(rnd(2));
    std::vector<u32> orders;
    u32 L = 1;
    for (u32 i = 0; i < vars; ++i) {
      orders.push_back(1 + u32(rnd(6)));
      L = u32(lcm_u64(L, orders.back()));
    }
    u32 M = L;
    RationalOrbitSpec s;
    s.vars = vars;
    for (u32 i = 0; i < vars; ++i)
      s.v.push_back(Cyclo::zeta(M).pow(M / orders[i]));
    // up to three random monomials with coefficients in a small pool
    u32 terms = 1 + u32(rnd(3));
    for (u32 t = 0; t < terms; ++t) {
      std::vector<u32> e;
      for (u32 i = 0; i < vars; ++i) e.push_back(u32(rnd(4)));
      Cyclo coeff;
      switch (rnd(4)) {
        case 0: coeff = Q(1); break;
        case 1: coeff = Q(-1); break;
        case 2: coeff = Q(2); break;
        default: coeff = Cyclo::zeta(M); break;
      }
      auto [it, fresh] = s.num.emplace(e, coeff);
      if (!fresh) it->second = it->second + coeff;
    }
    // monomial denominator: never vanishes at roots of unity
    std::vector<u32> de;
    for (u32 i = 0; i < vars; ++i) de.push_back(u32(rnd(3)));
    s.den = poly({{de, Q(1)}});
    s.N = 2 * L + 4;
    auto vals = evaluate_orbit(s);
    auto pv = detect_period(vals);
    REQUIRE(pv.period);
    REQUIRE(L % *pv.period == 0);
    ++tested;
  }
}

TEST_CASE("catalog orbit-count sequences are flat") {
  struct Case {
    Scenario s;
    u64 expect;
  };
  std::vector<Case> cases;
  cases.push_back({Scenario::make("gl2_flag", GroupDescriptor::gl(2),
                                  SpaceDescriptor::flag(), 3, 4),
                   1});
  cases.push_back({Scenario::make("gl2_p1xp1", GroupDescriptor::gl(2),
                                  SpaceDescriptor::projline_pair(), 3, 4),
                   2});
  cases.push_back({Scenario::make("gln_point", GroupDescriptor::gl(2),
                                  SpaceDescriptor::point(), 2, 6),
                   1});
  for (auto& c : cases) {
    FieldTower tower(c.s.p);
    auto verdict = multiplicity_sequence(c.s, tower, 4);
    REQUIRE(verdict.verdict == "periodic");
    REQUIRE(verdict.values ==
            std::vector<u64>(4, c.expect));
    REQUIRE(*verdict.period == 1);
    REQUIRE(verdict.preperiod == 0);
    REQUIRE(verdict.f1_le_limsup);
    REQUIRE(verdict.limsup_witness == c.expect);
  }
}

TEST_CASE("short horizons stay inconclusive") {
  Scenario s = Scenario::make("gl2_flag", GroupDescriptor::gl(2),
                              SpaceDescriptor::flag(), 3, 4);
  FieldTower tower(3);
  auto verdict = multiplicity_sequence(s, tower, 1);
  REQUIRE(verdict.verdict == "inconclusive");
  REQUIRE_FALSE(verdict.period);
}

TEST_CASE("row selectors pull per-level multiplicities") {
  Scenario s = Scenario::make("gl1_regular", GroupDescriptor::gl(1),
                              SpaceDescriptor::regular(), 5, 2);
  FieldTower tower(5);
  // the regular module contains each linear character exactly once
  auto verdict = multiplicity_sequence(s, tower, 2, 2);
  REQUIRE(verdict.values == std::vector<u64>{1, 1});
  REQUIRE(verdict.verdict == "periodic");
  REQUIRE_THROWS_AS(multiplicity_sequence(s, tower, 2, 100),
                    std::out_of_range);
}
