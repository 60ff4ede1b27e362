#include <catch2/catch_amalgamated.hpp>

#include "sphmult/estimator.hpp"

using namespace sphmult;

namespace {

Scenario flag_at(u32 q, u32 K) {
  return Scenario::make("gl2_flag", GroupDescriptor::gl(2),
                        SpaceDescriptor::flag(), q, K);
}

BigRat flag_ratio_closed_form(u32 q, u32 k) {
  BigInt Q = pow_big(BigInt(q), k);
  BigRat r(2);
  r *= BigRat(Q - 1) / BigRat(Q);
  r *= BigRat(Q * Q - 1) / BigRat(Q * Q);
  return r;
}

}  // namespace

TEST_CASE("flag ratios match the closed form exactly") {
  struct Case {
    u32 q, K;
  } cases[] = {{2, 6}, {3, 4}, {5, 3}};
  for (auto [q, K] : cases) {
    FieldTower tower(q);
    auto est = component_estimate(flag_at(q, K), tower, K);
    REQUIRE(est.ratios.size() == K);
    for (u32 k = 1; k <= K; ++k)
      REQUIRE(est.ratios[k - 1] == flag_ratio_closed_form(q, k));
    REQUIRE(est.c_hat == 2);
    REQUIRE(est.converged);
    REQUIRE(est.spherical);
    for (const auto& smp : est.trace) REQUIRE(smp.orbits == 2);
  }
}

TEST_CASE("one-point space estimates to one for every group shape") {
  struct Case {
    const char* name;
    GroupDescriptor d;
    u32 q, K;
  } cases[] = {
      {"gl2", GroupDescriptor::gl(2), 2, 6},
      {"gl3", GroupDescriptor::gl(3), 2, 4},
      {"sl2", GroupDescriptor::sl(2), 3, 3},
      {"torus_pair",
       GroupDescriptor::product({GroupDescriptor::gl(1), GroupDescriptor::gl(1)}),
       5, 3},
      {"twisted", GroupDescriptor::weil_gl(2, 2), 2, 3},
  };
  for (auto& c : cases) {
    FieldTower tower(c.q == 4 ? 2 : c.q);
    Scenario s =
        Scenario::make(c.name, c.d, SpaceDescriptor::point(), c.q, c.K);
    auto est = component_estimate(s, tower, c.K);
    REQUIRE(est.c_hat == 1);
    REQUIRE(est.converged);
    REQUIRE(est.spherical);
    for (const auto& smp : est.trace) REQUIRE(smp.orbits == 1);
  }
}

TEST_CASE("paired lines and torus cosets stabilize at five and three") {
  FieldTower tower(3);
  Scenario pl = Scenario::make("gl2_p1xp1", GroupDescriptor::gl(2),
                               SpaceDescriptor::projline_pair(), 3, 4);
  auto est = component_estimate(pl, tower, 4);
  REQUIRE(est.c_hat == 5);
  REQUIRE(est.converged);
  REQUIRE(est.spherical);

  Scenario tc = Scenario::make("gl2_torus_coset", GroupDescriptor::gl(2),
                               SpaceDescriptor::torus_coset(), 3, 4);
  auto est2 = component_estimate(tc, tower, 4);
  REQUIRE(est2.c_hat == 3);
  REQUIRE(est2.converged);
  REQUIRE(est2.spherical);
}

TEST_CASE("translation pair case: census agrees with the partition route") {
  Scenario s = Scenario::make(
      "gl2_group_case",
      GroupDescriptor::product({GroupDescriptor::gl(2), GroupDescriptor::gl(2)}),
      SpaceDescriptor::group_case(), 2, 6);
  FieldTower tower(2);
  for (u32 k = 1; k <= 2; ++k) {
    auto smp = borel_orbit_count(s, tower, k);
    REQUIRE(smp.route == "partition");
    BigInt Q = pow_big(BigInt(2), k);
    BigInt fs = detail::paired_triangular_fix_sum(Q);
    BigInt bb = borel_order(GroupDescriptor::gl(2), Q);
    REQUIRE(fs == BigInt(smp.orbits) * bb * bb);
    REQUIRE(smp.orbits == 2);
  }
  // past the enumeration cap the census takes over
  auto big = borel_orbit_count(s, tower, 6);
  REQUIRE(big.route == "census");
  REQUIRE(big.orbits == 2);

  // ratios at a short horizon: right limit, not yet within tolerance
  auto est = component_estimate(s, tower, 4);
  REQUIRE(est.c_hat == 2);
  REQUIRE_FALSE(est.converged);
  REQUIRE(est.spherical);
}

TEST_CASE("full flags and planes of the 3x3 group estimate to 6 and 3") {
  FieldTower tower(2);
  Scenario fl = Scenario::make("gl3_flag", GroupDescriptor::gl(3),
                               SpaceDescriptor::flag(), 2, 6);
  auto est = component_estimate(fl, tower, 6);
  REQUIRE(est.c_hat == 6);
  REQUIRE(est.converged);
  REQUIRE(est.spherical);
  for (const auto& smp : est.trace) REQUIRE(smp.orbits == 6);

  Scenario gr = Scenario::make("gl3_grassmann2", GroupDescriptor::gl(3),
                               SpaceDescriptor::grassmannian(2), 2, 6);
  auto est2 = component_estimate(gr, tower, 6);
  REQUIRE(est2.c_hat == 3);
  REQUIRE(est2.converged);
  REQUIRE(est2.spherical);
}

TEST_CASE("trivial affine action is flagged as not tame") {
  Scenario s = Scenario::make("ctrl_affine", GroupDescriptor::gl(1),
                              SpaceDescriptor::affine_trivial(), 3, 3);
  FieldTower tower(3);
  auto est = component_estimate(s, tower, 3);
  REQUIRE_FALSE(est.spherical);
  REQUIRE_FALSE(est.converged);
  // ratio grows like Q(Q-1)
  REQUIRE(est.ratios[0] == BigRat(6));
  REQUIRE(est.ratios[1] == BigRat(72));
}

TEST_CASE("rebasing to a power of the field gives the same ratios") {
  FieldTower t3(3);
  auto base = component_estimate(flag_at(3, 4), t3, 4);
  auto rebased = component_estimate(flag_at(9, 2), t3, 2);
  REQUIRE(rebased.ratios[0] == base.ratios[1]);
  REQUIRE(rebased.ratios[1] == base.ratios[3]);

  FieldTower t2(2);
  Scenario p4 = Scenario::make("gl2_p1xp1", GroupDescriptor::gl(2),
                               SpaceDescriptor::projline_pair(), 4, 2);
  Scenario p2 = Scenario::make("gl2_p1xp1", GroupDescriptor::gl(2),
                               SpaceDescriptor::projline_pair(), 2, 4);
  auto r4 = component_estimate(p4, t2, 2);
  auto r2 = component_estimate(p2, t2, 4);
  REQUIRE(r4.ratios[0] == r2.ratios[1]);
  REQUIRE(r4.ratios[1] == r2.ratios[3]);
}

TEST_CASE("incidence route equals order times orbit count on the catalog") {
  for (const auto& s : catalog()) {
    FieldTower tower(s.p);
    for (u32 k = 1; k <= 2; ++k) {
      BigInt lhs = incidence_count(s, tower, k);
      auto smp = borel_orbit_count(s, tower, k);
      BigInt Q = pow_big(BigInt(s.p), u32(s.e * k));
      REQUIRE(lhs == group_order(s.group, Q) * BigInt(smp.orbits));
    }
  }
  // one deeper extension on the flag preset
  FieldTower t3(3);
  Scenario fl = flag_at(3, 4);
  REQUIRE(incidence_count(fl, t3, 3) ==
          group_order(fl.group, BigInt(27)) * BigInt(2));
}

TEST_CASE("short horizons are rejected") {
  FieldTower tower(3);
  REQUIRE_THROWS_AS(component_estimate(flag_at(3, 4), tower, 1),
                    std::invalid_argument);
}
