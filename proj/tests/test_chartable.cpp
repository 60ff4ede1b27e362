#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "sphmult/chartable.hpp"

using namespace sphmult;

namespace {

GroupTable build(const GroupDescriptor& d, FieldTower& t, u32 deg = 1) {
  return GroupTable::build(d, t, deg);
}

EllContext manual_ctx(const GroupTable& G, u64 ell, u64 omega, u64 seed = 1) {
  EllContext c;
  c.ell = ell;
  c.exponent = group_exponent(G);
  c.omega_max = omega;
  c.seed = seed;
  c.zeta = pow_mod(primitive_root_mod(ell), (ell - 1) / c.exponent, ell);
  return c;
}

std::vector<u64> sorted_degrees(const CharTable& t) {
  auto d = t.degrees;
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST_CASE("modulus choice matches the frozen examples") {
  FieldTower t2(2), t3(3);
  auto gl22 = build(GroupDescriptor::gl(2), t2);
  auto ctx = choose_ell(gl22, 10);
  REQUIRE(ctx.exponent == 6);
  REQUIRE(ctx.ell == 31);
  // zeta has exact order 6
  REQUIRE(pow_mod(ctx.zeta, 6, 31) == 1);
  REQUIRE(pow_mod(ctx.zeta, 2, 31) != 1);
  REQUIRE(pow_mod(ctx.zeta, 3, 31) != 1);

  auto triv = build(GroupDescriptor::mu(1), t3);
  REQUIRE(triv.size() == 1);
  auto ctxt = choose_ell(triv, 1);
  REQUIRE(ctxt.exponent == 1);
  REQUIRE(ctxt.ell == 5);

  auto gl23 = build(GroupDescriptor::gl(2), t3);
  auto ctx3 = choose_ell(gl23, 4);
  REQUIRE(ctx3.exponent == 24);
  REQUIRE(ctx3.ell == 73);
  // the modulus never divides the group order
  REQUIRE(gl22.size() % ctx.ell != 0);
  REQUIRE(gl23.size() % ctx3.ell != 0);
}

TEST_CASE("class multiplication tensor agrees with brute force") {
  FieldTower t2(2);
  auto G = build(GroupDescriptor::gl(2), t2);
  const auto& cc = G.classes();
  u32 r = cc.count();
  auto a = class_mult_coefficients(G);

  std::vector<u32> brute(size_t(r) * r * r, 0);
  std::map<u32, u32> rep_slot;
  for (u32 k = 0; k < r; ++k) rep_slot[cc.reps[k]] = k;
  for (u32 x = 0; x < G.size(); ++x)
    for (u32 y = 0; y < G.size(); ++y) {
      auto it = rep_slot.find(G.mul(x, y));
      if (it == rep_slot.end()) continue;
      ++brute[(size_t(cc.class_of[x]) * r + cc.class_of[y]) * r + it->second];
    }
  REQUIRE(a == brute);
}

TEST_CASE("class multiplication tensor row sums count pairs") {
  FieldTower t3(3);
  auto G = build(GroupDescriptor::gl(2), t3);
  const auto& cc = G.classes();
  u32 r = cc.count();
  auto a = class_mult_coefficients(G);
  for (u32 i = 0; i < r; ++i)
    for (u32 j = 0; j < r; ++j) {
      u64 total = 0;
      for (u32 k = 0; k < r; ++k)
        total += u64(a[(size_t(i) * r + j) * r + k]) * cc.sizes[k];
      REQUIRE(total == cc.sizes[i] * cc.sizes[j]);
    }
}

TEST_CASE("character degrees of the small classical groups") {
  FieldTower t2(2), t3(3);

  auto gl22 = build(GroupDescriptor::gl(2), t2);
  auto t_gl22 = character_table(gl22, choose_ell(gl22, 10));
  REQUIRE(sorted_degrees(t_gl22) == std::vector<u64>{1, 1, 2});
  REQUIRE(t_gl22.combos_used == 0);

  auto sl23 = build(GroupDescriptor::sl(2), t3);
  auto t_sl23 = character_table(sl23, choose_ell(sl23, 6));
  REQUIRE(sorted_degrees(t_sl23) == std::vector<u64>{1, 1, 1, 2, 2, 2, 3});

  auto gl23 = build(GroupDescriptor::gl(2), t3);
  auto t_gl23 = character_table(gl23, choose_ell(gl23, 4));
  REQUIRE(sorted_degrees(t_gl23) ==
          std::vector<u64>{1, 1, 2, 2, 2, 3, 3, 4});

  auto gl32 = build(GroupDescriptor::gl(3), t2);
  auto t_gl32 = character_table(gl32, choose_ell(gl32, 10));
  REQUIRE(t_gl32.ctx.ell == 337);
  REQUIRE(sorted_degrees(t_gl32) == std::vector<u64>{1, 3, 3, 6, 7, 8});

  auto gl24 = build(GroupDescriptor::gl(2), t2, 2);
  auto t_gl24 = character_table(gl24, choose_ell(gl24, 10));
  REQUIRE(sorted_degrees(t_gl24) ==
          std::vector<u64>{1, 1, 1, 3, 3, 3, 3, 3, 3, 4, 4, 4, 5, 5, 5});
}

TEST_CASE("abelian product group has only linear characters") {
  FieldTower t5(5);
  auto G = build(GroupDescriptor::product({GroupDescriptor::gl(1),
                                           GroupDescriptor::gl(1)}),
                 t5);
  REQUIRE(G.size() == 16);
  auto tab = character_table(G, choose_ell(G, 16));
  REQUIRE(tab.count() == 16);
  for (u64 d : tab.degrees) REQUIRE(d == 1);
}

TEST_CASE("degrees are stable across two admissible moduli") {
  FieldTower t3(3);
  auto G = build(GroupDescriptor::gl(2), t3);
  auto t73 = character_table(G, manual_ctx(G, 73, 4));
  auto t97 = character_table(G, manual_ctx(G, 97, 4));
  REQUIRE(t73.degrees == t97.degrees);
  REQUIRE(t73.trivial_row() < t73.count());
  REQUIRE(t97.trivial_row() < t97.count());
}

TEST_CASE("inner products are orthonormal and guard their lift") {
  FieldTower t3(3);
  auto G = build(GroupDescriptor::gl(2), t3);
  auto ctx = choose_ell(G, 4);
  auto tab = character_table(G, ctx);
  for (u32 i = 0; i < tab.count(); ++i)
    for (u32 j = 0; j < tab.count(); ++j) {
      u64 ip = inner_product_lifted(G, ctx, tab.rows[i], tab.rows[j]);
      REQUIRE(ip == (i == j ? 1u : 0u));
    }
  // a lift beyond the declared bound is a context violation
  ClassFn big = tab.rows[0];
  for (auto& v : big) v = fl::mul(v, 20, ctx.ell);
  REQUIRE_THROWS_AS(inner_product_lifted(G, ctx, big, big),
                    ContextViolation);
}

TEST_CASE("induction from a Borel subgroup counts the flag variety") {
  FieldTower t3(3);
  auto G = build(GroupDescriptor::gl(2), t3);
  auto B = G.distinguished_subgroup(GroupTable::Which::Borel);
  u64 ell = 73;
  ClassFn trivB(B.classes().count(), 1);
  auto ind = induce_fn(G, B, trivB, ell);
  u32 idc = G.classes().class_of[G.identity_index()];
  REQUIRE(ind[idc] == 4);  // [G : B]
  // restriction of the trivial character is trivial
  auto tab = character_table(G, manual_ctx(G, ell, 4));
  auto res = restrict_fn(G, tab.rows[tab.trivial_row()], B);
  REQUIRE(res == trivB);
}

TEST_CASE("induction and restriction are adjoint") {
  FieldTower t3(3);
  auto G = build(GroupDescriptor::gl(2), t3);
  auto H = G.distinguished_subgroup(GroupTable::Which::Det1);
  REQUIRE(H.size() == 24);
  u64 ell = 73;  // admissible for both: 72 is divisible by both exponents
  auto tg = character_table(G, manual_ctx(G, ell, 4));
  auto th = character_table(H, manual_ctx(H, ell, 4));
  std::vector<ClassFn> induced;
  for (const auto& f : th.rows) induced.push_back(induce_fn(G, H, f, ell));
  for (u32 i = 0; i < th.count(); ++i)
    for (u32 j = 0; j < tg.count(); ++j) {
      u64 lhs = inner_product_mod(G, ell, induced[i], tg.rows[j]);
      u64 rhs =
          inner_product_mod(H, ell, th.rows[i], restrict_fn(G, tg.rows[j], H));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("restriction rejects elements missing from the parent") {
  FieldTower t2(2), t3(3);
  auto small = build(GroupDescriptor::gl(2), t2);
  auto big = build(GroupDescriptor::gl(2), t3);
  ClassFn f(small.classes().count(), 1);
  // most classes of the bigger group have entries outside the small field
  REQUIRE_THROWS_AS(restrict_fn(small, f, big), std::out_of_range);
}

TEST_CASE("product table is the tensor of factor tables") {
  FieldTower t2(2);
  auto A = build(GroupDescriptor::gl(2), t2);
  auto P = build(GroupDescriptor::product({GroupDescriptor::gl(2),
                                           GroupDescriptor::gl(2)}),
                 t2);
  REQUIRE(P.size() == 36);
  auto ctxA = choose_ell(A, 10);
  auto ctxP = choose_ell(P, 10);
  REQUIRE(ctxA.ell == ctxP.ell);  // same exponent, comparable bound
  auto TA = character_table(A, ctxA);
  auto direct = character_table(P, ctxP);
  auto tensored = tensor_table(P, A, TA, A, TA);
  REQUIRE(tensored.degrees == direct.degrees);
  REQUIRE(tensored.rows == direct.rows);
  REQUIRE(sorted_degrees(tensored) ==
          std::vector<u64>{1, 1, 1, 1, 2, 2, 2, 2, 4});
}
