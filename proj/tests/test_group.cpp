#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sphmult/group.hpp"

using namespace sphmult;

namespace {

std::vector<u64> sorted_sizes(const GroupTable& G) {
  auto s = G.classes().sizes;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("orders of enumerated groups match closed forms") {
  FieldTower T2(2), T3(3), T5(5);
  CHECK(GroupTable::build(GroupDescriptor::gl(2), T2, 1).size() == 6);
  CHECK(GroupTable::build(GroupDescriptor::gl(2), T3, 1).size() == 48);
  CHECK(GroupTable::build(GroupDescriptor::sl(2), T3, 1).size() == 24);
  CHECK(GroupTable::build(GroupDescriptor::gl(2), T2, 2).size() == 180);
  CHECK(GroupTable::build(GroupDescriptor::gl(3), T2, 1).size() == 168);
  CHECK(GroupTable::build(GroupDescriptor::gl(2), T3, 2).size() == 5760);
  auto t2 = GroupDescriptor::product(
      {GroupDescriptor::gl(1), GroupDescriptor::gl(1)});
  CHECK(GroupTable::build(t2, T5, 1).size() == 16);
  CHECK(GroupTable::build(GroupDescriptor::mu(2), T3, 1).size() == 2);
  // rational points of mu_2 in characteristic 2: single point
  CHECK(GroupTable::build(GroupDescriptor::mu(2), T2, 1).size() == 1);
  CHECK(GroupTable::build(GroupDescriptor::mu(3), T2, 2).size() == 3);
}

TEST_CASE("closed-form group orders") {
  CHECK(group_order(GroupDescriptor::gl(2), 2) == 6);
  CHECK(group_order(GroupDescriptor::gl(2), 9) == 5760);
  CHECK(group_order(GroupDescriptor::weil_gl(2, 2), 3) == 5760);
  auto prod = GroupDescriptor::product(
      {GroupDescriptor::mu(2), GroupDescriptor::sl(2)});
  CHECK(group_order(prod, 3) == 48);
  CHECK(group_order(GroupDescriptor::gl(1), 5) == 4);
}

TEST_CASE("descriptor dimensions") {
  CHECK(GroupDescriptor::gl(2).dim() == 4);
  CHECK(GroupDescriptor::sl(3).dim() == 8);
  CHECK(GroupDescriptor::mu(2).dim() == 0);
  CHECK(GroupDescriptor::weil_gl(2, 3).dim() == 12);
  auto prod = GroupDescriptor::product(
      {GroupDescriptor::mu(2), GroupDescriptor::gl(2)});
  CHECK(prod.dim() == 4);
}

TEST_CASE("weil restriction realizes the extension-field group") {
  FieldTower T3(3);
  auto W = GroupTable::build(GroupDescriptor::weil_gl(2, 2), T3, 1);
  CHECK(W.size() == 5760);
  CHECK(W.leaves().size() == 1);
  CHECK(W.leaves()[0].F->q() == 9);
}

TEST_CASE("enumeration cap refusal names the predicted order") {
  FieldTower T7(7);
  try {
    GroupTable::build(GroupDescriptor::gl(3), T7, 1);
    FAIL("expected CapError");
  } catch (const CapError& e) {
    CHECK(std::string(e.what()).find("33784128") != std::string::npos);
  }
}

TEST_CASE("closure, identity and inverses hold exhaustively") {
  FieldTower T3(3);
  auto G = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  u32 id = G.identity_index();
  CHECK(G.element(id) == G.identity_element());
  for (u32 a = 0; a < G.size(); ++a) {
    u32 ai = G.inv(a);
    CHECK(G.mul(a, ai) == id);
    CHECK(G.mul(id, a) == a);
    for (u32 b = 0; b < G.size(); ++b)
      CHECK_NOTHROW(G.mul(a, b));
  }
}

TEST_CASE("element index round trip") {
  FieldTower T2(2);
  auto G = GroupTable::build(GroupDescriptor::gl(3), T2, 1);
  for (u32 i = 0; i < G.size(); ++i) CHECK(G.index(G.element(i)) == i);
}

TEST_CASE("conjugacy class data") {
  FieldTower T2(2), T3(3);
  auto G2 = GroupTable::build(GroupDescriptor::gl(2), T2, 1);
  CHECK(sorted_sizes(G2) == std::vector<u64>{1, 2, 3});
  auto G3 = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  CHECK(sorted_sizes(G3) == std::vector<u64>{1, 1, 6, 6, 6, 8, 8, 12});
  auto S3 = GroupTable::build(GroupDescriptor::sl(2), T3, 1);
  CHECK(sorted_sizes(S3) == std::vector<u64>{1, 1, 4, 4, 4, 4, 6});
  auto G32 = GroupTable::build(GroupDescriptor::gl(3), T2, 1);
  CHECK(sorted_sizes(G32) == std::vector<u64>{1, 21, 24, 24, 42, 56});
  auto G4 = GroupTable::build(GroupDescriptor::gl(2), T2, 2);
  CHECK(G4.classes().count() == 15);  // q^2 - 1 classes for GL_2

  for (const GroupTable* G : {&G2, &G3, &S3, &G32}) {
    const auto& cc = G->classes();
    u64 total = 0;
    for (u32 c = 0; c < cc.count(); ++c) {
      total += cc.sizes[c];
      CHECK(BigInt(cc.sizes[c]) * cc.centralizer_orders[c] == G->order());
      CHECK(cc.class_of[cc.reps[c]] == c);
      // the inverse map is an involution on classes
      CHECK(cc.inverse_class[cc.inverse_class[c]] == c);
    }
    CHECK(total == G->size());
  }
}

TEST_CASE("rational-form labels agree with orbit partitions") {
  FieldTower T2(2), T3(3);
  auto G3 = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  CHECK(rcf_agrees_with_orbits(G3));
  auto G32 = GroupTable::build(GroupDescriptor::gl(3), T2, 1);
  CHECK(rcf_agrees_with_orbits(G32));
  auto G4 = GroupTable::build(GroupDescriptor::gl(2), T2, 2);
  CHECK(rcf_agrees_with_orbits(G4));
}

TEST_CASE("distinguished subgroups of GL_2(F_3)") {
  FieldTower T3(3);
  auto G = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  auto B = G.distinguished_subgroup(GroupTable::Which::Borel);
  CHECK(B.size() == 12);
  CHECK(borel_order(GroupDescriptor::gl(2), 3) == 12);
  auto Tt = G.distinguished_subgroup(GroupTable::Which::Torus);
  CHECK(Tt.size() == 4);
  auto U = G.distinguished_subgroup(GroupTable::Which::Unipotent);
  CHECK(U.size() == 3);
  auto Z = G.distinguished_subgroup(GroupTable::Which::Center);
  CHECK(Z.size() == 2);
  auto S = G.distinguished_subgroup(GroupTable::Which::Det1);
  CHECK(S.size() == 24);
  auto Sc = G.distinguished_subgroup(GroupTable::Which::Scalars);
  CHECK(Sc.size() == 2);
  // shared indexing with the parent
  REQUIRE(B.parent_map().has_value());
  for (u32 i = 0; i < B.size(); ++i)
    CHECK(G.element((*B.parent_map())[i]) == B.element(i));
}

TEST_CASE("radical points of a product with a finite factor") {
  FieldTower T3(3);
  auto desc = GroupDescriptor::product(
      {GroupDescriptor::mu(2), GroupDescriptor::gl(2)});
  auto G = GroupTable::build(desc, T3, 1);
  CHECK(G.size() == 96);
  auto R = G.distinguished_subgroup(GroupTable::Which::Scalars);
  // the mu_2 factor is finite, contributing only the identity
  CHECK(R.size() == 2);
  for (u32 i = 0; i < R.size(); ++i) CHECK(R.element(i)[0].at(0, 0) == 1);
}

TEST_CASE("group exponent") {
  FieldTower T2(2), T3(3);
  auto G2 = GroupTable::build(GroupDescriptor::gl(2), T2, 1);
  CHECK(group_exponent(G2) == 6);
  auto G3 = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  CHECK(group_exponent(G3) == 24);
}

TEST_CASE("morphisms with kernel and image data") {
  FieldTower T3(3), T5(5);
  auto GL = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  auto SL = GroupTable::build(GroupDescriptor::sl(2), T3, 1);
  CHECK(GL.contains_all(SL));

  auto inc = make_morphism(SL, GL, MorphRule::inclusion());
  CHECK(inc.kernel_order == 1);
  CHECK(inc.image_index == 2);

  auto GL1 = GroupTable::build(GroupDescriptor::gl(1), T3, 1);
  auto det = make_morphism(GL, GL1, MorphRule::det());
  CHECK(det.kernel_order == 24);
  CHECK(det.image_index == 1);

  auto idm = make_morphism(GL, GL, MorphRule::identity());
  CHECK(idm.kernel_order == 1);
  CHECK(idm.image_index == 1);

  auto GL1_5 = GroupTable::build(GroupDescriptor::gl(1), T5, 1);
  auto sq = make_morphism(GL1_5, GL1_5, MorphRule::pow(2));
  CHECK(sq.kernel_order == 2);
  CHECK(sq.image_index == 2);

  auto desc = GroupDescriptor::product(
      {GroupDescriptor::mu(2), GroupDescriptor::sl(2)});
  auto Gp = GroupTable::build(desc, T3, 1);
  CHECK(Gp.size() == 48);
  auto mult = make_morphism(Gp, SL, MorphRule::mult());
  CHECK(mult.kernel_order == 2);  // (1, I) and (-1, -I)
  CHECK(mult.image_index == 1);

  auto proj = make_morphism(Gp, SL, MorphRule::projection(1));
  CHECK(proj.kernel_order == 2);
  CHECK(proj.image_index == 1);
}

TEST_CASE("borel sweep agrees with the borel subgroup") {
  FieldTower T3(3);
  auto G = GroupTable::build(GroupDescriptor::gl(2), T3, 1);
  auto B = G.distinguished_subgroup(GroupTable::Which::Borel);
  std::set<std::vector<u32>> swept;
  u64 n = for_each_borel(G.leaves(), 1'000'000, [&](const Element& e) {
    swept.insert(G.key_of(e));
  });
  CHECK(n == 12);
  CHECK(swept.size() == 12);
  for (u32 i = 0; i < B.size(); ++i)
    CHECK(swept.count(B.key_of(B.element(i))) == 1);

  auto desc = GroupDescriptor::product(
      {GroupDescriptor::mu(2), GroupDescriptor::sl(2)});
  auto Gp = GroupTable::build(desc, T3, 1);
  std::set<std::vector<u32>> swept2;
  u64 n2 = for_each_borel(Gp.leaves(), 1'000'000, [&](const Element& e) {
    swept2.insert(Gp.key_of(e));
  });
  CHECK(n2 == 12);  // 2 * ((3-1) * 3)
  CHECK(swept2.size() == 12);
  auto Bp = Gp.distinguished_subgroup(GroupTable::Which::Borel);
  CHECK(Bp.size() == 12);
}

TEST_CASE("borel sweep cap refusal") {
  FieldTower T5(5);
  std::vector<LeafSpec> leaves{
      {GroupDescriptor::Kind::GL, 3, 1, &T5.field(4)}};
  CHECK_THROWS_AS(
      for_each_borel(leaves, 1000, [](const Element&) {}), CapError);
}
