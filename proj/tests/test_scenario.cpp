#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sphmult/scenario.hpp"

using namespace sphmult;

namespace {

Scenario preset(const std::string& name) {
  for (auto& s : catalog())
    if (s.name == name) return s;
  for (auto& s : witness_presets())
    if (s.name == name) return s;
  throw std::out_of_range("no preset " + name);
}

}  // namespace

TEST_CASE("scenario construction factors the base prime power") {
  auto s = Scenario::make("t", GroupDescriptor::gl(2),
                          SpaceDescriptor::flag(), 9, 3);
  REQUIRE(s.p == 3);
  REQUIRE(s.e == 2);
  REQUIRE_THROWS_AS(Scenario::make("t", GroupDescriptor::gl(2),
                                   SpaceDescriptor::flag(), 12, 3),
                    std::invalid_argument);
}

TEST_CASE("point counts match closed forms") {
  FieldTower t3(3), t2(2), t5(5);

  auto p1 = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                       SpaceDescriptor::projective_space(), 3,
                                       1),
                        t3, 1, false);
  REQUIRE(p1.space->size() == 4);

  auto fl3 = instantiate(Scenario::make("x", GroupDescriptor::gl(3),
                                        SpaceDescriptor::flag(), 2, 1),
                         t2, 1, false);
  REQUIRE(fl3.space->size() == 21);

  auto gr = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                       SpaceDescriptor::grassmannian(1), 5, 1),
                        t5, 1, false);
  REQUIRE(gr.space->size() == 6);

  auto gr23 = instantiate(Scenario::make("x", GroupDescriptor::gl(3),
                                         SpaceDescriptor::grassmannian(2), 2,
                                         1),
                          t2, 1, false);
  REQUIRE(gr23.space->size() == 7);

  REQUIRE(instantiate(preset("gl2_p1xp1"), t3, 1, false).space->size() == 16);
  REQUIRE(instantiate(preset("gl2_torus_coset"), t3, 1, false).space->size() ==
          12);
  REQUIRE(instantiate(preset("gln_point"), t2, 1, false).space->size() == 1);
  REQUIRE(instantiate(preset("gl2_group_case"), t2, 1, false).space->size() ==
          6);

  // extensions: P^1 over F_9 and flags of F_4^3
  auto p19 = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                        SpaceDescriptor::projective_space(), 3,
                                        2),
                         t3, 2, false);
  REQUIRE(p19.space->size() == 10);
  auto fl34 = instantiate(Scenario::make("x", GroupDescriptor::gl(3),
                                         SpaceDescriptor::flag(), 2, 2),
                          t2, 2, false);
  REQUIRE(fl34.space->size() == 105);  // (Q^2+Q+1)(Q+1) at Q = 4
}

TEST_CASE("action axioms hold exhaustively on a small instance") {
  FieldTower t3(3);
  auto inst = instantiate(preset("gl2_flag"), t3, 1, true);
  const GroupTable& G = *inst.group;
  const SpaceInstance& X = *inst.space;
  REQUIRE(X.size() == 4);
  for (u32 x = 0; x < X.size(); ++x)
    REQUIRE(X.act(G.identity_element(), x) == x);
  for (u32 gi = 0; gi < G.size(); ++gi)
    for (u32 hi = 0; hi < G.size(); ++hi) {
      Element g = G.element(gi), h = G.element(hi);
      Element gh = G.mul_elems(g, h);
      for (u32 x = 0; x < X.size(); ++x)
        REQUIRE(X.act(gh, x) == X.act(g, X.act(h, x)));
    }
}

TEST_CASE("action axioms sampled on a pair instance") {
  FieldTower t3(3);
  auto inst = instantiate(preset("gl2_p1xp1"), t3, 1, true);
  const GroupTable& G = *inst.group;
  const SpaceInstance& X = *inst.space;
  u64 state = 7;
  auto next = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return u32((state >> 20) % G.size());
  };
  for (int trial = 0; trial < 200; ++trial) {
    Element g = G.element(next()), h = G.element(next());
    u32 x = u32((next() * 7919u) % X.size());
    REQUIRE(X.act(G.mul_elems(g, h), x) == X.act(g, X.act(h, x)));
  }
}

TEST_CASE("fixed point counts match the sweep oracle examples") {
  FieldTower t3(3);
  auto inst = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                         SpaceDescriptor::projective_space(),
                                         3, 1),
                          t3, 1, true);
  const GroupTable& G = *inst.group;
  const SpaceInstance& X = *inst.space;
  REQUIRE(X.fixed_points(G.identity_element()) == X.size());

  const Fq& F = *inst.leaves[0].F;
  MatOps ops(F);
  Mat rs = ops.identity(2);
  rs.at(1, 1) = F.unit(1);  // distinct diagonal entries: two eigenlines
  REQUIRE(X.fixed_points({rs}) == 2);

  Mat uni = ops.identity(2);
  uni.at(0, 1) = F.one();  // unipotent: one fixed line
  REQUIRE(X.fixed_points({uni}) == 1);
}

TEST_CASE("group case fixed points agree with a direct sweep") {
  FieldTower t2(2);
  auto inst = instantiate(preset("gl2_group_case"), t2, 1, true);
  const GroupTable& G = *inst.group;
  const SpaceInstance& X = *inst.space;
  REQUIRE(std::string(X.strategy_name()) == "conjugacy-classification");
  for (u32 gi = 0; gi < G.size(); ++gi) {
    Element g = G.element(gi);
    u64 direct = 0;
    for (u32 x = 0; x < X.size(); ++x)
      if (X.act(g, x) == x) ++direct;
    REQUIRE(X.fixed_points(g) == direct);
  }
}

TEST_CASE("fixed points are a class function") {
  FieldTower t3(3);
  auto inst = instantiate(preset("gl2_p1xp1"), t3, 1, true);
  const GroupTable& G = *inst.group;
  const SpaceInstance& X = *inst.space;
  const auto& cc = G.classes();
  for (u32 c = 0; c < cc.count(); ++c) {
    u64 ref = X.fixed_points(G.element(cc.reps[c]));
    // sample a few conjugates
    for (u32 t = 1; t < G.size(); t += 17) {
      Element x = G.element(t);
      Element conj = G.mul_elems(
          G.mul_elems(x, G.element(cc.reps[c])), G.inv_elem(x));
      REQUIRE(X.fixed_points(conj) == ref);
    }
  }
}

TEST_CASE("frobenius equivariance on the projective line") {
  FieldTower t3(3);
  auto small = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                          SpaceDescriptor::projective_space(),
                                          3, 1),
                           t3, 1, false);
  auto big = instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                        SpaceDescriptor::projective_space(), 3,
                                        2),
                         t3, 2, false);
  const Fq& F9 = *big.leaves[0].F;
  auto emb = t3.embed(1, 2);

  // embedded points of the small instance are points of the big one
  std::set<PointKey> embedded;
  for (u32 x = 0; x < small.space->size(); ++x) {
    PointKey k = small.space->key(x);
    for (auto& v : k) v = emb(v);
    REQUIRE_NOTHROW(big.space->index_of_key(k));
    embedded.insert(k);
  }
  REQUIRE(embedded.size() == 4);

  // frobenius-fixed points of the big instance are exactly the embedded ones
  std::set<PointKey> fixed;
  for (u32 x = 0; x < big.space->size(); ++x) {
    PointKey k = big.space->key(x);
    PointKey fr = k;
    for (auto& v : fr) v = F9.frobenius(v, 3);
    if (fr == k) fixed.insert(k);
  }
  REQUIRE(fixed == embedded);
}

TEST_CASE("borel generators generate the distinguished borel") {
  FieldTower t3(3);
  auto inst = instantiate(preset("gl2_flag"), t3, 1, true);
  const GroupTable& G = *inst.group;
  auto B = G.distinguished_subgroup(GroupTable::Which::Borel);
  auto gens = borel_generators(inst.leaves);
  // closure of the generators inside G equals B
  std::set<u32> closure;
  std::vector<u32> frontier;
  u32 idc = G.identity_index();
  closure.insert(idc);
  frontier.push_back(idc);
  while (!frontier.empty()) {
    u32 x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      u32 y = G.index(G.mul_elems(G.element(x), g));
      if (closure.insert(y).second) frontier.push_back(y);
    }
  }
  REQUIRE(closure.size() == B.size());
}

TEST_CASE("orbit partition counts borel orbits") {
  FieldTower t3(3);
  // two Bruhat cells on the flag variety of GL_2
  auto fl = instantiate(preset("gl2_flag"), t3, 1, false);
  REQUIRE(orbit_count_partition(*fl.space, borel_generators(fl.leaves)) == 2);
  // orbits on pairs of lines: (8,8),(8,A),(A,8),diagonal,off-diagonal
  auto pp = instantiate(preset("gl2_p1xp1"), t3, 1, false);
  REQUIRE(orbit_count_partition(*pp.space, borel_generators(pp.leaves)) == 5);
  // the full group is transitive on flags
  auto ginst = instantiate(preset("gl2_flag"), t3, 1, true);
  std::vector<Element> ggens;
  for (u32 gi : ginst.group->generator_indices())
    ggens.push_back(ginst.group->element(gi));
  REQUIRE(orbit_count_partition(*ginst.space, ggens) == 1);
}

TEST_CASE("regular space is the group acting on itself") {
  FieldTower t5(5);
  auto inst = instantiate(Scenario::make("x", GroupDescriptor::gl(1),
                                         SpaceDescriptor::regular(), 5, 1),
                          t5, 1, true);
  REQUIRE(inst.space->size() == 4);
  const GroupTable& G = *inst.group;
  // only the identity fixes anything
  for (u32 gi = 0; gi < G.size(); ++gi) {
    u64 expect = gi == G.identity_index() ? 4 : 0;
    REQUIRE(inst.space->fixed_points(G.element(gi)) == expect);
  }
  REQUIRE_THROWS_AS(instantiate(Scenario::make("x", GroupDescriptor::gl(1),
                                               SpaceDescriptor::regular(), 5,
                                               1),
                                t5, 1, false),
                    std::invalid_argument);
}

TEST_CASE("caps and incompatible pairs are rejected") {
  FieldTower t2(2), t3(3);
  // flags of GL_3 over F_{2^8}: (Q^2+Q+1)(Q+1) with Q = 256 is fine, but
  // the group-case space over a big field blows the cap
  auto big = Scenario::make("x",
                            GroupDescriptor::product({GroupDescriptor::gl(2),
                                                      GroupDescriptor::gl(2)}),
                            SpaceDescriptor::group_case(), 2, 8);
  REQUIRE_THROWS_AS(instantiate(big, t2, 7, false), CapError);
  // pairs need rank 2
  REQUIRE_THROWS_AS(instantiate(Scenario::make("x", GroupDescriptor::gl(3),
                                               SpaceDescriptor::projline_pair(),
                                               3, 1),
                                t3, 1, false),
                    std::invalid_argument);
  // group case needs a product of equal GLs
  REQUIRE_THROWS_AS(instantiate(Scenario::make("x", GroupDescriptor::gl(2),
                                               SpaceDescriptor::group_case(),
                                               3, 1),
                                t3, 1, false),
                    std::invalid_argument);
}

TEST_CASE("catalog and witness presets are well formed") {
  auto cat = catalog();
  std::set<std::string> names;
  for (const auto& s : cat) names.insert(s.name);
  for (const char* expect :
       {"gl2_flag", "gl2_p1xp1", "gl2_torus_coset", "gl2_group_case",
        "gln_point", "gl3_flag", "gl3_grassmann2"})
    REQUIRE(names.count(expect) == 1);
  auto wit = witness_presets();
  REQUIRE(wit.size() == 2);
  for (const auto& s : wit) {
    REQUIRE(s.witness.has_value());
    REQUIRE(s.witness->scheme_kernel_order == 2);
    REQUIRE(s.witness->pi0_intersection == 2);
    REQUIRE(s.q == 3);
  }
}
