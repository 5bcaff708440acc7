#include <catch_amalgamated.hpp>

#include <gpdcoh/division.hpp>
#include <gpdcoh/examples.hpp>

using namespace gpdcoh;

TEST_CASE("constructors have the expected sizes") {
  const auto act = actionGroupoid(swapAction());
  CHECK(act.numObjects() == 2);
  CHECK(act.numArrows() == 4);

  const auto cech = builtinExample("cech-line").groupoid;
  CHECK(cech.numObjects() == 4);
  CHECK(cech.numArrows() == 6);

  const auto gauge = gaugeGroupoid(freeZ2OnFour());
  CHECK(gauge.groupoid.numObjects() == 2);
  CHECK(gauge.groupoid.numArrows() == 8);

  CHECK(groupGroupoid(cyclicGroup(2)).numArrows() == 2);
  CHECK(pairGroupoid(3).numArrows() == 9);
  CHECK(pairGroupoid(3).numObjects() == 3);
  CHECK(unitGroupoid(3).numArrows() == 3);
  CHECK(groupGroupoid(symmetricGroup(3)).numArrows() == 6);
}

TEST_CASE("every built-in groupoid is valid and round-trips through its data") {
  for (const auto& name : builtinNames()) {
    INFO(name);
    const auto G = builtinExample(name).groupoid;
    const auto data = G.toData(true);
    CHECK(FiniteGroupoid::validate(data).valid());
    CHECK(FiniteGroupoid::fromData(data) == G);
    CHECK(FiniteGroupoid::fromData(G.toData(false)) == G);
  }
}

TEST_CASE("groupoid axioms name the broken law") {
  GroupoidData d = pairGroupoid(2).toData(false);
  SECTION("corrupted composition triple") {
    // (x0,x1)(x1,x0) = (x0,x0); send it to (x0,x1), whose source is wrong.
    bool changed = false;
    for (auto& t : d.compose)
      if (t[0] == "(x0,x1)" && t[1] == "(x1,x0)") {
        t[2] = "(x0,x1)";
        changed = true;
      }
    REQUIRE(changed);
    const auto rep = FiniteGroupoid::validate(d);
    CHECK_FALSE(rep.valid());
    CHECK(rep.mentions("source of composite"));
    CHECK_FALSE(rep.mentions("target of composite"));
    CHECK_THROWS_AS(FiniteGroupoid::fromData(d), GroupoidError);
  }
  SECTION("missing composition") {
    d.compose.pop_back();
    const auto rep = FiniteGroupoid::validate(d);
    CHECK(rep.mentions("composability"));
  }
  SECTION("unknown object") {
    d.arrows.front().src = "nowhere";
    CHECK(FiniteGroupoid::validate(d).mentions("ids"));
  }
  SECTION("declared unit disagrees") {
    d.units = std::map<std::string, std::string>{{"x0", "(x0,x1)"}, {"x1", "(x1,x1)"}};
    CHECK(FiniteGroupoid::validate(d).mentions("unit"));
  }
}

TEST_CASE("units, inverses and composition in the action groupoid") {
  const auto G = actionGroupoid(swapAction());
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow a = static_cast<Arrow>(g);
    CHECK(G.compose(a, G.inverse(a)) == G.unit(G.tgt(a)));
    CHECK(G.compose(G.inverse(a), a) == G.unit(G.src(a)));
    CHECK(G.compose(G.unit(G.tgt(a)), a) == a);
  }
  const auto orb = G.orbits();
  CHECK(orb[0] == orb[1]);
  const auto U = unitGroupoid(3).orbits();
  CHECK(std::set<Object>(U.begin(), U.end()).size() == 3);
}

TEST_CASE("nerve sizes match direct counts") {
  // Group of order n: n^k strings; pair groupoid on n objects: n^(k+1).
  for (int k = 0; k <= 4; ++k) {
    std::size_t g3 = 1, p3 = 3;
    for (int i = 0; i < k; ++i) {
      g3 *= 3;
      p3 *= 3;
    }
    CHECK(Nerve(groupGroupoid(cyclicGroup(3)), k).size() == (k == 0 ? 1 : g3));
    CHECK(Nerve(pairGroupoid(3), k).size() == p3);
    CHECK(nerveSize(pairGroupoid(3), k) == p3);
  }
  const Nerve n(actionGroupoid(swapAction()), 2);
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto s = n.string(i);
    CHECK(n.indexOf(s) == i);
  }
}

TEST_CASE("random groupoids respect the arrow cap and are valid") {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const auto G = randomGroupoid(rng, 30);
    CHECK(G.numArrows() <= 30);
    CHECK(FiniteGroupoid::validate(G.toData(false)).valid());
  }
}

TEST_CASE("division presentations reconstruct the groupoid") {
  for (const auto& name : builtinNames()) {
    INFO(name);
    const auto G = builtinExample(name).groupoid;
    const auto d = toDivision(G);
    CHECK(validateDivision(d).valid());
    CHECK(fromDivision(d) == G);
  }
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto G = randomGroupoid(rng, 30);
    CHECK(fromDivision(toDivision(G)) == G);
  }
}

TEST_CASE("corrupted division presentations are rejected with a named axiom") {
  const auto G = groupGroupoid(cyclicGroup(3));
  auto d = toDivision(G);
  SECTION("wrong quotient") {
    // In Z/3 every row of the division table is a permutation; a changed
    // value repeats one and breaks axiom (ii).
    auto& t = d.mbar.front();
    t[2] = t[2] == "0" ? "1" : "0";
    const auto rep = validateDivision(d);
    CHECK_FALSE(rep.valid());
    CHECK((rep.mentions("axiom (ii)") || rep.mentions("axiom (i)") || rep.mentions("axiom (iii)")));
    CHECK_THROWS_AS(fromDivision(d), GroupoidError);
  }
  SECTION("missing entry") {
    d.mbar.pop_back();
    CHECK(validateDivision(d).mentions("domain"));
  }
  SECTION("source moved off the only object") {
    d.source["1"] = "elsewhere";
    CHECK(validateDivision(d).mentions("domain"));
  }
}

TEST_CASE("change of variables to common-source strings is a bijection") {
  for (const auto& name : {"zmod3", "pair3", "act-z2-swap", "gauge-z2-p4", "cech-line"}) {
    INFO(name);
    const auto G = builtinExample(name).groupoid;
    for (int k = 1; k <= 3; ++k) CHECK(checkChangeOfVariables(G, k));
  }
}

TEST_CASE("pullback and Cech groupoids project onto the base") {
  const auto G = actionGroupoid(swapAction());
  const auto pb = pullbackGroupoid(G, {"a", "b", "c"}, {{"a", "p"}, {"b", "q"}, {"c", "p"}});
  // Arrows (p, g, q) with f(p) = t(g), f(q) = s(g): 3 * 3 pairs, one arrow each.
  CHECK(pb.groupoid.numArrows() == 9);
  CHECK(isMorphism(pb.projection, pb.groupoid, G));
  const auto cech = cechGroupoid(unitGroupoid(std::vector<std::string>{"1", "2", "3"}), {{"1", "2"}, {"2", "3"}});
  CHECK(isMorphism(cech.pullback.projection, cech.pullback.groupoid, unitGroupoid(std::vector<std::string>{"1", "2", "3"})));
  CHECK_THROWS_AS(pullbackGroupoid(G, {"a"}, {{"a", "p"}}), GroupoidError);
}
