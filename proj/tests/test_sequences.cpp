#include <catch_amalgamated.hpp>

#include <gpdcoh/examples.hpp>
#include <gpdcoh/sequences.hpp>

using namespace gpdcoh;

TEST_CASE("the cylinder of a bundle is contractible") {
  for (const auto& name : {"zmod2", "act-z2-swap", "pair3", "cech-line"}) {
    INFO(name);
    const auto G = builtinExample(name).groupoid;
    NerveTower T(G, 3);
    const auto rep = checkCylinder(T, VectorBundle::constant(G.numObjects(), 2), 2);
    CHECK(rep.acyclic);
    CHECK(rep.homotopyIdentity);
    CHECK(rep.barHomotopyIdentity);
  }
}

TEST_CASE("regular long exact sequence on built-in and random RUTHs") {
  for (const auto& name : {"cone-trivial", "cone-id", "twisted-cone"}) {
    INFO(name);
    const auto ex = builtinExample(name);
    NerveTower T(ex.groupoid, 4);
    const auto rep = regularLes(T, *ex.ruth, 3);
    INFO(rep.failure);
    CHECK(rep.pass());
  }
  Rng rng(83);
  for (int i = 0; i < 8; ++i) {
    const auto G = randomGroupoid(rng, 12);
    const auto r = randomRuth(rng, G);
    NerveTower T(G, 3);
    const auto rep = regularLes(T, r, 2);
    INFO(rep.failure);
    CHECK(rep.pass());
  }
}

TEST_CASE("rank of the boundary is checked along orbits only") {
  // On the unit groupoid every object is its own orbit, so a boundary of rank
  // 1 at one object and 0 at the other is still regular.
  const auto U = unitGroupoid(2);
  Ruth2 r;
  r.E0 = r.E1 = VectorBundle::constant(2, 1);
  r.partial = {Matrix::identity(1), Matrix::zero(1, 1)};
  r.lambda0 = r.lambda1 = trivialRep(U);
  r.arrows = U.numArrows();
  r.curvature = Ruth2::zeroCurvature(U, r.E0, r.E1);
  REQUIRE(validateRuth(U, r).valid());
  CHECK_NOTHROW(checkConstantRank(U, r));
  NerveTower T(U, 3);
  CHECK(regularLes(T, r, 2).pass());

  // The same boundaries over the pair groupoid jump across an arrow; such
  // data cannot satisfy equation (1), and the rank check names the arrow.
  const auto P = pairGroupoid(2);
  Ruth2 q = r;
  q.lambda0 = q.lambda1 = trivialRep(P);
  q.arrows = P.numArrows();
  q.curvature = Ruth2::zeroCurvature(P, q.E0, q.E1);
  CHECK(validateRuth(P, q).mentions("equation (1)"));
  CHECK_THROWS_AS(checkConstantRank(P, q), RegularityError);
}

TEST_CASE("low degree exact sequence") {
  for (const auto& name : {"cone-trivial", "cone-id", "twisted-cone"}) {
    INFO(name);
    const auto ex = builtinExample(name);
    NerveTower T(ex.groupoid, 3);
    const auto rep = lowDegreeCheck(T, *ex.ruth);
    CHECK(rep.sequence.exact());
    CHECK(rep.pass());
  }
}

TEST_CASE("curvature cup matches the connecting map with the plus sign") {
  REQUIRE(kCurvatureCupSign == 1);
  Rng rng(89);
  int separated = 0;
  for (int i = 0; i < 12; ++i) {
    const auto G = randomGroupoid(rng, 12);
    const auto r = randomRuth(rng, G, {true, true, 2});
    NerveTower T(G, 3);
    const auto rep = curvatureCupCheck(T, r, 2);
    CHECK(rep.cocycle);
    CHECK(rep.pass());
    if (rep.chainTested > 0 && !rep.chainMinus) ++separated;
  }
  CHECK(separated > 0);
}

TEST_CASE("curvature cup needs a vanishing boundary") {
  const auto ex = builtinExample("cone-id");
  NerveTower T(ex.groupoid, 3);
  CHECK_THROWS_AS(curvatureCupCheck(T, *ex.ruth, 2), RepError);
}

TEST_CASE("mapping cone of an equivariant map is the total complex") {
  const auto G = actionGroupoid(swapAction());
  const auto E = trivialRep(G);
  NerveTower T(G, 4);
  for (int s : {0, 1}) {
    const auto rep = actionConeCheck(T, E, E, constantMaps(G, Matrix::fromDense({{s}})), 3);
    CHECK(rep.entrywiseEqual);
    CHECK(rep.sequence.exact());
  }
  Rng rng(97);
  for (int i = 0; i < 8; ++i) {
    const auto H = randomGroupoid(rng, 12);
    const auto a = randomRep(rng, H), b = randomRep(rng, H);
    NerveTower TH(H, 3);
    const auto rep = actionConeCheck(TH, a, b, randomEquivariant(rng, H, a, b), 2);
    INFO(rep.mismatch);
    CHECK(rep.pass());
  }
}
