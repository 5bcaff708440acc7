#include <catch_amalgamated.hpp>

#include <gpdcoh/examples.hpp>

using namespace gpdcoh;

namespace {

const FiniteGroupoid& swapGroupoid() {
  static const FiniteGroupoid G = actionGroupoid(swapAction());
  return G;
}

Arrow nonUnit(const FiniteGroupoid& G) {
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    if (!G.isUnit(static_cast<Arrow>(g))) return static_cast<Arrow>(g);
  throw std::logic_error("no non-unit arrow");
}

}  // namespace

TEST_CASE("genuine representations") {
  const auto Z2 = groupGroupoid(cyclicGroup(2));
  CHECK(validateRep(Z2, trivialRep(Z2)).valid());
  const auto sign = signRep(Z2, [&](Arrow g) { return !Z2.isUnit(g); });
  CHECK(validateRep(Z2, sign).valid());
  auto broken = sign;
  broken.maps[static_cast<std::size_t>(nonUnit(Z2))] = Matrix::fromDense({{2}});
  CHECK(validateRep(Z2, broken).mentions("functoriality"));
  auto badUnit = trivialRep(Z2);
  badUnit.maps[static_cast<std::size_t>(Z2.unit(0))] = Matrix::fromDense({{-1}});
  CHECK(validateRep(Z2, badUnit).mentions("unit"));
  auto badShape = trivialRep(Z2);
  badShape.maps[0] = Matrix::identity(2);
  CHECK(validateRep(Z2, badShape).mentions("shape"));
}

TEST_CASE("random representations and equivariant maps are valid") {
  Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    const auto G = randomGroupoid(rng, 30);
    const auto a = randomRep(rng, G), b = randomRep(rng, G);
    CHECK(validateRep(G, a).valid());
    CHECK(validateRep(G, homRep(G, a, b)).valid());
    const auto rho = randomEquivariant(rng, G, a, b);
    for (std::size_t g = 0; g < G.numArrows(); ++g) {
      const Arrow gg = static_cast<Arrow>(g);
      CHECK(rho[static_cast<std::size_t>(G.tgt(gg))] * a(gg) == b(gg) * rho[static_cast<std::size_t>(G.src(gg))]);
    }
    CHECK(validateRuth(G, coneRuth(G, a, b, rho)).valid());
  }
}

TEST_CASE("cone RUTHs satisfy the structure equations") {
  const auto& G = swapGroupoid();
  const auto E = trivialRep(G);
  for (int s : {0, 1, 3}) {
    std::vector<Matrix> rho(G.numObjects(), Matrix::fromDense({{s}}));
    CHECK(validateRuth(G, coneRuth(G, E, E, rho)).valid());
  }
  // A non-equivariant rho is refused; forcing it in breaks equation (1) only.
  const auto sign = signRep(G, [&](Arrow g) { return G.tgt(g) != G.src(g); });
  std::vector<Matrix> rho(G.numObjects(), Matrix::identity(1));
  CHECK_THROWS_AS(coneRuth(G, E, sign, rho), RepError);
  Ruth2 r = coneRuth(G, E, E, rho);
  r.lambda1 = sign;
  const auto rep = validateRuth(G, r);
  CHECK(rep.mentions("equation (1)"));
  CHECK_FALSE(rep.mentions("equation (3)"));
}

TEST_CASE("curvature that does not fit equation (3) is reported with witnesses") {
  const auto& G = swapGroupoid();
  Ruth2 r = builtinExample("cone-id").ruth.value();
  const Arrow g = nonUnit(G), h = G.inverse(g);
  r.K(g, h) = Matrix::fromDense({{1}});
  const auto rep = validateRuth(G, r);
  CHECK(rep.mentions("equation (3)"));
  bool witnessed = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "equation (3)" && v.witnesses == std::vector<std::string>{G.arrowId(g), G.arrowId(h)}) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("normalization") {
  const auto& G = swapGroupoid();
  Ruth2 r = builtinExample("cone-trivial").ruth.value();
  const Arrow u = G.unit(0);
  r.K(u, u) = Matrix::fromDense({{1}});
  CHECK(validateRuth(G, r).mentions("normalization"));
}

TEST_CASE("gauge twists preserve validity and change K") {
  const auto ex = builtinExample("twisted-cone");
  REQUIRE(ex.ruth);
  CHECK(validateRuth(ex.groupoid, *ex.ruth).valid());
  bool nonzero = false;
  for (const auto& k : ex.ruth->curvature) nonzero = nonzero || !k.isZero();
  CHECK(nonzero);

  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const auto G = randomGroupoid(rng, 20);
    const auto r = randomRuth(rng, G);
    CHECK(validateRuth(G, r).valid());
    const auto flat = randomRuth(rng, G, {true, true, 2});
    CHECK(validateRuth(G, flat).valid());
    for (const auto& d : flat.partial) CHECK(d.isZero());
  }
}
