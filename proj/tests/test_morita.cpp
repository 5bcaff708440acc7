#include <catch_amalgamated.hpp>

#include <gpdcoh/examples.hpp>
#include <gpdcoh/suites.hpp>

using namespace gpdcoh;

TEST_CASE("uniform partition of unity") {
  const auto G = unitGroupoid(3);
  const std::vector<std::vector<std::string>> cover{{"x0", "x1"}, {"x1", "x2"}};
  const auto p = PartitionOfUnity::uniform(G, cover);
  CHECK(p.check(G).empty());
  CHECK(p.rho[0][1] == Rational(1, 2));
  auto bad = p;
  bad.rho[0][2] = 1;
  CHECK_FALSE(bad.check(G).empty());
  auto short_ = p;
  short_.rho[1][1] = 0;
  CHECK(short_.check(G).find("sum") != std::string::npos);
}

TEST_CASE("Cech comparison maps are chain maps with Psi pi* = id") {
  const auto G = actionGroupoid(swapAction());
  const std::vector<std::vector<std::string>> cover{{"p", "q"}, {"p"}};
  const auto cech = cechGroupoid(G, cover);
  const auto mv = mvMaps(G, cech, trivialRep(G), 2);
  CHECK(mv.piStar.has_value());
  CHECK(mv.psi.has_value());
  CHECK(mv.psiPiIdentity);
  CHECK_THROWS_AS(mvMaps(G, cech, trivialRep(G), 2,
                         PartitionOfUnity{cover, {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}}}),
                  std::invalid_argument);
}

TEST_CASE("pullback along a surjection preserves cohomology") {
  const auto G = actionGroupoid(swapAction());
  const auto sign = signRep(G, [&](Arrow g) { return G.src(g) != G.tgt(g); });
  const auto rep = moritaPullback(G, {"a", "b", "c"}, {{"a", "p"}, {"b", "q"}, {"c", "q"}}, sign, 2);
  CHECK(rep.equal);
  // The swap action is free and transitive: H^0 of the sign line is the
  // invariant sections, one dimension.
  CHECK(rep.leftDims == std::vector<std::size_t>{1, 0, 0});

  Rng rng(101);
  for (int i = 0; i < 6; ++i) {
    const auto H = randomGroupoid(rng, 10);
    const auto s = randomSurjection(rng, H, 1);
    CHECK(moritaPullback(H, s.P, s.map, randomRep(rng, H), 2).equal);
    CHECK(moritaPullback(H, s.P, s.map, randomRuth(rng, H), 2).equal);
  }
}

TEST_CASE("Cech groupoid of a cover preserves cohomology") {
  const auto U = unitGroupoid(std::vector<std::string>{"1", "2", "3"});
  CHECK(moritaCech(U, {{"1", "2"}, {"2", "3"}}, trivialRep(U), 2).leftDims == std::vector<std::size_t>{3, 0, 0});
  Rng rng(103);
  for (int i = 0; i < 6; ++i) {
    const auto H = randomGroupoid(rng, 8);
    const auto cover = randomCover(rng, H, 2);
    const auto rep = moritaCech(H, cover, randomRep(rng, H), 2);
    CHECK(rep.equal);
    CHECK(rep.psiPiIdentity.value_or(false));
    CHECK(moritaCech(H, cover, randomRuth(rng, H), 2).equal);
  }
}

TEST_CASE("gauge groupoid of a free action is Morita equivalent to the group") {
  const auto A = freeZ2OnFour();
  GroupRep triv{1, {Matrix::identity(1), Matrix::identity(1)}};
  const auto rep = moritaGauge(A, triv, 2);
  CHECK(rep.equal);
  CHECK(rep.leftDims == std::vector<std::size_t>{1, 0, 0});
  for (const auto& [act, V] : gaugePairs()) CHECK(moritaGauge(act, V, 2).equal);
}
