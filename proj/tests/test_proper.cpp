#include <catch_amalgamated.hpp>

#include <gpdcoh/examples.hpp>
#include <gpdcoh/proper.hpp>

using namespace gpdcoh;

TEST_CASE("the counting Haar system") {
  for (const auto& name : builtinNames()) {
    INFO(name);
    const auto G = builtinExample(name).groupoid;
    const auto h = haar(G);
    CHECK(haarNormalized(G, h));
    CHECK(haarLeftInvariant(G, h));
  }
  const auto G = pairGroupoid(4);
  const auto h = haar(G);
  for (std::size_t g = 0; g < G.numArrows(); ++g) CHECK(h(static_cast<Arrow>(g)) == Rational(1, 4));

  HaarSystem skewed = h;
  skewed.weight[0] += 1;
  CHECK_FALSE(haarNormalized(G, skewed));
}

TEST_CASE("transgression inverts the differential on cocycles") {
  Rng rng(71);
  for (int i = 0; i < 20; ++i) {
    const auto G = randomGroupoid(rng, 16);
    const auto E = randomRep(rng, G);
    NerveTower T(G, 3);
    const int k = uniformInt(rng, 1, 2);
    // A coboundary of a random cochain is a cocycle.
    DenseVector b(CochainSpace(T.level(k - 1), E.bundle).dim());
    for (auto& x : b) x = smallRational(rng);
    const DenseVector c = deltaMatrix(T, E, k - 1).apply(b);
    const DenseVector X = transgress(T, E, c, k);
    CHECK(deltaMatrix(T, E, k - 1).apply(X) == c);
  }
}

TEST_CASE("transgression refuses non-cocycles") {
  const auto G = groupGroupoid(cyclicGroup(2));
  NerveTower T(G, 2);
  const auto E = trivialRep(G);
  DenseVector c(T.level(1).size(), Rational(0));
  c[0] = 1;
  // delta c (g, h) = c(h) - c(gh) + c(g); nonzero on the pair (u, u) when c(u) = 1.
  CHECK_THROWS_AS(transgress(T, E, c, 1), NotCocycleError);
}

TEST_CASE("higher cohomology vanishes for genuine and RUTH coefficients") {
  for (const auto& name : builtinNames()) {
    INFO(name);
    const auto ex = builtinExample(name);
    NerveTower T(ex.groupoid, 3);
    if (ex.ruth) {
      const auto v = vanishingReport(T, *ex.ruth, 2);
      CHECK(v.pass);
      CHECK(v.dims[2] == 0);
    } else {
      const auto E = ex.rep ? *ex.rep : trivialRep(ex.groupoid);
      CHECK(vanishingReport(T, E, 2).pass);
    }
  }
}

TEST_CASE("degree zero and one of a cone are invariant kernel and cokernel sections") {
  const auto ex = builtinExample("cone-trivial");
  NerveTower T(ex.groupoid, 3);
  const auto v = vanishingReport(T, *ex.ruth, 2);
  CHECK(*v.isotropyDim == 1);
  CHECK(*v.normalDim == 1);
  CHECK(v.dims == std::vector<std::size_t>{1, 1, 0});
}
