#include <catch_amalgamated.hpp>

#include <random>

#include <gpdcoh/complex.hpp>

using namespace gpdcoh;

namespace {

Matrix M(std::vector<std::vector<Rational>> rows) { return Matrix::fromDense(rows); }

ChainComplex single(std::size_t d) { return ChainComplex(0, {d}, {}); }

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parseRational("6/4") == Rational(3, 2));
  CHECK(parseRational("-7") == Rational(-7));
  CHECK(formatRational(Rational(-6, 4)) == "-3/2");
  CHECK_THROWS_AS(parseRational("1/0"), ParseError);
  CHECK_THROWS_AS(parseRational("1/-2"), ParseError);
  CHECK_THROWS_AS(parseRational("abc"), ParseError);
}

TEST_CASE("rank of small matrices") {
  CHECK(rank(Matrix::identity(2)) == 2);
  CHECK(rank(Matrix::zero(3, 5)) == 0);
  CHECK(rank(M({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(M({{0, 1, 2}, {1, 0, 3}, {1, 1, 5}})) == 2);
  CHECK(rank(M({{Rational(1, 2), Rational(1, 3)}, {Rational(3), Rational(2)}})) == 1);
}

TEST_CASE("kernel bases") {
  CHECK(kernelBasis(Matrix::identity(4)).empty());
  CHECK(kernelBasis(Matrix::zero(2, 3)).size() == 3);
  auto k = kernelBasis(M({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0].at(0) == -k[0].at(1));
  CHECK(sgn(k[0].at(0)) != 0);
}

TEST_CASE("rank-nullity and fraction-free rank agree with echelon rank on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng() % 7 + 1, c = rng() % 7 + 1;
    MatrixBuilder mb(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) mb.add(i, j, Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1));
    // Force dependent rows now and then.
    Matrix m = std::move(mb).build();
    if (trial % 4 == 0 && r > 1) {
      MatrixBuilder dup(r, c);
      dup.addBlock(0, 0, m);
      for (const auto& [j, v] : m.row(0)) dup.add(r - 1, j, 2 * v);
      m = std::move(dup).build();
    }
    const auto rk = rank(m);
    CHECK(rk == rankByEchelon(m));
    auto ker = kernelBasis(m);
    CHECK(rk + ker.size() == c);
    for (const auto& v : ker) CHECK(m.apply(v).empty());
    CHECK(rank(m.transpose()) == rk);
  }
}

TEST_CASE("solver and subspace") {
  Matrix a = M({{1, 0}, {0, 1}, {1, 1}});
  auto x = solve(a, SparseVector::fromDense({2, 3, 5}));
  REQUIRE(x);
  CHECK(x->toDense(2) == DenseVector{2, 3});
  CHECK_FALSE(solve(a, SparseVector::fromDense({2, 3, 4})));
  auto s = Subspace::image(a);
  CHECK(s.dim() == 2);
  CHECK(s.codim() == 1);
  CHECK((s.quotient * s.basis).isZero());
}

TEST_CASE("cohomology dimensions of small complexes") {
  CHECK(cohomologyDims(single(1), 0) == std::vector<std::size_t>{1});
  ChainComplex id(0, {1, 1}, {Matrix::identity(1)});
  CHECK(cohomologyDims(id, 1) == std::vector<std::size_t>{0, 0});
  ChainComplex z(0, {2, 1}, {Matrix::zero(1, 2)});
  CHECK(cohomologyDims(z, 1) == std::vector<std::size_t>{2, 1});
  CHECK_THROWS_AS(ChainComplex(0, {1, 1, 1}, {Matrix::identity(1), Matrix::identity(1)}), ComplexError);
}

TEST_CASE("mapping cones") {
  auto a = share(ChainComplex(0, {1}, {}));
  auto two = ChainMap(a, a, {M({{2}})}, 0);
  auto cone = mappingCone(two);
  CHECK(cohomologyDims(cone, cone.hi()) == std::vector<std::size_t>{0, 0});

  auto c = share(ChainComplex(0, {2, 3, 1}, {M({{1, 0}, {0, 1}, {0, 0}}), M({{0, 0, 1}})}));
  auto idc = mappingCone(identityMap(c));
  for (auto d : cohomologyDims(idc, idc.hi())) CHECK(d == 0);

  auto zero = ChainMap(a, a, {Matrix::zero(1, 1)}, 0);
  auto zc = mappingCone(zero);
  CHECK(zc.lo() == 0);
  CHECK(zc.hi() == 1);
  CHECK(cohomologyDims(zc, 1) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("exactness checks") {
  auto ok = exactnessCheck({Matrix::identity(1)}, {}, true);
  CHECK(ok.exact());
  CHECK(ok.nodes.size() == 2);
  auto bad = exactnessCheck({Matrix::zero(1, 1)}, {}, true);
  CHECK_FALSE(bad.exact());
  CHECK_FALSE(bad.nodes[0].exact);
  CHECK_FALSE(bad.nodes[1].exact);
}

TEST_CASE("connecting maps of short exact sequences") {
  // Split sequence in one degree.
  auto a = share(ChainComplex(0, {1}, {}));
  auto b = share(ChainComplex(0, {2}, {}));
  ShortExactSequence ses(ChainMap(a, b, {M({{1}, {0}})}, 0), ChainMap(b, a, {M({{0, 1}})}, 0));
  auto les = longExactSequence(ses, 0, 1);
  for (const auto& d : les.connecting) CHECK(d.isZero());
  CHECK(les.report.exact());

  // 0 -> Q[-1] -> (Q -id-> Q) -> Q -> 0 has an isomorphism as connecting map.
  auto A = share(ChainComplex(0, {0, 1}, {Matrix::zero(1, 0)}));
  auto B = share(ChainComplex(0, {1, 1}, {Matrix::identity(1)}));
  auto C = share(ChainComplex(0, {1, 0}, {Matrix::zero(0, 1)}));
  ShortExactSequence s2(ChainMap(A, B, {Matrix::zero(1, 0), Matrix::identity(1)}, 0),
                        ChainMap(B, C, {Matrix::identity(1), Matrix::zero(0, 1)}, 0));
  auto l2 = longExactSequence(s2, 0, 1);
  CHECK(rank(l2.connecting[0]) == 1);
  CHECK(l2.report.exact());

  CHECK_THROWS_AS(ShortExactSequence(ChainMap(a, b, {M({{1}, {0}})}, 0), ChainMap(b, a, {M({{1, 0}})}, 0)),
                  ExactnessError);
}
