#include <catch_amalgamated.hpp>

#include <gpdcoh/examples.hpp>
#include <gpdcoh/io.hpp>

using namespace gpdcoh;

namespace {

template <class F>
std::string inputErrorField(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("groupoids, representations and RUTHs round-trip through JSON") {
  for (const auto& name : builtinNames()) {
    INFO(name);
    const auto ex = builtinExample(name);
    const Json gj = Json::parse(groupoidToJson(ex.groupoid).dump());
    const auto G = FiniteGroupoid::fromData(groupoidDataFromJson(gj));
    CHECK(G == ex.groupoid);
    if (ex.rep) CHECK(repFromJson(G, Json::parse(repToJson(G, *ex.rep).dump())) == *ex.rep);
    if (ex.ruth) CHECK(ruthFromJson(G, Json::parse(ruthToJson(G, *ex.ruth).dump())) == *ex.ruth);
  }
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    const auto G = randomGroupoid(rng, 16);
    const auto r = randomRuth(rng, G);
    CHECK(ruthFromJson(G, ruthToJson(G, r)) == r);
    const auto d = toDivision(G);
    const auto back = divisionFromJson(divisionToJson(d));
    CHECK(fromDivision(back) == G);
  }
}

TEST_CASE("rational entries accept integers and fractions") {
  const auto m = matrixFromJson(Json::parse(R"([[1, "-2/4"], ["3", 0]])"), 2, 2);
  CHECK(m.at(0, 1) == Rational(-1, 2));
  CHECK(m.at(1, 0) == 3);
  CHECK(matrixFromJson(matrixToJson(m), 2, 2) == m);
  CHECK(reportMatrixFromJson(reportMatrix(m)) == m);
}

TEST_CASE("malformed input names the offending field") {
  CHECK(inputErrorField([] { matrixFromJson(Json::parse(R"([[1, "x"]])"), 1, 2, "m"); }) == "m[0][1]");
  CHECK(inputErrorField([] { matrixFromJson(Json::parse(R"([[1]])"), 1, 2, "m"); }).rfind("m", 0) == 0);
  CHECK(inputErrorField([] { groupoidDataFromJson(Json::parse(R"({"objects": ["a"]})")); }) == "arrows");

  const auto G = actionGroupoid(swapAction());
  Json r = ruthToJson(G, builtinExample("cone-id").ruth.value());
  r["lambda0"].erase(r["lambda0"].begin());
  CHECK(inputErrorField([&] { ruthFromJson(G, r); }).rfind("lambda0", 0) == 0);
}

TEST_CASE("cohomology reports round-trip and reject unknown versions") {
  CohomologyReport rep;
  rep.inputs = {{"groupoid", "pair3"}};
  rep.maxDegree = 4;
  rep.dims = {1, 0, 0, 0};
  rep.checks = {{"d squared zero", true}};
  rep.witnesses = {"(x0,x1)"};
  const Json j = Json::parse(toJson(rep).dump());
  CHECK(cohomologyReportFromJson(j) == rep);
  Json bad = j;
  bad["version"] = 99;
  CHECK_THROWS_AS(cohomologyReportFromJson(bad), InputError);
}

TEST_CASE("files that fail to parse report a position") {
  const std::string path = "test_io_broken.json";
  {
    std::ofstream out(path);
    out << "{\n  \"objects\": [\"a\",\n}";
  }
  try {
    readJsonFile(path);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::remove(path.c_str());
}
