// Acceptance run: one PASS/FAIL line per criterion.
#include <gpdcoh/io.hpp>
#include <gpdcoh/suites.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sys/wait.h>

using namespace gpdcoh;

namespace {

constexpr int kTop = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<SuiteInput> builtins() {
  SuiteOptions opt;
  opt.builtin = true;
  return suite::inputs(opt);
}

Outcome fromRun(const SuiteResult& r, double limit = 0) {
  Outcome o{r.pass(), std::to_string(r.cases) + " cases, " + std::to_string(r.checks) + " checks"};
  if (!r.failures.empty()) o.detail += "; first failure: " + r.failures.front();
  if (limit > 0 && r.seconds >= limit) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(limit)) + " s budget";
  }
  return o;
}

template <class T>
std::shared_ptr<T> shared(T v) {
  return std::make_shared<T>(std::move(v));
}

Outcome checkAppendix() {
  SuiteOptions opt;
  opt.builtin = true;
  opt.parallel = true;
  opt.counts.roundTrips = 100;
  opt.counts.corruptions = 100;
  return fromRun(appendixSuite(opt), 30);
}

Outcome checkStructureEquations() {
  // 50 valid and 50 perturbed RUTHs that fail the structure equations; a
  // perturbation that happens to stay valid is drawn again.
  Rng rng(kDefaultSeed ^ 0x2);
  std::vector<SuiteCase> cases;
  int valid = 0, invalid = 0, redrawn = 0;
  while (valid < 50 || invalid < 50) {
    auto G = shared(randomGroupoid(rng, 30, 20000, 3));
    auto r = shared(randomRuth(rng, *G, {valid % 3 != 0, valid % 4 == 0, 2}));
    if (valid < 50) {
      ++valid;
      cases.push_back({"valid RUTH " + std::to_string(valid), [G, r](CaseLog& log) {
                         log.expect(validateRuth(*G, *r).valid(), "generated RUTH is invalid");
                         structureEquationExample(log, *G, *r);
                       }});
      continue;
    }
    if (!perturbRuth(rng, *G, *r) || validateRuth(*G, *r).valid()) {
      ++redrawn;
      continue;
    }
    ++invalid;
    cases.push_back({"perturbed RUTH " + std::to_string(invalid), [G, r](CaseLog& log) { structureEquationExample(log, *G, *r); }});
  }
  auto o = fromRun(runCases("structure equations", kDefaultSeed, cases, true));
  o.detail += ", " + std::to_string(redrawn) + " perturbations redrawn";
  return o;
}

Outcome checkVanishing() {
  SuiteOptions opt;
  opt.builtin = true;
  opt.parallel = true;
  opt.topDegree = kTop;
  opt.counts.vanishRandom = 20;
  opt.counts.transgressions = 100;
  return fromRun(vanishSuite(opt), 120);
}

Outcome checkMappingCone() {
  Rng rng(kDefaultSeed ^ 0x4);
  std::vector<SuiteCase> cases;
  for (int i = 0; i < 20; ++i) {
    auto G = shared(randomGroupoid(rng, 30, suite::kNerveCap, kTop + 1));
    auto a = shared(randomRep(rng, *G));
    auto b = shared(randomRep(rng, *G));
    auto rho = shared(randomEquivariant(rng, *G, *a, *b));
    cases.push_back({"equivariant map " + std::to_string(i),
                     [G, a, b, rho](CaseLog& log) { coneExample(log, *G, *a, *b, *rho, kTop); }});
  }
  return fromRun(runCases("mapping cone", kDefaultSeed, cases, true));
}

Outcome checkRegular() {
  std::vector<SuiteCase> cases;
  for (const auto& in : builtins()) {
    auto G = shared(in.groupoid);
    auto r = shared(suite::asRuth(in));
    cases.push_back({suite::ruthLabel(in), [G, r](CaseLog& log) { regularExample(log, *G, *r, kTop); }});
  }
  Rng rng(kDefaultSeed ^ 0x5);
  for (int i = 0; i < 10; ++i) {
    auto G = shared(randomGroupoid(rng, 30, suite::kNerveCap, kTop + 1));
    auto r = shared(randomRuth(rng, *G));
    cases.push_back({"random RUTH " + std::to_string(i), [G, r](CaseLog& log) { regularExample(log, *G, *r, kTop); }});
  }
  return fromRun(runCases("regular", kDefaultSeed, cases, true));
}

Outcome checkLowDegree() {
  Rng rng(kDefaultSeed ^ 0x6);
  std::vector<SuiteCase> cases;
  for (int i = 0; i < 20; ++i) {
    auto G = shared(randomGroupoid(rng, 30, suite::kNerveCap, 3));
    auto r = shared(randomRuth(rng, *G));
    cases.push_back({"random RUTH " + std::to_string(i), [G, r](CaseLog& log) {
                       lowDegreeExample(log, *G, *r);
                       // Degeneration agrees with the vanishing pattern.
                       const NerveTower T(*G, 3);
                       const auto v = vanishingReport(T, *r, 2);
                       log.expect(v.pass, "vanishing pattern fails");
                     }});
  }
  return fromRun(runCases("low degree", kDefaultSeed, cases, true));
}

Outcome checkCurvature() {
  std::vector<SuiteCase> cases;
  for (const auto& in : builtins()) {
    if (!in.ruth) continue;
    if (!std::all_of(in.ruth->partial.begin(), in.ruth->partial.end(), [](const Matrix& m) { return m.isZero(); })) continue;
    auto G = shared(in.groupoid);
    auto r = shared(*in.ruth);
    cases.push_back({in.label, [G, r](CaseLog& log) { curvatureExample(log, *G, *r, kTop); }});
  }
  Rng rng(kDefaultSeed ^ 0x7);
  for (int i = 0; i < 20; ++i) {
    auto G = shared(randomGroupoid(rng, 30, suite::kNerveCap, kTop + 1));
    auto r = shared(randomRuth(rng, *G, {true, true, 2}));
    cases.push_back({"random RUTH " + std::to_string(i), [G, r](CaseLog& log) { curvatureExample(log, *G, *r, kTop); }});
  }
  auto res = runCases("curvature", kDefaultSeed, cases, true);
  auto o = fromRun(res);
  o.detail += ", sign " + std::to_string(kCurvatureCupSign) + " separated from its negative in " +
              std::to_string(res.notes.size()) + " cases";
  return o;
}

Outcome checkMorita() {
  SuiteOptions opt;
  opt.builtin = true;
  opt.parallel = true;
  opt.topDegree = 3;
  opt.counts.moritaPullback = 10;
  opt.counts.moritaCech = 10;
  return fromRun(moritaSuite(opt));
}

Outcome checkNormalized() {
  std::vector<SuiteCase> cases;
  for (const auto& in : builtins())
    cases.push_back({in.label, [in](CaseLog& log) { normalizedExample(log, in, kTop); }});
  return fromRun(runCases("normalized", kDefaultSeed, cases, true));
}

Outcome checkLeibniz() {
  const auto inputs = builtins();
  Rng rng(kDefaultSeed ^ 0xa);
  std::vector<SuiteCase> cases;
  for (int i = 0; i < 200; ++i) {
    const auto& in = inputs[static_cast<std::size_t>(i) % inputs.size()];
    auto G = shared(in.groupoid);
    auto E = shared(in.rep && i % 2 ? *in.rep : suite::nonzeroRandomRep(rng, *G));
    const int k = uniformInt(rng, 0, kTop - 1);
    const int kp = uniformInt(rng, 0, kTop - 1 - k);
    const std::uint64_t seed = rng();
    cases.push_back({"pair " + std::to_string(i) + " on " + in.label, [G, E, k, kp, seed](CaseLog& log) {
                       Rng local(seed);
                       const NerveTower T(*G, k + kp + 1);
                       const auto u = suite::randomCochain(local, CochainSpace(T.level(k), E->bundle).dim());
                       const auto f = suite::randomCochain(local, T.level(kp).size());
                       log.expect(leibnizHolds(T, *E, u, k, f, kp, leibnizSign(k)), "Leibniz identity fails");
                     }});
  }
  return fromRun(runCases("leibniz", kDefaultSeed, cases, true));
}

// ---------------------------------------------------------------------------
// Command line contract.

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Outcome checkCli(const std::string& exe) {
  namespace fs = std::filesystem;
  std::vector<std::string> problems;
  const auto start = std::chrono::steady_clock::now();

  const Run s3 = run(exe + " cohomology --example s3");
  if (s3.status != 0 || s3.out.find("dims: [1,0,0,0]") == std::string::npos)
    problems.push_back("cohomology --example s3 gave exit " + std::to_string(s3.status));

  for (const auto& name : suiteNames()) {
    const Run r = run(exe + " suite --suite " + name + " --builtin --parallel");
    if (r.status != 0) problems.push_back("suite " + name + " exit " + std::to_string(r.status));
  }
  const double suiteSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir = fs::temp_directory_path() / ("gpdcoh-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  // A RUTH whose curvature breaks equation (3) on one composable pair.
  const auto ex = builtinExample("cone-id");
  Ruth2 bad = *ex.ruth;
  Arrow g = 0;
  while (ex.groupoid.isUnit(g)) ++g;
  bad.K(g, ex.groupoid.inverse(g)) = Matrix::fromDense({{1}});
  writeJsonFile((dir / "g.json").string(), groupoidToJson(ex.groupoid));
  writeJsonFile((dir / "bad.ruth.json").string(), ruthToJson(ex.groupoid, bad));
  const Run r3 = run(exe + " validate " + (dir / "bad.ruth.json").string() + " --groupoid " + (dir / "g.json").string());
  if (r3.status == 0 || r3.out.find("equation (3)") == std::string::npos ||
      r3.out.find(ex.groupoid.arrowId(g)) == std::string::npos)
    problems.push_back("corrupted RUTH: exit " + std::to_string(r3.status) + " without a named witness");

  // A groupoid with one composite redirected.
  Json gj = groupoidToJson(pairGroupoid(2));
  for (auto& t : gj["compose"])
    if (t[0] == "(x0,x1)" && t[1] == "(x1,x0)") t[2] = "(x0,x1)";
  writeJsonFile((dir / "bad.groupoid.json").string(), gj);
  const Run rg = run(exe + " validate " + (dir / "bad.groupoid.json").string());
  if (rg.status == 0 || rg.out.find("witnesses") == std::string::npos)
    problems.push_back("corrupted groupoid: exit " + std::to_string(rg.status) + " without witnesses");

  // A division presentation with one quotient changed.
  auto d = toDivision(groupGroupoid(cyclicGroup(3)));
  d.mbar.front()[2] = d.mbar.front()[2] == "0" ? "1" : "0";
  writeJsonFile((dir / "bad.division.json").string(), divisionToJson(d));
  const Run rd = run(exe + " validate " + (dir / "bad.division.json").string());
  if (rd.status == 0 || rd.out.find("axiom") == std::string::npos)
    problems.push_back("corrupted division: exit " + std::to_string(rd.status) + " without a named axiom");

  fs::remove_all(dir);
  Outcome o{problems.empty(), "suites took " + std::to_string(static_cast<int>(suiteSeconds)) + " s"};
  if (suiteSeconds >= 300) {
    o.pass = false;
    problems.push_back("suite wall clock over 5 min");
  }
  for (const auto& p : problems) o.detail += "; " + p;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "gpdcoh";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"division round trip and corruptions", checkAppendix},
      {"structure equations iff D^2 = 0", checkStructureEquations},
      {"vanishing and transgression", checkVanishing},
      {"cone total complex equals mapping cone", checkMappingCone},
      {"regular long exact sequence", checkRegular},
      {"low-degree exact sequence", checkLowDegree},
      {"zero-boundary curvature cup", checkCurvature},
      {"Morita invariance", checkMorita},
      {"normalized quasi-isomorphism", checkNormalized},
      {"Leibniz identity", checkLeibniz},
      {"command line contract", [&] { return checkCli(exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s  %s (%.1f s; %s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), s,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed ? 1 : 0;
}
