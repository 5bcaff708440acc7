// gpdcoh: validate inputs, compute cohomology, run verification suites,
// write built-in examples, reconstruct groupoids from division maps and
// compare Morita-equivalent groupoids.
//
// Exit codes: 0 success, 1 validation or check failure, 2 I/O or parse error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gpdcoh/io.hpp"
#include "gpdcoh/suites.hpp"

using namespace gpdcoh;

namespace {

constexpr int kOk = 0, kFailed = 1, kInputError = 2;

struct Loaded {
  std::string label;
  std::optional<FiniteGroupoid> groupoid;
  std::optional<Representation> rep;
  std::optional<Ruth2> ruth;
  ValidationReport validation;  // groupoid, then coefficient violations
};

std::size_t maxArrows() {
  if (const char* v = std::getenv("GPDCOH_MAX_ARROWS")) {
    try {
      return static_cast<std::size_t>(std::stoul(v));
    } catch (const std::exception&) {
      throw InputError("GPDCOH_MAX_ARROWS", "expected a positive integer");
    }
  }
  return 200;
}

void printViolations(const ValidationReport& r) {
  for (const auto& v : r.violations) {
    std::cout << "  " << v.axiom << ": " << v.message;
    if (!v.witnesses.empty()) {
      std::cout << " [witnesses:";
      for (const auto& w : v.witnesses) std::cout << " " << w;
      std::cout << "]";
    }
    std::cout << "\n";
  }
}

/// Groupoid from a groupoid file, or from a bundle {"groupoid", "rep"|"ruth"}.
Loaded loadInputs(const std::string& groupoidPath, const std::string& repPath, const std::string& ruthPath) {
  Loaded out;
  out.label = groupoidPath;
  const Json gj = readJsonFile(groupoidPath);
  const bool bundle = gj.is_object() && gj.contains("groupoid");
  const GroupoidData data = groupoidDataFromJson(bundle ? gj["groupoid"] : gj, bundle ? "groupoid" : "");
  if (data.arrows.size() > maxArrows())
    throw InputError(groupoidPath, std::to_string(data.arrows.size()) + " arrows exceed GPDCOH_MAX_ARROWS=" +
                                       std::to_string(maxArrows()));
  out.validation = FiniteGroupoid::validate(data);
  if (!out.validation.valid()) return out;
  out.groupoid = FiniteGroupoid::fromData(data);
  const FiniteGroupoid& G = *out.groupoid;
  if (bundle && gj.contains("rep")) out.rep = repFromJson(G, gj["rep"], "rep");
  if (bundle && gj.contains("ruth")) out.ruth = ruthFromJson(G, gj["ruth"], "ruth");
  if (!repPath.empty()) out.rep = repFromJson(G, readJsonFile(repPath));
  if (!ruthPath.empty()) out.ruth = ruthFromJson(G, readJsonFile(ruthPath));
  if (out.rep) out.validation = validateRep(G, *out.rep);
  if (out.ruth) {
    auto v = validateRuth(G, *out.ruth);
    out.validation.violations.insert(out.validation.violations.end(), v.violations.begin(), v.violations.end());
  }
  return out;
}

Loaded loadExample(const std::string& name) {
  Example ex = builtinExample(name);
  Loaded out{name, std::move(ex.groupoid), std::move(ex.rep), std::move(ex.ruth), {}};
  if (out.rep) out.validation = validateRep(*out.groupoid, *out.rep);
  if (out.ruth) out.validation = validateRuth(*out.groupoid, *out.ruth);
  return out;
}

Json exampleBundle(const Example& ex) {
  Json j{{"name", ex.name}, {"description", ex.description}, {"groupoid", groupoidToJson(ex.groupoid)}};
  if (ex.rep) j["rep"] = repToJson(ex.groupoid, *ex.rep);
  if (ex.ruth) j["ruth"] = ruthToJson(ex.groupoid, *ex.ruth);
  return j;
}

// --------------------------------------------------------------------------

int cmdValidate(const std::string& path, const std::string& groupoidPath, bool json) {
  const Json j = readJsonFile(path);
  std::string kind;
  ValidationReport rep;
  if (j.is_object() && j.contains("mbar")) {
    kind = "division";
    rep = validateDivision(divisionFromJson(j));
    if (rep.valid()) {
      try {
        (void)fromDivision(divisionFromJson(j));
      } catch (const GroupoidError& e) {
        rep = e.report();
      }
    }
  } else if (j.is_object() && (j.contains("E0") || j.contains("action"))) {
    kind = j.contains("E0") ? "ruth" : "rep";
    if (groupoidPath.empty()) throw InputError(path, "a " + kind + " file needs --groupoid");
    Loaded l = kind == "ruth" ? loadInputs(groupoidPath, "", path) : loadInputs(groupoidPath, path, "");
    rep = l.validation;
  } else if (j.is_object() && j.contains("groupoid")) {
    kind = j.contains("ruth") ? "ruth" : j.contains("rep") ? "rep" : "groupoid";
    rep = loadInputs(path, "", "").validation;
  } else {
    kind = "groupoid";
    rep = FiniteGroupoid::validate(groupoidDataFromJson(j));
  }
  if (json) {
    Json out = toJson(rep);
    out["kind"] = kind;
    out["input"] = path;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << kind << " " << path << ": " << (rep.valid() ? "valid" : "INVALID") << "\n";
    printViolations(rep);
  }
  return rep.valid() ? kOk : kFailed;
}

int cmdCohomology(const Loaded& in, int maxDegree, bool json) {
  if (!in.validation.valid()) {
    std::cout << in.label << ": INVALID\n";
    printViolations(in.validation);
    return kFailed;
  }
  const FiniteGroupoid& G = *in.groupoid;
  const int kMax = maxDegree - 1;
  const NerveTower T(G, maxDegree);
  CohomologyReport r;
  r.maxDegree = maxDegree;
  r.inputs["groupoid"] = in.label;
  r.inputs["objects"] = std::to_string(G.numObjects());
  r.inputs["arrows"] = std::to_string(G.numArrows());
  r.checks["valid"] = true;
  if (in.ruth) {
    r.inputs["coefficients"] = "ruth";
    r.dims = cohomologyDims(ruthComplex(T, *in.ruth, kMax), kMax);
    r.checks["d_squared_zero"] = structureOperatorSquaresToZero(T, *in.ruth);
  } else {
    r.inputs["coefficients"] = in.rep ? "rep" : "trivial";
    r.dims = cohomologyDims(repComplex(T, in.rep ? *in.rep : trivialRep(G), kMax), kMax);
  }
  const bool ok = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.second; });
  if (json) {
    std::cout << toJson(r).dump(2) << "\n";
  } else {
    std::cout << in.label << " (" << G.numObjects() << " objects, " << G.numArrows() << " arrows, "
              << r.inputs["coefficients"] << " coefficients)\n";
    for (std::size_t k = 0; k < r.dims.size(); ++k) std::cout << "  H^" << k << "  " << r.dims[k] << "\n";
    std::cout << "dims: " << suite::list(r.dims) << "\n";
  }
  return ok ? kOk : kFailed;
}

void printSuite(const SuiteResult& r, bool json) {
  if (json) {
    std::cout << Json{{"suite", r.suite},      {"seed", r.seed},         {"cases", r.cases},
                      {"checks", r.checks},    {"pass", r.pass()},       {"failures", r.failures},
                      {"notes", r.notes},      {"seconds", r.seconds}}
                     .dump(2)
              << "\n";
    return;
  }
  std::cout << "suite " << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << r.cases << " cases, " << r.checks
            << " checks, seed " << r.seed << ")\n";
  for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
  for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
}

int cmdExample(const std::string& name, const std::string& outDir) {
  const Example ex = builtinExample(name);
  const Json bundle = exampleBundle(ex);
  if (outDir.empty()) {
    std::cout << bundle.dump(2) << "\n";
    return kOk;
  }
  std::filesystem::create_directories(outDir);
  const std::string base = (std::filesystem::path(outDir) / name).string();
  writeJsonFile(base + ".groupoid.json", bundle["groupoid"]);
  std::cout << "wrote " << base << ".groupoid.json (" << ex.groupoid.numObjects() << " objects, " << ex.groupoid.numArrows()
            << " arrows)\n";
  if (ex.rep) {
    writeJsonFile(base + ".rep.json", bundle["rep"]);
    std::cout << "wrote " << base << ".rep.json\n";
  }
  if (ex.ruth) {
    writeJsonFile(base + ".ruth.json", bundle["ruth"]);
    std::cout << "wrote " << base << ".ruth.json\n";
  }
  writeJsonFile(base + ".json", bundle);
  std::cout << "wrote " << base << ".json\n";
  return kOk;
}

int cmdReconstruct(const std::string& path, const std::string& out) {
  const DivisionPresentation d = divisionFromJson(readJsonFile(path));
  try {
    const FiniteGroupoid G = fromDivision(d);
    if (out.empty())
      std::cout << groupoidToJson(G).dump(2) << "\n";
    else
      writeJsonFile(out, groupoidToJson(G));
    std::cerr << "reconstructed " << G.numObjects() << " objects, " << G.numArrows() << " arrows\n";
    return kOk;
  } catch (const GroupoidError& e) {
    std::cout << "division " << path << ": INVALID\n";
    printViolations(e.report());
    return kFailed;
  }
}

int cmdMorita(const Loaded& in, const std::string& coverPath, const std::string& surjPath, int maxDegree, bool json) {
  if (!in.validation.valid()) {
    std::cout << in.label << ": INVALID\n";
    printViolations(in.validation);
    return kFailed;
  }
  const FiniteGroupoid& G = *in.groupoid;
  const Representation E = in.rep ? *in.rep : trivialRep(G);
  const int kMax = maxDegree - 1;
  MoritaReport m;
  if (!coverPath.empty()) {
    const auto cover = coverFromJson(readJsonFile(coverPath));
    m = in.ruth ? moritaCech(G, cover, *in.ruth, kMax) : moritaCech(G, cover, E, kMax);
  } else {
    const Surjection s = surjectionFromJson(readJsonFile(surjPath));
    m = in.ruth ? moritaPullback(G, s.P, s.map, *in.ruth, kMax) : moritaPullback(G, s.P, s.map, E, kMax);
  }
  const bool ok = m.equal && m.psiPiIdentity.value_or(true);
  if (json) {
    Json j{{"kind", m.kind}, {"left_dims", m.leftDims}, {"right_dims", m.rightDims}, {"equal", m.equal}};
    if (m.psiPiIdentity) j["psi_pi_identity"] = *m.psiPiIdentity;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << m.kind << " comparison: " << suite::list(m.leftDims) << " vs " << suite::list(m.rightDims) << " -> "
              << (m.equal ? "equal" : "DIFFERENT") << "\n";
    if (m.psiPiIdentity) std::cout << "Psi o pi* = id: " << (*m.psiPiIdentity ? "yes" : "NO") << "\n";
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of finite groupoids with coefficients in representations and 2-term representations up to homotopy"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string path, groupoidPath, repPath, ruthPath, exampleName, outPath, suiteName, coverPath, surjPath, divisionPath;
  int maxDegree = 4;
  std::uint64_t seed = kDefaultSeed;
  bool builtin = false, parallel = false;

  auto* validate = app.add_subcommand("validate", "Validate a groupoid, representation, RUTH or division file");
  validate->add_option("path", path, "Input JSON file")->required();
  validate->add_option("--groupoid", groupoidPath, "Groupoid file for representation or RUTH inputs");
  validate->add_flag("--json", json);

  auto addInputs = [&](CLI::App* c) {
    auto* g = c->add_option("--groupoid", groupoidPath, "Groupoid JSON (or a bundle with rep/ruth)");
    c->add_option("--rep", repPath, "Representation JSON")->needs(g);
    c->add_option("--ruth", ruthPath, "RUTH JSON")->needs(g)->excludes("--rep");
    c->add_option("--example", exampleName, "Built-in example name")->excludes(g);
    c->add_option("--max-degree", maxDegree, "Truncation degree N; reports H^0..H^{N-1}")->check(CLI::Range(1, 8));
    c->add_flag("--json", json);
  };

  auto* cohomology = app.add_subcommand("cohomology", "Dimensions of H^k");
  addInputs(cohomology);

  auto* suiteCmd = app.add_subcommand("suite", "Run a verification suite");
  suiteCmd->add_option("--suite", suiteName, "vanish|les-regular|les-low|cone|morita|appendix|dgmodule|all")->required();
  suiteCmd->add_flag("--builtin", builtin, "Run on built-in examples and seeded random cases");
  suiteCmd->add_option("--seed", seed, "Random seed");
  suiteCmd->add_flag("--parallel", parallel, "Run cases on worker threads");
  suiteCmd->add_option("--cover", coverPath, "Cover JSON (morita)");
  suiteCmd->add_option("--surjection", surjPath, "Surjection JSON (morita)");
  suiteCmd->add_option("--division", divisionPath, "Division presentation JSON (appendix)");
  addInputs(suiteCmd);

  auto* example = app.add_subcommand("example", "Write a built-in example");
  example->add_option("name", exampleName, "Example name")->required();
  example->add_option("--out", outPath, "Output directory (default: print the bundle)");

  auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a groupoid from its source and division maps");
  reconstruct->add_option("path", path, "Division presentation JSON")->required();
  reconstruct->add_option("--out", outPath, "Output groupoid file (default: stdout)");

  auto* morita = app.add_subcommand("morita", "Compare cohomology with a pullback or Cech groupoid");
  addInputs(morita);
  auto* mc = morita->add_option("--cover", coverPath, "Cover JSON");
  morita->add_option("--surjection", surjPath, "Surjection JSON")->excludes(mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  auto loaded = [&]() -> Loaded {
    if (!exampleName.empty()) return loadExample(exampleName);
    if (groupoidPath.empty()) throw InputError("", "give --groupoid FILE or --example NAME");
    return loadInputs(groupoidPath, repPath, ruthPath);
  };

  try {
    if (*validate) return cmdValidate(path, groupoidPath, json);
    if (*cohomology) return cmdCohomology(loaded(), maxDegree, json);
    if (*example) return cmdExample(exampleName, outPath);
    if (*reconstruct) return cmdReconstruct(path, outPath);
    if (*morita) {
      if (coverPath.empty() && surjPath.empty()) throw InputError("", "give --cover FILE or --surjection FILE");
      return cmdMorita(loaded(), coverPath, surjPath, maxDegree, json);
    }
    if (*suiteCmd) {
      SuiteOptions opt;
      opt.builtin = builtin;
      opt.seed = seed;
      opt.parallel = parallel;
      opt.topDegree = maxDegree;
      if (!groupoidPath.empty() || !exampleName.empty()) {
        Loaded l = loaded();
        if (!l.validation.valid()) {
          std::cout << l.label << ": INVALID\n";
          printViolations(l.validation);
          return kFailed;
        }
        opt.input = SuiteInput{l.label, *l.groupoid, l.rep, l.ruth};
        if (!opt.input->rep && !opt.input->ruth) opt.input->rep = trivialRep(*l.groupoid);
      }
      if (!coverPath.empty()) opt.cover = coverFromJson(readJsonFile(coverPath));
      if (!surjPath.empty()) opt.surjection = surjectionFromJson(readJsonFile(surjPath));
      if (!divisionPath.empty()) opt.division = divisionFromJson(readJsonFile(divisionPath));
      if (!opt.builtin && !opt.input && !opt.division)
        throw InputError("", "give --builtin or inputs (--groupoid/--example/--division)");
      bool all = true;
      for (const auto& name : suiteName == "all" ? suiteNames() : std::vector<std::string>{suiteName}) {
        const SuiteResult r = runSuite(name, opt);
        printSuite(r, json);
        all = all && r.pass();
      }
      return all ? kOk : kFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const GroupoidError& e) {
    std::cout << "INVALID: " << e.what() << "\n";
    printViolations(e.report());
    return kFailed;
  } catch (const RepError& e) {
    std::cout << "INVALID: " << e.what() << "\n";
    printViolations(e.report());
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
