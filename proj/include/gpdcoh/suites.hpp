#pragma once

// Verification suites run by the command-line tool and the acceptance runner.
// Each suite draws its random cases up front from one seeded generator, then
// runs the cases (optionally on worker threads) and collects failures with
// witnesses.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "division.hpp"
#include "examples.hpp"
#include "morita.hpp"
#include "proper.hpp"
#include "sequences.hpp"

namespace gpdcoh {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

inline const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names{"vanish", "les-regular", "les-low", "cone", "morita", "appendix", "dgmodule"};
  return names;
}

struct CaseLog {
  std::string label;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(label + ": " + what);
    return ok;
  }
};

struct SuiteCase {
  std::string label;
  std::function<void(CaseLog&)> run;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cases = 0, checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  double seconds = 0;
  bool pass() const { return failures.empty() && checks > 0; }
};

/// Cases run in order; with `parallel` they are spread over hardware threads
/// and the logs are merged back in case order.
inline SuiteResult runCases(const std::string& name, std::uint64_t seed, const std::vector<SuiteCase>& cases,
                            bool parallel) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CaseLog> logs(cases.size());
  auto one = [&](std::size_t i) {
    logs[i].label = cases[i].label;
    try {
      cases[i].run(logs[i]);
    } catch (const std::exception& e) {
      logs[i].failures.push_back(cases[i].label + ": unexpected error: " + e.what());
    }
  };
  if (parallel && cases.size() > 1) {
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, cases.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < cases.size();) one(i);
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < cases.size(); ++i) one(i);
  }
  SuiteResult r{name, seed, cases.size(), 0, {}, {}, 0};
  for (auto& l : logs) {
    r.checks += l.checks;
    r.failures.insert(r.failures.end(), l.failures.begin(), l.failures.end());
    r.notes.insert(r.notes.end(), l.notes.begin(), l.notes.end());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct SuiteInput {
  std::string label;
  FiniteGroupoid groupoid;
  std::optional<Representation> rep;
  std::optional<Ruth2> ruth;
};

/// Case counts; the defaults are the sizes the acceptance criteria ask for.
struct SuiteCounts {
  int vanishRandom = 20, transgressions = 100;
  int lesRandom = 10, lowRandom = 20;
  int coneRandom = 20, curvatureRandom = 20;
  int moritaPullback = 10, moritaCech = 10;
  int roundTrips = 100, corruptions = 100;
  int leibnizPairs = 200, validRuths = 50, perturbedRuths = 50;
};

struct SuiteOptions {
  bool builtin = false;
  std::uint64_t seed = kDefaultSeed;
  bool parallel = false;
  int topDegree = 4;  // highest cohomological degree examined
  SuiteCounts counts;
  std::optional<SuiteInput> input;
  std::optional<std::vector<std::vector<std::string>>> cover;
  std::optional<Surjection> surjection;
  std::optional<DivisionPresentation> division;
};

namespace suite {

inline std::string list(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline std::string firstInexact(const ExactnessReport& e) {
  for (const auto& n : e.nodes)
    if (!n.exact)
      return "not exact at " + n.label + " (dim " + std::to_string(n.dim) + ", image " + std::to_string(n.imageIn) +
             ", kernel " + std::to_string(n.kernelOut) + (n.composesToZero ? "" : ", composite nonzero") + ")";
  return {};
}

inline std::vector<SuiteInput> inputs(const SuiteOptions& opt) {
  std::vector<SuiteInput> out;
  if (opt.builtin)
    for (const auto& n : builtinNames()) {
      Example ex = builtinExample(n);
      out.push_back({ex.name, std::move(ex.groupoid), std::move(ex.rep), std::move(ex.ruth)});
    }
  if (opt.input) out.push_back(*opt.input);
  return out;
}

/// RUTH used for examples that only carry a representation: the cone of the
/// zero map E -> E.
inline Ruth2 asRuth(const SuiteInput& in) {
  if (in.ruth) return *in.ruth;
  const auto& G = in.groupoid;
  std::vector<Matrix> zero;
  for (std::size_t x = 0; x < G.numObjects(); ++x) zero.push_back(Matrix::zero(in.rep->bundle.dims[x], in.rep->bundle.dims[x]));
  return coneRuth(G, *in.rep, *in.rep, zero);
}

inline std::string ruthLabel(const SuiteInput& in) { return in.ruth ? in.label : in.label + " (cone of 0 on E)"; }

inline Representation nonzeroRandomRep(Rng& rng, const FiniteGroupoid& G, std::size_t maxDim = 2) {
  for (int tries = 0; tries < 20; ++tries) {
    Representation E = randomRep(rng, G, maxDim);
    if (!E.bundle.isZero()) return E;
  }
  return trivialRep(G);
}

inline DenseVector randomCochain(Rng& rng, std::size_t n) {
  DenseVector v(n);
  for (auto& x : v) x = smallRational(rng, 3);
  return v;
}

/// Strings at level top+1 stay below this, which keeps ranks desk-sized.
inline constexpr std::size_t kNerveCap = 3000;

}  // namespace suite

// ---------------------------------------------------------------------------
// vanish: H^k = 0 above the isotropy/normal pattern, and the averaging
// operator inverts the differential on cocycles.

inline void vanishExample(CaseLog& log, const SuiteInput& in, int top) {
  const NerveTower T(in.groupoid, top + 1);
  const HaarSystem h = haar(in.groupoid);
  log.expect(haarNormalized(in.groupoid, h), "counting measure is not normalized");
  log.expect(haarLeftInvariant(in.groupoid, h), "counting measure is not left invariant");
  if (in.rep) {
    const auto v = vanishingReport(T, *in.rep, top);
    log.expect(v.pass, "dims " + suite::list(v.dims) + ", expected " + suite::list(v.expected));
  }
  if (in.ruth) {
    const auto v = vanishingReport(T, *in.ruth, top);
    log.expect(v.pass, "dims " + suite::list(v.dims) + ", expected " + suite::list(v.expected));
  }
}

inline SuiteResult vanishSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  const int top = opt.topDegree;
  for (auto& in : suite::inputs(opt))
    cases.push_back({in.label, [in, top](CaseLog& log) { vanishExample(log, in, top); }});
  if (opt.builtin) {
    Rng rng(opt.seed);
    for (int i = 0; i < opt.counts.vanishRandom; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, top + 1));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G));
      cases.push_back({"random twisted RUTH " + std::to_string(i), [G, r, top](CaseLog& log) {
                         vanishExample(log, SuiteInput{"", *G, std::nullopt, *r}, top);
                       }});
    }
    for (int i = 0; i < opt.counts.transgressions; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, top + 1));
      auto E = std::make_shared<Representation>(suite::nonzeroRandomRep(rng, *G));
      const int k = uniformInt(rng, 1, top);
      const std::uint64_t caseSeed = rng();
      cases.push_back({"transgression " + std::to_string(i) + " (degree " + std::to_string(k) + ")",
                       [G, E, k, caseSeed, top](CaseLog& log) {
                         Rng local(caseSeed);
                         const NerveTower T(*G, top + 1);
                         const auto ker = kernelBasis(deltaMatrix(T, *E, k));
                         DenseVector c(CochainSpace(T.level(k), E->bundle).dim());
                         for (const auto& v : ker) {
                           const Rational a = smallRational(local, 3);
                           for (const auto& [j, x] : v) c[j] += a * x;
                         }
                         const DenseVector X = transgress(T, *E, c, k);
                         log.expect(deltaMatrix(T, *E, k - 1).apply(X) == c, "delta(transgress(c)) != c");
                         const auto v = vanishingReport(T, *E, top);
                         log.expect(v.pass, "dims " + suite::list(v.dims) + ", expected " + suite::list(v.expected));
                       }});
    }
  }
  return runCases("vanish", opt.seed, cases, opt.parallel);
}

// ---------------------------------------------------------------------------
// les-regular: cylinder, both short exact sequences and the long exact
// sequence of a regular RUTH.

inline void regularExample(CaseLog& log, const FiniteGroupoid& G, const Ruth2& r, int top) {
  const NerveTower T(G, top + 1);
  const auto les = regularLes(T, r, top);
  log.expect(les.cylinder.acyclic, "cylinder not acyclic: " + suite::list(les.cylinder.dims));
  log.expect(les.cylinder.homotopyIdentity, "cylinder homotopy identity fails");
  log.expect(les.cylinder.barHomotopyIdentity, "bar homotopy identity fails");
  log.expect(les.srZero, "S o R != 0");
  log.expect(les.firstSesExact, "first short exact sequence not exact" + (les.failure.empty() ? "" : ": " + les.failure));
  log.expect(les.secondSesExact, "second short exact sequence not exact");
  log.expect(les.connectingIso, "connecting map of the second sequence is not invertible");
  log.expect(les.sequence.exact(), suite::firstInexact(les.sequence.exactness));
}

inline SuiteResult lesRegularSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  const int top = opt.topDegree;
  for (auto& in : suite::inputs(opt)) {
    auto r = std::make_shared<Ruth2>(suite::asRuth(in));
    auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
    cases.push_back({suite::ruthLabel(in), [G, r, top](CaseLog& log) { regularExample(log, *G, *r, top); }});
  }
  if (opt.builtin) {
    Rng rng(opt.seed ^ 0x1e5);
    for (int i = 0; i < opt.counts.lesRandom; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, top + 1));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G));
      cases.push_back({"random regular RUTH " + std::to_string(i), [G, r, top](CaseLog& log) { regularExample(log, *G, *r, top); }});
    }
  }
  return runCases("les-regular", opt.seed, cases, opt.parallel);
}

// ---------------------------------------------------------------------------
// les-low: the six-term sequence through the invariant normal sections.

inline void lowDegreeExample(CaseLog& log, const FiniteGroupoid& G, const Ruth2& r) {
  const NerveTower T(G, 3);
  const auto low = lowDegreeCheck(T, r);
  for (const auto& n : low.sequence.exactness.nodes)
    log.expect(n.exact, "not exact at " + n.label + " (image " + std::to_string(n.imageIn) + ", kernel " +
                            std::to_string(n.kernelOut) + ")");
  if (low.curvatureAgrees) log.expect(*low.curvatureAgrees, "degree-zero curvature differs from the snake map");
  // Finite groupoids: H^1(iso) = H^2(iso) = H^2(E) = H^1(nu) = 0 and
  // H^1(E) = invariant normal sections.
  const auto& L = low.sequence.labels;
  const auto& D = low.sequence.dims;
  std::size_t h1 = 0, normal = 0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i] == "H^1(iso)" || L[i] == "H^2(iso)" || L[i] == "H^2(E)" || L[i] == "H^1(nu)")
      log.expect(D[i] == 0, L[i] + " has dimension " + std::to_string(D[i]));
    if (L[i] == "H^1(E)") h1 = D[i];
    if (L[i] == "Gamma(nu)^inv") normal = D[i];
  }
  log.expect(h1 == normal, "H^1(E) and invariant normal sections differ");
  log.expect(normal == invariantNormalSections(T, r).dim, "node dimension differs from the invariant normal sections");
}

inline SuiteResult lesLowSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  for (auto& in : suite::inputs(opt)) {
    auto r = std::make_shared<Ruth2>(suite::asRuth(in));
    auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
    cases.push_back({suite::ruthLabel(in), [G, r](CaseLog& log) { lowDegreeExample(log, *G, *r); }});
  }
  if (opt.builtin) {
    Rng rng(opt.seed ^ 0x10f);
    for (int i = 0; i < opt.counts.lowRandom; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, 3));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G));
      cases.push_back({"random RUTH " + std::to_string(i), [G, r](CaseLog& log) { lowDegreeExample(log, *G, *r); }});
    }
  }
  return runCases("les-low", opt.seed, cases, opt.parallel);
}

// ---------------------------------------------------------------------------
// cone: the total complex of a cone RUTH is the mapping cone; for partial = 0
// the connecting map is the cup product with the curvature.

inline void coneExample(CaseLog& log, const FiniteGroupoid& G, const Representation& a, const Representation& b,
                        const std::vector<Matrix>& rho, int top) {
  const NerveTower T(G, top + 1);
  const auto c = actionConeCheck(T, a, b, rho, top);
  log.expect(c.entrywiseEqual, "total complex differs from the mapping cone: " + c.mismatch);
  log.expect(c.sequence.exact(), suite::firstInexact(c.sequence.exactness));
}

inline void curvatureExample(CaseLog& log, const FiniteGroupoid& G, const Ruth2& r, int top) {
  const NerveTower T(G, top + 1);
  const auto c = curvatureCupCheck(T, r, top);
  log.expect(c.cocycle, "curvature is not a 2-cocycle in Hom(E1, E0)");
  const bool coh = kCurvatureCupSign > 0 ? c.matchesPlus : c.matchesMinus;
  const bool chain = kCurvatureCupSign > 0 ? c.chainPlus : c.chainMinus;
  log.expect(coh, "connecting map differs from the cup product with sign " + std::to_string(kCurvatureCupSign));
  log.expect(chain, "cochain-level connecting map differs from the cup product with sign " + std::to_string(kCurvatureCupSign));
  if (c.chainPlus != c.chainMinus) log.notes.push_back(log.label + ": curvature sign discriminated");
}

inline SuiteResult coneSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  const int top = opt.topDegree;
  for (auto& in : suite::inputs(opt)) {
    auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
    if (in.rep) {
      auto E = std::make_shared<Representation>(*in.rep);
      for (int scalar : {0, 1}) {
        std::vector<Matrix> rho;
        for (std::size_t x = 0; x < G->numObjects(); ++x)
          rho.push_back(Rational(scalar) * Matrix::identity(E->bundle.dims[x]));
        cases.push_back({in.label + " (cone of " + std::to_string(scalar) + " * id)",
                         [G, E, rho, top](CaseLog& log) { coneExample(log, *G, *E, *E, rho, top); }});
      }
    }
    if (in.ruth) {
      const bool flat = std::all_of(in.ruth->partial.begin(), in.ruth->partial.end(), [](const Matrix& m) { return m.isZero(); });
      auto r = std::make_shared<Ruth2>(*in.ruth);
      if (flat) cases.push_back({in.label + " (curvature)", [G, r, top](CaseLog& log) { curvatureExample(log, *G, *r, top); }});
    }
  }
  if (opt.builtin) {
    Rng rng(opt.seed ^ 0xc0e);
    for (int i = 0; i < opt.counts.coneRandom; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, top + 1));
      auto a = std::make_shared<Representation>(randomRep(rng, *G));
      auto b = std::make_shared<Representation>(randomRep(rng, *G));
      auto rho = std::make_shared<std::vector<Matrix>>(randomEquivariant(rng, *G, *a, *b));
      cases.push_back({"random equivariant map " + std::to_string(i),
                       [G, a, b, rho, top](CaseLog& log) { coneExample(log, *G, *a, *b, *rho, top); }});
    }
    for (int i = 0; i < opt.counts.curvatureRandom; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, suite::kNerveCap, top + 1));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G, {true, true, 2}));
      cases.push_back({"random RUTH with zero boundary " + std::to_string(i),
                       [G, r, top](CaseLog& log) { curvatureExample(log, *G, *r, top); }});
    }
  }
  auto res = runCases("cone", opt.seed, cases, opt.parallel);
  const auto discriminated = static_cast<std::size_t>(std::count_if(
      res.notes.begin(), res.notes.end(), [](const std::string& n) { return n.ends_with("curvature sign discriminated"); }));
  std::erase_if(res.notes, [](const std::string& n) { return n.ends_with("curvature sign discriminated"); });
  res.notes.push_back("curvature sign " + std::to_string(kCurvatureCupSign) + " separated from its negative in " +
                      std::to_string(discriminated) + " cases");
  return res;
}

// ---------------------------------------------------------------------------
// morita: cohomology against pullbacks, Cech groupoids and gauge groupoids.

inline void moritaExpect(CaseLog& log, const MoritaReport& m, const std::string& what) {
  log.expect(m.equal, what + " dims " + suite::list(m.leftDims) + " vs " + suite::list(m.rightDims));
  if (m.psiPiIdentity) log.expect(*m.psiPiIdentity, what + ": Psi o pi* is not the identity");
}

/// Free actions and group representations used for the gauge comparison.
inline std::vector<std::pair<GroupAction, GroupRep>> gaugePairs() {
  auto regularAction = [](const FiniteGroup& K, int copies) {
    GroupAction A{K, {}, std::vector<std::vector<int>>(K.order())};
    for (int c = 0; c < copies; ++c)
      for (std::size_t x = 0; x < K.order(); ++x) A.points.push_back("c" + std::to_string(c) + K.elements[x]);
    for (std::size_t g = 0; g < K.order(); ++g)
      for (int c = 0; c < copies; ++c)
        for (std::size_t x = 0; x < K.order(); ++x)
          A.act[g].push_back(c * static_cast<int>(K.order()) + K.mul[g][x]);
    A.check();
    return A;
  };
  auto trivial = [](const FiniteGroup& K) { return GroupRep{1, std::vector<Matrix>(K.order(), Matrix::identity(1))}; };
  auto regular = [](const FiniteGroup& K) {
    GroupRep V{K.order(), {}};
    for (std::size_t g = 0; g < K.order(); ++g) {
      MatrixBuilder mb(K.order(), K.order());
      for (std::size_t x = 0; x < K.order(); ++x) mb.add(static_cast<std::size_t>(K.mul[g][x]), x, Rational(1));
      V.maps.push_back(std::move(mb).build());
    }
    return V;
  };
  const FiniteGroup z2 = cyclicGroup(2), z3 = cyclicGroup(3), v4 = productGroup(z2, z2), s3 = symmetricGroup(3);
  return {{freeZ2OnFour(), trivial(z2)},
          {freeZ2OnFour(), regular(z2)},
          {regularAction(z3, 2), regular(z3)},
          {regularAction(v4, 1), regular(v4)},
          {regularAction(s3, 1), trivial(s3)}};
}

inline SuiteResult moritaSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  const int top = std::min(opt.topDegree, 3);
  constexpr std::size_t cap = 4000;
  const auto inputs = suite::inputs(opt);
  for (std::size_t n = 0; n < inputs.size(); ++n) {
    const auto& in = inputs[n];
    const bool user = opt.input && n + 1 == inputs.size();
    auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
    auto E = std::make_shared<Representation>(in.rep ? *in.rep : trivialRep(in.groupoid));
    auto r = in.ruth ? std::make_shared<Ruth2>(*in.ruth) : nullptr;
    // Defaults: a surjection doubling the first object, and the cover by all
    // objects together with the first object alone.
    Surjection s;
    if (user && opt.surjection) {
      s = *opt.surjection;
    } else {
      for (std::size_t x = 0; x < G->numObjects(); ++x) {
        s.P.push_back("p" + std::to_string(x));
        s.map[s.P.back()] = G->objectId(static_cast<Object>(x));
      }
      s.P.push_back("p*");
      s.map["p*"] = G->objectId(0);
    }
    std::vector<std::vector<std::string>> cover;
    if (user && opt.cover) {
      cover = *opt.cover;
    } else {
      cover.emplace_back();
      for (std::size_t x = 0; x < G->numObjects(); ++x) cover[0].push_back(G->objectId(static_cast<Object>(x)));
      cover.push_back({G->objectId(0)});
    }
    if (nerveSize(pullbackGroupoid(*G, s.P, s.map).groupoid, top + 1) <= cap)
      cases.push_back({in.label + " (pullback)", [G, E, r, s, top](CaseLog& log) {
                         moritaExpect(log, moritaPullback(*G, s.P, s.map, *E, top), "representation");
                         if (r) moritaExpect(log, moritaPullback(*G, s.P, s.map, *r, top), "RUTH");
                       }});
    if (nerveSize(cechGroupoid(*G, cover).pullback.groupoid, top + 1) <= cap)
      cases.push_back({in.label + " (Cech)", [G, E, r, cover, top](CaseLog& log) {
                         moritaExpect(log, moritaCech(*G, cover, *E, top), "representation");
                         if (r) moritaExpect(log, moritaCech(*G, cover, *r, top), "RUTH");
                       }});
  }
  if (opt.builtin) {
    Rng rng(opt.seed ^ 0x3017a);
    for (int i = 0; i < opt.counts.moritaPullback; ++i) {
      std::shared_ptr<FiniteGroupoid> G;
      Surjection s;
      do {
        G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 12, cap, top + 1));
        s = randomSurjection(rng, *G);
      } while (nerveSize(pullbackGroupoid(*G, s.P, s.map).groupoid, top + 1) > cap);
      auto E = std::make_shared<Representation>(suite::nonzeroRandomRep(rng, *G));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G, {true, false, 1}));
      cases.push_back({"random surjection " + std::to_string(i), [G, E, r, s, top](CaseLog& log) {
                         moritaExpect(log, moritaPullback(*G, s.P, s.map, *E, top), "representation");
                         moritaExpect(log, moritaPullback(*G, s.P, s.map, *r, top), "RUTH");
                       }});
    }
    for (int i = 0; i < opt.counts.moritaCech; ++i) {
      std::shared_ptr<FiniteGroupoid> G;
      std::vector<std::vector<std::string>> cover;
      do {
        G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 12, cap, top + 1));
        cover = randomCover(rng, *G);
      } while (nerveSize(cechGroupoid(*G, cover).pullback.groupoid, top + 1) > cap);
      auto E = std::make_shared<Representation>(suite::nonzeroRandomRep(rng, *G));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G, {true, false, 1}));
      cases.push_back({"random cover " + std::to_string(i), [G, E, r, cover, top](CaseLog& log) {
                         moritaExpect(log, moritaCech(*G, cover, *E, top), "representation");
                         moritaExpect(log, moritaCech(*G, cover, *r, top), "RUTH");
                       }});
    }
    int i = 0;
    for (auto& [A, V] : gaugePairs()) {
      auto a = std::make_shared<GroupAction>(A);
      auto v = std::make_shared<GroupRep>(V);
      cases.push_back({"gauge pair " + std::to_string(i++) + " (order " + std::to_string(A.group.order()) + ", " +
                           std::to_string(A.points.size()) + " points, dim " + std::to_string(V.dim) + ")",
                       [a, v, top](CaseLog& log) { moritaExpect(log, moritaGauge(*a, *v, top), "gauge"); }});
    }
  }
  return runCases("morita", opt.seed, cases, opt.parallel);
}

// ---------------------------------------------------------------------------
// appendix: groupoids from source and division maps.

/// Changes one entry of a division presentation: an mbar value, a source, or
/// drops one mbar triple.
inline std::string corruptDivision(Rng& rng, DivisionPresentation& d) {
  const int kind = uniformInt(rng, 0, 2);
  if (kind == 0 && d.arrows.size() > 1) {
    auto& t = d.mbar[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(d.mbar.size()) - 1))];
    std::string v;
    do v = d.arrows[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(d.arrows.size()) - 1))];
    while (v == t[2]);
    const std::string what = "mbar(" + t[0] + "," + t[1] + ") := " + v;
    t[2] = v;
    return what;
  }
  // With a single arrow, moving its source to a fresh object only renames the
  // object; drop the table entry instead.
  if (kind == 1 && d.arrows.size() > 1) {
    const auto& g = d.arrows[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(d.arrows.size()) - 1))];
    std::set<std::string> objects;
    for (const auto& [a, x] : d.source) objects.insert(x);
    std::vector<std::string> others;
    for (const auto& x : objects)
      if (x != d.source[g]) others.push_back(x);
    const std::string y =
        others.empty() ? std::string("fresh-object") : others[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(others.size()) - 1))];
    d.source[g] = y;
    return "s(" + g + ") := " + y;
  }
  const auto i = static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(d.mbar.size()) - 1));
  const std::string what = "dropped mbar(" + d.mbar[i][0] + "," + d.mbar[i][1] + ")";
  d.mbar.erase(d.mbar.begin() + static_cast<std::ptrdiff_t>(i));
  return what;
}

inline void roundTripExample(CaseLog& log, const FiniteGroupoid& G) {
  const DivisionPresentation d = toDivision(G);
  const auto v = validateDivision(d);
  if (!log.expect(v.valid(), "division presentation invalid: " + v.summary())) return;
  log.expect(fromDivision(d) == G, "reconstruction differs from the original groupoid");
  for (int k = 1; k <= 3 && nerveSize(G, k) <= 20000; ++k)
    log.expect(checkChangeOfVariables(G, k), "change of variables fails in degree " + std::to_string(k));
}

inline SuiteResult appendixSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  for (auto& in : suite::inputs(opt)) {
    auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
    cases.push_back({in.label, [G](CaseLog& log) { roundTripExample(log, *G); }});
  }
  if (opt.division) {
    auto d = std::make_shared<DivisionPresentation>(*opt.division);
    cases.push_back({"division input", [d](CaseLog& log) {
                       const auto v = validateDivision(*d);
                       if (!log.expect(v.valid(), v.summary())) return;
                       const FiniteGroupoid G = fromDivision(*d);
                       log.expect(toDivision(G).mbar.size() == d->mbar.size(), "reconstructed division table differs");
                     }});
  }
  if (opt.builtin) {
    Rng rng(opt.seed ^ 0xa99);
    for (int i = 0; i < opt.counts.roundTrips; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30));
      cases.push_back({"random round trip " + std::to_string(i), [G](CaseLog& log) { roundTripExample(log, *G); }});
    }
    for (int i = 0; i < opt.counts.corruptions; ++i) {
      const FiniteGroupoid G = randomGroupoid(rng, 30);
      auto d = std::make_shared<DivisionPresentation>(toDivision(G));
      const std::string what = corruptDivision(rng, *d);
      cases.push_back({"corruption " + std::to_string(i) + " [" + what + "]", [d](CaseLog& log) {
                         const auto v = validateDivision(*d);
                         bool rejected = !v.valid();
                         std::string axiom = rejected ? v.violations.front().axiom : "";
                         if (!rejected) {
                           try {
                             (void)fromDivision(*d);
                           } catch (const GroupoidError& e) {
                             rejected = true;
                             axiom = "reconstruction";
                           }
                         }
                         if (log.expect(rejected, "corrupted presentation accepted"))
                           log.notes.push_back("rejected by " + axiom);
                       }});
    }
  }
  auto res = runCases("appendix", opt.seed, cases, opt.parallel);
  std::map<std::string, int> byAxiom;
  for (const auto& n : res.notes)
    if (n.starts_with("rejected by ")) ++byAxiom[n.substr(12)];
  std::erase_if(res.notes, [](const std::string& n) { return n.starts_with("rejected by "); });
  for (const auto& [a, c] : byAxiom) res.notes.push_back(std::to_string(c) + " corruptions rejected by " + a);
  return res;
}

// ---------------------------------------------------------------------------
// dgmodule: Leibniz rule, normalized subcomplexes, and D^2 = 0 against the
// structure equations.

inline void normalizedExample(CaseLog& log, const SuiteInput& in, int top) {
  const NerveTower T(in.groupoid, top + 1);
  if (in.rep) {
    auto full = share(repComplex(T, *in.rep, top));
    const auto sub = normalizedRepSubcomplex(T, *in.rep, full);
    const auto a = cohomologyDims(*full, top), b = cohomologyDims(*sub.sub, top);
    log.expect(a == b, "normalized dims " + suite::list(b) + " vs full " + suite::list(a));
  }
  if (in.ruth) {
    auto full = share(ruthComplex(T, *in.ruth, top));
    const auto sub = normalizedRuthSubcomplex(T, *in.ruth, full);
    const auto a = cohomologyDims(*full, top), b = cohomologyDims(*sub.sub, top);
    log.expect(a == b, "normalized dims " + suite::list(b) + " vs full " + suite::list(a));
  }
}

inline void structureEquationExample(CaseLog& log, const FiniteGroupoid& G, const Ruth2& r) {
  const NerveTower T(G, 3);
  const auto v = validateRuth(G, r);
  const bool d2 = structureOperatorSquaresToZero(T, r);
  log.expect(v.valid() == d2, std::string("structure equations ") + (v.valid() ? "hold" : "fail (" + v.summary() + ")") +
                                  " but D^2 " + (d2 ? "= 0" : "!= 0"));
  log.notes.push_back(v.valid() ? "valid RUTH" : "invalid RUTH");
}

inline SuiteResult dgmoduleSuite(const SuiteOptions& opt) {
  std::vector<SuiteCase> cases;
  const int top = opt.topDegree;
  const auto inputs = suite::inputs(opt);
  for (auto& in : inputs) {
    cases.push_back({in.label + " (normalized)", [in, top](CaseLog& log) { normalizedExample(log, in, top); }});
    if (in.ruth) {
      auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
      auto r = std::make_shared<Ruth2>(*in.ruth);
      cases.push_back({in.label + " (D^2)", [G, r](CaseLog& log) { structureEquationExample(log, *G, *r); }});
    }
  }
  Rng rng(opt.seed ^ 0xd9);
  // Leibniz pairs spread over the groupoids of the inputs with random
  // coefficients; degrees k + k' + 1 <= top.
  if (!inputs.empty()) {
    const int pairs = opt.builtin ? opt.counts.leibnizPairs : 20;
    for (int i = 0; i < pairs; ++i) {
      const auto& in = inputs[static_cast<std::size_t>(i) % inputs.size()];
      auto G = std::make_shared<FiniteGroupoid>(in.groupoid);
      auto E = std::make_shared<Representation>(i % 2 && in.rep ? *in.rep : suite::nonzeroRandomRep(rng, *G));
      const int k = uniformInt(rng, 0, top - 1);
      const int kp = uniformInt(rng, 0, top - 1 - k);
      const std::uint64_t caseSeed = rng();
      cases.push_back({"Leibniz pair " + std::to_string(i) + " on " + in.label + " (degrees " + std::to_string(k) + ", " +
                           std::to_string(kp) + ")",
                       [G, E, k, kp, caseSeed](CaseLog& log) {
                         Rng local(caseSeed);
                         const NerveTower T(*G, k + kp + 1);
                         const DenseVector u = suite::randomCochain(local, CochainSpace(T.level(k), E->bundle).dim());
                         const DenseVector f = suite::randomCochain(local, T.level(kp).size());
                         log.expect(leibnizHolds(T, *E, u, k, f, kp, leibnizSign(k)), "Leibniz identity fails");
                         if (!leibnizHolds(T, *E, u, k, f, kp, -leibnizSign(k))) log.notes.push_back("Leibniz sign discriminated");
                       }});
    }
  }
  if (opt.builtin) {
    for (int i = 0; i < opt.counts.validRuths + opt.counts.perturbedRuths; ++i) {
      auto G = std::make_shared<FiniteGroupoid>(randomGroupoid(rng, 30, 20000, 3));
      auto r = std::make_shared<Ruth2>(randomRuth(rng, *G, {i % 3 != 0, i % 4 == 0, 2}));
      const bool perturb = i >= opt.counts.validRuths;
      if (perturb && !perturbRuth(rng, *G, *r)) {
        --i;  // nothing to perturb; draw again
        continue;
      }
      cases.push_back({std::string(perturb ? "perturbed" : "valid") + " RUTH " + std::to_string(i),
                       [G, r](CaseLog& log) { structureEquationExample(log, *G, *r); }});
    }
  }
  auto res = runCases("dgmodule", opt.seed, cases, opt.parallel);
  std::map<std::string, int> tally;
  for (const auto& n : res.notes) ++tally[n];
  res.notes.clear();
  for (const auto& [n, c] : tally) res.notes.push_back(std::to_string(c) + " x " + n);
  return res;
}

inline SuiteResult runSuite(const std::string& name, const SuiteOptions& opt) {
  if (name == "vanish") return vanishSuite(opt);
  if (name == "les-regular") return lesRegularSuite(opt);
  if (name == "les-low") return lesLowSuite(opt);
  if (name == "cone") return coneSuite(opt);
  if (name == "morita") return moritaSuite(opt);
  if (name == "appendix") return appendixSuite(opt);
  if (name == "dgmodule") return dgmoduleSuite(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace gpdcoh
