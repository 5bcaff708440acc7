#pragma once

// Built-in examples and seeded random generators for groupoids,
// representations, equivariant maps and twisted representations up to homotopy.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cochain.hpp"
#include "constructors.hpp"

namespace gpdcoh {

struct Example {
  std::string name;
  std::string description;
  FiniteGroupoid groupoid;
  std::optional<Representation> rep;
  std::optional<Ruth2> ruth;
};

inline GroupAction swapAction() {
  GroupAction A{cyclicGroup(2), {"p", "q"}, {{0, 1}, {1, 0}}};
  A.check();
  return A;
}

/// Z/2 acting freely on four points {a, b, c, d} by a <-> b, c <-> d.
inline GroupAction freeZ2OnFour() {
  GroupAction A{cyclicGroup(2), {"a", "b", "c", "d"}, {{0, 1, 2, 3}, {1, 0, 3, 2}}};
  A.check();
  return A;
}

inline Representation signRep(const FiniteGroupoid& G, const std::function<bool(Arrow)>& odd) {
  return lineRep(G, [&](Arrow g) { return odd(g) ? Rational(-1) : Rational(1); });
}

inline const std::vector<std::string>& builtinNames() {
  static const std::vector<std::string> names{"zmod2", "zmod3",       "s3",        "pair2",        "pair3",  "unit3",
                                              "act-z2-swap", "gauge-z2-p4", "cech-line", "cone-trivial", "cone-id", "twisted-cone"};
  return names;
}

inline std::vector<Matrix> constantMaps(const FiniteGroupoid& G, const Matrix& m) {
  return std::vector<Matrix>(G.numObjects(), m);
}

inline Example builtinExample(const std::string& name) {
  auto withTrivial = [&](std::string desc, FiniteGroupoid G) {
    Representation E = trivialRep(G);
    return Example{name, std::move(desc), std::move(G), std::move(E), std::nullopt};
  };
  if (name == "zmod2") return withTrivial("cyclic group of order 2, trivial line", groupGroupoid(cyclicGroup(2)));
  if (name == "zmod3") return withTrivial("cyclic group of order 3, trivial line", groupGroupoid(cyclicGroup(3)));
  if (name == "s3") return withTrivial("symmetric group on three letters, trivial line", groupGroupoid(symmetricGroup(3)));
  if (name == "pair2") return withTrivial("pair groupoid on two objects, trivial line", pairGroupoid(2));
  if (name == "pair3") return withTrivial("pair groupoid on three objects, trivial line", pairGroupoid(3));
  if (name == "unit3") return withTrivial("unit groupoid on three objects, trivial line", unitGroupoid(3));
  if (name == "act-z2-swap") return withTrivial("Z/2 swapping two points, trivial line", actionGroupoid(swapAction()));
  if (name == "gauge-z2-p4")
    return withTrivial("gauge groupoid of Z/2 acting freely on four points, trivial line",
                       gaugeGroupoid(freeZ2OnFour()).groupoid);
  if (name == "cech-line")
    return withTrivial("Cech groupoid of the unit groupoid on {1,2,3} for the cover {1,2},{2,3}, trivial line",
                       cechGroupoid(unitGroupoid(std::vector<std::string>{"1", "2", "3"}), {{"1", "2"}, {"2", "3"}})
                           .pullback.groupoid);
  if (name == "cone-trivial" || name == "cone-id" || name == "twisted-cone") {
    FiniteGroupoid G = actionGroupoid(swapAction());
    Example ex{name, "", G, std::nullopt, std::nullopt};
    if (name == "cone-trivial") {
      ex.description = "cone of the zero map between trivial lines over Z/2 swapping two points";
      ex.ruth = coneRuth(G, trivialRep(G), trivialRep(G), constantMaps(G, Matrix::zero(1, 1)));
    } else if (name == "cone-id") {
      ex.description = "cone of the identity of the trivial line over Z/2 swapping two points";
      ex.ruth = coneRuth(G, trivialRep(G), trivialRep(G), constantMaps(G, Matrix::identity(1)));
    } else {
      ex.description = "gauge twist of the cone of (1 0) : Q^2 -> Q over Z/2 swapping two points";
      Ruth2 cone = coneRuth(G, trivialRep(G, 2), trivialRep(G), constantMaps(G, Matrix::fromDense({{1, 0}})));
      std::vector<Matrix> eta;
      for (std::size_t g = 0; g < G.numArrows(); ++g) {
        const Arrow gg = static_cast<Arrow>(g);
        eta.push_back(G.isUnit(gg) ? Matrix::zero(2, 1) : Matrix::fromDense({{static_cast<long>(g)}, {1}}));
      }
      ex.ruth = gaugeTwist(G, cone, eta);
    }
    return ex;
  }
  throw std::invalid_argument("unknown example '" + name + "'");
}

// ---------------------------------------------------------------------------
// Random generators. All draws go through one std::mt19937_64 so a seed
// reproduces a whole suite.

using Rng = std::mt19937_64;

inline int uniformInt(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational smallRational(Rng& rng, int bound = 2) { return Rational(uniformInt(rng, -bound, bound)); }

inline Matrix randomMatrix(Rng& rng, std::size_t rows, std::size_t cols, int bound = 2) {
  MatrixBuilder mb(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) mb.add(r, c, smallRational(rng, bound));
  return std::move(mb).build();
}

/// Product of a random unit lower and a random unit upper triangular matrix.
inline Matrix randomInvertible(Rng& rng, std::size_t n) {
  MatrixBuilder lo(n, n), up(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    lo.add(i, i, Rational(1));
    up.add(i, i, Rational(1));
    for (std::size_t j = 0; j < i; ++j) {
      lo.add(i, j, smallRational(rng, 1));
      up.add(j, i, smallRational(rng, 1));
    }
  }
  return std::move(lo).build() * std::move(up).build();
}

inline FiniteGroup randomSmallGroup(Rng& rng, int maxOrder) {
  std::vector<FiniteGroup> pool;
  for (int n = 1; n <= std::min(maxOrder, 4); ++n) pool.push_back(cyclicGroup(n));
  if (maxOrder >= 4) pool.push_back(productGroup(cyclicGroup(2), cyclicGroup(2)));
  if (maxOrder >= 6) pool.push_back(symmetricGroup(3));
  return pool[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(pool.size()) - 1))];
}

struct GroupoidComponent {
  int objects;
  FiniteGroup group;
};

/// Disjoint union of transitive groupoids pair(n) x K with shuffled opaque ids.
/// Arrow (i, j, k) : j -> i composes as (i, j, k)(j, l, k') = (i, l, k k').
inline FiniteGroupoid transitiveUnion(const std::vector<GroupoidComponent>& comps, Rng* rng = nullptr) {
  struct A {
    std::size_t c;
    int i, j, k;
  };
  std::vector<std::string> objNames, arrowNames;
  std::vector<std::vector<int>> objIndex(comps.size());
  std::vector<A> arrows;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int i = 0; i < comps[c].objects; ++i) {
      objIndex[c].push_back(static_cast<int>(objNames.size()));
      objNames.push_back("c" + std::to_string(c) + "x" + std::to_string(i));
    }
    for (int i = 0; i < comps[c].objects; ++i)
      for (int j = 0; j < comps[c].objects; ++j)
        for (std::size_t k = 0; k < comps[c].group.order(); ++k) arrows.push_back({c, i, j, static_cast<int>(k)});
  }
  std::vector<std::size_t> perm(arrows.size());
  for (std::size_t a = 0; a < perm.size(); ++a) perm[a] = a;
  if (rng) std::shuffle(perm.begin(), perm.end(), *rng);
  arrowNames.resize(arrows.size());
  for (std::size_t a = 0; a < arrows.size(); ++a) arrowNames[a] = "g" + std::to_string(perm[a]);
  std::map<std::tuple<std::size_t, int, int, int>, std::size_t> lookup;
  for (std::size_t a = 0; a < arrows.size(); ++a) lookup[{arrows[a].c, arrows[a].i, arrows[a].j, arrows[a].k}] = a;
  GroupoidData d;
  d.objects = objNames;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const auto& x = arrows[a];
    d.arrows.push_back({arrowNames[a], objNames[static_cast<std::size_t>(objIndex[x.c][static_cast<std::size_t>(x.j)])],
                        objNames[static_cast<std::size_t>(objIndex[x.c][static_cast<std::size_t>(x.i)])]});
  }
  for (const auto& g : arrows)
    for (const auto& h : arrows) {
      if (g.c != h.c || g.j != h.i) continue;
      const int k = comps[g.c].group.mul[static_cast<std::size_t>(g.k)][static_cast<std::size_t>(h.k)];
      d.compose.push_back({arrowNames[lookup.at({g.c, g.i, g.j, g.k})], arrowNames[lookup.at({h.c, h.i, h.j, h.k})],
                           arrowNames[lookup.at({g.c, g.i, h.j, k})]});
    }
  return FiniteGroupoid::fromData(d);
}

/// Number of composable k-strings (objects for k = 0), from powers of the
/// arrow-count matrix.
inline std::size_t nerveSize(const FiniteGroupoid& G, int k) {
  const std::size_t n = G.numObjects();
  std::vector<std::size_t> paths(n, 1);  // strings ending (on the left) at each object
  for (int step = 0; step < k; ++step) {
    std::vector<std::size_t> next(n, 0);
    for (std::size_t g = 0; g < G.numArrows(); ++g)
      next[static_cast<std::size_t>(G.tgt(static_cast<Arrow>(g)))] += paths[static_cast<std::size_t>(G.src(static_cast<Arrow>(g)))];
    paths = std::move(next);
  }
  std::size_t total = 0;
  for (auto p : paths) total += p;
  return total;
}

/// Random groupoid with at most `maxArrows` arrows; `maxLevel` bounds the
/// size of the nerve at degree `level` (0 for no bound).
inline FiniteGroupoid randomGroupoid(Rng& rng, std::size_t maxArrows, std::size_t maxLevel = 0, int level = 0) {
  while (true) {
    std::vector<GroupoidComponent> comps;
    const int nc = uniformInt(rng, 1, 3);
    std::size_t arrows = 0;
    for (int c = 0; c < nc; ++c) {
      GroupoidComponent comp{uniformInt(rng, 1, 3), randomSmallGroup(rng, 6)};
      const std::size_t a = static_cast<std::size_t>(comp.objects * comp.objects) * comp.group.order();
      if (arrows + a > maxArrows) continue;
      arrows += a;
      comps.push_back(std::move(comp));
    }
    if (comps.empty()) continue;
    FiniteGroupoid G = transitiveUnion(comps, &rng);
    if (maxLevel && nerveSize(G, level) > maxLevel) continue;
    return G;
  }
}

/// Random genuine representation: the transport along the components of
/// `transitiveUnion`-shaped groupoids is recovered from the groupoid itself by
/// choosing a base object per orbit and an arrow from it to every object.
/// The isotropy group at the base acts by a random sum of permutation,
/// sign and trivial pieces; fibers are conjugated by random invertibles.
inline Representation randomRep(Rng& rng, const FiniteGroupoid& G, std::size_t maxDim = 2) {
  const auto orb = G.orbits();
  std::vector<Arrow> fromBase(G.numObjects(), kUndefined);
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const Object b = orb[x];
    for (Arrow a : G.arrowsWithSource(b))
      if (G.tgt(a) == static_cast<Object>(x)) {
        fromBase[x] = a;
        break;
      }
  }
  // Isotropy representation at each base: sum of characters chi(g) = +-1 given
  // by a random homomorphism to {+-1}, found by trying random sign labelings.
  std::map<Object, std::vector<Matrix>> iso;
  std::map<Object, std::size_t> dimOf;
  Representation out;
  out.bundle.dims.assign(G.numObjects(), 0);
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const Object b = orb[x];
    if (!dimOf.count(b)) dimOf[b] = static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(maxDim)));
    out.bundle.dims[x] = dimOf[b];
  }
  // Characters of the isotropy group at b: homomorphisms to {+1,-1}.
  auto characters = [&](Object b) {
    std::vector<Arrow> loops;
    for (Arrow a : G.arrowsWithSource(b))
      if (G.tgt(a) == b) loops.push_back(a);
    std::vector<std::map<Arrow, int>> chars;
    const std::size_t n = loops.size();
    if (n > 12) return chars;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::map<Arrow, int> chi;
      for (std::size_t i = 0; i < n; ++i) chi[loops[i]] = (mask >> i & 1) ? -1 : 1;
      bool ok = true;
      for (Arrow p : loops)
        for (Arrow q : loops)
          if (chi[G.compose(p, q)] != chi[p] * chi[q]) ok = false;
      if (ok) chars.push_back(std::move(chi));
    }
    return chars;
  };
  std::map<Object, std::vector<std::map<Arrow, int>>> chosen;
  for (const auto& [b, d] : dimOf) {
    auto chars = characters(b);
    for (std::size_t i = 0; i < d; ++i) chosen[b].push_back(chars[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(chars.size()) - 1))]);
  }
  std::vector<Matrix> conj(G.numObjects()), conjInv(G.numObjects());
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    conj[x] = randomInvertible(rng, out.bundle.dims[x]);
    conjInv[x] = *inverse(conj[x]);
  }
  // g : x -> y becomes the loop a_y^{-1} g a_x at the base.
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    const Object x = G.src(gg), y = G.tgt(gg), b = orb[static_cast<std::size_t>(x)];
    const Arrow loop = G.compose(G.inverse(fromBase[static_cast<std::size_t>(y)]), G.compose(gg, fromBase[static_cast<std::size_t>(x)]));
    MatrixBuilder diag(dimOf[b], dimOf[b]);
    for (std::size_t i = 0; i < dimOf[b]; ++i) diag.add(i, i, Rational(chosen[b][i].at(loop)));
    out.maps.push_back(conj[static_cast<std::size_t>(y)] * std::move(diag).build() * conjInv[static_cast<std::size_t>(x)]);
  }
  return out;
}

/// Random element of Hom_G(a, b): a random combination of a basis of the
/// invariant sections of Hom(a, b).
inline std::vector<Matrix> randomEquivariant(Rng& rng, const FiniteGroupoid& G, const Representation& a,
                                             const Representation& b) {
  const Representation hom = homRep(G, a, b);
  NerveTower T(G, 1);
  const auto ker = kernelBasis(deltaMatrix(T, hom, 0));
  DenseVector xi(CochainSpace(T.level(0), hom.bundle).dim());
  for (const auto& v : ker) {
    const Rational c = smallRational(rng, 2);
    for (const auto& [i, x] : v) xi[i] += c * x;
  }
  std::vector<Matrix> rho;
  CochainSpace cs(T.level(0), hom.bundle);
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const std::size_t rows = b.bundle.dims[x], cols = a.bundle.dims[x];
    MatrixBuilder mb(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) mb.add(r, c, xi[cs.offset(x) + r * cols + c]);
    rho.push_back(std::move(mb).build());
  }
  return rho;
}

/// Random twisting data vanishing on units.
inline std::vector<Matrix> randomEta(Rng& rng, const FiniteGroupoid& G, const VectorBundle& E0, const VectorBundle& E1) {
  std::vector<Matrix> eta;
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    const std::size_t r = E0.dim(G.tgt(gg)), c = E1.dim(G.src(gg));
    eta.push_back(G.isUnit(gg) ? Matrix::zero(r, c) : randomMatrix(rng, r, c, 1));
  }
  return eta;
}

struct RandomRuthOptions {
  bool twist = true;
  bool zeroBoundary = false;
  std::size_t maxDim = 2;
};

/// Gauge twist of the cone of a random equivariant map between random
/// representations; always valid.
inline Ruth2 randomRuth(Rng& rng, const FiniteGroupoid& G, const RandomRuthOptions& opt = {}) {
  const Representation a = randomRep(rng, G, opt.maxDim);
  const Representation b = randomRep(rng, G, opt.maxDim);
  std::vector<Matrix> rho;
  if (opt.zeroBoundary) {
    for (std::size_t x = 0; x < G.numObjects(); ++x) rho.push_back(Matrix::zero(b.bundle.dims[x], a.bundle.dims[x]));
  } else {
    rho = randomEquivariant(rng, G, a, b);
  }
  Ruth2 r = coneRuth(G, a, b, rho);
  if (!opt.twist) return r;
  return gaugeTwist(G, r, randomEta(rng, G, r.E0, r.E1));
}

/// Changes one entry of lambda0, lambda1, K or partial away from the units.
/// Returns false when the data has no entry to change.
inline bool nonEmpty(const Matrix& m) { return m.rows() > 0 && m.cols() > 0; }

inline bool perturbRuth(Rng& rng, const FiniteGroupoid& G, Ruth2& r) {
  struct Slot {
    int kind;  // 0 lambda0, 1 lambda1, 2 K, 3 partial
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    if (G.isUnit(static_cast<Arrow>(g))) continue;
    if (nonEmpty(r.lambda0.maps[g])) slots.push_back({0, g});
    if (nonEmpty(r.lambda1.maps[g])) slots.push_back({1, g});
  }
  const std::size_t m = G.numArrows();
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      if (G.isUnit(static_cast<Arrow>(g)) || G.isUnit(h)) continue;
      const Matrix& k = r.K(static_cast<Arrow>(g), h);
      if (nonEmpty(k)) slots.push_back({2, g * m + static_cast<std::size_t>(h)});
    }
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    if (nonEmpty(r.partial[x])) slots.push_back({3, x});
  if (slots.empty()) return false;
  const Slot s = slots[static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(slots.size()) - 1))];
  Matrix* target = s.kind == 0 ? &r.lambda0.maps[s.index]
                   : s.kind == 1 ? &r.lambda1.maps[s.index]
                   : s.kind == 2 ? &r.curvature[s.index]
                                 : &r.partial[s.index];
  const std::size_t i = static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(target->rows()) - 1));
  const std::size_t j = static_cast<std::size_t>(uniformInt(rng, 0, static_cast<int>(target->cols()) - 1));
  MatrixBuilder mb(target->rows(), target->cols());
  mb.addBlock(0, 0, *target);
  mb.add(i, j, Rational(uniformInt(rng, 0, 1) ? 1 : -1));
  *target = std::move(mb).build();
  return true;
}

/// Random cover of the objects: each set a random subset, then every object
/// is added to a random set if still uncovered.
inline std::vector<std::vector<std::string>> randomCover(Rng& rng, const FiniteGroupoid& G, int maxSets = 3) {
  const int n = uniformInt(rng, 1, maxSets);
  std::vector<std::vector<std::string>> cover(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    bool placed = false;
    for (auto& U : cover)
      if (uniformInt(rng, 0, 2) == 0) {
        U.push_back(G.objectId(static_cast<Object>(x)));
        placed = true;
      }
    if (!placed) cover[static_cast<std::size_t>(uniformInt(rng, 0, n - 1))].push_back(G.objectId(static_cast<Object>(x)));
  }
  std::erase_if(cover, [](const auto& U) { return U.empty(); });
  return cover;
}

inline Surjection randomSurjection(Rng& rng, const FiniteGroupoid& G, int extra = 2) {
  Surjection s;
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    s.P.push_back("p" + std::to_string(x));
    s.map[s.P.back()] = G.objectId(static_cast<Object>(x));
  }
  const int more = uniformInt(rng, 1, extra);
  for (int e = 0; e < more; ++e) {
    s.P.push_back("p" + std::to_string(G.numObjects() + static_cast<std::size_t>(e)));
    s.map[s.P.back()] = G.objectId(static_cast<Object>(uniformInt(rng, 0, static_cast<int>(G.numObjects()) - 1)));
  }
  std::sort(s.P.begin(), s.P.end());
  return s;
}

}  // namespace gpdcoh
