#pragma once

// Standard finite groupoids: groups, pair and unit groupoids, action and gauge
// groupoids, pullbacks along surjections and Cech groupoids of covers.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "groupoid.hpp"

namespace gpdcoh {

/// A finite group given by its multiplication table: mul[a][b] = index of ab.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> mul;

  std::size_t order() const { return elements.size(); }

  int identity() const {
    for (std::size_t e = 0; e < order(); ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < order() && ok; ++a)
        ok = mul[e][a] == static_cast<int>(a) && mul[a][e] == static_cast<int>(a);
      if (ok) return static_cast<int>(e);
    }
    throw GroupoidError("group table has no identity");
  }

  int inverse(int a) const {
    const int e = identity();
    for (std::size_t b = 0; b < order(); ++b)
      if (mul[static_cast<std::size_t>(a)][b] == e) return static_cast<int>(b);
    throw GroupoidError("group element " + elements.at(static_cast<std::size_t>(a)) + " has no inverse");
  }

  int index(const std::string& id) const {
    for (std::size_t i = 0; i < order(); ++i)
      if (elements[i] == id) return static_cast<int>(i);
    throw GroupoidError("unknown group element '" + id + "'");
  }
};

inline FiniteGroup cyclicGroup(int n) {
  FiniteGroup G;
  for (int i = 0; i < n; ++i) G.elements.push_back(std::to_string(i));
  G.mul.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return G;
}

/// Symmetric group on {1..n}; elements are one-line notations such as "213",
/// composed as functions: (ab)(i) = a(b(i)).
inline FiniteGroup symmetricGroup(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  FiniteGroup G;
  for (const auto& p : perms) {
    std::string s;
    for (int v : p) s += static_cast<char>('1' + v);
    G.elements.push_back(s);
  }
  G.mul.assign(perms.size(), std::vector<int>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        c[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      G.mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return G;
}

/// Direct product; element ids are "a.b".
inline FiniteGroup productGroup(const FiniteGroup& A, const FiniteGroup& B) {
  FiniteGroup G;
  const std::size_t nb = B.order();
  for (const auto& a : A.elements)
    for (const auto& b : B.elements) G.elements.push_back(a + "." + b);
  G.mul.assign(G.order(), std::vector<int>(G.order()));
  for (std::size_t x = 0; x < G.order(); ++x)
    for (std::size_t y = 0; y < G.order(); ++y)
      G.mul[x][y] = A.mul[x / nb][y / nb] * static_cast<int>(nb) + B.mul[x % nb][y % nb];
  return G;
}

/// One-object groupoid of a group; the object is "*".
inline FiniteGroupoid groupGroupoid(const FiniteGroup& G) {
  GroupoidData d;
  d.objects = {"*"};
  for (const auto& e : G.elements) d.arrows.push_back({e, "*", "*"});
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      d.compose.push_back({G.elements[a], G.elements[b], G.elements[static_cast<std::size_t>(G.mul[a][b])]});
  return FiniteGroupoid::fromData(d);
}

inline std::string pairArrowId(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

/// Pair groupoid on the given objects: one arrow (a,b) : b -> a for every pair.
inline FiniteGroupoid pairGroupoid(const std::vector<std::string>& objects) {
  GroupoidData d;
  d.objects = objects;
  for (const auto& a : objects)
    for (const auto& b : objects) d.arrows.push_back({pairArrowId(a, b), b, a});
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& c : objects) d.compose.push_back({pairArrowId(a, b), pairArrowId(b, c), pairArrowId(a, c)});
  return FiniteGroupoid::fromData(d);
}

inline std::vector<std::string> numberedObjects(int n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline FiniteGroupoid pairGroupoid(int n) { return pairGroupoid(numberedObjects(n)); }

inline FiniteGroupoid unitGroupoid(const std::vector<std::string>& objects) {
  GroupoidData d;
  d.objects = objects;
  for (const auto& x : objects) {
    d.arrows.push_back({"1_" + x, x, x});
    d.compose.push_back({"1_" + x, "1_" + x, "1_" + x});
  }
  return FiniteGroupoid::fromData(d);
}

inline FiniteGroupoid unitGroupoid(int n) { return unitGroupoid(numberedObjects(n)); }

/// Left action of a finite group on a finite set: act[g][x] = g.x.
struct GroupAction {
  FiniteGroup group;
  std::vector<std::string> points;
  std::vector<std::vector<int>> act;

  void check() const {
    const int e = group.identity();
    for (std::size_t x = 0; x < points.size(); ++x) {
      if (act.at(static_cast<std::size_t>(e)).at(x) != static_cast<int>(x))
        throw GroupoidError("identity does not act trivially on " + points[x]);
      for (std::size_t g = 0; g < group.order(); ++g)
        for (std::size_t h = 0; h < group.order(); ++h)
          if (act[static_cast<std::size_t>(group.mul[g][h])][x] !=
              act[g][static_cast<std::size_t>(act[h][x])])
            throw GroupoidError("not an action: (gh).x != g.(h.x) for g=" + group.elements[g] +
                                ", h=" + group.elements[h] + ", x=" + points[x]);
    }
  }

  bool isFree() const {
    const int e = group.identity();
    for (std::size_t g = 0; g < group.order(); ++g)
      for (std::size_t x = 0; x < points.size(); ++x)
        if (static_cast<int>(g) != e && act[g][x] == static_cast<int>(x)) return false;
    return true;
  }
};

inline std::string actionArrowId(const std::string& g, const std::string& x) { return "(" + g + "," + x + ")"; }

/// Action groupoid G x X: arrow (g, x) : x -> g.x, (g, h.x)(h, x) = (gh, x).
inline FiniteGroupoid actionGroupoid(const GroupAction& A) {
  A.check();
  const auto& G = A.group;
  GroupoidData d;
  d.objects = A.points;
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t x = 0; x < A.points.size(); ++x)
      d.arrows.push_back({actionArrowId(G.elements[g], A.points[x]), A.points[x],
                          A.points[static_cast<std::size_t>(A.act[g][x])]});
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      for (std::size_t x = 0; x < A.points.size(); ++x) {
        const auto hx = static_cast<std::size_t>(A.act[h][x]);
        d.compose.push_back({actionArrowId(G.elements[g], A.points[hx]), actionArrowId(G.elements[h], A.points[x]),
                             actionArrowId(G.elements[static_cast<std::size_t>(G.mul[g][h])], A.points[x])});
      }
  return FiniteGroupoid::fromData(d);
}

/// Gauge groupoid (P x P)/G of a free action; objects are orbits named by
/// their smallest point, arrows [p,q] : [q] -> [p] named by the
/// lexicographically smallest representative pair.
struct GaugeGroupoid {
  FiniteGroupoid groupoid;
  std::vector<int> orbitOf;       // point -> index into basepoints
  std::vector<int> basepoints;    // orbit -> chosen point (smallest id)
  std::map<std::string, std::pair<int, int>> representative;  // arrow id -> (p, q)
};

inline GaugeGroupoid gaugeGroupoid(const GroupAction& A) {
  A.check();
  if (!A.isFree()) throw GroupoidError("gauge groupoid needs a free action");
  const auto& G = A.group;
  const std::size_t np = A.points.size();
  GaugeGroupoid out{FiniteGroupoid::fromData(GroupoidData{}), {}, {}, {}};
  out.orbitOf.assign(np, -1);
  std::vector<std::size_t> order(np);
  for (std::size_t i = 0; i < np; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return A.points[a] < A.points[b]; });
  for (std::size_t p : order) {
    if (out.orbitOf[p] != -1) continue;
    const int orb = static_cast<int>(out.basepoints.size());
    out.basepoints.push_back(static_cast<int>(p));
    for (std::size_t g = 0; g < G.order(); ++g) out.orbitOf[static_cast<std::size_t>(A.act[g][p])] = orb;
  }
  auto orbitName = [&](int orb) { return "[" + A.points[static_cast<std::size_t>(out.basepoints[static_cast<std::size_t>(orb)])] + "]"; };
  // Canonical representative of the diagonal orbit of (p, q).
  auto canon = [&](int p, int q) {
    std::pair<std::string, std::string> best;
    std::pair<int, int> bestIdx{-1, -1};
    for (std::size_t g = 0; g < G.order(); ++g) {
      const int gp = A.act[g][static_cast<std::size_t>(p)], gq = A.act[g][static_cast<std::size_t>(q)];
      std::pair<std::string, std::string> key{A.points[static_cast<std::size_t>(gp)], A.points[static_cast<std::size_t>(gq)]};
      if (bestIdx.first < 0 || key < best) {
        best = key;
        bestIdx = {gp, gq};
      }
    }
    return bestIdx;
  };
  auto arrowName = [&](std::pair<int, int> pq) {
    return "[" + A.points[static_cast<std::size_t>(pq.first)] + "," + A.points[static_cast<std::size_t>(pq.second)] + "]";
  };
  GroupoidData d;
  for (std::size_t o = 0; o < out.basepoints.size(); ++o) d.objects.push_back(orbitName(static_cast<int>(o)));
  std::set<std::pair<int, int>> reps;
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < np; ++q) reps.insert(canon(static_cast<int>(p), static_cast<int>(q)));
  for (const auto& pq : reps) {
    d.arrows.push_back({arrowName(pq), orbitName(out.orbitOf[static_cast<std::size_t>(pq.second)]),
                        orbitName(out.orbitOf[static_cast<std::size_t>(pq.first)])});
    out.representative[arrowName(pq)] = pq;
  }
  for (const auto& a : reps)
    for (const auto& b : reps) {
      if (out.orbitOf[static_cast<std::size_t>(a.second)] != out.orbitOf[static_cast<std::size_t>(b.first)]) continue;
      // [p,q][q',r] = [p, g r] where g q' = q.
      for (std::size_t g = 0; g < G.order(); ++g) {
        if (A.act[g][static_cast<std::size_t>(b.first)] != a.second) continue;
        d.compose.push_back({arrowName(a), arrowName(b), arrowName(canon(a.first, A.act[g][static_cast<std::size_t>(b.second)]))});
        break;
      }
    }
  out.groupoid = FiniteGroupoid::fromData(d);
  return out;
}

/// Pullback of G along a surjection f : P -> M. Arrows (p, g, q) : q -> p with
/// f(p) = t(g), f(q) = s(g); projection (p, g, q) -> g covers f.
struct Pullback {
  FiniteGroupoid groupoid;
  GroupoidMorphism projection;
};

/// A surjection f : P -> M given on point ids.
struct Surjection {
  std::vector<std::string> P;
  std::map<std::string, std::string> map;
};

inline std::string pullbackArrowId(const std::string& p, const std::string& g, const std::string& q) {
  return "(" + p + "," + g + "," + q + ")";
}

inline Pullback pullbackGroupoid(const FiniteGroupoid& G, const std::vector<std::string>& P,
                                 const std::map<std::string, std::string>& f) {
  std::vector<Object> fo;
  std::vector<char> hit(G.numObjects(), 0);
  for (const auto& p : P) {
    auto it = f.find(p);
    if (it == f.end()) throw GroupoidError("surjection is not defined on point '" + p + "'");
    const Object x = G.objectIndex(it->second);
    fo.push_back(x);
    hit[static_cast<std::size_t>(x)] = 1;
  }
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    if (!hit[x]) throw GroupoidError("map is not surjective: nothing maps to object '" + G.objectId(static_cast<Object>(x)) + "'");
  GroupoidData d;
  d.objects = P;
  struct Triple {
    std::size_t p;
    Arrow g;
    std::size_t q;
  };
  std::vector<Triple> triples;
  for (std::size_t p = 0; p < P.size(); ++p)
    for (std::size_t q = 0; q < P.size(); ++q)
      for (Arrow g : G.arrowsWithTarget(fo[p]))
        if (G.src(g) == fo[q]) triples.push_back({p, g, q});
  for (const auto& t : triples) d.arrows.push_back({pullbackArrowId(P[t.p], G.arrowId(t.g), P[t.q]), P[t.q], P[t.p]});
  for (const auto& a : triples)
    for (const auto& b : triples)
      if (a.q == b.p)
        d.compose.push_back({pullbackArrowId(P[a.p], G.arrowId(a.g), P[a.q]), pullbackArrowId(P[b.p], G.arrowId(b.g), P[b.q]),
                             pullbackArrowId(P[a.p], G.arrowId(G.compose(a.g, b.g)), P[b.q])});
  Pullback out{FiniteGroupoid::fromData(d), {}};
  const auto& H = out.groupoid;
  out.projection.arrowMap.resize(H.numArrows());
  out.projection.objectMap.resize(H.numObjects());
  for (const auto& t : triples)
    out.projection.arrowMap[static_cast<std::size_t>(H.arrowIndex(pullbackArrowId(P[t.p], G.arrowId(t.g), P[t.q])))] = t.g;
  for (std::size_t p = 0; p < P.size(); ++p)
    out.projection.objectMap[static_cast<std::size_t>(H.objectIndex(P[p]))] = fo[p];
  return out;
}

inline std::string cechObjectId(const std::string& x, std::size_t i) { return "(" + x + "|" + std::to_string(i) + ")"; }

/// Cech groupoid: pullback along the disjoint union of the cover. Objects are
/// (x|i) for x in U_i.
struct CechGroupoid {
  Pullback pullback;
  std::vector<std::vector<std::string>> cover;
};

inline CechGroupoid cechGroupoid(const FiniteGroupoid& G, const std::vector<std::vector<std::string>>& cover) {
  std::vector<std::string> P;
  std::map<std::string, std::string> f;
  std::vector<char> hit(G.numObjects(), 0);
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (const auto& x : cover[i]) {
      const Object xi = G.objectIndex(x);
      hit[static_cast<std::size_t>(xi)] = 1;
      const auto id = cechObjectId(x, i);
      if (f.count(id)) throw GroupoidError("object '" + x + "' listed twice in cover set " + std::to_string(i));
      P.push_back(id);
      f[id] = x;
    }
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    if (!hit[x]) throw GroupoidError("cover does not cover object '" + G.objectId(static_cast<Object>(x)) + "'");
  return CechGroupoid{pullbackGroupoid(G, P, f), cover};
}

}  // namespace gpdcoh
