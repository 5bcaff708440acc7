#pragma once

// A groupoid recovered from its source map and division map
// mbar(g, h) = g h^{-1} (defined when s(g) = s(h)), plus the change of
// variables between composable strings and strings with a common source.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "groupoid.hpp"

namespace gpdcoh {

struct DivisionPresentation {
  std::vector<std::string> arrows;
  std::map<std::string, std::string> source;                // s : G -> M
  std::vector<std::array<std::string, 3>> mbar;              // (g, h, mbar(g, h))
};

inline DivisionPresentation toDivision(const FiniteGroupoid& G) {
  DivisionPresentation d;
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    d.arrows.push_back(G.arrowId(gg));
    d.source[G.arrowId(gg)] = G.objectId(G.src(gg));
  }
  for (std::size_t p = 0; p < G.numArrows(); ++p)
    for (Arrow q : G.arrowsWithSource(G.src(static_cast<Arrow>(p))))
      d.mbar.push_back({G.arrowId(static_cast<Arrow>(p)), G.arrowId(q), G.arrowId(G.divide(static_cast<Arrow>(p), q))});
  return d;
}

/// Checks the domain of mbar and the axioms
///   (i)   s(mbar(g, h)) = s(mbar(h, h))
///   (ii)  mbar(mbar(g, k), mbar(h, k)) = mbar(g, h)
///   (iii) s is injective on mbar(diagonal)
/// plus "unit coverage": every object is s of some mbar(g, g). Then rebuilds
///   u(s(mbar(g, h))) = mbar(h, h), t(g) = s(mbar(g, g)),
///   i(g) = mbar(u(s(g)), g), m(g, h) = mbar(g, i(h)).
inline ValidationReport validateDivision(const DivisionPresentation& d, GroupoidData* rebuilt = nullptr) {
  ValidationReport rep;
  auto fail = [&](const std::string& axiom, std::vector<std::string> w, const std::string& msg) {
    rep.violations.push_back({axiom, std::move(w), msg});
  };
  std::vector<std::string> ids = d.arrows;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    fail("ids", {}, "duplicate arrow ids");
    return rep;
  }
  const std::size_t m = ids.size();
  auto idx = [&](const std::string& id) -> int {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    return (it != ids.end() && *it == id) ? static_cast<int>(it - ids.begin()) : -1;
  };
  std::vector<std::string> src(m);
  for (std::size_t g = 0; g < m; ++g) {
    auto it = d.source.find(ids[g]);
    if (it == d.source.end()) {
      fail("domain", {ids[g]}, "source of " + ids[g] + " is not given");
      return rep;
    }
    src[g] = it->second;
  }
  std::vector<int> table(m * m, kUndefined);
  auto mb = [&](int g, int h) { return table[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(h)]; };
  for (const auto& [a, b, c] : d.mbar) {
    const int g = idx(a), h = idx(b), gh = idx(c);
    if (g < 0 || h < 0 || gh < 0) {
      fail("domain", {a, b, c}, "division entry mentions an unknown arrow");
      continue;
    }
    if (src[static_cast<std::size_t>(g)] != src[static_cast<std::size_t>(h)]) {
      fail("domain", {a, b}, "division defined on (" + a + "," + b + ") whose sources differ");
      continue;
    }
    int& slot = table[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(h)];
    if (slot != kUndefined && slot != gh) fail("domain", {a, b}, "conflicting division entries for (" + a + "," + b + ")");
    slot = gh;
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (src[g] == src[h] && table[g * m + h] == kUndefined)
        fail("domain", {ids[g], ids[h]}, "division missing on (" + ids[g] + "," + ids[h] + ")");
  if (!rep.valid()) return rep;

  auto S = [&](int g) -> const std::string& { return src[static_cast<std::size_t>(g)]; };
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      if (src[g] != src[h]) continue;
      const int gi = static_cast<int>(g), hi = static_cast<int>(h);
      if (S(mb(gi, hi)) != S(mb(hi, hi)))
        fail("axiom (i)", {ids[g], ids[h]}, "s(mbar(g,h)) != s(mbar(h,h)) for g=" + ids[g] + ", h=" + ids[h]);
    }
  if (!rep.valid()) return rep;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      if (src[g] != src[h]) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (src[k] != src[g]) continue;
        const int a = mb(static_cast<int>(g), static_cast<int>(k)), b = mb(static_cast<int>(h), static_cast<int>(k));
        if (mb(a, b) != mb(static_cast<int>(g), static_cast<int>(h)))
          fail("axiom (ii)", {ids[g], ids[h], ids[k]},
               "mbar(mbar(g,k), mbar(h,k)) != mbar(g,h) for g=" + ids[g] + ", h=" + ids[h] + ", k=" + ids[k]);
      }
    }
  if (!rep.valid()) return rep;
  std::map<std::string, int> unitOf;
  for (std::size_t g = 0; g < m; ++g) {
    const int u = mb(static_cast<int>(g), static_cast<int>(g));
    auto [it, fresh] = unitOf.emplace(S(u), u);
    if (!fresh && it->second != u)
      fail("axiom (iii)", {ids[static_cast<std::size_t>(u)], ids[static_cast<std::size_t>(it->second)]},
           "s is not injective on the diagonal image: " + ids[static_cast<std::size_t>(u)] + " and " +
               ids[static_cast<std::size_t>(it->second)]);
  }
  std::set<std::string> objects(src.begin(), src.end());
  for (const auto& x : objects)
    if (!unitOf.count(x)) fail("unit coverage", {x}, "no element of mbar(diagonal) has source " + x);
  if (!rep.valid() || !rebuilt) return rep;

  GroupoidData out;
  out.objects.assign(objects.begin(), objects.end());
  std::vector<int> tgt(m), inv(m);
  for (std::size_t g = 0; g < m; ++g) {
    tgt[g] = mb(static_cast<int>(g), static_cast<int>(g));
    out.arrows.push_back({ids[g], src[g], S(tgt[g])});
  }
  for (std::size_t g = 0; g < m; ++g) inv[g] = mb(unitOf.at(src[g]), static_cast<int>(g));
  std::map<std::string, std::string> units, inverses;
  for (const auto& [x, u] : unitOf) units[x] = ids[static_cast<std::size_t>(u)];
  for (std::size_t g = 0; g < m; ++g) inverses[ids[g]] = ids[static_cast<std::size_t>(inv[g])];
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      // g h is defined when s(g) = t(h) = s(mbar(h, h)); then m(g, h) = mbar(g, i(h)).
      if (src[g] != S(tgt[h])) continue;
      const int ih = inv[h];
      if (S(ih) != src[g]) {
        fail("reconstruction", {ids[g], ids[h]}, "inverse of " + ids[h] + " has the wrong source");
        continue;
      }
      out.compose.push_back({ids[g], ids[h], ids[static_cast<std::size_t>(mb(static_cast<int>(g), ih))]});
    }
  out.units = units;
  out.inverses = inverses;
  *rebuilt = std::move(out);
  return rep;
}

/// Reconstruction; throws GroupoidError naming the failed axiom. The result
/// is validated as an ordinary groupoid (failures there are reported under
/// "reconstruction").
inline FiniteGroupoid fromDivision(const DivisionPresentation& d) {
  GroupoidData data;
  auto rep = validateDivision(d, &data);
  if (!rep.valid()) throw GroupoidError("invalid division presentation: " + rep.summary(), rep);
  auto check = FiniteGroupoid::validate(data);
  if (!check.valid()) {
    ValidationReport wrapped;
    for (auto v : check.violations) {
      v.message = v.axiom + ": " + v.message;
      v.axiom = "reconstruction";
      wrapped.violations.push_back(std::move(v));
    }
    throw GroupoidError("reconstructed structure is not a groupoid: " + wrapped.summary(), wrapped);
  }
  return FiniteGroupoid::fromData(data);
}

// ---------------------------------------------------------------------------
// Change of variables G^(k) <-> G^[k].

/// a_i = g_i g_{i+1} ... g_k; all a_i share the source s(g_k).
inline std::vector<Arrow> toCommonSource(const FiniteGroupoid& G, std::span<const Arrow> g) {
  std::vector<Arrow> a(g.size());
  if (g.empty()) return a;
  a.back() = g.back();
  for (std::size_t i = g.size() - 1; i-- > 0;) a[i] = G.compose(g[i], a[i + 1]);
  return a;
}

/// g_i = mbar(a_i, a_{i+1}) = a_i a_{i+1}^{-1}, g_k = a_k.
inline std::vector<Arrow> fromCommonSource(const FiniteGroupoid& G, std::span<const Arrow> a) {
  std::vector<Arrow> g(a.size());
  if (a.empty()) return g;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (G.src(a[i]) != G.src(a[i + 1])) throw std::invalid_argument("arrows do not share a source");
    g[i] = G.divide(a[i], a[i + 1]);
  }
  g.back() = a.back();
  return g;
}

/// All k-strings of arrows with a common source, lexicographic.
inline std::vector<std::vector<Arrow>> commonSourceStrings(const FiniteGroupoid& G, int k) {
  std::vector<std::vector<Arrow>> out;
  if (k <= 0) return out;
  std::vector<Arrow> cur;
  std::function<void(Object)> rec = [&](Object x) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Arrow a : G.arrowsWithSource(x)) {
      cur.push_back(a);
      rec(x);
      cur.pop_back();
    }
  };
  for (std::size_t x = 0; x < G.numObjects(); ++x) rec(static_cast<Object>(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// Images of every composable string under the change of variables.
inline std::vector<std::vector<Arrow>> changeOfVariables(const FiniteGroupoid& G, const Nerve& n) {
  std::vector<std::vector<Arrow>> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(toCommonSource(G, n.string(i)));
  return out;
}

/// Bijectivity and round trips of the change of variables in degree k.
inline bool checkChangeOfVariables(const FiniteGroupoid& G, int k) {
  Nerve n(G, k);
  auto images = changeOfVariables(G, n);
  auto sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != commonSourceStrings(G, k)) return false;
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto back = fromCommonSource(G, images[i]);
    if (!std::equal(back.begin(), back.end(), n.string(i).begin(), n.string(i).end())) return false;
  }
  return true;
}

}  // namespace gpdcoh
