#pragma once

// Finite groupoids: raw data, exhaustive axiom validation, nerves, morphisms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpdcoh {

struct ArrowSpec {
  std::string id, src, tgt;
};

/// Groupoid as loaded from a file: ids are opaque strings; units and inverses
/// are optional and cross-checked when present.
struct GroupoidData {
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  std::vector<std::array<std::string, 3>> compose;  // (g, h, gh)
  std::optional<std::map<std::string, std::string>> units;
  std::optional<std::map<std::string, std::string>> inverses;
};

struct Violation {
  std::string axiom;
  std::vector<std::string> witnesses;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool mentions(const std::string& axiom) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; });
  }
  std::string summary() const {
    if (valid()) return "valid";
    std::ostringstream os;
    for (const auto& v : violations) {
      os << v.axiom << ": " << v.message;
      if (!v.witnesses.empty()) {
        os << " [";
        for (std::size_t i = 0; i < v.witnesses.size(); ++i) os << (i ? ", " : "") << v.witnesses[i];
        os << "]";
      }
      os << "\n";
    }
    return os.str();
  }
};

class GroupoidError : public std::runtime_error {
 public:
  GroupoidError(const std::string& what, ValidationReport report = {})
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

using Arrow = int;
using Object = int;
constexpr int kUndefined = -1;

class FiniteGroupoid;

namespace detail {

// Dense index form of GroupoidData used both for validation and construction.
struct IndexedGroupoid {
  std::vector<std::string> objects, arrows;  // sorted ids
  std::vector<Object> src, tgt;
  std::vector<Arrow> table;  // m*m, kUndefined where not given
  std::size_t m() const { return arrows.size(); }
  Arrow comp(Arrow g, Arrow h) const { return table[static_cast<std::size_t>(g) * m() + static_cast<std::size_t>(h)]; }
};

}  // namespace detail

/// A validated finite groupoid. Objects and arrows are indexed by the
/// lexicographic order of their ids.
class FiniteGroupoid {
 public:
  /// Checks every axiom exhaustively; never throws on bad structure.
  static ValidationReport validate(const GroupoidData& data) {
    ValidationReport rep;
    build(data, &rep);
    return rep;
  }

  static FiniteGroupoid fromData(const GroupoidData& data) {
    ValidationReport rep;
    auto g = build(data, &rep);
    if (!rep.valid() || !g) throw GroupoidError("invalid groupoid:\n" + rep.summary(), rep);
    return std::move(*g);
  }

  std::size_t numObjects() const { return objects_.size(); }
  std::size_t numArrows() const { return arrows_.size(); }
  const std::string& objectId(Object x) const { return objects_.at(static_cast<std::size_t>(x)); }
  const std::string& arrowId(Arrow g) const { return arrows_.at(static_cast<std::size_t>(g)); }

  Object objectIndex(const std::string& id) const { return lookup(objects_, id, "object"); }
  Arrow arrowIndex(const std::string& id) const { return lookup(arrows_, id, "arrow"); }
  std::optional<Object> findObject(const std::string& id) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), id);
    if (it == objects_.end() || *it != id) return std::nullopt;
    return static_cast<Object>(it - objects_.begin());
  }
  std::optional<Arrow> findArrow(const std::string& id) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), id);
    if (it == arrows_.end() || *it != id) return std::nullopt;
    return static_cast<Arrow>(it - arrows_.begin());
  }

  Object src(Arrow g) const { return src_[static_cast<std::size_t>(g)]; }
  Object tgt(Arrow g) const { return tgt_[static_cast<std::size_t>(g)]; }
  Arrow unit(Object x) const { return unit_[static_cast<std::size_t>(x)]; }
  Arrow inverse(Arrow g) const { return inv_[static_cast<std::size_t>(g)]; }
  bool isUnit(Arrow g) const { return unit(src(g)) == g; }

  /// g . h, defined exactly when src(g) == tgt(h).
  Arrow compose(Arrow g, Arrow h) const {
    const Arrow r = table_[static_cast<std::size_t>(g) * numArrows() + static_cast<std::size_t>(h)];
    if (r == kUndefined) throw std::out_of_range("arrows " + arrowId(g) + " and " + arrowId(h) + " are not composable");
    return r;
  }
  bool composable(Arrow g, Arrow h) const { return src(g) == tgt(h); }

  /// p . q^{-1}, defined when src(p) == src(q).
  Arrow divide(Arrow p, Arrow q) const { return compose(p, inverse(q)); }

  std::span<const Arrow> arrowsWithTarget(Object x) const { return byTarget_[static_cast<std::size_t>(x)]; }
  std::span<const Arrow> arrowsWithSource(Object x) const { return bySource_[static_cast<std::size_t>(x)]; }

  /// Every finite groupoid is proper: (s, t) is a map out of a finite set.
  bool proper() const { return true; }

  /// Orbit label per object (smallest object index in the orbit).
  std::vector<Object> orbits() const {
    std::vector<Object> orb(numObjects());
    for (std::size_t x = 0; x < numObjects(); ++x) orb[x] = static_cast<Object>(x);
    for (std::size_t g = 0; g < numArrows(); ++g) {
      const Object s = src_[g], t = tgt_[g];
      orb[static_cast<std::size_t>(t)] = std::min(orb[static_cast<std::size_t>(t)], orb[static_cast<std::size_t>(s)]);
      orb[static_cast<std::size_t>(s)] = std::min(orb[static_cast<std::size_t>(s)], orb[static_cast<std::size_t>(t)]);
    }
    // In a groupoid every orbit is reached in one step from its minimum.
    for (std::size_t g = 0; g < numArrows(); ++g) {
      const Object s = src_[g], t = tgt_[g];
      orb[static_cast<std::size_t>(t)] = std::min(orb[static_cast<std::size_t>(t)], orb[static_cast<std::size_t>(s)]);
    }
    return orb;
  }

  GroupoidData toData(bool withUnitsAndInverses = true) const {
    GroupoidData d;
    d.objects = objects_;
    for (std::size_t g = 0; g < numArrows(); ++g)
      d.arrows.push_back({arrows_[g], objects_[static_cast<std::size_t>(src_[g])], objects_[static_cast<std::size_t>(tgt_[g])]});
    for (std::size_t g = 0; g < numArrows(); ++g)
      for (Arrow h : arrowsWithTarget(src_[g]))
        d.compose.push_back({arrows_[g], arrowId(h), arrowId(compose(static_cast<Arrow>(g), h))});
    if (withUnitsAndInverses) {
      d.units.emplace();
      d.inverses.emplace();
      for (std::size_t x = 0; x < numObjects(); ++x) (*d.units)[objects_[x]] = arrowId(unit_[x]);
      for (std::size_t g = 0; g < numArrows(); ++g) (*d.inverses)[arrows_[g]] = arrowId(inv_[g]);
    }
    return d;
  }

  /// Structural equality including ids.
  bool operator==(const FiniteGroupoid& o) const {
    return objects_ == o.objects_ && arrows_ == o.arrows_ && src_ == o.src_ && tgt_ == o.tgt_ &&
           table_ == o.table_ && unit_ == o.unit_ && inv_ == o.inv_;
  }

 private:
  FiniteGroupoid() = default;

  static int lookup(const std::vector<std::string>& ids, const std::string& id, const char* what) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) throw GroupoidError(std::string("unknown ") + what + " '" + id + "'");
    return static_cast<int>(it - ids.begin());
  }

  static std::optional<FiniteGroupoid> build(const GroupoidData& data, ValidationReport* rep);

  std::vector<std::string> objects_, arrows_;
  std::vector<Object> src_, tgt_;
  std::vector<Arrow> table_, unit_, inv_;
  std::vector<std::vector<Arrow>> byTarget_, bySource_;
};

inline std::optional<FiniteGroupoid> FiniteGroupoid::build(const GroupoidData& data, ValidationReport* rep) {
  auto fail = [&](std::string axiom, std::vector<std::string> witnesses, std::string msg) {
    if (rep->violations.size() < 64) rep->violations.push_back({std::move(axiom), std::move(witnesses), std::move(msg)});
  };

  FiniteGroupoid G;
  G.objects_ = data.objects;
  std::sort(G.objects_.begin(), G.objects_.end());
  if (std::adjacent_find(G.objects_.begin(), G.objects_.end()) != G.objects_.end()) {
    fail("ids", {*std::adjacent_find(G.objects_.begin(), G.objects_.end())}, "duplicate object id");
    return std::nullopt;
  }
  std::vector<ArrowSpec> arrows = data.arrows;
  std::sort(arrows.begin(), arrows.end(), [](const ArrowSpec& a, const ArrowSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
    if (arrows[i].id == arrows[i + 1].id) {
      fail("ids", {arrows[i].id}, "duplicate arrow id");
      return std::nullopt;
    }
  const std::size_t m = arrows.size();
  auto objIdx = [&](const std::string& id) -> int {
    auto it = std::lower_bound(G.objects_.begin(), G.objects_.end(), id);
    return (it == G.objects_.end() || *it != id) ? kUndefined : static_cast<int>(it - G.objects_.begin());
  };
  bool structural = true;
  for (const auto& a : arrows) {
    G.arrows_.push_back(a.id);
    const int s = objIdx(a.src), t = objIdx(a.tgt);
    if (s == kUndefined || t == kUndefined) {
      fail("ids", {a.id}, "arrow endpoint is not a declared object");
      structural = false;
    }
    G.src_.push_back(s);
    G.tgt_.push_back(t);
  }
  if (!structural) return std::nullopt;
  auto arrIdx = [&](const std::string& id) -> int {
    auto it = std::lower_bound(G.arrows_.begin(), G.arrows_.end(), id);
    return (it == G.arrows_.end() || *it != id) ? kUndefined : static_cast<int>(it - G.arrows_.begin());
  };

  G.table_.assign(m * m, kUndefined);
  for (const auto& [gs, hs, ghs] : data.compose) {
    const int g = arrIdx(gs), h = arrIdx(hs), gh = arrIdx(ghs);
    if (g == kUndefined || h == kUndefined || gh == kUndefined) {
      fail("ids", {gs, hs, ghs}, "composition entry names an unknown arrow");
      structural = false;
      continue;
    }
    if (G.src_[static_cast<std::size_t>(g)] != G.tgt_[static_cast<std::size_t>(h)]) {
      fail("composability", {gs, hs}, "composition given for a pair with s(g) != t(h)");
      structural = false;
      continue;
    }
    Arrow& slot = G.table_[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(h)];
    if (slot != kUndefined && slot != gh) {
      fail("composability", {gs, hs}, "conflicting composition entries");
      structural = false;
    }
    slot = gh;
  }
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (G.src_[g] == G.tgt_[h] && G.table_[g * m + h] == kUndefined) {
        fail("composability", {G.arrows_[g], G.arrows_[h]}, "missing composition for a composable pair");
        structural = false;
      }
  if (!structural) return std::nullopt;

  auto comp = [&](Arrow g, Arrow h) { return G.table_[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(h)]; };
  auto id = [&](Arrow g) { return G.arrows_[static_cast<std::size_t>(g)]; };

  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      const Arrow gh = G.table_[g * m + h];
      if (gh == kUndefined) continue;
      if (G.src_[static_cast<std::size_t>(gh)] != G.src_[h])
        fail("source of composite", {G.arrows_[g], G.arrows_[h], id(gh)}, "s(gh) != s(h)");
      if (G.tgt_[static_cast<std::size_t>(gh)] != G.tgt_[g])
        fail("target of composite", {G.arrows_[g], G.arrows_[h], id(gh)}, "t(gh) != t(g)");
    }

  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) {
      const Arrow gh = G.table_[g * m + h];
      if (gh == kUndefined) continue;
      for (std::size_t k = 0; k < m; ++k) {
        const Arrow hk = G.table_[h * m + k];
        if (hk == kUndefined) continue;
        const Arrow left = comp(gh, static_cast<Arrow>(k));
        const Arrow right = comp(static_cast<Arrow>(g), hk);
        if (left == kUndefined || right == kUndefined || left != right)
          fail("associativity", {G.arrows_[g], G.arrows_[h], G.arrows_[k]}, "(gh)k != g(hk)");
      }
    }

  // Units: the arrow e : x -> x with e.g = g for all g into x and g.e = g for all g out of x.
  const std::size_t n = G.objects_.size();
  G.unit_.assign(n, kUndefined);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t e = 0; e < m && G.unit_[x] == kUndefined; ++e) {
      if (G.src_[e] != static_cast<int>(x) || G.tgt_[e] != static_cast<int>(x)) continue;
      bool ok = true;
      for (std::size_t g = 0; g < m && ok; ++g) {
        if (G.tgt_[g] == static_cast<int>(x) && comp(static_cast<Arrow>(e), static_cast<Arrow>(g)) != static_cast<Arrow>(g)) ok = false;
        if (G.src_[g] == static_cast<int>(x) && comp(static_cast<Arrow>(g), static_cast<Arrow>(e)) != static_cast<Arrow>(g)) ok = false;
      }
      if (ok) G.unit_[x] = static_cast<Arrow>(e);
    }
    if (G.unit_[x] == kUndefined) fail("unit", {G.objects_[x]}, "no arrow satisfies the unit laws at this object");
  }
  if (data.units) {
    for (const auto& [obj, arr] : *data.units) {
      const int x = objIdx(obj), e = arrIdx(arr);
      if (x == kUndefined || e == kUndefined) {
        fail("unit", {obj, arr}, "declared unit names an unknown id");
      } else if (G.unit_[static_cast<std::size_t>(x)] != e) {
        fail("unit", {obj, arr}, "declared unit does not satisfy the unit laws");
      }
    }
  }
  if (!rep->valid()) return std::nullopt;

  G.inv_.assign(m, kUndefined);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) {
      if (G.src_[h] != G.tgt_[g] || G.tgt_[h] != G.src_[g]) continue;
      if (comp(static_cast<Arrow>(g), static_cast<Arrow>(h)) == G.unit_[static_cast<std::size_t>(G.tgt_[g])] &&
          comp(static_cast<Arrow>(h), static_cast<Arrow>(g)) == G.unit_[static_cast<std::size_t>(G.src_[g])]) {
        G.inv_[g] = static_cast<Arrow>(h);
        break;
      }
    }
    if (G.inv_[g] == kUndefined) fail("inverse", {G.arrows_[g]}, "arrow has no two-sided inverse");
  }
  if (data.inverses) {
    for (const auto& [a, b] : *data.inverses) {
      const int g = arrIdx(a), h = arrIdx(b);
      if (g == kUndefined || h == kUndefined) {
        fail("inverse", {a, b}, "declared inverse names an unknown arrow");
      } else if (G.inv_[static_cast<std::size_t>(g)] != h) {
        fail("inverse", {a, b}, "declared inverse is not a two-sided inverse");
      }
    }
  }
  if (!rep->valid()) return std::nullopt;

  G.byTarget_.assign(n, {});
  G.bySource_.assign(n, {});
  for (std::size_t g = 0; g < m; ++g) {
    G.byTarget_[static_cast<std::size_t>(G.tgt_[g])].push_back(static_cast<Arrow>(g));
    G.bySource_[static_cast<std::size_t>(G.src_[g])].push_back(static_cast<Arrow>(g));
  }
  return G;
}

// ---------------------------------------------------------------------------
// Nerve

/// Composable k-strings (g_1, ..., g_k) with s(g_i) = t(g_{i+1}), listed in
/// lexicographic order of arrow ids. Level 0 lists the objects.
class Nerve {
 public:
  Nerve(const FiniteGroupoid& g, int k) : k_(k) {
    if (k < 0) throw std::invalid_argument("nerve degree must be non-negative");
    const auto m = static_cast<std::uint64_t>(g.numArrows());
    base_ = std::max<std::uint64_t>(m, 1);
    if (k == 0) {
      count_ = g.numObjects();
      for (std::size_t x = 0; x < count_; ++x) {
        points_.push_back(static_cast<Object>(x));
        targets_.push_back(static_cast<Object>(x));
        sources_.push_back(static_cast<Object>(x));
      }
      return;
    }
    // Extend strings one arrow at a time on the right; a string of length j is
    // extended by every arrow h with t(h) = s(last).
    std::vector<Arrow> cur;
    for (std::size_t a = 0; a < m; ++a) cur.push_back(static_cast<Arrow>(a));
    std::size_t len = 1;
    while (static_cast<int>(len) < k) {
      std::vector<Arrow> next;
      const std::size_t cnt = cur.size() / len;
      for (std::size_t i = 0; i < cnt; ++i) {
        const Arrow last = cur[i * len + len - 1];
        for (Arrow h : g.arrowsWithTarget(g.src(last))) {
          next.insert(next.end(), cur.begin() + static_cast<long>(i * len), cur.begin() + static_cast<long>((i + 1) * len));
          next.push_back(h);
        }
      }
      cur.swap(next);
      ++len;
    }
    points_ = std::move(cur);
    count_ = points_.size() / static_cast<std::size_t>(k);
    keys_.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      auto s = string(i);
      keys_.push_back(encode(s));
      targets_.push_back(g.tgt(s.front()));
      sources_.push_back(g.src(s.back()));
    }
    if (!std::is_sorted(keys_.begin(), keys_.end())) throw std::logic_error("nerve not in lexicographic order");
  }

  int degree() const { return k_; }
  std::size_t size() const { return count_; }

  /// The i-th string (empty span at level 0; use `object(i)` there).
  std::span<const Arrow> string(std::size_t i) const {
    if (k_ == 0) return {};
    return {points_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
  }
  Object object(std::size_t i) const { return points_.at(i); }

  /// t(g_1): where cochain values live. At level 0, the object itself.
  Object target(std::size_t i) const { return targets_[i]; }
  /// s(g_k). At level 0, the object itself.
  Object source(std::size_t i) const { return sources_[i]; }

  std::size_t indexOf(std::span<const Arrow> s) const {
    if (static_cast<int>(s.size()) != k_) throw std::invalid_argument("string length does not match nerve degree");
    const auto key = encode(s);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) throw std::out_of_range("string is not composable");
    return static_cast<std::size_t>(it - keys_.begin());
  }
  std::optional<std::size_t> find(std::span<const Arrow> s) const {
    if (static_cast<int>(s.size()) != k_) return std::nullopt;
    const auto key = encode(s);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
  }

 private:
  std::uint64_t encode(std::span<const Arrow> s) const {
    std::uint64_t key = 0;
    for (Arrow a : s) key = key * base_ + static_cast<std::uint64_t>(a);
    return key;
  }

  int k_;
  std::size_t count_ = 0;
  std::uint64_t base_ = 1;
  std::vector<Arrow> points_;
  std::vector<std::uint64_t> keys_;
  std::vector<Object> targets_, sources_;
};

inline Nerve nerve(const FiniteGroupoid& g, int k) { return Nerve(g, k); }

/// Nerve levels 0..kMax, built once and shared by the cochain builders.
class NerveTower {
 public:
  NerveTower(const FiniteGroupoid& g, int kMax) : g_(&g) {
    for (int k = 0; k <= kMax; ++k) levels_.emplace_back(g, k);
  }
  const FiniteGroupoid& groupoid() const { return *g_; }
  const Nerve& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  int top() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  const FiniteGroupoid* g_;
  std::vector<Nerve> levels_;
};

// ---------------------------------------------------------------------------
// Morphisms

struct GroupoidMorphism {
  std::vector<Arrow> arrowMap;   // F
  std::vector<Object> objectMap;  // f
};

/// Classical definition: F commutes with s, t, composition, units, inverses.
inline bool isMorphismClassical(const GroupoidMorphism& F, const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (F.arrowMap.size() != a.numArrows() || F.objectMap.size() != a.numObjects()) return false;
  auto Fa = [&](Arrow g) { return F.arrowMap[static_cast<std::size_t>(g)]; };
  auto fo = [&](Object x) { return F.objectMap[static_cast<std::size_t>(x)]; };
  for (std::size_t g = 0; g < a.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (Fa(gg) < 0 || static_cast<std::size_t>(Fa(gg)) >= b.numArrows()) return false;
    if (b.src(Fa(gg)) != fo(a.src(gg)) || b.tgt(Fa(gg)) != fo(a.tgt(gg))) return false;
  }
  for (std::size_t x = 0; x < a.numObjects(); ++x)
    if (Fa(a.unit(static_cast<Object>(x))) != b.unit(fo(static_cast<Object>(x)))) return false;
  for (std::size_t g = 0; g < a.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (Fa(a.inverse(gg)) != b.inverse(Fa(gg))) return false;
    for (Arrow h : a.arrowsWithTarget(a.src(gg)))
      if (Fa(a.compose(gg, h)) != b.compose(Fa(gg), Fa(h))) return false;
  }
  return true;
}

/// Division-map characterisation: s o F = f o s and F(p q^{-1}) = F(p) F(q)^{-1}.
inline bool isMorphismByDivision(const GroupoidMorphism& F, const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (F.arrowMap.size() != a.numArrows() || F.objectMap.size() != a.numObjects()) return false;
  auto Fa = [&](Arrow g) { return F.arrowMap[static_cast<std::size_t>(g)]; };
  for (std::size_t g = 0; g < a.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (Fa(gg) < 0 || static_cast<std::size_t>(Fa(gg)) >= b.numArrows()) return false;
    if (b.src(Fa(gg)) != F.objectMap[static_cast<std::size_t>(a.src(gg))]) return false;
  }
  for (std::size_t p = 0; p < a.numArrows(); ++p)
    for (Arrow q : a.arrowsWithSource(a.src(static_cast<Arrow>(p))))
      if (Fa(a.divide(static_cast<Arrow>(p), q)) != b.divide(Fa(static_cast<Arrow>(p)), Fa(q))) return false;
  return true;
}

/// Both characterisations; they must agree.
inline bool isMorphism(const GroupoidMorphism& F, const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const bool classical = isMorphismClassical(F, a, b);
  if (classical != isMorphismByDivision(F, a, b))
    throw std::logic_error("morphism characterisations disagree");
  return classical;
}

inline GroupoidMorphism identityMorphism(const FiniteGroupoid& g) {
  GroupoidMorphism F;
  for (std::size_t a = 0; a < g.numArrows(); ++a) F.arrowMap.push_back(static_cast<Arrow>(a));
  for (std::size_t x = 0; x < g.numObjects(); ++x) F.objectMap.push_back(static_cast<Object>(x));
  return F;
}

}  // namespace gpdcoh
