#pragma once

// Morita comparisons: cohomology of a groupoid against its pullbacks, Cech
// groupoids and gauge groupoids with pulled-back coefficients, and the two
// comparison maps between C(G, E) and the Cech complex.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cochain.hpp"
#include "constructors.hpp"

namespace gpdcoh {

struct PartitionOfUnity {
  std::vector<std::vector<std::string>> cover;
  std::vector<std::vector<Rational>> rho;  // rho[j][x]

  /// rho_j(x) = 1 / |{i : x in U_i}| for x in U_j.
  static PartitionOfUnity uniform(const FiniteGroupoid& G, const std::vector<std::vector<std::string>>& cover) {
    PartitionOfUnity p{cover, {}};
    std::vector<long> count(G.numObjects(), 0);
    for (const auto& U : cover)
      for (const auto& x : U) ++count[static_cast<std::size_t>(G.objectIndex(x))];
    for (const auto& U : cover) {
      std::vector<Rational> w(G.numObjects(), Rational(0));
      for (const auto& x : U) {
        const auto xi = static_cast<std::size_t>(G.objectIndex(x));
        w[xi] = Rational(1, count[xi]);
      }
      p.rho.push_back(std::move(w));
    }
    return p;
  }

  /// Empty string when rho is supported in the cover and sums to 1.
  std::string check(const FiniteGroupoid& G) const {
    if (rho.size() != cover.size()) return "need one weight function per cover set";
    for (std::size_t x = 0; x < G.numObjects(); ++x) {
      Rational total = 0;
      for (std::size_t j = 0; j < cover.size(); ++j) {
        const bool member = std::find(cover[j].begin(), cover[j].end(), G.objectId(static_cast<Object>(x))) != cover[j].end();
        if (!member && sgn(rho[j][x]) != 0)
          return "weight " + std::to_string(j) + " is nonzero outside its set at " + G.objectId(static_cast<Object>(x));
        total += rho[j][x];
      }
      if (total != 1) return "weights do not sum to 1 at " + G.objectId(static_cast<Object>(x));
    }
    return {};
  }
};

struct MvMaps {
  ComplexPtr base, cech;
  std::optional<ChainMap> piStar;  // C(G, E) -> C(G_U, E)
  std::optional<ChainMap> psi;     // C(G_U, E) -> C(G, E)
  bool psiPiIdentity = false;
};

/// pi*(c)(h_1..h_k) = c(F h_1, ..., F h_k) and
/// Psi(c)(g_1..g_k) = sum rho_{i_0}(t g_1) rho_{j_1}(s g_1)...rho_{j_k}(s g_k)
///                    c((t g_1|i_0, g_1, s g_1|j_1), ..., (s g_{k-1}|j_{k-1}, g_k, s g_k|j_k)).
inline MvMaps mvMaps(const FiniteGroupoid& G, const CechGroupoid& cech, const Representation& E, int kMax,
                     const std::optional<PartitionOfUnity>& given = std::nullopt) {
  const PartitionOfUnity pou = given ? *given : PartitionOfUnity::uniform(G, cech.cover);
  if (auto err = pou.check(G); !err.empty()) throw std::invalid_argument("not a partition of unity: " + err);
  requireValid(G, E);
  const FiniteGroupoid& H = cech.pullback.groupoid;
  const GroupoidMorphism& F = cech.pullback.projection;
  const Representation EU = pullbackRep(H, E, F);
  NerveTower TG(G, kMax + 1), TH(H, kMax + 1);
  MvMaps out;
  out.base = share(repComplex(TG, E, kMax));
  out.cech = share(repComplex(TH, EU, kMax));

  // Cech object (x|j) by (x, j), Cech arrow by (target object, arrow, source object).
  std::map<std::pair<Object, std::size_t>, Object> cechObject;
  for (std::size_t j = 0; j < cech.cover.size(); ++j)
    for (const auto& x : cech.cover[j])
      cechObject[{G.objectIndex(x), j}] = H.objectIndex(cechObjectId(x, j));
  std::map<std::tuple<Object, Arrow, Object>, Arrow> cechArrow;
  for (std::size_t h = 0; h < H.numArrows(); ++h) {
    const Arrow hh = static_cast<Arrow>(h);
    cechArrow[{H.tgt(hh), F.arrowMap[h], H.src(hh)}] = hh;
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> members(G.numObjects());
  for (std::size_t j = 0; j < cech.cover.size(); ++j)
    for (std::size_t x = 0; x < G.numObjects(); ++x)
      if (sgn(pou.rho[j][x]) != 0) members[x].push_back({j, pou.rho[j][x]});

  std::vector<Matrix> pi, psi;
  for (int k = 0; k <= kMax + 1; ++k) {
    const Nerve& ng = TG.level(k);
    const Nerve& nh = TH.level(k);
    CochainSpace cg(ng, E.bundle), ch(nh, EU.bundle);
    MatrixBuilder pb(ch.dim(), cg.dim());
    std::vector<Arrow> buf;
    for (std::size_t i = 0; i < nh.size(); ++i) {
      std::size_t j;
      if (k == 0) {
        j = static_cast<std::size_t>(F.objectMap[i]);
      } else {
        buf.clear();
        for (Arrow h : nh.string(i)) buf.push_back(F.arrowMap[static_cast<std::size_t>(h)]);
        j = ng.indexOf(buf);
      }
      for (std::size_t a = 0; a < ch.fiber(i); ++a) pb.add(ch.offset(i) + a, cg.offset(j) + a, Rational(1));
    }
    pi.push_back(std::move(pb).build());

    MatrixBuilder sb(cg.dim(), ch.dim());
    for (std::size_t i = 0; i < ng.size(); ++i) {
      std::vector<Object> chain;  // t(g_1), s(g_1), ..., s(g_k)
      if (k == 0) {
        chain.push_back(ng.object(i));
      } else {
        auto s = ng.string(i);
        chain.push_back(G.tgt(s[0]));
        for (Arrow g : s) chain.push_back(G.src(g));
      }
      std::vector<std::size_t> pick(chain.size(), 0);
      while (true) {
        Rational w = 1;
        std::vector<Object> lifted;
        for (std::size_t p = 0; p < chain.size(); ++p) {
          const auto& [j, r] = members[static_cast<std::size_t>(chain[p])][pick[p]];
          w *= r;
          lifted.push_back(cechObject.at({chain[p], j}));
        }
        std::size_t col;
        if (k == 0) {
          col = static_cast<std::size_t>(lifted[0]);
        } else {
          buf.clear();
          auto s = ng.string(i);
          for (std::size_t p = 0; p < s.size(); ++p) buf.push_back(cechArrow.at({lifted[p], s[p], lifted[p + 1]}));
          col = nh.indexOf(buf);
        }
        for (std::size_t a = 0; a < cg.fiber(i); ++a) sb.add(cg.offset(i) + a, ch.offset(col) + a, w);
        std::size_t p = 0;
        while (p < chain.size() && ++pick[p] == members[static_cast<std::size_t>(chain[p])].size()) pick[p++] = 0;
        if (p == chain.size()) break;
      }
    }
    psi.push_back(std::move(sb).build());
  }
  out.psiPiIdentity = true;
  for (std::size_t k = 0; k < pi.size(); ++k)
    if (!(psi[k] * pi[k] == Matrix::identity(pi[k].cols()))) out.psiPiIdentity = false;
  out.piStar.emplace(out.base, out.cech, pi, 0);
  out.psi.emplace(out.cech, out.base, psi, 0);
  return out;
}

struct MoritaReport {
  std::string kind;
  std::vector<std::size_t> leftDims, rightDims;
  bool equal = false;
  std::optional<bool> psiPiIdentity;
};

namespace detail {

inline MoritaReport compareDims(std::string kind, std::vector<std::size_t> left, std::vector<std::size_t> right) {
  MoritaReport r{std::move(kind), std::move(left), std::move(right), false, std::nullopt};
  r.equal = r.leftDims == r.rightDims;
  return r;
}

}  // namespace detail

/// H(G, E) against H(G_P, f*E) for the pullback along a surjection f : P -> M.
inline MoritaReport moritaPullback(const FiniteGroupoid& G, const std::vector<std::string>& P,
                                   const std::map<std::string, std::string>& f, const Representation& E, int kMax) {
  const Pullback pb = pullbackGroupoid(G, P, f);
  NerveTower TG(G, kMax + 1), TH(pb.groupoid, kMax + 1);
  const Representation EP = pullbackRep(pb.groupoid, E, pb.projection);
  return detail::compareDims("pullback", cohomologyDims(repComplex(TG, E, kMax), kMax),
                             cohomologyDims(repComplex(TH, EP, kMax), kMax));
}

inline MoritaReport moritaPullback(const FiniteGroupoid& G, const std::vector<std::string>& P,
                                   const std::map<std::string, std::string>& f, const Ruth2& r, int kMax) {
  const Pullback pb = pullbackGroupoid(G, P, f);
  NerveTower TG(G, kMax + 1), TH(pb.groupoid, kMax + 1);
  const Ruth2 rp = pullbackRuth(pb.groupoid, r, pb.projection);
  return detail::compareDims("pullback", cohomologyDims(ruthComplex(TG, r, kMax), kMax),
                             cohomologyDims(ruthComplex(TH, rp, kMax), kMax));
}

/// H(G, E) against the Cech groupoid of a cover, with the comparison maps.
inline MoritaReport moritaCech(const FiniteGroupoid& G, const std::vector<std::vector<std::string>>& cover,
                               const Representation& E, int kMax) {
  const CechGroupoid cech = cechGroupoid(G, cover);
  MvMaps mv = mvMaps(G, cech, E, kMax);
  auto rep = detail::compareDims("cech", cohomologyDims(*mv.base, kMax), cohomologyDims(*mv.cech, kMax));
  rep.psiPiIdentity = mv.psiPiIdentity;
  return rep;
}

inline MoritaReport moritaCech(const FiniteGroupoid& G, const std::vector<std::vector<std::string>>& cover,
                               const Ruth2& r, int kMax) {
  const CechGroupoid cech = cechGroupoid(G, cover);
  const FiniteGroupoid& H = cech.pullback.groupoid;
  NerveTower TG(G, kMax + 1), TH(H, kMax + 1);
  const Ruth2 rp = pullbackRuth(H, r, cech.pullback.projection);
  return detail::compareDims("cech", cohomologyDims(ruthComplex(TG, r, kMax), kMax),
                             cohomologyDims(ruthComplex(TH, rp, kMax), kMax));
}

/// H(K, V) for the group K against H(gauge groupoid of P, P[V]).
inline MoritaReport moritaGauge(const GroupAction& A, const GroupRep& V, int kMax) {
  const FiniteGroupoid K = groupGroupoid(A.group);
  Representation EV{VectorBundle::constant(1, V.dim), std::vector<Matrix>(K.numArrows())};
  for (std::size_t e = 0; e < A.group.order(); ++e)
    EV.maps[static_cast<std::size_t>(K.arrowIndex(A.group.elements[e]))] = V.maps[e];
  const GaugeGroupoid gauge = gaugeGroupoid(A);
  const Representation PV = associatedBundleRep(A, gauge, V);
  NerveTower TK(K, kMax + 1), TG(gauge.groupoid, kMax + 1);
  return detail::compareDims("gauge", cohomologyDims(repComplex(TK, EV, kMax), kMax),
                             cohomologyDims(repComplex(TG, PV, kMax), kMax));
}

}  // namespace gpdcoh
