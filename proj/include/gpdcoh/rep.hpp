#pragma once

// Representations, quasi-actions and two-term representations up to homotopy
// over a finite groupoid.

#include <functional>
#include <string>
#include <vector>

#include "constructors.hpp"
#include "echelon.hpp"
#include "groupoid.hpp"

namespace gpdcoh {

/// Fiber dimensions indexed by object.
struct VectorBundle {
  std::vector<std::size_t> dims;

  std::size_t dim(Object x) const { return dims.at(static_cast<std::size_t>(x)); }
  std::size_t total() const {
    std::size_t n = 0;
    for (auto d : dims) n += d;
    return n;
  }
  bool isZero() const { return total() == 0; }
  static VectorBundle constant(std::size_t objects, std::size_t d) { return {std::vector<std::size_t>(objects, d)}; }
  bool operator==(const VectorBundle&) const = default;
};

/// Linear maps lambda_g : E_{s(g)} -> E_{t(g)}, one per arrow. A
/// representation is a quasi-action that passes validateRep.
struct QuasiAction {
  VectorBundle bundle;
  std::vector<Matrix> maps;

  const Matrix& operator()(Arrow g) const { return maps.at(static_cast<std::size_t>(g)); }
  bool operator==(const QuasiAction&) const = default;
};

using Representation = QuasiAction;

class RepError : public std::runtime_error {
 public:
  RepError(const std::string& what, ValidationReport report = {})
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {

inline std::string shapeOf(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

inline bool hasShape(const Matrix& m, std::size_t r, std::size_t c) { return m.rows() == r && m.cols() == c; }

class Collector {
 public:
  explicit Collector(ValidationReport& rep, std::size_t cap = 8) : rep_(rep), cap_(cap) {}
  void add(const std::string& axiom, std::vector<std::string> witnesses, const std::string& message) {
    if (count(axiom) >= cap_) return;
    rep_.violations.push_back({axiom, std::move(witnesses), message});
  }

 private:
  std::size_t count(const std::string& axiom) const {
    std::size_t n = 0;
    for (const auto& v : rep_.violations) n += v.axiom == axiom;
    return n;
  }
  ValidationReport& rep_;
  std::size_t cap_;
};

inline bool checkActionShapes(const FiniteGroupoid& G, const QuasiAction& a, const std::string& name, Collector& out) {
  bool ok = true;
  if (a.bundle.dims.size() != G.numObjects()) {
    out.add("shape", {}, name + ": bundle has " + std::to_string(a.bundle.dims.size()) + " fibers for " +
                             std::to_string(G.numObjects()) + " objects");
    return false;
  }
  if (a.maps.size() != G.numArrows()) {
    out.add("shape", {}, name + ": " + std::to_string(a.maps.size()) + " maps for " + std::to_string(G.numArrows()) + " arrows");
    return false;
  }
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (!hasShape(a.maps[g], a.bundle.dim(G.tgt(gg)), a.bundle.dim(G.src(gg)))) {
      out.add("shape", {G.arrowId(gg)},
              name + " at " + G.arrowId(gg) + " is " + shapeOf(a.maps[g]) + ", expected " +
                  std::to_string(a.bundle.dim(G.tgt(gg))) + "x" + std::to_string(a.bundle.dim(G.src(gg))));
      ok = false;
    }
  }
  return ok;
}

}  // namespace detail

/// Unit maps are identities and a(gh) = a(g) a(h) for all composable pairs.
inline ValidationReport validateRep(const FiniteGroupoid& G, const Representation& r) {
  ValidationReport rep;
  detail::Collector out(rep);
  if (!detail::checkActionShapes(G, r, "action", out)) return rep;
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const Arrow u = G.unit(static_cast<Object>(x));
    if (!(r(u) == Matrix::identity(r.bundle.dim(static_cast<Object>(x)))))
      out.add("unit", {G.arrowId(u)}, "action of unit " + G.arrowId(u) + " is not the identity");
  }
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Arrow gg = static_cast<Arrow>(g);
      if (!(r(gg) * r(h) == r(G.compose(gg, h))))
        out.add("functoriality", {G.arrowId(gg), G.arrowId(h)},
                "action(" + G.arrowId(gg) + ") action(" + G.arrowId(h) + ") != action(" + G.arrowId(G.compose(gg, h)) + ")");
    }
  return rep;
}

inline Representation trivialRep(const FiniteGroupoid& G, std::size_t d = 1) {
  Representation r{VectorBundle::constant(G.numObjects(), d), {}};
  for (std::size_t g = 0; g < G.numArrows(); ++g) r.maps.push_back(Matrix::identity(d));
  return r;
}

inline Representation zeroRep(const FiniteGroupoid& G) { return trivialRep(G, 0); }

/// One-dimensional representation given by a character chi(g) on each arrow.
inline Representation lineRep(const FiniteGroupoid& G, const std::function<Rational(Arrow)>& chi) {
  Representation r{VectorBundle::constant(G.numObjects(), 1), {}};
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    r.maps.push_back(Matrix::fromDense({{chi(static_cast<Arrow>(g))}}));
  return r;
}

// ---------------------------------------------------------------------------
// Two-term representations up to homotopy.

/// E0 (+) E1 with boundary partial_x : E0_x -> E1_x, quasi-actions lambda0 and
/// lambda1, and curvature K(g, h) : E1_{s(h)} -> E0_{t(g)} on composable pairs.
struct Ruth2 {
  VectorBundle E0, E1;
  std::vector<Matrix> partial;  // per object
  QuasiAction lambda0, lambda1;
  std::vector<Matrix> curvature;  // numArrows^2, slot g*m+h; non-composable slots unused
  std::size_t arrows = 0;

  const Matrix& d(Object x) const { return partial.at(static_cast<std::size_t>(x)); }
  const Matrix& K(Arrow g, Arrow h) const {
    return curvature.at(static_cast<std::size_t>(g) * arrows + static_cast<std::size_t>(h));
  }
  Matrix& K(Arrow g, Arrow h) { return curvature.at(static_cast<std::size_t>(g) * arrows + static_cast<std::size_t>(h)); }

  /// Zero curvature with correct shapes on every composable pair.
  static std::vector<Matrix> zeroCurvature(const FiniteGroupoid& G, const VectorBundle& E0, const VectorBundle& E1) {
    const std::size_t m = G.numArrows();
    std::vector<Matrix> out(m * m);
    for (std::size_t g = 0; g < m; ++g)
      for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g))))
        out[g * m + static_cast<std::size_t>(h)] = Matrix::zero(E0.dim(G.tgt(static_cast<Arrow>(g))), E1.dim(G.src(h)));
    return out;
  }

  bool operator==(const Ruth2&) const = default;
};

/// Checks shapes, unital normalization, and the four structure equations
///   (1) partial lambda0_g = lambda1_g partial
///   (2) lambda0_g lambda0_h - lambda0_gh + K(g,h) partial = 0
///   (3) lambda1_g lambda1_h - lambda1_gh + partial K(g,h) = 0
///   (4) lambda0_g K(h,k) - K(gh,k) + K(g,hk) - K(g,h) lambda1_k = 0
/// Axiom names in the report: "shape", "normalization", "equation (1)".."equation (4)".
inline ValidationReport validateRuth(const FiniteGroupoid& G, const Ruth2& r) {
  ValidationReport rep;
  detail::Collector out(rep);
  bool shapes = detail::checkActionShapes(G, r.lambda0, "lambda0", out) &
                detail::checkActionShapes(G, r.lambda1, "lambda1", out);
  if (!shapes) return rep;
  if (!(r.lambda0.bundle == r.E0) || !(r.lambda1.bundle == r.E1)) {
    out.add("shape", {}, "quasi-action bundles differ from E0/E1");
    return rep;
  }
  if (r.partial.size() != G.numObjects()) {
    out.add("shape", {}, "need one boundary matrix per object");
    return rep;
  }
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const Object xo = static_cast<Object>(x);
    if (!detail::hasShape(r.partial[x], r.E1.dim(xo), r.E0.dim(xo))) {
      out.add("shape", {G.objectId(xo)}, "boundary at " + G.objectId(xo) + " is " + detail::shapeOf(r.partial[x]));
      shapes = false;
    }
  }
  const std::size_t m = G.numArrows();
  if (r.arrows != m || r.curvature.size() != m * m) {
    out.add("shape", {}, "curvature table has the wrong size");
    return rep;
  }
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Arrow gg = static_cast<Arrow>(g);
      if (!detail::hasShape(r.K(gg, h), r.E0.dim(G.tgt(gg)), r.E1.dim(G.src(h)))) {
        out.add("shape", {G.arrowId(gg), G.arrowId(h)},
                "K(" + G.arrowId(gg) + "," + G.arrowId(h) + ") is " + detail::shapeOf(r.K(gg, h)));
        shapes = false;
      }
    }
  if (!shapes) return rep;

  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    const Object xo = static_cast<Object>(x);
    const Arrow u = G.unit(xo);
    if (!(r.lambda0(u) == Matrix::identity(r.E0.dim(xo))) || !(r.lambda1(u) == Matrix::identity(r.E1.dim(xo))))
      out.add("normalization", {G.arrowId(u)}, "quasi-action at unit " + G.arrowId(u) + " is not the identity");
  }
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Arrow gg = static_cast<Arrow>(g);
      if ((G.isUnit(gg) || G.isUnit(h)) && !r.K(gg, h).isZero())
        out.add("normalization", {G.arrowId(gg), G.arrowId(h)},
                "K(" + G.arrowId(gg) + "," + G.arrowId(h) + ") must vanish on units");
    }

  for (std::size_t g = 0; g < m; ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (!(r.d(G.tgt(gg)) * r.lambda0(gg) == r.lambda1(gg) * r.d(G.src(gg))))
      out.add("equation (1)", {G.arrowId(gg)}, "boundary does not commute with lambda at " + G.arrowId(gg));
  }
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Arrow gg = static_cast<Arrow>(g);
      const Arrow gh = G.compose(gg, h);
      const std::vector<std::string> w{G.arrowId(gg), G.arrowId(h)};
      if (!(r.lambda0(gg) * r.lambda0(h) - r.lambda0(gh) + r.K(gg, h) * r.d(G.src(h))).isZero())
        out.add("equation (2)", w, "lambda0 fails to be multiplicative up to K on (" + w[0] + "," + w[1] + ")");
      if (!(r.lambda1(gg) * r.lambda1(h) - r.lambda1(gh) + r.d(G.tgt(gg)) * r.K(gg, h)).isZero())
        out.add("equation (3)", w, "lambda1 fails to be multiplicative up to K on (" + w[0] + "," + w[1] + ")");
    }
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g))))
      for (Arrow k : G.arrowsWithTarget(G.src(h))) {
        const Arrow gg = static_cast<Arrow>(g);
        Matrix lhs = r.lambda0(gg) * r.K(h, k) - r.K(G.compose(gg, h), k) + r.K(gg, G.compose(h, k)) -
                     r.K(gg, h) * r.lambda1(k);
        if (!lhs.isZero())
          out.add("equation (4)", {G.arrowId(gg), G.arrowId(h), G.arrowId(k)},
                  "curvature cocycle identity fails on (" + G.arrowId(gg) + "," + G.arrowId(h) + "," + G.arrowId(k) + ")");
      }
  return rep;
}

inline void requireValid(const FiniteGroupoid& G, const Ruth2& r) {
  auto rep = validateRuth(G, r);
  if (!rep.valid()) throw RepError("invalid representation up to homotopy: " + rep.summary(), rep);
}

inline void requireValid(const FiniteGroupoid& G, const Representation& r) {
  auto rep = validateRep(G, r);
  if (!rep.valid()) throw RepError("invalid representation: " + rep.summary(), rep);
}

/// Strict RUTH of an equivariant map rho : E0 -> E1 of representations:
/// partial = rho, lambda = the actions, K = 0.
inline Ruth2 coneRuth(const FiniteGroupoid& G, const Representation& a, const Representation& b,
                      const std::vector<Matrix>& rho) {
  requireValid(G, a);
  requireValid(G, b);
  if (rho.size() != G.numObjects()) throw RepError("need one matrix of rho per object");
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    if (!detail::hasShape(rho[x], b.bundle.dim(static_cast<Object>(x)), a.bundle.dim(static_cast<Object>(x))))
      throw RepError("rho at " + G.objectId(static_cast<Object>(x)) + " has shape " + detail::shapeOf(rho[x]));
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (!(rho[static_cast<std::size_t>(G.tgt(gg))] * a(gg) == b(gg) * rho[static_cast<std::size_t>(G.src(gg))])) {
      ValidationReport rep;
      rep.violations.push_back({"equivariance", {G.arrowId(gg)}, "rho is not equivariant at " + G.arrowId(gg)});
      throw RepError("rho is not equivariant at arrow " + G.arrowId(gg), rep);
    }
  }
  Ruth2 r{a.bundle, b.bundle, rho, a, b, Ruth2::zeroCurvature(G, a.bundle, b.bundle), G.numArrows()};
  return r;
}

/// Conjugates the structure operator by (u, v) -> (u + eta.v, v), where
/// eta(g) : E1_{s(g)} -> E0_{t(g)} vanishes on units:
///   lambda0'_g = lambda0_g - eta(g) partial
///   lambda1'_g = lambda1_g - partial eta(g)
///   K'(g,h) = K(g,h) + lambda0_g eta(h) - eta(gh) + eta(g) lambda1_h - eta(g) partial eta(h)
inline Ruth2 gaugeTwist(const FiniteGroupoid& G, const Ruth2& r, const std::vector<Matrix>& eta) {
  if (eta.size() != G.numArrows()) throw RepError("need one twisting matrix per arrow");
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    if (!detail::hasShape(eta[g], r.E0.dim(G.tgt(gg)), r.E1.dim(G.src(gg))))
      throw RepError("twist at " + G.arrowId(gg) + " has shape " + detail::shapeOf(eta[g]));
    if (G.isUnit(gg) && !eta[g].isZero()) throw RepError("twist must vanish on the unit " + G.arrowId(gg));
  }
  auto E = [&](Arrow g) -> const Matrix& { return eta[static_cast<std::size_t>(g)]; };
  Ruth2 out = r;
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    out.lambda0.maps[g] = r.lambda0(gg) - E(gg) * r.d(G.src(gg));
    out.lambda1.maps[g] = r.lambda1(gg) - r.d(G.tgt(gg)) * E(gg);
  }
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Arrow gg = static_cast<Arrow>(g);
      out.K(gg, h) = r.K(gg, h) + r.lambda0(gg) * E(h) - E(G.compose(gg, h)) + E(gg) * r.lambda1(h) -
                     E(gg) * r.d(G.src(gg)) * E(h);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Isotropy and normal representations.

/// Fiberwise kernels of partial with bases, coordinates, and the induced
/// action of lambda0.
struct KernelRep {
  Representation rep;
  std::vector<Subspace> fibers;
};

inline KernelRep kerRep(const FiniteGroupoid& G, const Ruth2& r) {
  KernelRep out;
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    out.fibers.push_back(Subspace::kernel(r.partial[x]));
    out.rep.bundle.dims.push_back(out.fibers.back().dim());
  }
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    const auto& S = out.fibers[static_cast<std::size_t>(G.src(gg))];
    const auto& T = out.fibers[static_cast<std::size_t>(G.tgt(gg))];
    out.rep.maps.push_back(T.coords * r.lambda0(gg) * S.basis);
  }
  return out;
}

/// Fiberwise cokernels of partial, realized as quotients by echelon bases of
/// the image, with the action induced by lambda1.
struct CokernelRep {
  Representation rep;
  std::vector<Subspace> images;
};

inline CokernelRep cokerRep(const FiniteGroupoid& G, const Ruth2& r) {
  CokernelRep out;
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    out.images.push_back(Subspace::image(r.partial[x]));
    out.rep.bundle.dims.push_back(out.images.back().codim());
  }
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    const auto& S = out.images[static_cast<std::size_t>(G.src(gg))];
    const auto& T = out.images[static_cast<std::size_t>(G.tgt(gg))];
    out.rep.maps.push_back(T.quotient * r.lambda1(gg) * S.section);
  }
  return out;
}

/// Hom(a, b) with g.xi = b(g) xi a(g^{-1}); xi is stored row-major as a
/// dim b_x by dim a_x matrix.
inline Representation homRep(const FiniteGroupoid& G, const Representation& a, const Representation& b) {
  Representation out;
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    out.bundle.dims.push_back(a.bundle.dims[x] * b.bundle.dims[x]);
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    const Arrow gg = static_cast<Arrow>(g);
    const Matrix& B = b(gg);
    const Matrix& C = a(G.inverse(gg));  // a_t -> a_s
    const std::size_t as = a.bundle.dim(G.src(gg)), at = a.bundle.dim(G.tgt(gg));
    const std::size_t bs = b.bundle.dim(G.src(gg)), bt = b.bundle.dim(G.tgt(gg));
    MatrixBuilder mb(bt * at, bs * as);
    // (B xi C)_{ij} = sum_{k,l} B_ik xi_kl C_lj
    for (std::size_t i = 0; i < bt; ++i)
      for (const auto& [k, bik] : B.row(i))
        for (std::size_t l = 0; l < as; ++l)
          for (const auto& [j, clj] : C.row(l)) mb.add(i * at + j, k * as + l, bik * clj);
    out.maps.push_back(std::move(mb).build());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pullbacks along morphisms F : H -> G.

inline Representation pullbackRep(const FiniteGroupoid& H, const Representation& r, const GroupoidMorphism& F) {
  Representation out;
  for (std::size_t x = 0; x < H.numObjects(); ++x) out.bundle.dims.push_back(r.bundle.dim(F.objectMap[x]));
  for (std::size_t g = 0; g < H.numArrows(); ++g) out.maps.push_back(r(F.arrowMap[g]));
  return out;
}

inline Ruth2 pullbackRuth(const FiniteGroupoid& H, const Ruth2& r, const GroupoidMorphism& F) {
  Ruth2 out;
  out.lambda0 = pullbackRep(H, r.lambda0, F);
  out.lambda1 = pullbackRep(H, r.lambda1, F);
  out.E0 = out.lambda0.bundle;
  out.E1 = out.lambda1.bundle;
  for (std::size_t x = 0; x < H.numObjects(); ++x) out.partial.push_back(r.d(F.objectMap[x]));
  const std::size_t m = H.numArrows();
  out.arrows = m;
  out.curvature.assign(m * m, Matrix());
  for (std::size_t g = 0; g < m; ++g)
    for (Arrow h : H.arrowsWithTarget(H.src(static_cast<Arrow>(g))))
      out.K(static_cast<Arrow>(g), h) = r.K(F.arrowMap[g], F.arrowMap[static_cast<std::size_t>(h)]);
  return out;
}

// ---------------------------------------------------------------------------
// Associated bundles of gauge groupoids.

/// Representation of a finite group: one matrix per element.
struct GroupRep {
  std::size_t dim = 0;
  std::vector<Matrix> maps;
};

inline bool isGroupRep(const FiniteGroup& G, const GroupRep& V) {
  if (V.maps.size() != G.order()) return false;
  for (const auto& m : V.maps)
    if (!detail::hasShape(m, V.dim, V.dim)) return false;
  if (!(V.maps[static_cast<std::size_t>(G.identity())] == Matrix::identity(V.dim))) return false;
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      if (!(V.maps[a] * V.maps[b] == V.maps[static_cast<std::size_t>(G.mul[a][b])])) return false;
  return true;
}

/// P[V] over the gauge groupoid of a free action. Each fiber is identified
/// with V through the orbit's basepoint b: [p, u] = [b, g_p^{-1} u] where
/// p = g_p b; the arrow [p, q] then acts by V(g_p^{-1} g_q).
inline Representation associatedBundleRep(const GroupAction& A, const GaugeGroupoid& gauge, const GroupRep& V) {
  if (!A.isFree()) throw RepError("associated bundle needs a free action");
  if (!isGroupRep(A.group, V)) throw RepError("group representation is not multiplicative");
  const auto& G = A.group;
  auto carrier = [&](int p) {
    const int b = gauge.basepoints[static_cast<std::size_t>(gauge.orbitOf[static_cast<std::size_t>(p)])];
    for (std::size_t g = 0; g < G.order(); ++g)
      if (A.act[g][static_cast<std::size_t>(b)] == p) return static_cast<int>(g);
    throw std::logic_error("point not in the orbit of its basepoint");
  };
  const auto& H = gauge.groupoid;
  Representation out{VectorBundle::constant(H.numObjects(), V.dim), {}};
  for (std::size_t a = 0; a < H.numArrows(); ++a) {
    const auto [p, q] = gauge.representative.at(H.arrowId(static_cast<Arrow>(a)));
    const int gp = carrier(p), gq = carrier(q);
    out.maps.push_back(V.maps[static_cast<std::size_t>(G.mul[static_cast<std::size_t>(G.inverse(gp))][static_cast<std::size_t>(gq)])]);
  }
  return out;
}

}  // namespace gpdcoh
