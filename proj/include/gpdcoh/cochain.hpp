#pragma once

// Cochain complexes of a finite groupoid: C^k(G, E) over the nerve, the
// operator delta_lambda of a quasi-action, the total complex of a two-term
// representation up to homotopy, normalized subcomplexes and cup products.

#include <vector>

#include "complex.hpp"
#include "rep.hpp"

namespace gpdcoh {

/// C^k(G, E): for each composable string (in nerve order) a block of
/// coordinates of the fiber at t(g_1).
class CochainSpace {
 public:
  CochainSpace(const Nerve& n, const VectorBundle& e) : nerve_(&n) {
    offsets_.reserve(n.size() + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < n.size(); ++i) offsets_.push_back(offsets_.back() + e.dim(n.target(i)));
  }
  /// The zero space standing for C^{-1}.
  CochainSpace() : offsets_{0} {}

  std::size_t dim() const { return offsets_.back(); }
  std::size_t offset(std::size_t string) const { return offsets_[string]; }
  std::size_t fiber(std::size_t string) const { return offsets_[string + 1] - offsets_[string]; }
  const Nerve& nerve() const { return *nerve_; }

 private:
  const Nerve* nerve_ = nullptr;
  std::vector<std::size_t> offsets_;
};

namespace detail {

/// Index in level k of the face d_i of the (k+1)-string `s`:
/// d_0 drops g_1, d_i composes g_i g_{i+1}, d_{k+1} drops g_{k+1}.
inline std::size_t face(const FiniteGroupoid& G, const Nerve& lower, std::span<const Arrow> s, std::size_t i,
                        std::vector<Arrow>& buf) {
  const std::size_t n = s.size();
  if (n == 1) return static_cast<std::size_t>(i == 0 ? G.src(s[0]) : G.tgt(s[0]));
  buf.clear();
  if (i == 0) {
    buf.assign(s.begin() + 1, s.end());
  } else if (i == n) {
    buf.assign(s.begin(), s.end() - 1);
  } else {
    buf.assign(s.begin(), s.begin() + static_cast<long>(i) - 1);
    buf.push_back(G.compose(s[i - 1], s[i]));
    buf.insert(buf.end(), s.begin() + static_cast<long>(i) + 1, s.end());
  }
  return lower.indexOf(buf);
}

inline Rational altSign(std::size_t i) { return (i % 2) ? Rational(-1) : Rational(1); }

/// Index in level `level` of the tail (g_{j+1}, ..., g_n) of an n-string; at
/// level 0 this is the object s(g_j).
inline std::size_t tail(const FiniteGroupoid& G, const Nerve& target, std::span<const Arrow> s, std::size_t j) {
  if (j == s.size()) return static_cast<std::size_t>(G.src(s.back()));
  return target.indexOf(s.subspan(j));
}

/// Index of the head (g_1, ..., g_j); at level 0 the object t(g_1).
inline std::size_t head(const FiniteGroupoid& G, const Nerve& target, std::span<const Arrow> s, std::size_t j) {
  if (j == 0) return static_cast<std::size_t>(G.tgt(s.front()));
  return target.indexOf(s.first(j));
}

}  // namespace detail

/// delta_lambda : C^k(G, E) -> C^{k+1}(G, E),
/// (du)(g_1..g_{k+1}) = lambda_{g_1} u(g_2..) + sum_{i=1}^{k} (-1)^i u(..g_i g_{i+1}..) + (-1)^{k+1} u(g_1..g_k).
/// Omitting the action term gives the bar differential used by the cylinder.
inline Matrix deltaMatrix(const NerveTower& T, const QuasiAction& lambda, int k, bool withAction = true) {
  const auto& G = T.groupoid();
  const Nerve& lo = T.level(k);
  const Nerve& hi = T.level(k + 1);
  CochainSpace src(lo, lambda.bundle), dst(hi, lambda.bundle);
  MatrixBuilder mb(dst.dim(), src.dim());
  std::vector<Arrow> buf;
  const std::size_t n = static_cast<std::size_t>(k) + 1;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    auto s = hi.string(i);
    const std::size_t r0 = dst.offset(i);
    if (withAction) {
      const std::size_t j = detail::face(G, lo, s, 0, buf);
      mb.addBlock(r0, src.offset(j), lambda(s[0]));
    }
    const std::size_t f = dst.fiber(i);
    for (std::size_t face = 1; face <= n; ++face) {
      const std::size_t j = detail::face(G, lo, s, face, buf);
      const Rational sg = detail::altSign(face);
      for (std::size_t a = 0; a < f; ++a) mb.add(r0 + a, src.offset(j) + a, sg);
    }
  }
  return std::move(mb).build();
}

/// Cochain complex C^0..C^{kMax+1} of a representation; cohomology is
/// determined up to kMax.
inline ChainComplex repComplex(const NerveTower& T, const Representation& E, int kMax) {
  if (T.top() < kMax + 1) throw ComplexError("nerve tower too short for the requested degree");
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int k = 0; k <= kMax + 1; ++k) dims.push_back(CochainSpace(T.level(k), E.bundle).dim());
  for (int k = 0; k <= kMax; ++k) diffs.push_back(deltaMatrix(T, E, k));
  return ChainComplex(0, std::move(dims), std::move(diffs), true);
}

// ---------------------------------------------------------------------------
// Total complex of a two-term representation up to homotopy.

/// Degree-n total space C^n(G, E0) (+) C^{n-1}(G, E1); the u-block comes first.
struct RuthSpace {
  CochainSpace u, v;
  std::size_t dim() const { return u.dim() + v.dim(); }
};

inline RuthSpace ruthSpace(const NerveTower& T, const Ruth2& r, int n) {
  return {CochainSpace(T.level(n), r.E0), n >= 1 ? CochainSpace(T.level(n - 1), r.E1) : CochainSpace()};
}

/// Pointwise application of a per-object matrix field: (phi.c)(g..) = phi_{t(g_1)} c(g..).
inline Matrix pointwise(const Nerve& level, const VectorBundle& from, const VectorBundle& to,
                        const std::vector<Matrix>& phi) {
  CochainSpace a(level, from), b(level, to);
  MatrixBuilder mb(b.dim(), a.dim());
  for (std::size_t i = 0; i < level.size(); ++i)
    mb.addBlock(b.offset(i), a.offset(i), phi[static_cast<std::size_t>(level.target(i))]);
  return std::move(mb).build();
}

/// (K.v)(g_1..g_{k+1}) = K(g_1, g_2) v(g_3..g_{k+1}) : C^{k-1}(E1) -> C^{k+1}(E0).
inline Matrix curvatureCup(const NerveTower& T, const Ruth2& r, int k) {
  const auto& G = T.groupoid();
  const Nerve& hi = T.level(k + 1);
  const Nerve& lo = T.level(k - 1);
  CochainSpace dst(hi, r.E0), src(lo, r.E1);
  MatrixBuilder mb(dst.dim(), src.dim());
  for (std::size_t i = 0; i < hi.size(); ++i) {
    auto s = hi.string(i);
    const std::size_t j = detail::tail(G, lo, s, 2);
    mb.addBlock(dst.offset(i), src.offset(j), r.K(s[0], s[1]));
  }
  return std::move(mb).build();
}

/// D(u, v) = (delta_lambda0 u + K.v, -delta_lambda1 v + partial u) from degree n
/// to n+1. Assembled from the raw data; D^2 = 0 is not assumed.
inline Matrix structureOperator(const NerveTower& T, const Ruth2& r, int n) {
  const RuthSpace a = ruthSpace(T, r, n), b = ruthSpace(T, r, n + 1);
  MatrixBuilder mb(b.dim(), a.dim());
  mb.addBlock(0, 0, deltaMatrix(T, r.lambda0, n));
  mb.addBlock(b.u.dim(), 0, pointwise(T.level(n), r.E0, r.E1, r.partial));
  if (n >= 1) {
    mb.addBlock(0, a.u.dim(), curvatureCup(T, r, n));
    mb.addBlock(b.u.dim(), a.u.dim(), deltaMatrix(T, r.lambda1, n - 1), Rational(-1));
  }
  return std::move(mb).build();
}

/// Total complex in degrees 0..kMax+1 (cohomology determined up to kMax).
/// Degree 0 is Gamma(E0) with D(alpha) = (delta alpha, partial alpha).
inline ChainComplex ruthComplex(const NerveTower& T, const Ruth2& r, int kMax, bool validate = true) {
  if (validate) requireValid(T.groupoid(), r);
  if (T.top() < kMax + 1) throw ComplexError("nerve tower too short for the requested degree");
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= kMax + 1; ++n) dims.push_back(ruthSpace(T, r, n).dim());
  for (int n = 0; n <= kMax; ++n) diffs.push_back(structureOperator(T, r, n));
  return ChainComplex(0, std::move(dims), std::move(diffs), true);
}

/// True when D_{n+1} D_n is the zero matrix for n = 0, 1, which involves every
/// arrow, composable pair and composable triple.
inline bool structureOperatorSquaresToZero(const NerveTower& T, const Ruth2& r) {
  for (int n = 0; n <= 1; ++n)
    if (!(structureOperator(T, r, n + 1) * structureOperator(T, r, n)).isZero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Normalized subcomplexes.

/// Coordinates of cochains that vanish whenever some g_i is a unit.
inline std::vector<std::size_t> normalizedCoordinates(const NerveTower& T, const CochainSpace& c, int k,
                                                      std::size_t shift = 0) {
  std::vector<std::size_t> out;
  if (c.dim() == 0) return out;
  const auto& G = T.groupoid();
  const Nerve& n = T.level(k);
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto s = n.string(i);
    if (std::any_of(s.begin(), s.end(), [&](Arrow g) { return G.isUnit(g); })) continue;
    for (std::size_t a = 0; a < c.fiber(i); ++a) out.push_back(shift + c.offset(i) + a);
  }
  return out;
}

struct Subcomplex {
  ComplexPtr sub;
  ChainMap inclusion;
};

/// Subcomplex spanned by coordinate vectors; verifies that the differential
/// maps it into itself.
inline Subcomplex coordinateSubcomplex(const ComplexPtr& full, const std::vector<std::vector<std::size_t>>& coords) {
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs, incl;
  const int lo = full->lo();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const int k = lo + static_cast<int>(i);
    dims.push_back(coords[i].size());
    std::vector<SparseVector> cols;
    for (auto c : coords[i]) cols.push_back(SparseVector::unit(c));
    incl.push_back(Matrix::fromColumns(full->dim(k), cols));
  }
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
    const int k = lo + static_cast<int>(i);
    Matrix image = full->d(k) * incl[i];
    std::vector<std::size_t> cols(image.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    Matrix restricted = image.select(coords[i + 1], cols);
    if (!(incl[i + 1] * restricted == image))
      throw ComplexError("coordinate subspace is not a subcomplex in degree " + std::to_string(k));
    diffs.push_back(std::move(restricted));
  }
  auto sub = share(ChainComplex(lo, std::move(dims), std::move(diffs), full->truncatedAbove()));
  ChainMap inclusion(sub, full, std::move(incl), lo);
  return {sub, std::move(inclusion)};
}

inline Subcomplex normalizedRepSubcomplex(const NerveTower& T, const Representation& E, const ComplexPtr& full) {
  std::vector<std::vector<std::size_t>> coords;
  for (int k = full->lo(); k <= full->hi(); ++k) coords.push_back(normalizedCoordinates(T, CochainSpace(T.level(k), E.bundle), k));
  return coordinateSubcomplex(full, coords);
}

inline Subcomplex normalizedRuthSubcomplex(const NerveTower& T, const Ruth2& r, const ComplexPtr& full) {
  std::vector<std::vector<std::size_t>> coords;
  for (int n = full->lo(); n <= full->hi(); ++n) {
    const RuthSpace s = ruthSpace(T, r, n);
    auto c = normalizedCoordinates(T, s.u, n);
    if (n >= 1) {
      auto v = normalizedCoordinates(T, s.v, n - 1, s.u.dim());
      c.insert(c.end(), v.begin(), v.end());
    }
    coords.push_back(std::move(c));
  }
  return coordinateSubcomplex(full, coords);
}

// ---------------------------------------------------------------------------
// Cup products.

/// (u.f)(g_1..g_{k+k'}) = u(g_1..g_k) f(g_{k+1}..g_{k+k'}) for u in C^k(G, E)
/// and f in C^{k'}(G) with trivial coefficients.
inline DenseVector cup(const NerveTower& T, const VectorBundle& E, const DenseVector& u, int k, const DenseVector& f,
                       int kp) {
  const auto& G = T.groupoid();
  const Nerve& out = T.level(k + kp);
  CochainSpace cu(T.level(k), E), co(out, E);
  if (u.size() != cu.dim() || f.size() != T.level(kp).size()) throw ShapeError("cup product operand shape mismatch");
  DenseVector w(co.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto s = out.string(i);
    std::size_t iu, jf;
    if (k + kp == 0) {
      iu = jf = i;
    } else {
      iu = detail::head(G, T.level(k), s, static_cast<std::size_t>(k));
      jf = kp == 0 ? static_cast<std::size_t>(k == 0 ? G.tgt(s.front()) : G.src(s[static_cast<std::size_t>(k) - 1]))
                   : T.level(kp).indexOf(s.subspan(static_cast<std::size_t>(k)));
    }
    for (std::size_t a = 0; a < co.fiber(i); ++a) w[co.offset(i) + a] = u[cu.offset(iu) + a] * f[jf];
  }
  return w;
}

/// Sign in delta(u.f) = (delta u).f + sign(k) u.(delta f) for u of degree k;
/// fixed by the test suite.
inline Rational leibnizSign(int k) { return (k % 2) ? Rational(-1) : Rational(1); }

/// Checks delta(u.f) = (delta u).f + sign u.(delta f) exactly; f has trivial
/// coefficients.
inline bool leibnizHolds(const NerveTower& T, const Representation& E, const DenseVector& u, int k,
                         const DenseVector& f, int kp, const Rational& sign) {
  const Representation triv = trivialRep(T.groupoid());
  const DenseVector lhs = deltaMatrix(T, E, k + kp).apply(cup(T, E.bundle, u, k, f, kp));
  const DenseVector a = cup(T, E.bundle, deltaMatrix(T, E, k).apply(u), k + 1, f, kp);
  const DenseVector b = cup(T, E.bundle, u, k, deltaMatrix(T, triv, kp).apply(f), kp + 1);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != a[i] + sign * b[i]) return false;
  return true;
}

/// (xi.w)(g_1..g_{p+q}) = xi(g_1..g_p)((g_1...g_p) . w(g_{p+1}..)), with xi
/// valued in Hom(E1, E0) (row-major) and w in C^q(G, E1) transported by lambda1.
inline DenseVector evaluationCup(const NerveTower& T, const Representation& lambda1, const VectorBundle& E0,
                                 const DenseVector& xi, int p, const DenseVector& w, int q) {
  const auto& G = T.groupoid();
  const VectorBundle& E1 = lambda1.bundle;
  VectorBundle hom;
  for (std::size_t x = 0; x < E0.dims.size(); ++x) hom.dims.push_back(E0.dims[x] * E1.dims[x]);
  const Nerve& out = T.level(p + q);
  CochainSpace cx(T.level(p), hom), cw(T.level(q), E1), co(out, E0);
  if (xi.size() != cx.dim() || w.size() != cw.dim()) throw ShapeError("evaluation cup operand shape mismatch");
  DenseVector res(co.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto s = out.string(i);
    std::size_t ix, iw;
    Arrow prod = kUndefined;
    if (p + q == 0) {
      ix = iw = i;
    } else {
      ix = detail::head(G, T.level(p), s, static_cast<std::size_t>(p));
      iw = detail::tail(G, T.level(q), s, static_cast<std::size_t>(p));
      if (p > 0) {
        prod = s[0];
        for (std::size_t j = 1; j < static_cast<std::size_t>(p); ++j) prod = G.compose(prod, s[j]);
      }
    }
    const Object x = out.target(i);
    const std::size_t e0 = E0.dim(x), e1 = E1.dim(x);
    DenseVector wv(cw.fiber(iw));
    for (std::size_t a = 0; a < wv.size(); ++a) wv[a] = w[cw.offset(iw) + a];
    if (prod != kUndefined) wv = lambda1(prod).apply(wv);
    for (std::size_t r = 0; r < e0; ++r) {
      Rational acc = 0;
      for (std::size_t c = 0; c < e1; ++c) acc += xi[cx.offset(ix) + r * e1 + c] * wv[c];
      res[co.offset(i) + r] = acc;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Degree-0 and degree-1 invariants of a RUTH.

struct SectionSpace {
  std::size_t dim = 0;
  Matrix basis;  // columns in Gamma(E0) or Gamma(E1)
};

/// {alpha in Gamma(E0) : partial alpha = 0, lambda0_g alpha_{s(g)} = alpha_{t(g)}}.
inline SectionSpace invariantIsotropySections(const NerveTower& T, const Ruth2& r) {
  Matrix stacked = structureOperator(T, r, 0);
  auto ker = kernelBasis(stacked);
  return {ker.size(), Matrix::fromColumns(stacked.cols(), ker)};
}

/// Classes [V] in Gamma(E1)/partial Gamma(E0) with
/// lambda1_g V_{s(g)} - V_{t(g)} in im partial_{t(g)} for every g. The basis
/// holds representatives V.
inline SectionSpace invariantNormalSections(const NerveTower& T, const Ruth2& r) {
  const auto& G = T.groupoid();
  const Nerve& objs = T.level(0);
  std::vector<Matrix> quotient;
  VectorBundle nu;
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    auto im = Subspace::image(r.partial[x]);
    nu.dims.push_back(im.codim());
    quotient.push_back(im.quotient);
  }
  // Defect map Gamma(E1) -> prod_g nu_{t(g)}.
  Matrix delta = deltaMatrix(T, r.lambda1, 0);
  Matrix q = pointwise(T.level(1), r.E1, nu, quotient);
  Matrix defect = q * delta;
  auto w = kernelBasis(defect);
  Matrix bnd = pointwise(objs, r.E0, r.E1, r.partial);
  EchelonBasis span(bnd.rows());
  for (const auto& c : bnd.columns()) span.insert(c);
  std::vector<SparseVector> reps;
  for (auto& v : w)
    if (span.insert(v)) reps.push_back(std::move(v));
  return {reps.size(), Matrix::fromColumns(bnd.rows(), reps)};
}

}  // namespace gpdcoh
