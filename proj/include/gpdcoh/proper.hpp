#pragma once

// Normalized counting measure on t-fibers, the averaging operator that
// inverts the differential on cocycles, and the vanishing pattern for finite
// groupoids.

#include <optional>
#include <string>
#include <vector>

#include "cochain.hpp"

namespace gpdcoh {

struct HaarSystem {
  std::vector<Rational> weight;  // per arrow
  const Rational& operator()(Arrow g) const { return weight.at(static_cast<std::size_t>(g)); }
};

/// weight(h) = 1 / |t^{-1}(t(h))|.
inline HaarSystem haar(const FiniteGroupoid& G) {
  HaarSystem h;
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    h.weight.push_back(Rational(1, static_cast<long>(G.arrowsWithTarget(G.tgt(static_cast<Arrow>(g))).size())));
  return h;
}

/// Every t-fiber has total weight 1.
inline bool haarNormalized(const FiniteGroupoid& G, const HaarSystem& h) {
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    Rational total = 0;
    for (Arrow a : G.arrowsWithTarget(static_cast<Object>(x))) total += h(a);
    if (total != 1) return false;
  }
  return true;
}

/// For every arrow a : x -> y and every function f on t^{-1}(x), averaging f
/// over t^{-1}(x) equals averaging f(a^{-1} .) over t^{-1}(y). Linear in f,
/// so checking the indicator functions suffices.
inline bool haarLeftInvariant(const FiniteGroupoid& G, const HaarSystem& h) {
  for (std::size_t a = 0; a < G.numArrows(); ++a) {
    const Arrow aa = static_cast<Arrow>(a);
    const Arrow ainv = G.inverse(aa);
    for (Arrow b : G.arrowsWithTarget(G.src(aa))) {
      // Indicator of b: left side h(b); right side sums h(c) over c with a^{-1} c = b.
      Rational right = 0;
      for (Arrow c : G.arrowsWithTarget(G.tgt(aa)))
        if (G.compose(ainv, c) == b) right += h(c);
      if (right != h(b)) return false;
    }
  }
  return true;
}

class NotCocycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// X(g_1..g_{k-1}) = (-1)^k sum_{h in t^{-1}(s(g_{k-1}))} weight(h) c(g_1..g_{k-1}, h);
/// for k = 1 the base point is the object itself. Satisfies delta X = c when
/// delta c = 0.
inline DenseVector transgress(const NerveTower& T, const Representation& E, const DenseVector& c, int k) {
  if (k < 1) throw std::invalid_argument("transgression needs degree >= 1");
  const auto& G = T.groupoid();
  const Matrix d = deltaMatrix(T, E, k);
  if (!d.apply(SparseVector::fromDense(c)).empty()) throw NotCocycleError("input cochain is not a cocycle");
  const HaarSystem h = haar(G);
  const Nerve& lo = T.level(k - 1);
  const Nerve& hi = T.level(k);
  CochainSpace cx(lo, E.bundle), cc(hi, E.bundle);
  DenseVector X(cx.dim());
  const Rational sign = (k % 2) ? Rational(-1) : Rational(1);
  std::vector<Arrow> buf;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const Object base = lo.source(i);
    buf.assign(lo.string(i).begin(), lo.string(i).end());
    buf.push_back(kUndefined);
    for (Arrow a : G.arrowsWithTarget(base)) {
      buf.back() = a;
      const std::size_t j = hi.indexOf(buf);
      for (std::size_t f = 0; f < cx.fiber(i); ++f) X[cx.offset(i) + f] += sign * h(a) * c[cc.offset(j) + f];
    }
  }
  return X;
}

struct VanishingReport {
  std::vector<std::size_t> dims, expected;
  bool pass = false;
  std::optional<std::size_t> isotropyDim, normalDim;  // for RUTH coefficients
  std::string note;
};

/// Genuine coefficients: H^0 = invariant sections, H^k = 0 for 1 <= k <= kMax.
inline VanishingReport vanishingReport(const NerveTower& T, const Representation& E, int kMax) {
  requireValid(T.groupoid(), E);
  VanishingReport rep;
  rep.dims = cohomologyDims(repComplex(T, E, kMax), kMax);
  Matrix d0 = deltaMatrix(T, E, 0);
  rep.expected.assign(static_cast<std::size_t>(kMax) + 1, 0);
  rep.expected[0] = kernelBasis(d0).size();
  rep.pass = rep.dims == rep.expected;
  return rep;
}

/// RUTH coefficients: H^0 = invariant isotropy sections, H^1 = invariant
/// normal sections, H^k = 0 for 2 <= k <= kMax.
inline VanishingReport vanishingReport(const NerveTower& T, const Ruth2& r, int kMax) {
  VanishingReport rep;
  rep.dims = cohomologyDims(ruthComplex(T, r, kMax), kMax);
  rep.isotropyDim = invariantIsotropySections(T, r).dim;
  rep.normalDim = invariantNormalSections(T, r).dim;
  rep.expected.assign(static_cast<std::size_t>(kMax) + 1, 0);
  rep.expected[0] = *rep.isotropyDim;
  if (kMax >= 1) rep.expected[1] = *rep.normalDim;
  rep.pass = rep.dims == rep.expected;
  return rep;
}

}  // namespace gpdcoh
