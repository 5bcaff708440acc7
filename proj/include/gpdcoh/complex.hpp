#pragma once

// Cochain complexes of finite-dimensional Q-vector spaces, their cohomology,
// mapping cones, and long exact sequences from short exact sequences.

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "echelon.hpp"

namespace gpdcoh {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degrees lo..hi with differentials d_k : C^k -> C^{k+1} for lo <= k < hi.
/// Spaces outside [lo, hi] are zero. When `truncatedAbove` is set, C^{hi+1}
/// was never built, so the cohomology at hi is unknown.
class ChainComplex {
 public:
  ChainComplex() = default;

  ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs, bool truncatedAbove = false)
      : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)), truncated_(truncatedAbove) {
    if (dims_.empty()) throw ComplexError("complex needs at least one degree");
    if (diffs_.size() + 1 != dims_.size()) throw ComplexError("need one differential per adjacent pair of degrees");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
      if (diffs_[i].cols() != dims_[i] || diffs_[i].rows() != dims_[i + 1]) {
        std::ostringstream os;
        os << "differential d_" << lo_ + static_cast<int>(i) << " has shape " << diffs_[i].rows() << "x"
           << diffs_[i].cols() << ", expected " << dims_[i + 1] << "x" << dims_[i];
        throw ComplexError(os.str());
      }
    }
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
      if (!(diffs_[i + 1] * diffs_[i]).isZero())
        throw ComplexError("d_{k+1} d_k != 0 at k = " + std::to_string(lo_ + static_cast<int>(i)));
    }
  }

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool truncatedAbove() const { return truncated_; }

  std::size_t dim(int k) const {
    if (k < lo() || k > hi()) return 0;
    return dims_[static_cast<std::size_t>(k - lo_)];
  }

  /// d_k as a dim(k+1) x dim(k) matrix (zero outside the stored range).
  Matrix d(int k) const {
    if (k >= lo() && k < hi()) return diffs_[static_cast<std::size_t>(k - lo_)];
    if (k == hi() && truncated_) throw ComplexError("differential out of degree " + std::to_string(k) + " was truncated");
    return Matrix::zero(dim(k + 1), dim(k));
  }

  /// Highest degree whose cohomology is determined.
  int topComputable() const { return truncated_ ? hi() - 1 : hi(); }

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
  bool truncated_ = false;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

inline ComplexPtr share(ChainComplex c) { return std::make_shared<const ChainComplex>(std::move(c)); }

/// Degree-preserving map of complexes. Components are stored for the degrees
/// where both sides may be nonzero.
class ChainMap {
 public:
  ChainMap(ComplexPtr source, ComplexPtr target, std::vector<Matrix> components, int lo)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)), lo_(lo) {
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      const int k = lo_ + static_cast<int>(i);
      if (comps_[i].rows() != target_->dim(k) || comps_[i].cols() != source_->dim(k))
        throw ComplexError("chain map component shape mismatch in degree " + std::to_string(k));
    }
    verify();
  }

  const ChainComplex& source() const { return *source_; }
  const ChainComplex& target() const { return *target_; }
  ComplexPtr sourcePtr() const { return source_; }
  ComplexPtr targetPtr() const { return target_; }

  Matrix at(int k) const {
    if (k >= lo_ && k < lo_ + static_cast<int>(comps_.size())) return comps_[static_cast<std::size_t>(k - lo_)];
    return Matrix::zero(target_->dim(k), source_->dim(k));
  }

  /// Degrees on which commutation with the differentials is checkable.
  int checkLo() const { return std::min(source_->lo(), target_->lo()) - 1; }
  int checkHi() const {
    int h = std::max(source_->hi(), target_->hi());
    if (source_->truncatedAbove() || target_->truncatedAbove()) h = std::min(source_->hi(), target_->hi()) - 1;
    return h;
  }

 private:
  void verify() const {
    for (int k = checkLo(); k <= checkHi(); ++k) {
      if (!(target_->d(k) * at(k) == at(k + 1) * source_->d(k)))
        throw ComplexError("map does not commute with differentials in degree " + std::to_string(k));
    }
  }

  ComplexPtr source_, target_;
  std::vector<Matrix> comps_;
  int lo_;
};

/// dim H^k = dim ker d_k - rank d_{k-1}, for lo..kMax.
inline std::vector<std::size_t> cohomologyDims(const ChainComplex& c, int kMax) {
  if (c.truncatedAbove() && kMax > c.topComputable())
    throw ComplexError("cohomology requested in degree " + std::to_string(kMax) + " beyond truncation");
  std::vector<std::size_t> out;
  std::size_t rankIn = rank(c.d(c.lo() - 1));
  for (int k = c.lo(); k <= kMax; ++k) {
    const std::size_t rankOut = rank(c.d(k));
    out.push_back(c.dim(k) - rankOut - rankIn);
    rankIn = rankOut;
  }
  return out;
}

/// Cohomology in one degree with explicit representatives: echelonized kernel
/// vectors kept in input order whenever they are independent modulo the image.
class CohomologyBasis {
 public:
  CohomologyBasis(const ChainComplex& c, int k) : degree_(k), span_(c.dim(k)) {
    if (c.truncatedAbove() && k > c.topComputable()) throw ComplexError("cohomology basis beyond truncation");
    for (const auto& col : c.d(k - 1).columns()) span_.insert(col);
    imageDim_ = span_.dimension();
    for (auto& z : kernelBasis(c.d(k))) {
      if (span_.insert(z, SparseVector::unit(reps_.size()))) reps_.push_back(std::move(z));
    }
  }

  int degree() const { return degree_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<SparseVector>& representatives() const { return reps_; }

  /// Coordinates of the class of a cocycle z; nullopt if z is not a cocycle
  /// modulo this basis (that is, not in ker d).
  std::optional<DenseVector> classOf(const SparseVector& z) const {
    auto red = span_.reduce(z);
    if (!red.remainder.empty()) return std::nullopt;
    return red.tag.toDense(reps_.size());
  }

  bool isCoboundary(const SparseVector& z) const {
    auto c = classOf(z);
    if (!c) return false;
    for (const auto& x : *c)
      if (sgn(x) != 0) return false;
    return true;
  }

 private:
  int degree_;
  EchelonBasis span_;
  std::size_t imageDim_ = 0;
  std::vector<SparseVector> reps_;
};

inline Matrix matrixFromDenseColumns(std::size_t rows, const std::vector<DenseVector>& cols) {
  std::vector<SparseVector> sc;
  for (const auto& c : cols) sc.push_back(SparseVector::fromDense(c));
  return Matrix::fromColumns(rows, sc);
}

/// Matrix of H^k(f) : H^k(source) -> H^k(target) in the given bases.
inline Matrix inducedMap(const Matrix& fk, const CohomologyBasis& src, const CohomologyBasis& tgt) {
  std::vector<DenseVector> cols;
  for (const auto& rep : src.representatives()) {
    auto cls = tgt.classOf(fk.apply(rep));
    if (!cls) throw ComplexError("image of a cocycle is not a cocycle");
    cols.push_back(std::move(*cls));
  }
  return matrixFromDenseColumns(tgt.dim(), cols);
}

/// cone^n = A^n (+) B^{n-1} with d(a, b) = (d_A a, f a - d_B b).
inline ChainComplex mappingCone(const ChainMap& f) {
  const ChainComplex& a = f.source();
  const ChainComplex& b = f.target();
  const int lo = std::min(a.lo(), b.lo() + 1);
  int hi = std::max(a.hi(), b.hi() + 1);
  bool truncated = false;
  if (a.truncatedAbove() || b.truncatedAbove()) {
    hi = std::min(a.hi(), b.hi() + 1);
    truncated = true;
  }
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(a.dim(n) + b.dim(n - 1));
  std::vector<Matrix> diffs;
  for (int n = lo; n < hi; ++n) {
    MatrixBuilder mb(a.dim(n + 1) + b.dim(n), a.dim(n) + b.dim(n - 1));
    mb.addBlock(0, 0, a.d(n));
    mb.addBlock(a.dim(n + 1), 0, f.at(n));
    mb.addBlock(a.dim(n + 1), a.dim(n), b.d(n - 1), Rational(-1));
    diffs.push_back(std::move(mb).build());
  }
  return ChainComplex(lo, std::move(dims), std::move(diffs), truncated);
}

/// Identity chain map on a complex.
inline ChainMap identityMap(const ComplexPtr& c) {
  std::vector<Matrix> comps;
  for (int k = c->lo(); k <= c->hi(); ++k) comps.push_back(Matrix::identity(c->dim(k)));
  return ChainMap(c, c, std::move(comps), c->lo());
}

// ---------------------------------------------------------------------------
// Exactness of sequences of linear maps.

struct NodeExactness {
  std::string label;
  std::size_t dim = 0;
  std::size_t imageIn = 0;    // rank of incoming map
  std::size_t kernelOut = 0;  // dim - rank of outgoing map
  bool composesToZero = true;
  bool exact = false;
};

struct ExactnessReport {
  std::vector<NodeExactness> nodes;
  bool exact() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const NodeExactness& n) { return n.exact; });
  }
};

/// maps[i] : V_i -> V_{i+1}. Exactness is checked at every V_i having both an
/// incoming and an outgoing map; `padZeros` adds 0 -> V_0 and V_last -> 0.
inline ExactnessReport exactnessCheck(const std::vector<Matrix>& maps, const std::vector<std::string>& labels = {},
                                      bool padZeros = false) {
  std::vector<Matrix> seq;
  if (padZeros && !maps.empty()) seq.push_back(Matrix::zero(maps.front().cols(), 0));
  seq.insert(seq.end(), maps.begin(), maps.end());
  if (padZeros && !maps.empty()) seq.push_back(Matrix::zero(0, maps.back().rows()));
  ExactnessReport rep;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i].rows() != seq[i + 1].cols()) throw ShapeError("maps in sequence are not composable");
    NodeExactness n;
    const std::size_t idx = padZeros ? i : i + 1;
    n.label = idx < labels.size() ? labels[idx] : ("V" + std::to_string(idx));
    n.dim = seq[i].rows();
    n.imageIn = rank(seq[i]);
    n.kernelOut = n.dim - rank(seq[i + 1]);
    n.composesToZero = (seq[i + 1] * seq[i]).isZero();
    n.exact = n.composesToZero && n.imageIn == n.kernelOut;
    rep.nodes.push_back(std::move(n));
  }
  return rep;
}

/// Degreewise exactness of a sequence of chain maps (each degree separately).
inline ExactnessReport exactnessCheck(const std::vector<ChainMap>& maps, bool padZeros = false) {
  ExactnessReport all;
  if (maps.empty()) return all;
  int lo = maps.front().source().lo(), hi = maps.front().source().hi();
  for (const auto& m : maps) {
    lo = std::min({lo, m.source().lo(), m.target().lo()});
    hi = std::max({hi, m.source().hi(), m.target().hi()});
  }
  for (int k = lo; k <= hi; ++k) {
    std::vector<Matrix> mk;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < maps.size(); ++i) mk.push_back(maps[i].at(k));
    for (std::size_t i = 0; i <= maps.size(); ++i)
      labels.push_back("C" + std::to_string(i) + "^" + std::to_string(k));
    auto r = exactnessCheck(mk, labels, padZeros);
    all.nodes.insert(all.nodes.end(), r.nodes.begin(), r.nodes.end());
  }
  return all;
}

// ---------------------------------------------------------------------------
// Short exact sequences and connecting homomorphisms.

class ExactnessError : public ComplexError {
 public:
  ExactnessError(const std::string& what, int degree) : ComplexError(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// 0 -> A -i-> B -p-> C -> 0, verified exact in every degree on construction.
class ShortExactSequence {
 public:
  ShortExactSequence(ChainMap i, ChainMap p) : i_(std::move(i)), p_(std::move(p)) {
    if (&i_.target() != &p_.source() && i_.targetPtr() != p_.sourcePtr()) {
      // Different objects are fine as long as they agree degreewise.
      for (int k = i_.target().lo(); k <= i_.target().hi(); ++k)
        if (i_.target().dim(k) != p_.source().dim(k)) throw ComplexError("middle complexes differ");
    }
    const ChainComplex& b = i_.target();
    int lo = std::min({i_.source().lo(), b.lo(), p_.target().lo()});
    int hi = std::max({i_.source().hi(), b.hi(), p_.target().hi()});
    for (int k = lo; k <= hi; ++k) {
      Matrix ik = i_.at(k), pk = p_.at(k);
      const std::size_t a = i_.source().dim(k), bb = b.dim(k), c = p_.target().dim(k);
      if (rank(ik) != a) throw ExactnessError("inclusion not injective in degree " + std::to_string(k), k);
      if (rank(pk) != c) throw ExactnessError("projection not surjective in degree " + std::to_string(k), k);
      if (!(pk * ik).isZero()) throw ExactnessError("p o i != 0 in degree " + std::to_string(k), k);
      if (a + c != bb) throw ExactnessError("image of i differs from kernel of p in degree " + std::to_string(k), k);
    }
  }

  const ChainMap& inclusion() const { return i_; }
  const ChainMap& projection() const { return p_; }

  /// Connecting map H^k(C) -> H^{k+1}(A) in the given bases: lift along p,
  /// apply d_B, pull back along i.
  Matrix connecting(int k, const CohomologyBasis& hc, const CohomologyBasis& ha) const {
    LinearSolver lift(p_.at(k));
    LinearSolver pull(i_.at(k + 1));
    const Matrix dB = i_.target().d(k);
    std::vector<DenseVector> cols;
    for (const auto& z : hc.representatives()) {
      auto b = lift.solve(z);
      if (!b) throw ComplexError("projection is not surjective");
      auto a = pull.solve(dB.apply(*b));
      if (!a) throw ComplexError("d(lift) does not lie in the subcomplex");
      auto cls = ha.classOf(*a);
      if (!cls) throw ComplexError("connecting image is not a cocycle");
      cols.push_back(std::move(*cls));
    }
    return matrixFromDenseColumns(ha.dim(), cols);
  }

 private:
  ChainMap i_, p_;
};

/// The long exact sequence in cohomology of a short exact sequence:
/// ... H^k(A) -> H^k(B) -> H^k(C) -> H^{k+1}(A) -> ...
struct LongExactSequence {
  std::vector<std::string> labels;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;  // maps[j] : node j -> node j+1
  std::vector<Matrix> connecting;
  ExactnessReport report;
};

inline LongExactSequence longExactSequence(const ShortExactSequence& ses, int lo, int hi,
                                           const std::array<std::string, 3>& names = {"A", "B", "C"}) {
  const ChainComplex& a = ses.inclusion().source();
  const ChainComplex& b = ses.inclusion().target();
  const ChainComplex& c = ses.projection().target();
  LongExactSequence les;
  std::vector<CohomologyBasis> ha, hb, hc;
  for (int k = lo; k <= hi + 1; ++k) ha.emplace_back(a, k);
  for (int k = lo; k <= hi; ++k) {
    hb.emplace_back(b, k);
    hc.emplace_back(c, k);
  }
  for (int k = lo; k <= hi; ++k) {
    const auto j = static_cast<std::size_t>(k - lo);
    les.labels.push_back("H^" + std::to_string(k) + "(" + names[0] + ")");
    les.labels.push_back("H^" + std::to_string(k) + "(" + names[1] + ")");
    les.labels.push_back("H^" + std::to_string(k) + "(" + names[2] + ")");
    les.dims.insert(les.dims.end(), {ha[j].dim(), hb[j].dim(), hc[j].dim()});
    les.maps.push_back(inducedMap(ses.inclusion().at(k), ha[j], hb[j]));
    les.maps.push_back(inducedMap(ses.projection().at(k), hb[j], hc[j]));
    Matrix delta = ses.connecting(k, hc[j], ha[j + 1]);
    les.connecting.push_back(delta);
    les.maps.push_back(std::move(delta));
  }
  les.labels.push_back("H^" + std::to_string(hi + 1) + "(" + names[0] + ")");
  les.dims.push_back(ha.back().dim());
  std::vector<Matrix> checked = les.maps;
  std::vector<std::string> checkedLabels = les.labels;
  if (lo - 1 < c.lo()) {
    // H^{lo-1}(C) = 0, so exactness at H^lo(A) is checkable too.
    checked.insert(checked.begin(), Matrix::zero(ha.front().dim(), 0));
    checkedLabels.insert(checkedLabels.begin(), "0");
  }
  les.report = exactnessCheck(checked, checkedLabels);
  return les;
}

}  // namespace gpdcoh
