#pragma once

// Exact elimination: rank, kernels, linear solves and subspace coordinates.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace gpdcoh {

/// Incrementally built row-echelon basis of a subspace of Q^n. Every stored
/// row has leading entry 1 at its pivot. Each row optionally carries a "tag":
/// its expression as a combination of the generators that were inserted,
/// which is what turns reduction into linear solving.
class EchelonBasis {
 public:
  struct Reduction {
    SparseVector remainder;  // zero iff the input lies in the span
    SparseVector tag;        // input - remainder == sum_j tag[j] * generator_j
  };

  explicit EchelonBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return rows_.size(); }

  Reduction reduce(const SparseVector& v) const {
    std::map<std::size_t, Rational> work;
    for (const auto& [i, x] : v) work.emplace(i, x);
    std::map<std::size_t, Rational> tag;
    auto it = work.begin();
    while (it != work.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const std::size_t p = it->first;
      const Rational coeff = it->second;
      for (const auto& [c, x] : row->second.vec) {
        Rational& w = work[c];
        w -= coeff * x;
        if (sgn(w) == 0) work.erase(c);
      }
      for (const auto& [j, x] : row->second.tag) {
        Rational& t = tag[j];
        t += coeff * x;
        if (sgn(t) == 0) tag.erase(j);
      }
      it = work.upper_bound(p);
    }
    Reduction out;
    for (auto& [i, x] : work) out.remainder.push(i, std::move(x));
    for (auto& [j, x] : tag) out.tag.push(j, std::move(x));
    return out;
  }

  bool contains(const SparseVector& v) const { return reduce(v).remainder.empty(); }

  /// Returns false (and stores nothing) when v is already in the span.
  bool insert(const SparseVector& v, const SparseVector& tag = {}) {
    Reduction red = reduce(v);
    if (red.remainder.empty()) return false;
    const std::size_t lead = red.remainder.leading();
    Rational scale = 1 / red.remainder.front().second;
    red.remainder *= scale;
    SparseVector rowTag = tag - red.tag;
    rowTag *= scale;
    rows_.emplace(lead, Row{std::move(red.remainder), std::move(rowTag)});
    return true;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (const auto& [p, r] : rows_) out.push_back(p);
    return out;
  }

  /// Canonical reduced basis: row p has a 1 at pivot p and 0 at every other pivot.
  std::vector<std::pair<std::size_t, SparseVector>> reducedRows() const {
    std::map<std::size_t, SparseVector> red;
    // Rows already in `red` vanish at every other pivot, so one subtraction per
    // pivot entry of the original row suffices.
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      const SparseVector& v = it->second.vec;
      std::vector<SparseVector::value_type> acc(v.begin(), v.end());
      for (const auto& [c, x] : v) {
        if (c == it->first) continue;
        auto other = red.find(c);
        if (other == red.end()) continue;
        for (const auto& [k, y] : other->second) acc.emplace_back(k, -x * y);
      }
      red.emplace(it->first, SparseVector::fromTriplets(std::move(acc)));
    }
    return {red.begin(), red.end()};
  }

 private:
  struct Row {
    SparseVector vec;
    SparseVector tag;
  };
  std::size_t ambient_;
  std::map<std::size_t, Row> rows_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;

inline IntRow integerRow(const SparseVector& v) {
  Integer den = 1;
  for (const auto& [c, x] : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  IntRow out;
  out.reserve(v.size());
  for (const auto& [c, x] : v) {
    Integer n = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    out.emplace_back(static_cast<std::uint32_t>(c), std::move(n));
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline const Integer* findEntry(const IntRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace detail

/// Rank over Q by fraction-free elimination on integer-scaled rows. Pivots are
/// chosen Markowitz-style: the column with the fewest active entries, then the
/// shortest row in it. Rows are divided by their content after each update.
inline std::size_t rank(const Matrix& m) {
  using detail::IntRow;
  const Matrix* src = &m;
  Matrix t;
  if (m.rows() > m.cols()) {
    t = m.transpose();
    src = &t;
  }
  const std::size_t nrows = src->rows();
  const std::size_t ncols = src->cols();
  std::vector<IntRow> rows(nrows);
  std::vector<std::vector<std::uint32_t>> colRows(ncols);
  std::vector<long> colCount(ncols, 0);
  std::vector<char> active(nrows, 1);
  for (std::size_t r = 0; r < nrows; ++r) {
    rows[r] = detail::integerRow(src->row(r));
    for (const auto& [c, x] : rows[r]) {
      colRows[c].push_back(static_cast<std::uint32_t>(r));
      ++colCount[c];
    }
  }
  std::set<std::pair<long, std::uint32_t>> queue;
  for (std::size_t c = 0; c < ncols; ++c)
    if (colCount[c] > 0) queue.emplace(colCount[c], static_cast<std::uint32_t>(c));
  auto bump = [&](std::uint32_t c, long delta) {
    if (colCount[c] > 0) queue.erase({colCount[c], c});
    colCount[c] += delta;
    if (colCount[c] > 0) queue.emplace(colCount[c], c);
  };

  std::size_t rk = 0;
  IntRow scratch;
  while (!queue.empty()) {
    const std::uint32_t col = queue.begin()->second;
    // Live rows holding this column; colRows may contain stale ids.
    std::vector<std::uint32_t> holders;
    for (std::uint32_t r : colRows[col])
      if (active[r] && detail::findEntry(rows[r], col)) holders.push_back(r);
    std::sort(holders.begin(), holders.end());
    holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
    colRows[col] = holders;
    std::uint32_t pivotRow = holders.front();
    for (std::uint32_t r : holders) {
      const auto len = rows[r].size();
      const auto best = rows[pivotRow].size();
      if (len < best ||
          (len == best && mpz_sizeinbase(detail::findEntry(rows[r], col)->get_mpz_t(), 2) <
                              mpz_sizeinbase(detail::findEntry(rows[pivotRow], col)->get_mpz_t(), 2)))
        pivotRow = r;
    }
    const IntRow& prow = rows[pivotRow];
    const Integer a = *detail::findEntry(prow, col);
    for (std::uint32_t r : holders) {
      if (r == pivotRow) continue;
      IntRow& row = rows[r];
      const Integer b = *detail::findEntry(row, col);
      Integer ga, gb, g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      ga = a / g;
      gb = b / g;
      // row <- ga*row - gb*prow
      scratch.clear();
      auto x = row.begin();
      auto y = prow.begin();
      Integer content = 0;
      while (x != row.end() || y != prow.end()) {
        if (y == prow.end() || (x != row.end() && x->first < y->first)) {
          scratch.emplace_back(x->first, ga * x->second);
          ++x;
        } else if (x == row.end() || y->first < x->first) {
          scratch.emplace_back(y->first, -gb * y->second);
          bump(y->first, +1);
          colRows[y->first].push_back(r);
          ++y;
        } else {
          Integer v = ga * x->second - gb * y->second;
          if (v != 0) {
            scratch.emplace_back(x->first, std::move(v));
          } else {
            bump(x->first, -1);
          }
          ++x;
          ++y;
        }
      }
      for (const auto& e : scratch) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.second.get_mpz_t());
      if (content > 1)
        for (auto& e : scratch) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), content.get_mpz_t());
      row.swap(scratch);
    }
    active[pivotRow] = 0;
    for (const auto& [c, x] : rows[pivotRow]) bump(c, -1);
    rows[pivotRow].clear();
    ++rk;
  }
  return rk;
}

/// Rank through the rational echelon basis; slower, used as a cross-check.
inline std::size_t rankByEchelon(const Matrix& m) {
  EchelonBasis eb(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) eb.insert(m.row(r));
  return eb.dimension();
}

/// Basis of ker(m) read off the reduced row echelon form: one vector per free
/// column f, with a 1 at f and zeros at the other free columns.
inline std::vector<SparseVector> kernelBasis(const Matrix& m) {
  EchelonBasis eb(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) eb.insert(m.row(r));
  auto reduced = eb.reducedRows();
  std::vector<char> isPivot(m.cols(), 0);
  for (const auto& [p, v] : reduced) isPivot[p] = 1;
  std::vector<std::vector<SparseVector::value_type>> raw(m.cols());
  for (const auto& [p, v] : reduced)
    for (const auto& [c, x] : v)
      if (c != p) raw[c].emplace_back(p, -x);
  std::vector<SparseVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    raw[f].emplace_back(f, Rational(1));
    out.push_back(SparseVector::fromTriplets(std::move(raw[f])));
  }
  return out;
}

/// Solves A x = b for many right-hand sides against one factorization of the
/// column space of A.
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix& a) : basis_(a.rows()), cols_(a.cols()) {
    auto columns = a.columns();
    for (std::size_t j = 0; j < columns.size(); ++j) basis_.insert(columns[j], SparseVector::unit(j));
  }

  std::size_t rank() const { return basis_.dimension(); }

  std::optional<SparseVector> solve(const SparseVector& b) const {
    auto red = basis_.reduce(b);
    if (!red.remainder.empty()) return std::nullopt;
    return red.tag;
  }

 private:
  EchelonBasis basis_;
  std::size_t cols_;
};

inline std::optional<SparseVector> solve(const Matrix& a, const SparseVector& b) {
  return LinearSolver(a).solve(b);
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  LinearSolver solver(m);
  if (solver.rank() != m.rows()) return std::nullopt;
  std::vector<SparseVector> cols;
  for (std::size_t j = 0; j < m.rows(); ++j) cols.push_back(*solver.solve(SparseVector::unit(j)));
  return Matrix::fromColumns(m.cols(), cols);
}

/// A subspace S of Q^n with a canonical basis (reduced column echelon form),
/// coordinates on S, and the quotient Q^n / S realised on the non-pivot
/// coordinates.
struct Subspace {
  std::size_t ambient = 0;
  Matrix basis;     // n x r
  Matrix coords;    // r x n, coords * basis = I
  Matrix quotient;  // (n-r) x n, quotient * basis = 0
  Matrix section;   // n x (n-r), quotient * section = I

  std::size_t dim() const { return basis.cols(); }
  std::size_t codim() const { return quotient.rows(); }

  static Subspace spannedBy(std::size_t n, const std::vector<SparseVector>& gens) {
    EchelonBasis eb(n);
    for (const auto& g : gens) eb.insert(g);
    auto reduced = eb.reducedRows();
    Subspace s;
    s.ambient = n;
    std::vector<SparseVector> cols;
    std::vector<char> isPivot(n, 0);
    MatrixBuilder coords(reduced.size(), n);
    for (std::size_t j = 0; j < reduced.size(); ++j) {
      cols.push_back(reduced[j].second);
      isPivot[reduced[j].first] = 1;
      coords.add(j, reduced[j].first, Rational(1));
    }
    s.basis = Matrix::fromColumns(n, cols);
    s.coords = std::move(coords).build();
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
      if (!isPivot[i]) free.push_back(i);
    MatrixBuilder q(free.size(), n), sec(n, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      q.add(k, free[k], Rational(1));
      sec.add(free[k], k, Rational(1));
      for (std::size_t j = 0; j < reduced.size(); ++j) {
        Rational x = reduced[j].second.at(free[k]);
        if (sgn(x) != 0) q.add(k, reduced[j].first, -x);
      }
    }
    s.quotient = std::move(q).build();
    s.section = std::move(sec).build();
    return s;
  }

  static Subspace image(const Matrix& m) { return spannedBy(m.rows(), m.columns()); }
  static Subspace kernel(const Matrix& m) { return spannedBy(m.cols(), kernelBasis(m)); }
};

}  // namespace gpdcoh
