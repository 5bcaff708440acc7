#pragma once

// Sparse exact matrices over Q. Matrices act on column vectors: an (r x c)
// matrix maps Q^c to Q^r.

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gpdcoh {

using DenseVector = std::vector<Rational>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sorted (index, value) pairs with no stored zeros.
class SparseVector {
 public:
  using value_type = std::pair<std::size_t, Rational>;

  SparseVector() = default;

  static SparseVector fromDense(const DenseVector& v) {
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) out.entries_.emplace_back(i, v[i]);
    return out;
  }

  static SparseVector unit(std::size_t i) {
    SparseVector out;
    out.entries_.emplace_back(i, Rational(1));
    return out;
  }

  /// Accepts unsorted entries with possible duplicates; sums and drops zeros.
  static SparseVector fromTriplets(std::vector<value_type> raw) {
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    for (auto& [i, v] : raw) {
      if (!out.entries_.empty() && out.entries_.back().first == i) {
        out.entries_.back().second += v;
      } else {
        out.entries_.emplace_back(i, std::move(v));
      }
    }
    std::erase_if(out.entries_, [](const value_type& e) { return sgn(e.second) == 0; });
    return out;
  }

  DenseVector toDense(std::size_t n) const {
    DenseVector v(n);
    for (const auto& [i, x] : entries_) v.at(i) = x;
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const value_type& front() const { return entries_.front(); }
  const value_type& back() const { return entries_.back(); }
  std::size_t leading() const { return entries_.front().first; }

  Rational at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const value_type& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return Rational(0);
  }

  /// Appends an entry with index larger than every stored index.
  void push(std::size_t i, Rational v) {
    if (sgn(v) == 0) return;
    if (!entries_.empty() && entries_.back().first >= i)
      throw std::logic_error("SparseVector::push out of order");
    entries_.emplace_back(i, std::move(v));
  }

  SparseVector& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      entries_.clear();
    } else {
      for (auto& e : entries_) e.second *= s;
    }
    return *this;
  }

  /// this + s * other
  SparseVector axpy(const Rational& s, const SparseVector& other) const {
    SparseVector out;
    out.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.entries_.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.entries_.emplace_back(b->first, s * b->second);
        ++b;
      } else {
        Rational v = a->second + s * b->second;
        if (sgn(v) != 0) out.entries_.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    return out;
  }

  SparseVector operator+(const SparseVector& o) const { return axpy(Rational(1), o); }
  SparseVector operator-(const SparseVector& o) const { return axpy(Rational(-1), o); }

  bool operator==(const SparseVector& o) const = default;

 private:
  std::vector<value_type> entries_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push(i, Rational(1));
    return m;
  }

  /// Row-major dense literal; every row must have the same length.
  static Matrix fromDense(const std::vector<std::vector<Rational>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw ShapeError("ragged dense matrix literal");
      m.data_[r] = SparseVector::fromDense(rows[r]);
    }
    return m;
  }

  static Matrix fromColumns(std::size_t rows, const std::vector<SparseVector>& columns) {
    Matrix t(columns.size(), rows);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!columns[c].empty() && columns[c].back().first >= rows)
        throw ShapeError("column entry out of range");
      t.data_[c] = columns[c];
    }
    return t.transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t r) const { return data_.at(r); }

  Rational at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
    return data_[r].at(c);
  }

  std::size_t nonZeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool isZero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseVector& r) { return r.empty(); });
  }

  Matrix transpose() const {
    std::vector<std::vector<SparseVector::value_type>> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) cols[c].emplace_back(r, v);
    Matrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c] = SparseVector::fromTriplets(std::move(cols[c]));
    return t;
  }

  std::vector<SparseVector> columns() const { return transpose().data_; }

  DenseVector apply(const DenseVector& x) const {
    if (x.size() != cols_) throw ShapeError("matrix-vector shape mismatch");
    DenseVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
  }

  SparseVector apply(const SparseVector& x) const {
    if (!x.empty() && x.back().first >= cols_) throw ShapeError("matrix-vector shape mismatch");
    std::vector<const Rational*> lookup(cols_, nullptr);
    for (const auto& [i, v] : x) lookup[i] = &v;
    SparseVector out;
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational acc = 0;
      for (const auto& [c, v] : data_[r])
        if (lookup[c]) acc += v * *lookup[c];
      out.push(r, std::move(acc));
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::map<std::size_t, Rational> acc;
      for (const auto& [k, v] : a.data_[r])
        for (const auto& [c, w] : b.data_[k]) acc[c] += v * w;
      for (auto& [c, v] : acc) out.data_[r].push(c, std::move(v));
    }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
    Matrix out(a.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) out.data_[r] = a.data_[r] + b.data_[r];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape mismatch");
    Matrix out(a.rows_, a.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) out.data_[r] = a.data_[r] - b.data_[r];
    return out;
  }

  friend Matrix operator*(const Rational& s, Matrix m) {
    for (auto& r : m.data_) r *= s;
    return m;
  }

  Matrix operator-() const { return Rational(-1) * *this; }

  bool operator==(const Matrix& o) const = default;

  /// Rows and columns picked by index lists, in the order given.
  Matrix select(const std::vector<std::size_t>& rowIdx, const std::vector<std::size_t>& colIdx) const {
    std::vector<long> colMap(cols_, -1);
    for (std::size_t j = 0; j < colIdx.size(); ++j) colMap.at(colIdx[j]) = static_cast<long>(j);
    Matrix out(rowIdx.size(), colIdx.size());
    for (std::size_t i = 0; i < rowIdx.size(); ++i) {
      std::vector<SparseVector::value_type> raw;
      for (const auto& [c, v] : data_.at(rowIdx[i]))
        if (colMap[c] >= 0) raw.emplace_back(static_cast<std::size_t>(colMap[c]), v);
      out.data_[i] = SparseVector::fromTriplets(std::move(raw));
    }
    return out;
  }

  std::vector<std::vector<Rational>> toDense() const {
    std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) out[r][c] = v;
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m.at(r, c);
    }
    return os << "]";
  }

 private:
  friend class MatrixBuilder;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

/// Accumulates (row, col, value) contributions; duplicates are summed.
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), pending_(rows) {}

  void add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw ShapeError("builder entry out of range");
    if (sgn(v) != 0) pending_[r].emplace_back(c, v);
  }

  /// Adds s * block with its top-left corner at (r0, c0).
  void addBlock(std::size_t r0, std::size_t c0, const Matrix& block, const Rational& s = Rational(1)) {
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (const auto& [c, v] : block.row(r)) add(r0 + r, c0 + c, s * v);
  }

  Matrix build() && {
    Matrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) m.data_[r] = SparseVector::fromTriplets(std::move(pending_[r]));
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<SparseVector::value_type>> pending_;
};

/// Block-diagonal sum.
inline Matrix directSum(const Matrix& a, const Matrix& b) {
  MatrixBuilder mb(a.rows() + b.rows(), a.cols() + b.cols());
  mb.addBlock(0, 0, a);
  mb.addBlock(a.rows(), a.cols(), b);
  return std::move(mb).build();
}

}  // namespace gpdcoh
