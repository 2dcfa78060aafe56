// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nnr/errors.hpp"
#include "nnr/field.hpp"
#include "nnr/index_set.hpp"

namespace nnr {

template <ExactField F>
using Vector = std::vector<F>;

// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using Scalar = F;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<F> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw InvalidInput("matrix data size does not match dimensions");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<F>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix Identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const std::vector<F>& data() const { return data_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vector<F> row(std::size_t i) const {
    return Vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Vector<F> col(std::size_t j) const {
    Vector<F> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  void set_row(std::size_t i, const Vector<F>& v) {
    if (v.size() != cols_) throw InvalidInput("set_row: length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
  }
  void set_col(std::size_t j, const Vector<F>& v) {
    if (v.size() != rows_) throw InvalidInput("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Submatrix on the given rows and columns, in set order.
  Matrix select(const IndexSet& rows, const IndexSet& cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b)
        s(a, b) = (*this)(rows[a], cols[b]);
    return s;
  }
  Matrix select_rows(const IndexSet& rows) const {
    return select(rows, IndexSet::All(cols_));
  }
  Matrix select_cols(const IndexSet& cols) const {
    return select(IndexSet::All(rows_), cols);
  }

  bool is_nonnegative() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const F& x) { return x.sign() >= 0; });
  }
  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const F& x) { return x.is_zero(); });
  }

  std::size_t max_bit_length() const {
    std::size_t b = 0;
    for (const auto& x : data_) b = std::max(b, x.bit_length());
    return b;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InvalidInput("matrix sum: dimension mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InvalidInput("matrix difference: dimension mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }

  Matrix scaled(const F& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      s += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <ExactField F>
Vector<F> operator*(const Matrix<F>& a, const Vector<F>& x) {
  if (a.cols() != x.size()) throw InvalidInput("matrix-vector: dimension mismatch");
  Vector<F> y(a.rows(), F(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

// Row vector times matrix.
template <ExactField F>
Vector<F> operator*(const Vector<F>& x, const Matrix<F>& a) {
  if (a.rows() != x.size()) throw InvalidInput("vector-matrix: dimension mismatch");
  Vector<F> y(a.cols(), F(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a(i, j);
  }
  return y;
}

template <ExactField F>
F Dot(const Vector<F>& x, const Vector<F>& y) {
  if (x.size() != y.size()) throw InvalidInput("dot: length mismatch");
  F s(0);
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

template <ExactField F>
Vector<F> Restrict(const Vector<F>& v, const IndexSet& idx) {
  Vector<F> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

template <ExactField F>
IndexSet Support(const Vector<F>& v) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) idx.push_back(i);
  return IndexSet(std::move(idx), v.size());
}

template <ExactField F>
bool IsNonnegative(const Vector<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return x.sign() >= 0; });
}

template <ExactField F>
Matrix<F> ColumnMatrix(const Vector<F>& v) {
  return Matrix<F>(v.size(), 1, v);
}

template <ExactField F, ExactField G>
Matrix<G> Convert(const Matrix<F>& m) {
  std::vector<G> data;
  data.reserve(m.data().size());
  for (const auto& x : m.data()) data.push_back(G(x));
  return Matrix<G>(m.rows(), m.cols(), std::move(data));
}

// Block-diagonal composition; off-diagonal blocks are exactly zero.
template <ExactField F>
Matrix<F> BlockDiagonal(const std::vector<Matrix<F>>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) { rows += b.rows(); cols += b.cols(); }
  Matrix<F> out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace nnr
