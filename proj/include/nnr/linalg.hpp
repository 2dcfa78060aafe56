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

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nnr/errors.hpp"
#include "nnr/matrix.hpp"

namespace nnr {

enum class Axis { kRows, kCols };

struct RankBasis {
  std::size_t rank = 0;
  IndexSet basis;
};

// Incremental echelon basis; Add() reports whether v was independent of
// everything added so far.
template <ExactField F>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  bool Add(Vector<F> v) {
    Reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && v[piv].is_zero()) ++piv;
    if (piv == dim_) return false;
    const F inv = F(1) / v[piv];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  bool Spans(Vector<F> v) const {
    Reduce(v);
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void Reduce(Vector<F>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const F c = v[pivots_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!rows_[k][j].is_zero()) v[j] -= c * rows_[k][j];
    }
  }

  std::size_t dim_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

// Exact rank plus the lexicographically first maximal independent set of
// rows (or columns), found by a greedy scan in index order.
template <ExactField F>
RankBasis RankAndBasis(const Matrix<F>& m, Axis axis) {
  const bool rows = axis == Axis::kRows;
  const std::size_t count = rows ? m.rows() : m.cols();
  EchelonBasis<F> eb(rows ? m.cols() : m.rows());
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < count; ++i)
    if (eb.Add(rows ? m.row(i) : m.col(i))) basis.push_back(i);
  return {basis.size(), IndexSet(std::move(basis), count)};
}

template <ExactField F>
std::size_t Rank(const Matrix<F>& m) {
  return RankAndBasis(m, m.rows() <= m.cols() ? Axis::kRows : Axis::kCols).rank;
}

// Fraction-free (Bareiss) elimination with row pivoting. Every division is
// exact, which keeps intermediate entries as minors of the input.
template <ExactField F>
F Determinant(Matrix<F> a) {
  if (!a.square()) throw InvalidInput("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return F(1);
  F prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return F(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = F(0);
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

template <ExactField F>
Matrix<F> Minor(const Matrix<F>& a, std::size_t skip_row, std::size_t skip_col) {
  Matrix<F> m(a.rows() - 1, a.cols() - 1);
  for (std::size_t i = 0, r = 0; i < a.rows(); ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, c = 0; j < a.cols(); ++j) {
      if (j == skip_col) continue;
      m(r, c++) = a(i, j);
    }
    ++r;
  }
  return m;
}

template <ExactField F>
struct DetAdjugate {
  F det;
  Matrix<F> adj;
};

// adj(R)(i, j) = (-1)^(i+j) det(R with row j and column i removed), so
// adj * R = det * I for every square R, singular or not.
template <ExactField F>
DetAdjugate<F> DetAndAdjugate(const Matrix<F>& r) {
  if (!r.square()) throw InvalidInput("adjugate of non-square matrix");
  const std::size_t n = r.rows();
  Matrix<F> adj(n, n);
  if (n == 1) {
    adj(0, 0) = F(1);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        F c = Determinant(Minor(r, j, i));
        adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
      }
    }
  }
  return {Determinant(r), std::move(adj)};
}

// Gauss-Jordan inverse; std::nullopt when singular.
template <ExactField F>
std::optional<Matrix<F>> Inverse(const Matrix<F>& r) {
  if (!r.square()) throw InvalidInput("inverse of non-square matrix");
  const std::size_t n = r.rows();
  Matrix<F> a = r;
  Matrix<F> inv = Matrix<F>::Identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const F pinv = F(1) / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= pinv;
      inv(k, j) *= pinv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const F f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
        if (!inv(k, j).is_zero()) inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Solves a x = b for any x when the system is consistent. Free variables
// are set to zero.
template <ExactField F>
std::optional<Vector<F>> Solve(const Matrix<F>& a, const Vector<F>& b) {
  if (b.size() != a.rows()) throw InvalidInput("solve: dimension mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<F> aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && aug(p, c).is_zero()) ++p;
    if (p == m) continue;
    for (std::size_t j = 0; j <= n; ++j) std::swap(aug(row, j), aug(p, j));
    const F pinv = F(1) / aug(row, c);
    for (std::size_t j = 0; j <= n; ++j) aug(row, j) *= pinv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || aug(i, c).is_zero()) continue;
      const F f = aug(i, c);
      for (std::size_t j = 0; j <= n; ++j)
        if (!aug(row, j).is_zero()) aug(i, j) -= f * aug(row, j);
    }
    pivot_cols.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (!aug(i, n).is_zero()) return std::nullopt;
  Vector<F> x(n, F(0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = aug(k, n);
  return x;
}

// Basis of the right null space {x : a x = 0}.
template <ExactField F>
std::vector<Vector<F>> NullSpace(const Matrix<F>& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Matrix<F> r = a;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && r(p, c).is_zero()) ++p;
    if (p == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(r(row, j), r(p, j));
    const F pinv = F(1) / r(row, c);
    for (std::size_t j = 0; j < n; ++j) r(row, j) *= pinv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, c).is_zero()) continue;
      const F f = r(i, c);
      for (std::size_t j = 0; j < n; ++j)
        if (!r(row, j).is_zero()) r(i, j) -= f * r(row, j);
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<F> x(n, F(0));
    x[free] = F(1);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = -r(k, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace nnr
