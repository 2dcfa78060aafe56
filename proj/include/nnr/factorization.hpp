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
#include <string>
#include <vector>

#include "nnr/errors.hpp"
#include "nnr/index_set.hpp"
#include "nnr/matrix.hpp"
#include "nnr/simplex.hpp"

namespace nnr {

// Subset enumeration costs 2^r simplex solves per query.
inline constexpr std::size_t kMaxInnerDimension = 10;

// M = A W with A (m x r) and W (r x n) entrywise nonnegative.
template <ExactField F>
struct Factorization {
  Matrix<F> a;
  Matrix<F> w;

  std::size_t inner() const { return a.cols(); }
  Matrix<F> product() const { return a * w; }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Supports of the columns of W and of the rows of A.
struct SupportProfile {
  std::vector<IndexSet> w_cols;
  std::vector<IndexSet> a_rows;
};

template <ExactField F>
SupportProfile Profile(const Factorization<F>& f) {
  SupportProfile p;
  for (std::size_t i = 0; i < f.w.cols(); ++i) p.w_cols.push_back(Support(f.w.col(i)));
  for (std::size_t j = 0; j < f.a.rows(); ++j) p.a_rows.push_back(Support(f.a.row(j)));
  return p;
}

template <ExactField F>
struct AdmissibleSubset {
  IndexSet subset;
  Vector<F> witness;  // x >= 0, supp(x) within subset, A x = v
};

// Scans column subsets of A in LexCompare order and returns the first S
// with v in the nonnegative hull of A_S. The empty set is admissible exactly
// for v = 0. std::nullopt when v is outside the hull of all columns.
template <ExactField F>
std::optional<AdmissibleSubset<F>> LexFirstAdmissible(
    const Matrix<F>& a, const Vector<F>& v,
    std::size_t max_columns = kMaxInnerDimension) {
  if (a.cols() > max_columns) {
    throw InvalidInput("lex_first_admissible: " + std::to_string(a.cols()) +
                       " columns exceeds the configured limit of " +
                       std::to_string(max_columns));
  }
  if (v.size() != a.rows()) throw InvalidInput("lex_first_admissible: length mismatch");
  for (const auto& subset : SubsetsInLexOrder(a.cols())) {
    if (auto x = NonnegSolve(a, subset, v)) return AdmissibleSubset<F>{subset, std::move(*x)};
  }
  return std::nullopt;
}

template <ExactField F>
void CheckCompatible(const Matrix<F>& m, const Factorization<F>& f) {
  if (f.a.cols() != f.w.rows() || f.a.rows() != m.rows() || f.w.cols() != m.cols()) {
    throw InvalidInput("factorization dimensions do not match M");
  }
}

// True iff A W = M exactly and both factors are entrywise nonnegative.
template <ExactField F>
bool VerifyFactorization(const Matrix<F>& m, const Factorization<F>& f) {
  CheckCompatible(m, f);
  return f.a.is_nonnegative() && f.w.is_nonnegative() && f.a * f.w == m;
}

// Every column W_i is supported in the lex-first admissible column subset
// of A for M_i, and every row A^j in the lex-first admissible row subset of
// W for M^j.
template <ExactField F>
bool IsStable(const Matrix<F>& m, const Factorization<F>& f) {
  if (!VerifyFactorization(m, f)) throw InvalidInput("is_stable: not a valid factorization");
  for (std::size_t i = 0; i < m.cols(); ++i) {
    auto s = LexFirstAdmissible(f.a, m.col(i));
    if (!s || !Support(f.w.col(i)).subset_of(s->subset)) return false;
  }
  const Matrix<F> wt = f.w.transpose();
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto t = LexFirstAdmissible(wt, m.row(j));
    if (!t || !Support(f.a.row(j)).subset_of(t->subset)) return false;
  }
  return true;
}

}  // namespace nnr
