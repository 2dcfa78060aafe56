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
#include <utility>
#include <vector>

#include "nnr/factorization.hpp"
#include "nnr/linalg.hpp"

namespace nnr {

// kA: built from A at a row anchor U; transforms B_k are r x s and map
// columns of M to candidate columns of W.
// kW: built from W at a column anchor V; transforms C_l are t x r and map
// rows of M to candidate rows of A.
enum class Side { kA, kW };

inline constexpr std::size_t kDefaultTransformCap = 4096;

template <ExactField F>
struct Ensemble {
  Side side = Side::kA;
  IndexSet anchor;                    // U (rows of M) or V (columns of M)
  std::size_t rank = 0;               // s or t
  std::size_t inner = 0;              // r
  std::vector<IndexSet> subsets;      // lex-ordered independent subsets of [r]
  std::vector<Matrix<F>> transforms;  // embedded inverses, one per subset

  std::size_t size() const { return transforms.size(); }
};

// Ensemble from the anchor block alone: A^U (s x r) for kA, W_V (r x t) for
// kW. Subsets are all rank-sized subsets of [r] whose block restriction is
// invertible.
template <ExactField F>
Ensemble<F> EnsembleFromAnchorBlock(Side side, IndexSet anchor, const Matrix<F>& block,
                                    std::size_t cap = kDefaultTransformCap) {
  Ensemble<F> e;
  e.side = side;
  e.rank = anchor.size();
  e.inner = side == Side::kA ? block.cols() : block.rows();
  if ((side == Side::kA ? block.rows() : block.cols()) != e.rank) {
    throw InvalidInput("ensemble: anchor size does not match the anchor block");
  }
  e.anchor = std::move(anchor);
  for (const auto& subset : Combinations(e.inner, e.rank)) {
    const Matrix<F> square = side == Side::kA ? block.select_cols(subset)
                                              : block.select_rows(subset);
    auto inv = Inverse(square);
    if (!inv) continue;
    if (e.transforms.size() == cap) {
      throw InvalidInput("ensemble: more than " + std::to_string(cap) + " transforms");
    }
    Matrix<F> t = side == Side::kA ? Matrix<F>(e.inner, e.rank) : Matrix<F>(e.rank, e.inner);
    for (std::size_t a = 0; a < e.rank; ++a) {
      for (std::size_t b = 0; b < e.rank; ++b) {
        if (side == Side::kA) {
          t(subset[a], b) = (*inv)(a, b);
        } else {
          t(a, subset[b]) = (*inv)(a, b);
        }
      }
    }
    e.subsets.push_back(subset);
    e.transforms.push_back(std::move(t));
  }
  return e;
}

// A-side ensemble: s = rank(A), U = lex-first independent rows of A.
template <ExactField F>
Ensemble<F> BuildEnsemble(const Matrix<F>& a, std::size_t cap = kDefaultTransformCap) {
  RankBasis rb = RankAndBasis(a, Axis::kRows);
  return EnsembleFromAnchorBlock(Side::kA, rb.basis, a.select_rows(rb.basis), cap);
}

// W-side ensemble: t = rank(W), V = lex-first independent columns of W.
template <ExactField F>
Ensemble<F> BuildEnsembleFromW(const Matrix<F>& w, std::size_t cap = kDefaultTransformCap) {
  RankBasis rb = RankAndBasis(w, Axis::kCols);
  return EnsembleFromAnchorBlock(Side::kW, rb.basis, w.select_cols(rb.basis), cap);
}

enum class CellFailure { kNone, kNoNonnegativeCandidate, kTie, kProductMismatch };

inline std::string ToString(CellFailure f) {
  switch (f) {
    case CellFailure::kNone: return "none";
    case CellFailure::kNoNonnegativeCandidate: return "no-nonnegative-candidate";
    case CellFailure::kTie: return "tie";
    case CellFailure::kProductMismatch: return "product-mismatch";
  }
  return "unknown";
}

struct Selection {
  std::optional<std::size_t> index;  // position of the chosen vector
  CellFailure failure = CellFailure::kNone;

  bool ok() const { return index.has_value(); }
};

// The nonnegative member with lex-minimal support. Fails when there is no
// nonnegative member or when two different vectors share the minimal
// support; identical duplicates are not a tie.
template <ExactField F>
Selection FirstCandidate(const std::vector<Vector<F>>& vectors) {
  std::optional<std::size_t> best;
  IndexSet best_support;
  bool tied = false;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (!IsNonnegative(vectors[k])) continue;
    IndexSet supp = Support(vectors[k]);
    if (!best || LexBefore(supp, best_support)) {
      best = k;
      best_support = std::move(supp);
      tied = false;
    } else if (supp == best_support && vectors[k] != vectors[*best]) {
      tied = true;
    }
  }
  if (!best) return {std::nullopt, CellFailure::kNoNonnegativeCandidate};
  if (tied) return {std::nullopt, CellFailure::kTie};
  return {best, CellFailure::kNone};
}

// {B_k M_i^U}_k for an A-side ensemble.
template <ExactField F>
std::vector<Vector<F>> ColumnCandidates(const Matrix<F>& m, const Ensemble<F>& e,
                                        std::size_t i) {
  const Vector<F> mu = Restrict(m.col(i), e.anchor);
  std::vector<Vector<F>> out;
  out.reserve(e.size());
  for (const auto& b : e.transforms) out.push_back(b * mu);
  return out;
}

// {M^j_V C_l}_l for a W-side ensemble.
template <ExactField F>
std::vector<Vector<F>> RowCandidates(const Matrix<F>& m, const Ensemble<F>& e,
                                     std::size_t j) {
  const Vector<F> mv = Restrict(m.row(j), e.anchor);
  std::vector<Vector<F>> out;
  out.reserve(e.size());
  for (const auto& c : e.transforms) out.push_back(mv * c);
  return out;
}

class RecoveryError : public InvalidInput {
 public:
  RecoveryError(std::size_t index, CellFailure failure)
      : InvalidInput("recover_factor: selection failed at index " + std::to_string(index) +
                     " (" + ToString(failure) + ")"),
        index_(index),
        failure_(failure) {}
  std::size_t index() const { return index_; }
  CellFailure failure() const { return failure_; }

 private:
  std::size_t index_;
  CellFailure failure_;
};

template <ExactField F>
void CheckAnchor(const Matrix<F>& m, const Ensemble<F>& e) {
  const std::size_t universe = e.side == Side::kA ? m.rows() : m.cols();
  for (auto x : e.anchor)
    if (x >= universe) throw InvalidInput("ensemble anchor outside M");
  if (e.anchor.size() != e.rank) throw InvalidInput("ensemble anchor size differs from its rank");
}

// A-side ensemble: W with W_i = first({B_k M_i^U}). W-side: A with
// A^j = first({M^j_V C_l}). Throws RecoveryError on a failed selection.
template <ExactField F>
Matrix<F> RecoverFactor(const Matrix<F>& m, const Ensemble<F>& e) {
  CheckAnchor(m, e);
  if (e.side == Side::kA) {
    Matrix<F> w(e.inner, m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
      auto cands = ColumnCandidates(m, e, i);
      Selection s = FirstCandidate(cands);
      if (!s.ok()) throw RecoveryError(i, s.failure);
      w.set_col(i, cands[*s.index]);
    }
    return w;
  }
  Matrix<F> a(m.rows(), e.inner);
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto cands = RowCandidates(m, e, j);
    Selection s = FirstCandidate(cands);
    if (!s.ok()) throw RecoveryError(j, s.failure);
    a.set_row(j, cands[*s.index]);
  }
  return a;
}

enum class Verdict { kPass, kFail };

struct PredicateCell {
  std::optional<std::size_t> column_choice;  // i' for column i
  std::optional<std::size_t> row_choice;     // j' for row j
  CellFailure failure = CellFailure::kNone;
};

struct PredicateReport {
  Verdict verdict = Verdict::kFail;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<PredicateCell> cells;  // row-major over (j, i)

  const PredicateCell& cell(std::size_t j, std::size_t i) const { return cells[j * cols + i]; }
  bool pass() const { return verdict == Verdict::kPass; }
};

// The Boolean predicate over ensembles: for every cell (j, i) select i' and
// j' with FirstCandidate and require (M^j_V C_j')(B_i' M_i^U) = M_i^j.
template <ExactField F>
PredicateReport EvaluatePredicate(const Matrix<F>& m, const Ensemble<F>& ea,
                                  const Ensemble<F>& ew) {
  if (ea.side != Side::kA || ew.side != Side::kW) {
    throw InvalidInput("evaluate_predicate: expected an A-side and a W-side ensemble");
  }
  if (ea.inner != ew.inner) throw InvalidInput("evaluate_predicate: inner dimensions differ");
  CheckAnchor(m, ea);
  CheckAnchor(m, ew);

  std::vector<Selection> col_sel(m.cols());
  std::vector<Vector<F>> w_cols(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    auto cands = ColumnCandidates(m, ea, i);
    col_sel[i] = FirstCandidate(cands);
    if (col_sel[i].ok()) w_cols[i] = std::move(cands[*col_sel[i].index]);
  }
  std::vector<Selection> row_sel(m.rows());
  std::vector<Vector<F>> a_rows(m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto cands = RowCandidates(m, ew, j);
    row_sel[j] = FirstCandidate(cands);
    if (row_sel[j].ok()) a_rows[j] = std::move(cands[*row_sel[j].index]);
  }

  PredicateReport report;
  report.rows = m.rows();
  report.cols = m.cols();
  report.cells.resize(m.rows() * m.cols());
  bool all = true;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    for (std::size_t i = 0; i < m.cols(); ++i) {
      PredicateCell& c = report.cells[j * m.cols() + i];
      c.column_choice = col_sel[i].index;
      c.row_choice = row_sel[j].index;
      if (!col_sel[i].ok()) {
        c.failure = col_sel[i].failure;
      } else if (!row_sel[j].ok()) {
        c.failure = row_sel[j].failure;
      } else if (Dot(a_rows[j], w_cols[i]) != m(j, i)) {
        c.failure = CellFailure::kProductMismatch;
      }
      all = all && c.failure == CellFailure::kNone;
    }
  }
  report.verdict = all ? Verdict::kPass : Verdict::kFail;
  return report;
}

// Assembles (A, W) from the selections of a passing report.
template <ExactField F>
Factorization<F> ExtractFactorization(const Matrix<F>& m, const Ensemble<F>& ea,
                                      const Ensemble<F>& ew, const PredicateReport& report) {
  if (!report.pass()) throw InvalidInput("extract_factorization: report is not PASS");
  Factorization<F> f{Matrix<F>(m.rows(), ea.inner), Matrix<F>(ea.inner, m.cols())};
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const std::size_t k = *report.cell(0, i).column_choice;
    f.w.set_col(i, ea.transforms[k] * Restrict(m.col(i), ea.anchor));
  }
  for (std::size_t j = 0; j < m.rows(); ++j) {
    const std::size_t l = *report.cell(j, 0).row_choice;
    f.a.set_row(j, Restrict(m.row(j), ew.anchor) * ew.transforms[l]);
  }
  return f;
}

}  // namespace nnr
