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

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "nnr/factorization.hpp"
#include "nnr/linalg.hpp"
#include "nnr/rationalize.hpp"
#include "nnr/simplex.hpp"

namespace nnr {

// Wall-clock budget shared by the search stages.
class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}
  bool expired() const { return std::chrono::steady_clock::now() >= end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

template <ExactField F>
Eigen::MatrixXd ToEigen(const Matrix<F>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

struct ApproxFactorization {
  Eigen::MatrixXd a;
  Eigen::MatrixXd w;
  double residual = 0;  // ||M - AW||_F / ||M||_F
};

inline double RelativeResidual(const Eigen::MatrixXd& m, const Eigen::MatrixXd& a,
                               const Eigen::MatrixXd& w) {
  const double norm = m.norm();
  return norm == 0 ? (a * w).norm() : (m - a * w).norm() / norm;
}

// Hierarchical alternating least squares from a seeded random start.
// Columns of A are kept at unit maximum.
inline ApproxFactorization Hals(const Eigen::MatrixXd& m, std::size_t r, std::uint64_t seed,
                                std::size_t max_iters = 20000, double tol = 1e-14) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::Index rows = m.rows(), cols = m.cols(), k = static_cast<Eigen::Index>(r);
  ApproxFactorization f{Eigen::MatrixXd(rows, k), Eigen::MatrixXd(k, cols), 1};
  for (Eigen::Index i = 0; i < f.a.size(); ++i) f.a.data()[i] = unit(rng);
  for (Eigen::Index i = 0; i < f.w.size(); ++i) f.w.data()[i] = unit(rng);
  const double scale = std::sqrt(m.norm() / std::max((f.a * f.w).norm(), 1e-300));
  f.a *= scale;
  f.w *= scale;

  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < max_iters; ++it) {
    const Eigen::MatrixXd ata = f.a.transpose() * f.a;
    const Eigen::MatrixXd atm = f.a.transpose() * m;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (ata(c, c) <= 0) continue;
      f.w.row(c) = (f.w.row(c) + (atm.row(c) - ata.row(c) * f.w) / ata(c, c)).cwiseMax(0.0);
    }
    const Eigen::MatrixXd wwt = f.w * f.w.transpose();
    const Eigen::MatrixXd mwt = m * f.w.transpose();
    for (Eigen::Index c = 0; c < k; ++c) {
      if (wwt(c, c) <= 0) continue;
      f.a.col(c) = (f.a.col(c) + (mwt.col(c) - f.a * wwt.col(c)) / wwt(c, c)).cwiseMax(0.0);
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      const double mx = f.a.col(c).maxCoeff();
      if (mx > 0) {
        f.a.col(c) /= mx;
        f.w.row(c) *= mx;
      }
    }
    if (it % 50 == 49) {
      f.residual = RelativeResidual(m, f.a, f.w);
      if (f.residual < tol || f.residual > prev * (1 - 1e-9)) break;
      prev = f.residual;
    }
  }
  f.residual = RelativeResidual(m, f.a, f.w);
  return f;
}

// Denominator bounds first, 2*first, ... up to last.
inline std::vector<long long> DenominatorLadder(long long first, long long last) {
  std::vector<long long> out;
  for (long long d = std::max(first, 1LL); d <= last; d *= 2) {
    out.push_back(d);
    if (d > last / 2) break;
  }
  return out;
}

// Exact point of span(basis) closest (in least squares) to `target`, with
// the coordinates rationalized. An empty basis yields the zero vector.
template <ExactField F>
Vector<F> RationalizeInSpan(const std::vector<Vector<F>>& basis, const Eigen::VectorXd& target,
                            long long bound) {
  const std::size_t n = static_cast<std::size_t>(target.size());
  Vector<F> out(n, F(0));
  if (basis.empty()) return out;
  Eigen::MatrixXd b(n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) b(i, k) = basis[k][i].to_double();
  const Eigen::VectorXd coef = b.colPivHouseholderQr().solve(target);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const F c = FromRat<F>(Rationalize(coef(k), mpz_class(std::to_string(bound))));
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += c * basis[k][i];
  }
  return out;
}

namespace internal {

template <ExactField F>
Matrix<F> RowsOf(const std::vector<Vector<F>>& rows, std::size_t width) {
  Matrix<F> m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

// One exact vector from the null space of `constraints` near `approx`:
// the unique direction when the null space is a line, otherwise a
// rationalized projection. Empty when the null space is trivial.
template <ExactField F>
std::optional<Vector<F>> SnapToNullSpace(const std::vector<Vector<F>>& constraints,
                                         const Eigen::VectorXd& approx, long long bound,
                                         bool& rounded) {
  const std::size_t n = static_cast<std::size_t>(approx.size());
  std::vector<Vector<F>> basis =
      constraints.empty() ? std::vector<Vector<F>>{} : NullSpace(RowsOf(constraints, n));
  if (constraints.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      Vector<F> e(n, F(0));
      e[i] = F(1);
      basis.push_back(std::move(e));
    }
  }
  if (basis.empty()) return std::nullopt;
  if (basis.size() == 1) {
    double dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot += basis[0][i].to_double() * approx(i);
    Vector<F> x = basis[0];
    if (dot < 0)
      for (auto& v : x) v = -v;
    return x;
  }
  rounded = true;
  return RationalizeInSpan(basis, approx, bound);
}

}  // namespace internal

// Snapping for the case rank(M) = r. With U, V indexing an invertible r x r
// block of M, every factorization has A = G X and W = Y H where
// G = M_V (M^U_V)^{-1}, H = M^U, X = A^U and Y = X^{-1}. Entries of the
// approximate A and W at or below `tau` become exact incidences: column c of
// X is orthogonal to the pinned rows of G, row d of Y to the pinned columns
// of H, and X_c is orthogonal to Y_d for c != d. The 2r unknown vectors are
// fixed one at a time, most constrained first, each against its pins and
// the already fixed partners; leftover freedom is rationalized.
template <ExactField F>
std::optional<Factorization<F>> SnapFullRank(const Matrix<F>& m, const IndexSet& u,
                                             const IndexSet& v, const ApproxFactorization& approx,
                                             const std::vector<double>& taus,
                                             const std::vector<long long>& bounds,
                                             const Deadline* deadline = nullptr) {
  const std::size_t r = u.size();
  if (v.size() != r || static_cast<std::size_t>(approx.a.cols()) != r) return std::nullopt;
  auto inv_block = Inverse(m.select(u, v));
  if (!inv_block) return std::nullopt;
  const Matrix<F> g = m.select_cols(v) * *inv_block;
  const Matrix<F> h = m.select_rows(u);
  const Eigen::MatrixXd gd = ToEigen(g), hd = ToEigen(h);

  Eigen::MatrixXd x = gd.colPivHouseholderQr().solve(approx.a);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(x);
  if (!lu.isInvertible()) return std::nullopt;
  Eigen::MatrixXd y = lu.inverse();
  Eigen::MatrixXd an = gd * x, wn = y * hd;
  for (std::size_t c = 0; c < r; ++c) {
    const double amax = an.col(c).maxCoeff(), wmax = wn.row(c).maxCoeff();
    if (amax <= 0 || wmax <= 0) return std::nullopt;
    an.col(c) /= amax;
    x.col(c) /= amax;
    wn.row(c) /= wmax;
    y.row(c) /= wmax;
  }

  // Elements 0..r-1 are the columns of X, r..2r-1 the rows of Y.
  auto approx_of = [&](std::size_t e) -> Eigen::VectorXd {
    return e < r ? Eigen::VectorXd(x.col(e)) : Eigen::VectorXd(y.row(e - r).transpose());
  };
  for (double tau : taus) {
    std::vector<std::vector<Vector<F>>> pins(2 * r);
    for (std::size_t c = 0; c < r; ++c) {
      for (std::size_t j = 0; j < m.rows(); ++j)
        if (an(j, c) <= tau) pins[c].push_back(g.row(j));
      for (std::size_t i = 0; i < m.cols(); ++i)
        if (wn(c, i) <= tau) pins[r + c].push_back(h.col(i));
    }
    for (long long bound : bounds) {
      if (deadline && deadline->expired()) return std::nullopt;
      std::vector<std::optional<Vector<F>>> fixed(2 * r);
      auto constraints = [&](std::size_t e) {
        std::vector<Vector<F>> cons = pins[e];
        const std::size_t self = e % r, other = e < r ? r : 0;
        for (std::size_t d = 0; d < r; ++d)
          if (d != self && fixed[other + d]) cons.push_back(*fixed[other + d]);
        return cons;
      };
      bool rounded = false, failed = false;
      for (std::size_t step = 0; step < 2 * r && !failed; ++step) {
        std::size_t pick = 2 * r, best_dim = r + 1;
        for (std::size_t e = 0; e < 2 * r; ++e) {
          if (fixed[e]) continue;
          const auto cons = constraints(e);
          const std::size_t dim = cons.empty() ? r : NullSpace(internal::RowsOf(cons, r)).size();
          if (dim < best_dim) {
            best_dim = dim;
            pick = e;
          }
        }
        if (best_dim == 0) {
          failed = true;
          break;
        }
        fixed[pick] = internal::SnapToNullSpace(constraints(pick), approx_of(pick), bound, rounded);
        failed = !fixed[pick];
      }
      if (failed) break;
      Matrix<F> xe(r, r);
      for (std::size_t c = 0; c < r; ++c) xe.set_col(c, *fixed[c]);
      if (auto xi = Inverse(xe)) {
        Factorization<F> f{g * xe, *xi * h};
        if (f.a.is_nonnegative() && f.w.is_nonnegative() && f.product() == m) return f;
      }
      if (!rounded) break;
    }
  }
  return std::nullopt;
}

// Snapping for general targets: round one factor and solve for the other
// exactly with the simplex method. The rounded factor is taken either
// entrywise or inside the row space of M (W = Y M^U) or column space of M
// (A = M_V X), with entries at or below `tau` pinned to zero exactly.
template <ExactField F>
std::optional<Factorization<F>> SnapByLinearProgram(const Matrix<F>& m,
                                                    const ApproxFactorization& approx,
                                                    const std::vector<double>& taus,
                                                    const std::vector<long long>& bounds,
                                                    const Deadline* deadline = nullptr) {
  const std::size_t r = static_cast<std::size_t>(approx.a.cols());
  const IndexSet all = IndexSet::All(r);
  const IndexSet u = RankAndBasis(m, Axis::kRows).basis;
  const IndexSet v = RankAndBasis(m, Axis::kCols).basis;
  const Matrix<F> h = m.select_rows(u);                 // rho x n
  const Matrix<F> g = m.select_cols(v).transpose();     // rho x m
  const Eigen::MatrixXd hd = ToEigen(h), gd = ToEigen(g);

  // Normalized copies: rows of W and columns of A scaled to unit maximum.
  Eigen::MatrixXd wn = approx.w, at = approx.a.transpose();
  for (std::size_t c = 0; c < r; ++c) {
    const double wmax = wn.row(c).maxCoeff(), amax = at.row(c).maxCoeff();
    if (wmax > 0) wn.row(c) /= wmax;
    if (amax > 0) at.row(c) /= amax;
  }

  // Rows of the rounded factor (W, or A transposed) for one strategy.
  auto rounded = [&](const Eigen::MatrixXd& target, const Matrix<F>& basis,
                     const Eigen::MatrixXd& basis_d, bool in_span, double tau, long long bound) {
    Matrix<F> out(r, target.cols());
    const mpz_class b(std::to_string(bound));
    for (std::size_t c = 0; c < r; ++c) {
      if (!in_span) {
        for (Eigen::Index i = 0; i < target.cols(); ++i)
          if (target(c, i) > tau) out(c, i) = FromRat<F>(Rationalize(target(c, i), b));
        continue;
      }
      std::vector<Vector<F>> pins;
      for (Eigen::Index i = 0; i < target.cols(); ++i)
        if (target(c, i) <= tau) pins.push_back(basis.col(static_cast<std::size_t>(i)));
      const Eigen::VectorXd coef =
          basis_d.transpose().colPivHouseholderQr().solve(Eigen::VectorXd(target.row(c).transpose()));
      bool unused = false;
      auto y = internal::SnapToNullSpace(pins, coef, bound, unused);
      if (!y) return std::optional<Matrix<F>>();
      out.set_row(c, (Matrix<F>(1, y->size(), *y) * basis).row(0));
    }
    return std::optional<Matrix<F>>(out);
  };

  for (double tau : taus) {
    for (long long bound : bounds) {
      if (deadline && deadline->expired()) return std::nullopt;
      for (bool in_span : {true, false}) {
        // Round W, solve rows of A.
        if (auto w = rounded(wn, h, hd, in_span, tau, bound); w && w->is_nonnegative()) {
          const Matrix<F> wt = w->transpose();
          Matrix<F> a(m.rows(), r);
          bool ok = true;
          for (std::size_t j = 0; j < m.rows() && ok; ++j) {
            auto row = NonnegSolve(wt, all, m.row(j));
            if (row) a.set_row(j, *row);
            ok = row.has_value();
          }
          if (ok) return Factorization<F>{a, *w};
        }
        // Round A, solve columns of W.
        if (auto a = rounded(at, g, gd, in_span, tau, bound); a && a->is_nonnegative()) {
          const Matrix<F> af = a->transpose();
          Matrix<F> w(r, m.cols());
          bool ok = true;
          for (std::size_t i = 0; i < m.cols() && ok; ++i) {
            auto col = NonnegSolve(af, all, m.col(i));
            if (col) w.set_col(i, *col);
            ok = col.has_value();
          }
          if (ok) return Factorization<F>{af, w};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nnr
