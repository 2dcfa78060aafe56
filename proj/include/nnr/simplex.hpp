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
#include <vector>

#include "nnr/errors.hpp"
#include "nnr/matrix.hpp"

namespace nnr {

// Finds x >= 0 with A x = v and supp(x) inside `support`, or std::nullopt
// when no such x exists.
//
// Exact phase-1 simplex over the columns in `support` with one artificial
// per row. Entering and leaving variables follow Bland's rule, so the method
// terminates on degenerate instances.
template <ExactField F>
std::optional<Vector<F>> NonnegSolve(const Matrix<F>& a, const IndexSet& support,
                                     const Vector<F>& v) {
  const std::size_t m = a.rows();
  if (v.size() != m) throw InvalidInput("nonneg_solve: right-hand side length mismatch");
  for (auto j : support)
    if (j >= a.cols()) throw InvalidInput("nonneg_solve: support index out of range");
  const std::size_t k = support.size();
  const std::size_t width = k + m;

  Matrix<F> t(m, width);
  Vector<F> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = v[i].sign() < 0;
    for (std::size_t c = 0; c < k; ++c)
      t(i, c) = flip ? -a(i, support[c]) : a(i, support[c]);
    t(i, k + i) = F(1);
    rhs[i] = flip ? -v[i] : v[i];
    basis[i] = k + i;
  }

  // Reduced costs of the phase-1 objective (sum of artificials).
  Vector<F> cost(width, F(0));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < m; ++i) cost[c] -= t(i, c);

  while (true) {
    std::size_t enter = width;
    for (std::size_t c = 0; c < width; ++c) {
      if (cost[c].sign() < 0) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    F best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter).sign() <= 0) continue;
      F ratio = rhs[i] / t(i, enter);
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    // Phase 1 is bounded below by zero, so some row always limits the step.
    if (leave == m) throw InvalidInput("nonneg_solve: unbounded phase-1 direction");

    const F pinv = F(1) / t(leave, enter);
    for (std::size_t c = 0; c < width; ++c) t(leave, c) *= pinv;
    rhs[leave] *= pinv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t(i, enter).is_zero()) continue;
      const F f = t(i, enter);
      for (std::size_t c = 0; c < width; ++c)
        if (!t(leave, c).is_zero()) t(i, c) -= f * t(leave, c);
      rhs[i] -= f * rhs[leave];
    }
    if (!cost[enter].is_zero()) {
      const F f = cost[enter];
      for (std::size_t c = 0; c < width; ++c)
        if (!t(leave, c).is_zero()) cost[c] -= f * t(leave, c);
    }
    basis[leave] = enter;
  }

  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= k && !rhs[i].is_zero()) return std::nullopt;

  Vector<F> x(a.cols(), F(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < k) x[support[basis[i]]] = rhs[i];
  return x;
}

}  // namespace nnr
