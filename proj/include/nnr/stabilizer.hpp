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
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "nnr/factorization.hpp"

namespace nnr {

enum class Phase { kW, kA };

struct UpdateRecord {
  Phase phase;
  std::size_t index;  // column of W or row of A
  IndexSet old_support;
  IndexSet new_support;
};

using StabilizeTrace = std::vector<UpdateRecord>;

template <ExactField F>
struct StabilizeResult {
  Factorization<F> factorization;
  StabilizeTrace trace;
};

template <ExactField F>
using UpdateObserver = std::function<void(const Factorization<F>&, const UpdateRecord&)>;

// Alternating W-phase / A-phase support reduction. In a W-phase each column
// W_i whose support is lex-later than the first admissible subset S_i of A
// for M_i is replaced by a nonnegative solution supported in S_i; the
// A-phase does the same for rows of A against W. Runs until one full round
// changes nothing. The product A W is unchanged by every single update.
//
// `observer`, when set, sees the factorization right after each update.
template <ExactField F>
StabilizeResult<F> Stabilize(const Matrix<F>& m, Factorization<F> f,
                             const std::type_identity_t<UpdateObserver<F>>& observer = {}) {
  if (!VerifyFactorization(m, f)) throw InvalidInput("stabilize: not a valid factorization of M");
  StabilizeTrace trace;
  while (true) {
    bool changed = false;
    for (std::size_t i = 0; i < m.cols(); ++i) {
      auto s = LexFirstAdmissible(f.a, m.col(i));
      IndexSet old = Support(f.w.col(i));
      if (!LexBefore(s->subset, old)) continue;
      f.w.set_col(i, s->witness);
      trace.push_back({Phase::kW, i, std::move(old), Support(s->witness)});
      changed = true;
      if (observer) observer(f, trace.back());
    }
    const Matrix<F> wt = f.w.transpose();
    for (std::size_t j = 0; j < m.rows(); ++j) {
      auto t = LexFirstAdmissible(wt, m.row(j));
      IndexSet old = Support(f.a.row(j));
      if (!LexBefore(t->subset, old)) continue;
      f.a.set_row(j, t->witness);
      trace.push_back({Phase::kA, j, std::move(old), Support(t->witness)});
      changed = true;
      if (observer) observer(f, trace.back());
    }
    if (!changed) break;
  }
  return {std::move(f), std::move(trace)};
}

}  // namespace nnr
