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

#include <cmath>

#include "nnr/errors.hpp"
#include "nnr/rat.hpp"

namespace nnr {

// Last continued-fraction convergent of x whose denominator does not exceed
// denom_bound. The expansion runs on the exact binary value of x, so when x
// is exactly p/q with q <= denom_bound the result is p/q itself.
inline Rat Rationalize(double x, const mpz_class& denom_bound) {
  if (!std::isfinite(x)) throw InvalidInput("rationalize: non-finite input");
  if (denom_bound < 1) throw InvalidInput("rationalize: denominator bound < 1");
  const Rat exact = Rat::FromDouble(x);
  mpz_class p = exact.num();
  mpz_class q = exact.den();
  mpz_class h_prev = 1, h_prev2 = 0;
  mpz_class k_prev = 0, k_prev2 = 1;
  mpz_class best_h, best_k;
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_class h = a * h_prev + h_prev2;
    mpz_class k = a * k_prev + k_prev2;
    if (k > denom_bound) break;
    best_h = h;
    best_k = k;
    mpz_class rem = p - a * q;
    if (rem == 0) break;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    p = q;
    q = rem;
  }
  return Rat(best_h, best_k);
}

inline Rat Rationalize(double x, long denom_bound) {
  return Rationalize(x, mpz_class(denom_bound));
}

}  // namespace nnr
