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
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "nnr/errors.hpp"
#include "nnr/field.hpp"
#include "nnr/matrix.hpp"

namespace nnr {

using Exponents = std::vector<unsigned>;

template <ExactField F>
struct Monomial {
  F coefficient;
  Exponents exponents;

  unsigned degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0u);
  }
};

// Sparse multivariate polynomial with coefficients in F. Terms with zero
// coefficient are never stored, so structural equality is value equality.
template <ExactField F>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial Constant(const F& c, std::size_t num_vars) {
    Polynomial p(num_vars);
    if (!c.is_zero()) p.terms_[Exponents(num_vars, 0)] = c;
    return p;
  }

  static Polynomial Variable(std::size_t index, std::size_t num_vars) {
    if (index >= num_vars) throw InvalidInput("polynomial variable index out of range");
    Polynomial p(num_vars);
    Exponents e(num_vars, 0);
    e[index] = 1;
    p.terms_[e] = F(1);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, F>& terms() const { return terms_; }

  std::vector<Monomial<F>> monomials() const {
    std::vector<Monomial<F>> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.push_back({c, e});
    return out;
  }

  void AddTerm(const Exponents& e, const F& c) {
    if (e.size() != num_vars_) throw InvalidInput("monomial arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
  }

  // Variables that occur with a nonzero exponent.
  std::vector<bool> occurring() const {
    std::vector<bool> used(num_vars_, false);
    for (const auto& [e, c] : terms_)
      for (std::size_t v = 0; v < num_vars_; ++v)
        if (e[v]) used[v] = true;
    return used;
  }

  Polynomial& operator+=(const Polynomial& o) {
    Check(o);
    for (const auto& [e, c] : o.terms_) AddTerm(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    Check(o);
    for (const auto& [e, c] : o.terms_) AddTerm(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.Check(b);
    Polynomial out(a.num_vars_);
    Exponents e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
        out.AddTerm(e, ca * cb);
      }
    }
    return out;
  }
  Polynomial scaled(const F& s) const {
    Polynomial out(num_vars_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }
  Polynomial operator-() const { return scaled(F(-1)); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  // Exact value at a point over any field G that F embeds into.
  template <ExactField G>
  G Evaluate(const Vector<G>& point) const {
    if (point.size() != num_vars_) throw InvalidInput("evaluation point has wrong arity");
    G total(0);
    for (const auto& [e, c] : terms_) {
      G term(c);
      for (std::size_t v = 0; v < num_vars_ && !term.is_zero(); ++v)
        for (unsigned k = 0; k < e[v]; ++k) term *= point[v];
      total += term;
    }
    return total;
  }

 private:
  void Check(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw InvalidInput("polynomials over different variable sets");
  }

  std::size_t num_vars_ = 0;
  std::map<Exponents, F> terms_;
};

// Square matrix of polynomials, row-major.
template <ExactField F>
using PolyMatrix = std::vector<std::vector<Polynomial<F>>>;

// Permutation expansion; suitable for the small blocks used here (s <= r).
template <ExactField F>
Polynomial<F> SymbolicDeterminant(const PolyMatrix<F>& a, std::size_t num_vars) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial<F>::Constant(F(1), num_vars);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial<F> total(num_vars);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Polynomial<F> term = a[0][perm[0]];
    for (std::size_t i = 1; i < n && !term.is_zero(); ++i) term = term * a[i][perm[i]];
    if (inversions % 2) {
      total -= term;
    } else {
      total += term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// adj(R)(i, j) = (-1)^(i+j) det(R without row j and column i).
template <ExactField F>
PolyMatrix<F> SymbolicAdjugate(const PolyMatrix<F>& a, std::size_t num_vars) {
  const std::size_t n = a.size();
  PolyMatrix<F> adj(n, std::vector<Polynomial<F>>(n, Polynomial<F>(num_vars)));
  if (n == 1) {
    adj[0][0] = Polynomial<F>::Constant(F(1), num_vars);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix<F> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Polynomial<F>> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      Polynomial<F> d = SymbolicDeterminant(minor, num_vars);
      adj[i][j] = (i + j) % 2 ? -d : d;
    }
  }
  return adj;
}

}  // namespace nnr
