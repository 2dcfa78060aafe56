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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnr/ensemble.hpp"
#include "nnr/factorization.hpp"
#include "nnr/index_set.hpp"
#include "nnr/polynomial.hpp"

namespace nnr {

enum class CompileMode { kTake1, kTake2 };

inline std::string ToString(CompileMode m) { return m == CompileMode::kTake1 ? "take1" : "take2"; }

// Polynomial families. Under take1, numA/numW are the entries of B_k M_i^U
// and M^j_V C_l and there are no determinant polynomials.
enum class Family { kDetA, kDetW, kNumA, kNumW, kProd };

inline std::string ToString(Family f) {
  switch (f) {
    case Family::kDetA: return "detA";
    case Family::kDetW: return "detW";
    case Family::kNumA: return "numA";
    case Family::kNumW: return "numW";
    case Family::kProd: return "prod";
  }
  return "?";
}

// Which matrix entry a variable stands for. Blocks: "A_U" [u, c] with u a
// row of M, "W_V" [c, v] with v a column of M, "B" [k, row, col],
// "C" [l, row, col].
struct VarRole {
  std::string block;
  std::vector<std::size_t> coords;

  friend bool operator==(const VarRole&, const VarRole&) = default;
};

template <ExactField F>
struct NamedPolynomial {
  Family family = Family::kProd;
  std::vector<std::size_t> index;
  Polynomial<F> poly;

  friend bool operator==(const NamedPolynomial&, const NamedPolynomial&) = default;
};

struct SystemMeta {
  std::size_t m = 0, n = 0, r = 0, s = 0, t = 0;
  IndexSet u, v;
  std::size_t p = 0, q = 0;  // transform caps (take1) or subset counts (take2)

  friend bool operator==(const SystemMeta& a, const SystemMeta& b) {
    return a.m == b.m && a.n == b.n && a.r == b.r && a.s == b.s && a.t == b.t && a.u == b.u &&
           a.v == b.v && a.p == b.p && a.q == b.q;
  }
};

template <ExactField F>
struct PolySystem {
  CompileMode mode = CompileMode::kTake2;
  std::size_t var_count = 0;
  std::vector<VarRole> roles;
  std::vector<NamedPolynomial<F>> polys;
  SystemMeta meta;

  std::size_t count(Family f) const {
    std::size_t c = 0;
    for (const auto& p : polys) c += p.family == f;
    return c;
  }
  unsigned max_degree() const {
    unsigned d = 0;
    for (const auto& p : polys) d = std::max(d, p.poly.degree());
    return d;
  }
  // Every variable occurs in at least one polynomial.
  bool all_variables_used() const {
    std::vector<bool> used(var_count, false);
    for (const auto& p : polys) {
      auto occ = p.poly.occurring();
      for (std::size_t v = 0; v < var_count; ++v) used[v] = used[v] || occ[v];
    }
    for (bool b : used)
      if (!b) return false;
    return true;
  }

  friend bool operator==(const PolySystem&, const PolySystem&) = default;
};

namespace internal {

inline void CheckAnchors(std::size_t m, std::size_t n, const IndexSet& u, const IndexSet& v,
                         std::size_t s, std::size_t t) {
  if (u.size() != s || v.size() != t) throw InvalidInput("compile: |U| must be s and |V| must be t");
  if (u.universe() != m || v.universe() != n) {
    throw InvalidInput("compile: anchors must index the rows and columns of M");
  }
}

template <ExactField F>
void CheckEmitted(const PolySystem<F>& sys) {
  const std::size_t r = sys.meta.r;
  if (sys.mode == CompileMode::kTake2 &&
      (sys.var_count != r * sys.meta.s + r * sys.meta.t || sys.var_count > 2 * r * r)) {
    throw std::logic_error("compile: variable count law violated");
  }
  if (sys.max_degree() > 2 * r * r) throw std::logic_error("compile: degree bound violated");
}

}  // namespace internal

// Take 1: the variables are the entries of B_1..B_p (r x s) and C_1..C_q
// (t x r). Emits numA[i,k,c] = (B_k M_i^U)_c, numW[j,l,c] = (M^j_V C_l)_c
// and prod[i,j,k,l] = M^j_V C_l B_k M_i^U - M_i^j.
template <ExactField F>
PolySystem<F> CompileTake1(const Matrix<F>& m, std::size_t r, std::size_t s, std::size_t t,
                           const IndexSet& u, const IndexSet& v, std::size_t p, std::size_t q) {
  internal::CheckAnchors(m.rows(), m.cols(), u, v, s, t);
  if (s > r || t > r) throw InvalidInput("compile_take1: s and t must not exceed r");
  if (p > Binomial(r, s) || q > Binomial(r, t)) {
    throw InvalidInput("compile_take1: transform caps exceed C(r,s) or C(r,t)");
  }
  PolySystem<F> sys;
  sys.mode = CompileMode::kTake1;
  sys.meta = {m.rows(), m.cols(), r, s, t, u, v, p, q};
  const std::size_t nb = p * r * s;
  sys.var_count = nb + q * t * r;
  const std::size_t nv = sys.var_count;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < s; ++b) sys.roles.push_back({"B", {k, a, b}});
  for (std::size_t l = 0; l < q; ++l)
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t c = 0; c < r; ++c) sys.roles.push_back({"C", {l, a, c}});
  auto bvar = [&](std::size_t k, std::size_t a, std::size_t b) {
    return Polynomial<F>::Variable(k * r * s + a * s + b, nv);
  };
  auto cvar = [&](std::size_t l, std::size_t a, std::size_t c) {
    return Polynomial<F>::Variable(nb + l * t * r + a * r + c, nv);
  };

  // num_a[i][k][c], num_w[j][l][c]
  std::vector<std::vector<std::vector<Polynomial<F>>>> num_a(m.cols()), num_w(m.rows());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    num_a[i].resize(p);
    for (std::size_t k = 0; k < p; ++k) {
      for (std::size_t c = 0; c < r; ++c) {
        Polynomial<F> e(nv);
        for (std::size_t b = 0; b < s; ++b) e += bvar(k, c, b).scaled(m(u[b], i));
        num_a[i][k].push_back(e);
        sys.polys.push_back({Family::kNumA, {i, k, c}, std::move(e)});
      }
    }
  }
  for (std::size_t j = 0; j < m.rows(); ++j) {
    num_w[j].resize(q);
    for (std::size_t l = 0; l < q; ++l) {
      for (std::size_t c = 0; c < r; ++c) {
        Polynomial<F> e(nv);
        for (std::size_t a = 0; a < t; ++a) e += cvar(l, a, c).scaled(m(j, v[a]));
        num_w[j][l].push_back(e);
        sys.polys.push_back({Family::kNumW, {j, l, c}, std::move(e)});
      }
    }
  }
  for (std::size_t i = 0; i < m.cols(); ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t l = 0; l < q; ++l) {
          Polynomial<F> e = Polynomial<F>::Constant(-m(j, i), nv);
          for (std::size_t c = 0; c < r; ++c) e += num_w[j][l][c] * num_a[i][k][c];
          sys.polys.push_back({Family::kProd, {i, j, k, l}, std::move(e)});
        }
      }
    }
  }
  internal::CheckEmitted(sys);
  return sys;
}

// Take 2: the variables are the entries of A^U (s x r) and W_V (r x t).
// Inverses are replaced by adjugate / determinant for every size-s (size-t)
// subset of [r].
template <ExactField F>
PolySystem<F> CompileTake2(const Matrix<F>& m, std::size_t r, std::size_t s, std::size_t t,
                           const IndexSet& u, const IndexSet& v) {
  internal::CheckAnchors(m.rows(), m.cols(), u, v, s, t);
  if (s > r || t > r) throw InvalidInput("compile_take2: s and t must not exceed r");
  const auto subsets_a = Combinations(r, s);
  const auto subsets_w = Combinations(r, t);
  PolySystem<F> sys;
  sys.mode = CompileMode::kTake2;
  sys.meta = {m.rows(), m.cols(), r, s, t, u, v, subsets_a.size(), subsets_w.size()};
  const std::size_t na = s * r;
  sys.var_count = na + r * t;
  const std::size_t nv = sys.var_count;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t c = 0; c < r; ++c) sys.roles.push_back({"A_U", {u[a], c}});
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t b = 0; b < t; ++b) sys.roles.push_back({"W_V", {c, v[b]}});
  auto avar = [&](std::size_t a, std::size_t c) { return Polynomial<F>::Variable(a * r + c, nv); };
  auto wvar = [&](std::size_t c, std::size_t b) {
    return Polynomial<F>::Variable(na + c * t + b, nv);
  };

  std::vector<Polynomial<F>> det_a, det_w;
  std::vector<PolyMatrix<F>> adj_a, adj_w;
  for (const auto& sk : subsets_a) {
    PolyMatrix<F> block(s);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) block[a].push_back(avar(a, sk[b]));
    det_a.push_back(SymbolicDeterminant(block, nv));
    adj_a.push_back(SymbolicAdjugate(block, nv));
  }
  for (const auto& tl : subsets_w) {
    PolyMatrix<F> block(t);
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t b = 0; b < t; ++b) block[a].push_back(wvar(tl[a], b));
    det_w.push_back(SymbolicDeterminant(block, nv));
    adj_w.push_back(SymbolicAdjugate(block, nv));
  }
  for (std::size_t k = 0; k < det_a.size(); ++k) sys.polys.push_back({Family::kDetA, {k}, det_a[k]});
  for (std::size_t l = 0; l < det_w.size(); ++l) sys.polys.push_back({Family::kDetW, {l}, det_w[l]});

  // num_a[i][k] is indexed by coordinate in [r]; entries outside S_k stay zero.
  std::vector<std::vector<std::vector<Polynomial<F>>>> num_a(m.cols()), num_w(m.rows());
  for (std::size_t i = 0; i < m.cols(); ++i) {
    for (std::size_t k = 0; k < subsets_a.size(); ++k) {
      std::vector<Polynomial<F>> x(r, Polynomial<F>(nv));
      for (std::size_t a = 0; a < s; ++a) {
        const std::size_t c = subsets_a[k][a];
        for (std::size_t b = 0; b < s; ++b) x[c] += adj_a[k][a][b].scaled(m(u[b], i));
        sys.polys.push_back({Family::kNumA, {i, k, c}, x[c]});
      }
      num_a[i].push_back(std::move(x));
    }
  }
  for (std::size_t j = 0; j < m.rows(); ++j) {
    for (std::size_t l = 0; l < subsets_w.size(); ++l) {
      std::vector<Polynomial<F>> y(r, Polynomial<F>(nv));
      for (std::size_t b = 0; b < t; ++b) {
        const std::size_t c = subsets_w[l][b];
        for (std::size_t a = 0; a < t; ++a) y[c] += adj_w[l][a][b].scaled(m(j, v[a]));
        sys.polys.push_back({Family::kNumW, {j, l, c}, y[c]});
      }
      num_w[j].push_back(std::move(y));
    }
  }
  for (std::size_t i = 0; i < m.cols(); ++i) {
    for (std::size_t j = 0; j < m.rows(); ++j) {
      for (std::size_t k = 0; k < subsets_a.size(); ++k) {
        for (std::size_t l = 0; l < subsets_w.size(); ++l) {
          Polynomial<F> e = (det_a[k] * det_w[l]).scaled(-m(j, i));
          for (std::size_t c : subsets_a[k]) {
            if (subsets_w[l].contains(c)) e += num_w[j][l][c] * num_a[i][k][c];
          }
          sys.polys.push_back({Family::kProd, {i, j, k, l}, std::move(e)});
        }
      }
    }
  }
  internal::CheckEmitted(sys);
  return sys;
}

template <ExactField F>
struct SystemEvaluation {
  std::vector<F> values;
  std::vector<int> signs;
  PredicateReport report;                      // choices index subsets / transforms
  std::optional<Factorization<F>> factorization;  // set on PASS

  bool pass() const { return report.pass(); }
};

// Evaluates every polynomial exactly and applies the predicate's selection
// rule to the resulting candidate vectors. Under take2 a subset is a
// candidate only where its determinant is nonzero, and each entry is
// numA / detA, whose sign is sign(numA) * sign(detA).
template <ExactField F>
SystemEvaluation<F> EvaluateSystemAt(const PolySystem<F>& sys, const Vector<F>& point) {
  if (point.size() != sys.var_count) throw InvalidInput("evaluate_system_at: point has wrong length");
  const SystemMeta& meta = sys.meta;
  const bool take2 = sys.mode == CompileMode::kTake2;
  SystemEvaluation<F> out;
  std::map<std::pair<Family, std::vector<std::size_t>>, std::size_t> where;
  for (std::size_t x = 0; x < sys.polys.size(); ++x) {
    out.values.push_back(sys.polys[x].poly.Evaluate(point));
    out.signs.push_back(out.values.back().sign());
    where[{sys.polys[x].family, sys.polys[x].index}] = x;
  }
  auto value = [&](Family f, std::vector<std::size_t> idx) -> const F& {
    auto it = where.find({f, std::move(idx)});
    if (it == where.end()) throw InvalidInput("evaluate_system_at: system is missing a polynomial");
    return out.values[it->second];
  };

  const auto subsets_a = Combinations(meta.r, meta.s);
  const auto subsets_w = Combinations(meta.r, meta.t);
  const IndexSet full = IndexSet::All(meta.r);

  // Candidate vectors for one side; `which` maps candidate position to k.
  auto candidates = [&](Family num, Family den, std::size_t line, std::size_t count,
                        const std::vector<IndexSet>& subsets, std::vector<std::size_t>& which) {
    std::vector<Vector<F>> vecs;
    for (std::size_t k = 0; k < count; ++k) {
      F d(1);
      if (take2) {
        d = value(den, {k});
        if (d.is_zero()) continue;
      }
      Vector<F> x(meta.r, F(0));
      for (std::size_t c : take2 ? subsets[k] : full) x[c] = value(num, {line, k, c}) / d;
      vecs.push_back(std::move(x));
      which.push_back(k);
    }
    return vecs;
  };

  std::vector<Selection> col_sel(meta.n), row_sel(meta.m);
  std::vector<Vector<F>> w_cols(meta.n), a_rows(meta.m);
  for (std::size_t i = 0; i < meta.n; ++i) {
    std::vector<std::size_t> which;
    auto vecs = candidates(Family::kNumA, Family::kDetA, i, meta.p, subsets_a, which);
    col_sel[i] = FirstCandidate(vecs);
    if (col_sel[i].ok()) {
      w_cols[i] = vecs[*col_sel[i].index];
      col_sel[i].index = which[*col_sel[i].index];
    }
  }
  for (std::size_t j = 0; j < meta.m; ++j) {
    std::vector<std::size_t> which;
    auto vecs = candidates(Family::kNumW, Family::kDetW, j, meta.q, subsets_w, which);
    row_sel[j] = FirstCandidate(vecs);
    if (row_sel[j].ok()) {
      a_rows[j] = vecs[*row_sel[j].index];
      row_sel[j].index = which[*row_sel[j].index];
    }
  }

  PredicateReport& rep = out.report;
  rep.rows = meta.m;
  rep.cols = meta.n;
  rep.cells.resize(meta.m * meta.n);
  bool all = true;
  for (std::size_t j = 0; j < meta.m; ++j) {
    for (std::size_t i = 0; i < meta.n; ++i) {
      PredicateCell& c = rep.cells[j * meta.n + i];
      c.column_choice = col_sel[i].index;
      c.row_choice = row_sel[j].index;
      if (!col_sel[i].ok()) {
        c.failure = col_sel[i].failure;
      } else if (!row_sel[j].ok()) {
        c.failure = row_sel[j].failure;
      } else if (!value(Family::kProd, {i, j, *c.column_choice, *c.row_choice}).is_zero()) {
        c.failure = CellFailure::kProductMismatch;
      }
      all = all && c.failure == CellFailure::kNone;
    }
  }
  rep.verdict = all ? Verdict::kPass : Verdict::kFail;
  if (all) {
    Factorization<F> f{Matrix<F>(meta.m, meta.r), Matrix<F>(meta.r, meta.n)};
    for (std::size_t i = 0; i < meta.n; ++i) f.w.set_col(i, w_cols[i]);
    for (std::size_t j = 0; j < meta.m; ++j) f.a.set_row(j, a_rows[j]);
    out.factorization = std::move(f);
  }
  return out;
}

// Take2 point (entries of A^U then W_V) for a factorization and anchors.
template <ExactField F>
Vector<F> Take2Point(const Factorization<F>& f, const IndexSet& u, const IndexSet& v) {
  Vector<F> x;
  const Matrix<F> au = f.a.select_rows(u);
  const Matrix<F> wv = f.w.select_cols(v);
  x.insert(x.end(), au.data().begin(), au.data().end());
  x.insert(x.end(), wv.data().begin(), wv.data().end());
  return x;
}

// Take1 point (entries of every B_k then every C_l) for a pair of ensembles.
template <ExactField F>
Vector<F> Take1Point(const Ensemble<F>& ea, const Ensemble<F>& ew) {
  Vector<F> x;
  for (const auto& b : ea.transforms) x.insert(x.end(), b.data().begin(), b.data().end());
  for (const auto& c : ew.transforms) x.insert(x.end(), c.data().begin(), c.data().end());
  return x;
}

}  // namespace nnr
