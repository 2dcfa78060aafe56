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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nnr/compiler.hpp"
#include "nnr/ensemble.hpp"
#include "nnr/numeric.hpp"
#include "nnr/stabilizer.hpp"

namespace nnr {

enum class DecisionVerdict { kYes, kNo, kUnknown };
enum class Provenance { kExactSmallRank, kNumericThenVerified, kExhausted };
// kAuto is exhaustive when both dimensions are at most 8 and sampled
// otherwise.
enum class AnchorPolicy { kAuto, kExhaustive, kSampled };

inline std::string ToString(DecisionVerdict v) {
  switch (v) {
    case DecisionVerdict::kYes: return "YES";
    case DecisionVerdict::kNo: return "NO";
    case DecisionVerdict::kUnknown: return "UNKNOWN";
  }
  return "?";
}

inline std::string ToString(Provenance p) {
  switch (p) {
    case Provenance::kExactSmallRank: return "exact-small-rank";
    case Provenance::kNumericThenVerified: return "numeric-then-verified";
    case Provenance::kExhausted: return "exhausted";
  }
  return "?";
}

struct DecisionConfig {
  std::size_t rank = 1;
  double budget_seconds = 60;
  std::size_t starts = 8;
  long long denominator_bound = 1'000'000;
  long long max_denominator_bound = 1'000'000'000'000;
  AnchorPolicy policy = AnchorPolicy::kAuto;
  std::size_t sampled_anchors = 16;
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  void Validate() const {
    if (rank < 1) throw InvalidInput("decide: target rank must be at least 1");
    if (!(budget_seconds > 0) || starts < 1 || sampled_anchors < 1 || threads < 1) {
      throw InvalidInput("decide: budgets must be positive");
    }
    if (denominator_bound < 1 || max_denominator_bound < denominator_bound) {
      throw InvalidInput("decide: bad denominator bounds");
    }
  }
};

// One guess (s, t, U, V) of the outer enumeration.
struct GuessCell {
  std::size_t s = 0, t = 0;
  IndexSet u, v;
};

template <ExactField F>
struct DecisionOutcome {
  DecisionVerdict verdict = DecisionVerdict::kUnknown;
  std::optional<Factorization<F>> certificate;
  Provenance provenance = Provenance::kExhausted;
  std::optional<GuessCell> cell;  // the verified guess, for numeric YES
  std::size_t cells_tried = 0;
  bool budget_exhausted = false;
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Zero columns of A and zero rows of W up to inner dimension r.
template <ExactField F>
Factorization<F> PadInner(const Factorization<F>& f, std::size_t r) {
  if (f.inner() > r) throw InvalidInput("pad: factorization is wider than the target");
  Factorization<F> out{Matrix<F>(f.a.rows(), r), Matrix<F>(r, f.w.cols())};
  for (std::size_t c = 0; c < f.inner(); ++c) {
    out.a.set_col(c, f.a.col(c));
    out.w.set_row(c, f.w.row(c));
  }
  return out;
}

template <ExactField F>
void RequireNonnegative(const Matrix<F>& m) {
  if (!m.is_nonnegative()) throw InvalidInput("decide: target matrix has negative entries");
}

// For r <= 2, rank+ equals rank on nonnegative matrices. Rank one factors
// through a nonzero column; rank two factors through the two extreme
// columns of the planar cone spanned by the columns.
template <ExactField F>
DecisionOutcome<F> ExactSmallRankOracle(const Matrix<F>& m, std::size_t r) {
  if (r > 2) throw InvalidInput("small-rank oracle: r must be at most 2");
  if (r < 1) throw InvalidInput("small-rank oracle: r must be at least 1");
  RequireNonnegative(m);
  DecisionOutcome<F> out;
  out.provenance = Provenance::kExactSmallRank;
  const auto basis = RankAndBasis(m, Axis::kCols);
  if (basis.rank > r) {
    out.verdict = DecisionVerdict::kNo;
    return out;
  }
  out.verdict = DecisionVerdict::kYes;
  Factorization<F> f{Matrix<F>(m.rows(), basis.rank), Matrix<F>(basis.rank, m.cols())};
  if (basis.rank == 1) {
    const Vector<F> p = m.col(basis.basis[0]);
    std::size_t pivot = 0;
    while (p[pivot].is_zero()) ++pivot;
    f.a.set_col(0, p);
    for (std::size_t i = 0; i < m.cols(); ++i) f.w(0, i) = m(pivot, i) / p[pivot];
  } else if (basis.rank == 2) {
    const Matrix<F> b = m.select_cols(basis.basis);
    std::vector<Vector<F>> coords(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) coords[i] = *Solve(b, m.col(i));
    auto cross = [&](std::size_t x, std::size_t y) {
      return coords[x][0] * coords[y][1] - coords[x][1] * coords[y][0];
    };
    std::optional<std::size_t> lo, hi;
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (coords[i][0].is_zero() && coords[i][1].is_zero()) continue;
      if (!lo || cross(i, *lo).sign() > 0) lo = i;
      if (!hi || cross(*hi, i).sign() > 0) hi = i;
    }
    const F base = cross(*lo, *hi);
    f.a.set_col(0, m.col(*lo));
    f.a.set_col(1, m.col(*hi));
    for (std::size_t i = 0; i < m.cols(); ++i) {
      f.w(0, i) = cross(i, *hi) / base;
      f.w(1, i) = cross(*lo, i) / base;
    }
  }
  out.certificate = PadInner(f, r);
  return out;
}

// Reorders the inner dimension so that the columns of A descend
// lexicographically; zero columns come last.
template <ExactField F>
Factorization<F> CanonicalInnerOrder(const Factorization<F>& f) {
  std::vector<std::size_t> order(f.inner());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    for (std::size_t j = 0; j < f.a.rows(); ++j) {
      if (f.a(j, x) != f.a(j, y)) return f.a(j, y) < f.a(j, x);
    }
    return false;
  });
  Factorization<F> out{Matrix<F>(f.a.rows(), f.inner()), Matrix<F>(f.inner(), f.w.cols())};
  for (std::size_t c = 0; c < order.size(); ++c) {
    out.a.set_col(c, f.a.col(order[c]));
    out.w.set_row(c, f.w.row(order[c]));
  }
  return out;
}

// Exact factorization attempts from seeded numeric starts, computed on
// first use and shared by all guess cells. Slots run over inner dimensions
// rank(M)..r with `starts` seeds each; a slot holds a stabilized
// factorization padded to r, or nothing. Seeds depend on the inner
// dimension and start only, so a larger target rank revisits every
// attempt of a smaller one.
template <ExactField F>
class CandidatePool {
 public:
  CandidatePool(const Matrix<F>& m, const DecisionConfig& cfg, const Deadline& deadline)
      : m_(m), cfg_(cfg), deadline_(deadline), md_(ToEigen(m)) {
    const auto rows = RankAndBasis(m, Axis::kRows);
    rank_ = rows.rank;
    if (rank_ > 0) {
      u0_ = rows.basis;
      v0_ = RankAndBasis(m, Axis::kCols).basis;
    }
    const std::size_t dims = cfg.rank >= rank_ && rank_ > 0 ? cfg.rank - rank_ + 1 : 0;
    slots_.resize(dims * cfg.starts);
    flags_ = std::deque<std::once_flag>(slots_.size());
  }

  std::size_t size() const { return slots_.size(); }

  const std::optional<Factorization<F>>& Get(std::size_t slot) {
    std::call_once(flags_[slot], [&] {
      slots_[slot] = Compute(rank_ + slot / cfg_.starts, slot % cfg_.starts);
    });
    return slots_[slot];
  }

 private:
  std::optional<Factorization<F>> Compute(std::size_t inner, std::size_t start) const {
    const auto approx =
        Hals(md_, inner, SplitMix64(cfg_.seed * 0x100000001b3ULL + inner * 0x10001ULL + start));
    if (!(approx.residual < 1e-4)) return std::nullopt;
    const std::vector<double> taus = {0.0, 1e-9, 1e-6, 1e-4, 1e-2};
    const auto bounds = DenominatorLadder(cfg_.denominator_bound, cfg_.max_denominator_bound);
    std::optional<Factorization<F>> f;
    if (inner == rank_) {
      f = SnapFullRank(m_, u0_, v0_, approx, taus, bounds, &deadline_);
    } else {
      f = SnapByLinearProgram(m_, approx, taus, bounds, &deadline_);
    }
    if (!f || !VerifyFactorization(m_, *f)) return std::nullopt;
    return Stabilize(m_, PadInner(CanonicalInnerOrder(*f), cfg_.rank)).factorization;
  }

  const Matrix<F>& m_;
  DecisionConfig cfg_;
  const Deadline& deadline_;
  Eigen::MatrixXd md_;
  std::size_t rank_ = 0;
  IndexSet u0_, v0_;
  std::deque<std::once_flag> flags_;
  std::vector<std::optional<Factorization<F>>> slots_;
};

template <ExactField F>
struct BackendResult {
  Vector<F> point;  // entries of A^U then W_V
  Factorization<F> factorization;
};

// Searches the take2 variable space of one guess cell. A pool candidate is
// usable when A^U has rank s = rank(A) and W_V has rank t = rank(W); it is
// returned only if the compiled system evaluates to PASS at its point.
template <ExactField F>
std::optional<BackendResult<F>> NumericSearchBackend(const Matrix<F>& m, const GuessCell& cell,
                                                     const DecisionConfig& cfg,
                                                     CandidatePool<F>& pool,
                                                     const Deadline& deadline) {
  std::optional<PolySystem<F>> sys;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (deadline.expired()) return std::nullopt;
    const auto& cand = pool.Get(k);
    if (!cand) continue;
    const Matrix<F> au = cand->a.select_rows(cell.u);
    const Matrix<F> wv = cand->w.select_cols(cell.v);
    if (Rank(au) != cell.s || Rank(cand->a) != cell.s) continue;
    if (Rank(wv) != cell.t || Rank(cand->w) != cell.t) continue;
    if (!sys) sys = CompileTake2(m, cfg.rank, cell.s, cell.t, cell.u, cell.v);
    Vector<F> point = Take2Point(*cand, cell.u, cell.v);
    auto ev = EvaluateSystemAt(*sys, point);
    if (ev.pass() && VerifyFactorization(m, *ev.factorization)) {
      return BackendResult<F>{std::move(point), std::move(*ev.factorization)};
    }
  }
  return std::nullopt;
}

template <ExactField F>
std::optional<BackendResult<F>> NumericSearchBackend(const Matrix<F>& m, const GuessCell& cell,
                                                     const DecisionConfig& cfg) {
  const Deadline deadline(cfg.budget_seconds);
  CandidatePool<F> pool(m, cfg, deadline);
  return NumericSearchBackend(m, cell, cfg, pool, deadline);
}

inline std::vector<IndexSet> AnchorChoices(std::size_t universe, std::size_t size,
                                           const DecisionConfig& cfg, std::mt19937_64& rng,
                                           bool sampled) {
  if (!sampled) return Combinations(universe, size);
  std::vector<IndexSet> out;
  std::vector<std::size_t> pool(universe);
  for (std::size_t i = 0; i < universe; ++i) pool[i] = i;
  for (std::size_t k = 0; k < cfg.sampled_anchors * 4 && out.size() < cfg.sampled_anchors; ++k) {
    std::shuffle(pool.begin(), pool.end(), rng);
    IndexSet pick = IndexSet::FromUnsorted({pool.begin(), pool.begin() + size}, universe);
    if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
  }
  std::sort(out.begin(), out.end(), LexBefore);
  return out;
}

// Guess cells in enumeration order: s, t ascending, then U and V in lex
// order. Cells whose block M^U_V is singular are dropped when s = t = rank(M).
template <ExactField F>
std::vector<GuessCell> EnumerateCells(const Matrix<F>& m, const DecisionConfig& cfg) {
  const std::size_t rho = Rank(m), r = cfg.rank;
  const bool sampled = cfg.policy == AnchorPolicy::kSampled ||
                       (cfg.policy == AnchorPolicy::kAuto && (m.rows() > 8 || m.cols() > 8));
  std::mt19937_64 rng(SplitMix64(cfg.seed ^ 0xa5a5a5a5ULL));
  std::vector<GuessCell> cells;
  for (std::size_t s = std::max<std::size_t>(rho, 1); s <= std::min(r, m.rows()); ++s) {
    for (std::size_t t = std::max<std::size_t>(rho, 1); t <= std::min(r, m.cols()); ++t) {
      const auto us = AnchorChoices(m.rows(), s, cfg, rng, sampled);
      const auto vs = AnchorChoices(m.cols(), t, cfg, rng, sampled);
      for (const auto& u : us) {
        for (const auto& v : vs) {
          if (s == rho && t == rho && Determinant(m.select(u, v)).is_zero()) continue;
          cells.push_back({s, t, u, v});
        }
      }
    }
  }
  return cells;
}

// Decides whether rank+(M) <= cfg.rank. YES is always exactly certified;
// NO comes only from exact rank arguments; search failure is UNKNOWN.
template <ExactField F>
DecisionOutcome<F> DecideRankPlus(const Matrix<F>& m, const DecisionConfig& cfg) {
  cfg.Validate();
  RequireNonnegative(m);
  const Deadline deadline(cfg.budget_seconds);
  const std::size_t r = cfg.rank;
  DecisionOutcome<F> out;
  const std::size_t rho = Rank(m);
  if (rho > r) {
    out.verdict = DecisionVerdict::kNo;
    out.provenance = Provenance::kExactSmallRank;
    return out;
  }
  if (rho == 0) {
    out.verdict = DecisionVerdict::kYes;
    out.provenance = Provenance::kExactSmallRank;
    out.certificate = Factorization<F>{Matrix<F>(m.rows(), r), Matrix<F>(r, m.cols())};
  } else if (r >= std::min(m.rows(), m.cols())) {
    out.verdict = DecisionVerdict::kYes;
    out.provenance = Provenance::kExactSmallRank;
    out.certificate = PadInner(m.rows() <= m.cols()
                                   ? Factorization<F>{Matrix<F>::Identity(m.rows()), m}
                                   : Factorization<F>{m, Matrix<F>::Identity(m.cols())},
                               r);
  } else if (r <= 2 || rho <= 2) {
    out = ExactSmallRankOracle(m, std::min<std::size_t>(r, 2));
    if (out.certificate) out.certificate = PadInner(*out.certificate, r);
  } else {
    const auto cells = EnumerateCells(m, cfg);
    CandidatePool<F> pool(m, cfg, deadline);
    std::atomic<std::size_t> next{0}, tried{0};
    std::atomic<std::size_t> best{cells.size()};
    std::mutex mu;
    std::optional<BackendResult<F>> found;
    auto worker = [&] {
      while (true) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= cells.size() || idx > best.load() || deadline.expired()) return;
        ++tried;
        auto res = NumericSearchBackend(m, cells[idx], cfg, pool, deadline);
        if (!res) continue;
        std::lock_guard<std::mutex> lock(mu);
        if (idx < best.load()) {
          best = idx;
          found = std::move(res);
        }
      }
    };
    if (cfg.threads == 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (std::size_t k = 0; k < cfg.threads; ++k) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    out.cells_tried = tried.load();
    if (found) {
      out.verdict = DecisionVerdict::kYes;
      out.provenance = Provenance::kNumericThenVerified;
      out.certificate = PadInner(found->factorization, r);
      out.cell = cells[best.load()];
    } else {
      out.verdict = DecisionVerdict::kUnknown;
      out.provenance = Provenance::kExhausted;
      out.budget_exhausted = deadline.expired();
    }
  }
  if (out.verdict == DecisionVerdict::kYes &&
      (!out.certificate || out.certificate->inner() > r || !VerifyFactorization(m, *out.certificate))) {
    throw std::logic_error("decide: certificate failed exact verification");
  }
  return out;
}

}  // namespace nnr
