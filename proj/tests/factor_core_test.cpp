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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "nnr/factorization.hpp"
#include "test_util.hpp"

namespace nnr {
namespace {

using M = Matrix<Rat>;
using V = Vector<Rat>;

IndexSet S(std::initializer_list<std::size_t> idx, std::size_t universe = 6) {
  return IndexSet(idx, universe);
}

TEST(LexCompareTest, Examples) {
  EXPECT_TRUE(LexBefore(S({0}), S({0, 1})));
  EXPECT_TRUE(LexBefore(S({0, 2}), S({1, 2})));
  EXPECT_TRUE(LexBefore(S({}), S({0})));
  EXPECT_TRUE(LexBefore(S({5}), S({0, 1})));
  EXPECT_FALSE(LexBefore(S({1, 2}), S({1, 2})));
}

TEST(LexCompareTest, StrictTotalOrderExhaustive) {
  for (std::size_t r = 0; r <= 6; ++r) {
    const auto all = SubsetsInLexOrder(r);
    ASSERT_EQ(all.size(), std::size_t{1} << r);
    for (std::size_t x = 0; x < all.size(); ++x) {
      for (std::size_t y = 0; y < all.size(); ++y) {
        const bool xy = LexBefore(all[x], all[y]);
        const bool yx = LexBefore(all[y], all[x]);
        EXPECT_FALSE(xy && yx);
        EXPECT_EQ(xy || yx, x != y);
        // The enumeration order is the order itself.
        EXPECT_EQ(xy, x < y);
      }
    }
    if (r > 4) continue;
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all)
          if (LexBefore(a, b) && LexBefore(b, c)) {
            EXPECT_TRUE(LexBefore(a, c));
          }
  }
}

TEST(LexFirstAdmissibleTest, Examples) {
  auto s = LexFirstAdmissible(M::Identity(2), V{Rat(0), Rat(1)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->subset, IndexSet({1}, 2));

  s = LexFirstAdmissible(M::Identity(2), V{Rat(0), Rat(0)});
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->subset.empty());

  M a{{1, 0, 1}, {0, 1, 1}};
  s = LexFirstAdmissible(a, V{Rat(1), Rat(1)});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->subset, IndexSet({2}, 3));
  EXPECT_EQ(s->witness, (V{Rat(0), Rat(0), Rat(1)}));
}

TEST(LexFirstAdmissibleTest, NoneOutsideHull) {
  EXPECT_FALSE(LexFirstAdmissible(M::Identity(2), V{Rat(-1), Rat(0)}));
}

TEST(LexFirstAdmissibleTest, InnerDimensionLimit) {
  M wide(1, kMaxInnerDimension + 1);
  EXPECT_THROW(LexFirstAdmissible(wide, V{Rat(0)}), InvalidInput);
}

TEST(LexFirstAdmissibleTest, FirstAndEveryEarlierSubsetInadmissible) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = dim(rng), r = dim(rng);
    M a = testing::RandomMatrix(rng, m, r);
    // A target inside the hull half of the time.
    V v(m, Rat(0));
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng)) {
      v = a * testing::RandomMatrix(rng, r, 1).col(0);
    } else {
      v = testing::RandomMatrix(rng, m, 1).col(0);
    }
    auto s = LexFirstAdmissible(a, v);
    const auto all = SubsetsInLexOrder(r);
    for (const auto& subset : all) {
      const bool feasible = testing::BruteForceNonnegFeasible(a, subset, v);
      if (s && subset == s->subset) {
        EXPECT_TRUE(feasible);
        break;
      }
      EXPECT_FALSE(feasible) << subset.str();
    }
    if (s) {
      EXPECT_EQ(a * s->witness, v);
      EXPECT_TRUE(IsNonnegative(s->witness));
      EXPECT_TRUE(Support(s->witness).subset_of(s->subset));
    }
  }
}

TEST(VerifyFactorizationTest, Examples) {
  EXPECT_TRUE(VerifyFactorization(M::Identity(2), Factorization<Rat>{M::Identity(2), M::Identity(2)}));
  M ones{{1, 1}, {1, 1}};
  EXPECT_TRUE(VerifyFactorization(ones, Factorization<Rat>{M{{1}, {1}}, M{{1, 1}}}));
  EXPECT_FALSE(VerifyFactorization(M::Identity(2), Factorization<Rat>{M::Identity(2), M{{1, 0}, {0, -1}}}));
  EXPECT_FALSE(VerifyFactorization(ones, Factorization<Rat>{M::Identity(2), M::Identity(2)}));
}

TEST(VerifyFactorizationTest, DimensionMismatch) {
  EXPECT_THROW(VerifyFactorization(M::Identity(2), Factorization<Rat>{M::Identity(3), M::Identity(3)}),
               InvalidInput);
  EXPECT_THROW(VerifyFactorization(M::Identity(2), Factorization<Rat>{M(2, 3), M(2, 2)}), InvalidInput);
}

TEST(IsStableTest, Examples) {
  EXPECT_TRUE(IsStable(M::Identity(2), Factorization<Rat>{M::Identity(2), M::Identity(2)}));

  const M w{{1, 0}, {0, 0}, {0, 1}};
  const M m{{1, 1}, {0, 1}};
  const Factorization<Rat> unstable{M{{1, 0, 1}, {0, 1, 1}}, w};
  ASSERT_EQ(unstable.product(), m);
  EXPECT_FALSE(IsStable(m, unstable));
  // Row 1 of M is (0, 1); the first admissible row subset of W is {2}.
  auto t = LexFirstAdmissible(w.transpose(), m.row(1));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->subset, IndexSet({2}, 3));

  const Factorization<Rat> stable{M{{1, 0, 1}, {0, 0, 1}}, w};
  ASSERT_EQ(stable.product(), m);
  EXPECT_TRUE(IsStable(m, stable));
}

TEST(IsStableTest, InvalidFactorizationThrows) {
  EXPECT_THROW(IsStable(M::Identity(2), Factorization<Rat>{M::Identity(2), M{{1, 0}, {0, 2}}}),
               InvalidInput);
}

TEST(IsStableTest, InvariantUnderColumnPermutation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 3, n = 4, r = 3;
    Factorization<Rat> f{testing::RandomMatrix(rng, m, r), testing::RandomMatrix(rng, r, n)};
    const M prod = f.product();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    M mp(m, n), wp(r, n);
    for (std::size_t i = 0; i < n; ++i) {
      mp.set_col(i, prod.col(perm[i]));
      wp.set_col(i, f.w.col(perm[i]));
    }
    EXPECT_EQ(IsStable(prod, f), IsStable(mp, Factorization<Rat>{f.a, wp}));
  }
}

TEST(SupportProfileTest, Profile) {
  const Factorization<Rat> f{M{{1, 0, 1}, {0, 0, 1}}, M{{1, 0}, {0, 0}, {0, 1}}};
  const auto p = Profile(f);
  EXPECT_EQ(p.w_cols[1], IndexSet({2}, 3));
  EXPECT_EQ(p.a_rows[0], IndexSet({0, 2}, 3));
}

}  // namespace
}  // namespace nnr
