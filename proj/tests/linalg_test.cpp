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

#include <random>

#include "nnr/linalg.hpp"
#include "nnr/simplex.hpp"
#include "test_util.hpp"

namespace nnr {
namespace {

using M = Matrix<Rat>;
using nnr::testing::BruteForceNonnegFeasible;
using nnr::testing::LeibnizDet;
using nnr::testing::RandomSignedMatrix;

TEST(RankAndBasisTest, Examples) {
  auto rb = RankAndBasis(M::Identity(3), Axis::kRows);
  EXPECT_EQ(rb.rank, 3u);
  EXPECT_EQ(rb.basis, IndexSet({0, 1, 2}, 3));

  M ones{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  rb = RankAndBasis(ones, Axis::kRows);
  EXPECT_EQ(rb.rank, 1u);
  EXPECT_EQ(rb.basis, IndexSet({0}, 3));

  M a{{1, 0, 1}, {0, 1, 1}};
  rb = RankAndBasis(a, Axis::kCols);
  EXPECT_EQ(rb.rank, 2u);
  EXPECT_EQ(rb.basis, IndexSet({0, 1}, 3));
}

TEST(RankAndBasisTest, GreedySkipsDependentLeaders) {
  M a{{0, 0, 0}, {1, 2, 3}, {2, 4, 6}, {0, 1, 0}};
  auto rb = RankAndBasis(a, Axis::kRows);
  EXPECT_EQ(rb.basis, IndexSet({1, 3}, 4));
}

TEST(RankAndBasisTest, TransposeAgrees) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    M a = RandomSignedMatrix(rng, dim(rng), dim(rng), 1);
    EXPECT_EQ(RankAndBasis(a, Axis::kRows).rank, RankAndBasis(a.transpose(), Axis::kCols).rank);
    EXPECT_EQ(RankAndBasis(a, Axis::kCols).rank, RankAndBasis(a, Axis::kRows).rank);
  }
}

TEST(DetAdjugateTest, Examples) {
  auto r = DetAndAdjugate(M::Identity(2));
  EXPECT_EQ(r.det, Rat(1));
  EXPECT_EQ(r.adj, M::Identity(2));

  r = DetAndAdjugate(M{{1, 1}, {0, 1}});
  EXPECT_EQ(r.det, Rat(1));
  EXPECT_EQ(r.adj, (M{{1, -1}, {0, 1}}));

  r = DetAndAdjugate(M{{2, 0}, {0, 3}});
  EXPECT_EQ(r.det, Rat(6));
  EXPECT_EQ(r.adj, (M{{3, 0}, {0, 2}}));
}

TEST(DetAdjugateTest, AdjugateIdentityHoldsForSingularToo) {
  M s{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  auto r = DetAndAdjugate(s);
  EXPECT_EQ(r.det, Rat(0));
  EXPECT_EQ(r.adj * s, M(3, 3));
}

TEST(DetAdjugateTest, RandomInverseAndLeibnizOracle) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  int invertible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = dim(rng);
    M r = RandomSignedMatrix(rng, n, n);
    auto da = DetAndAdjugate(r);
    EXPECT_EQ(da.det, LeibnizDet(r));
    EXPECT_EQ(da.adj * r, M::Identity(n).scaled(da.det));
    if (da.det.is_zero()) {
      EXPECT_FALSE(Inverse(r).has_value());
      continue;
    }
    ++invertible;
    M inv = da.adj.scaled(Rat(1) / da.det);
    EXPECT_EQ(r * inv, M::Identity(n));
    EXPECT_EQ(*Inverse(r), inv);
  }
  EXPECT_GT(invertible, 100);
}

TEST(DeterminantTest, QS3Rotation) {
  // Rotation by 2pi/3 has determinant 1.
  const QS3 h(Rat(-1, 2)), s(Rat(0), Rat(1, 2));
  Matrix<QS3> rot{{h, -s}, {s, h}};
  EXPECT_EQ(Determinant(rot), QS3(1));
  EXPECT_EQ(LeibnizDet(rot), QS3(1));
}

TEST(NonnegSolveTest, Examples) {
  auto x = NonnegSolve(M::Identity(2), IndexSet({0, 1}, 2), {Rat(1), Rat(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vector<Rat>{Rat(1), Rat(1)}));

  EXPECT_FALSE(NonnegSolve(M::Identity(2), IndexSet({0}, 2), {Rat(1), Rat(1)}));

  M a{{1, 2}};
  x = NonnegSolve(a, IndexSet({0, 1}, 2), {Rat(3)});
  ASSERT_TRUE(x);
  EXPECT_TRUE(IsNonnegative(*x));
  EXPECT_EQ(a * *x, Vector<Rat>{Rat(3)});
}

TEST(NonnegSolveTest, NegativeRightHandSide) {
  M a{{1, -1}, {0, 1}};
  auto x = NonnegSolve(a, IndexSet({0, 1}, 2), {Rat(-1), Rat(2)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vector<Rat>{Rat(1), Rat(2)}));
}

TEST(NonnegSolveTest, EmptySupport) {
  EXPECT_TRUE(NonnegSolve(M::Identity(2), IndexSet(2), {Rat(0), Rat(0)}));
  EXPECT_FALSE(NonnegSolve(M::Identity(2), IndexSet(2), {Rat(0), Rat(1)}));
}

TEST(NonnegSolveTest, AgreesWithBasicSolutionEnumeration) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    M a = RandomSignedMatrix(rng, m, n, 2);
    Vector<Rat> v = a.col(0);
    std::uniform_int_distribution<int> c(-2, 2);
    for (auto& x : v) x = Rat(c(rng));
    std::vector<std::size_t> supp;
    std::uniform_int_distribution<int> coin(0, 3);
    for (std::size_t j = 0; j < n; ++j)
      if (coin(rng)) supp.push_back(j);
    IndexSet s(supp, n);
    auto x = NonnegSolve(a, s, v);
    EXPECT_EQ(x.has_value(), BruteForceNonnegFeasible(a, s, v));
    if (x) {
      ++feasible;
      EXPECT_TRUE(IsNonnegative(*x));
      EXPECT_TRUE(Support(*x).subset_of(s));
      EXPECT_EQ(a * *x, v);
    }
  }
  EXPECT_GT(feasible, 40);
}

TEST(NonnegSolveTest, DegenerateInstanceTerminates) {
  // Klee-Minty-like degenerate rows with many ties.
  M a{{1, 1, 1, 1}, {1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 0, 0}};
  auto x = NonnegSolve(a, IndexSet::All(4), {Rat(2), Rat(2), Rat(1), Rat(0)});
  ASSERT_TRUE(x);
  EXPECT_EQ(a * *x, (Vector<Rat>{Rat(2), Rat(2), Rat(1), Rat(0)}));
}

TEST(SolveTest, NullSpace) {
  M a{{1, 2, 3}, {2, 4, 6}};
  auto ns = NullSpace(a);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& x : ns) EXPECT_EQ(a * x, (Vector<Rat>{Rat(0), Rat(0)}));
}

}  // namespace
}  // namespace nnr
