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

#include <filesystem>
#include <random>

#include "nnr/fragile.hpp"
#include "nnr/fragile_io.hpp"

namespace nnr {
namespace {

const QS3 kHalf(Rat(1, 2));
const QS3 kRoot3Half(Rat(0), Rat(1, 2));  // sqrt(3)/2

std::vector<QS3> HexagramParams() { return {QS3(0), QS3(Rat(0), Rat(1, 3))}; }
std::vector<QS3> FourParams() { return {QS3(0), QS3(Rat(1, 5)), QS3(Rat(1, 3)), QS3(Rat(1, 2))}; }

const FragileInstance& Hexagram() {
  static const FragileInstance inst = BuildFragileInstance(HexagramParams());
  return inst;
}

const FragileInstance& Four() {
  static const FragileInstance inst = BuildFragileInstance(FourParams());
  return inst;
}

// Rows of S not incident to triangle i.
IndexSet AvoidingRows(const FragileInstance& inst, std::size_t i) {
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < inst.s.size(); ++k)
    if (!inst.s[k].touches(i)) rows.push_back(k);
  return IndexSet(rows, inst.s.size());
}

bool Positive(const Matrix<QS3>& m) {
  for (const auto& x : m.data())
    if (x.sign() <= 0) return false;
  return true;
}

TEST(Fragile, BaseTriangle) {
  const Triangle t = MakeTriangle(QS3(0));
  EXPECT_EQ(t.rotation, (Point{QS3(1), QS3(0)}));
  EXPECT_EQ(t.vertices[0], (Point{QS3(1), QS3(0)}));
  EXPECT_EQ(t.vertices[1], (Point{-kHalf, kRoot3Half}));
  EXPECT_EQ(t.vertices[2], (Point{-kHalf, -kRoot3Half}));
}

TEST(Fragile, EdgesAtDistanceHalf) {
  for (const auto& t : GenTriangleFamily(FourParams())) {
    EXPECT_EQ(Norm2(t.rotation), QS3(1));
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(Norm2(t.vertices[k]), QS3(1));
      EXPECT_EQ(Norm2(t.normals[k]), QS3(1));
      // Both endpoints of edge k lie on <x, u_k> = 1/2.
      EXPECT_EQ(Dot(t.vertices[(k + 1) % 3], t.normals[k]), kHalf);
      EXPECT_EQ(Dot(t.vertices[(k + 2) % 3], t.normals[k]), kHalf);
    }
  }
}

TEST(Fragile, FamilyErrors) {
  EXPECT_THROW(GenTriangleFamily({QS3(0)}), InvalidInput);
  EXPECT_THROW(GenTriangleFamily({QS3(0), QS3(0)}), InvalidInput);
  // tan(pi/3) = sqrt(3) rotates by 2 pi / 3, the same triangle.
  EXPECT_THROW(GenTriangleFamily({QS3(0), QS3(Rat(0), Rat(1))}), InvalidInput);
}

TEST(Fragile, HexagramPoints) {
  const auto& inst = Hexagram();
  EXPECT_EQ(inst.triangles[1].rotation, (Point{kHalf, kRoot3Half}));
  ASSERT_EQ(inst.s.size(), 6u);
  const Point expected{kHalf, QS3(Rat(0), Rat(1, 6))};
  bool found = false;
  for (const auto& sp : inst.s) {
    found = found || sp.p == expected;
    EXPECT_EQ(Norm2(sp.p), QS3(Rat(1, 3)));
  }
  EXPECT_TRUE(found);
}

TEST(Fragile, PointsOrderedByTrianglePair) {
  const auto& s = Four().s;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    EXPECT_LT(s[k].on[0].triangle, s[k].on[1].triangle);
    EXPECT_LE(std::pair(s[k].on[0].triangle, s[k].on[1].triangle),
              std::pair(s[k + 1].on[0].triangle, s[k + 1].on[1].triangle));
  }
  // Rows 0, 1, 2 meet triangles 0 and 1 only.
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(s[k].on[1].triangle, 1u);
  const auto cert = SubmatrixCertificate(Four(), IndexSet({0, 1, 2}, 12));
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->triangle, 2u);
}

TEST(Fragile, EdgeIncidenceCounts) {
  for (const auto* inst : {&Hexagram(), &Four()}) {
    ASSERT_EQ(inst->s.size(), 3 * inst->n());
    std::vector<int> counts(3 * inst->n(), 0);
    for (const auto& sp : inst->s) {
      EXPECT_NE(sp.on[0].triangle, sp.on[1].triangle);
      for (const auto& inc : sp.on) {
        ++counts[3 * inc.triangle + inc.edge];
        EXPECT_EQ(Dot(sp.p, inst->triangles[inc.triangle].normals[inc.edge]), kHalf);
      }
    }
    for (int c : counts) EXPECT_EQ(c, 2);
  }
}

TEST(Fragile, HullFacetsOnTriangleEdges) {
  for (const auto* inst : {&Hexagram(), &Four()}) {
    const auto& s = inst->s;
    const auto order = HullOrder(s);
    for (std::size_t a = 0; a < s.size(); ++a) {
      const SPoint& p = s[order[a]];
      const SPoint& q = s[order[(a + 1) % s.size()]];
      EXPECT_TRUE(Cross(p.p, q.p).sign() > 0);
      bool shared = false;
      for (const auto& x : p.on)
        for (const auto& y : q.on) shared = shared || x == y;
      EXPECT_TRUE(shared) << "facet " << a;
    }
  }
}

TEST(Fragile, RandomFamiliesKeepInvariants) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(1, 96);
  int accepted = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<QS3> params;
    for (std::size_t i = 0; i < n; ++i) params.push_back(QS3(Rat(num(rng), 100)));
    FragileInstance inst;
    try {
      inst = BuildFragileInstance(params);
    } catch (const InvalidInput&) {
      continue;
    }
    ++accepted;
    EXPECT_EQ(inst.s.size(), 3 * n);
    EXPECT_TRUE(Positive(inst.m));
    EXPECT_EQ(Rank(inst.m), 3u);
    EXPECT_EQ(inst.u * inst.v, inst.m);
    const Rat scale = Rat(1) - inst.epsilon;
    for (const auto& v : inst.p) EXPECT_EQ(Norm2(v), QS3(scale * scale));
    // No point of S lies strictly between an edge and its scaled copy.
    for (const auto& t : inst.triangles)
      for (const auto& u : t.normals)
        for (const auto& sp : inst.s) {
          const QS3 d = Dot(sp.p, u);
          EXPECT_FALSE(d > QS3(scale / Rat(2)) && d < kHalf);
        }
    EXPECT_TRUE(VerifyNoPremises(inst).all());
  }
  EXPECT_GE(accepted, 8);
}

TEST(Fragile, HexagramEpsilonAndMatrix) {
  const auto& inst = Hexagram();
  EXPECT_EQ(inst.epsilon, Rat(1, 4));
  EXPECT_EQ(MinGap(inst.triangles, inst.s), kHalf);
  EXPECT_EQ(inst.m.rows(), 6u);
  EXPECT_EQ(inst.m.cols(), 6u);
  EXPECT_TRUE(Positive(inst.m));
  EXPECT_EQ(Rank(inst.m), 3u);
  for (const auto& sp : inst.s) EXPECT_TRUE(internal::StrictlyInsidePolygon(inst.p, sp.p));
}

TEST(Fragile, EmbeddingOfOrigin) {
  const auto e = Embed({QS3(0), QS3(0)});
  for (const auto& x : e) EXPECT_EQ(x, QS3(Rat(1, 3)));
  const auto f = Embed({QS3(Rat(1, 5)), QS3(Rat(0), Rat(2, 7))});
  EXPECT_EQ(f[0] + f[1] + f[2], QS3(1));
}

TEST(Fragile, PremisesHold) {
  const auto rep = VerifyNoPremises(Hexagram());
  EXPECT_TRUE(rep.facets_at_half);
  EXPECT_TRUE(rep.p_inside_unit_circle);
  EXPECT_TRUE(rep.triangles_on_unit_circle);
  EXPECT_TRUE(rep.no_scaled_triangle_covers_s);
  EXPECT_TRUE(VerifyNoPremises(Four()).all());
}

TEST(Fragile, ZeroEpsilonFailsRadiusPremise) {
  FragileInstance inst = Hexagram();
  inst.epsilon = Rat(0);
  inst.p = internal::ScaledVertices(inst.triangles, inst.epsilon);
  const auto rep = VerifyNoPremises(inst);
  EXPECT_FALSE(rep.p_inside_unit_circle);
  EXPECT_TRUE(rep.triangles_on_unit_circle);
}

TEST(Fragile, CoveredPointsFailCoverPremise) {
  // Dropping the points on triangle 0 leaves a set that T_0^(1-eps) covers.
  FragileInstance inst = Four();
  std::vector<SPoint> kept;
  for (const auto& sp : inst.s)
    if (!sp.touches(0)) kept.push_back(sp);
  inst.s = kept;
  EXPECT_FALSE(VerifyNoPremises(inst).no_scaled_triangle_covers_s);
}

TEST(Fragile, EmptyRowSetCertificate) {
  const auto cert = SubmatrixCertificate(Hexagram(), IndexSet({}, 6));
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->uq_inv.rows(), 0u);
  EXPECT_TRUE(cert->qv.is_nonnegative());
}

TEST(Fragile, HexagramNonemptyRowsHaveNoCertificate) {
  for (std::size_t k = 0; k < 6; ++k) EXPECT_FALSE(SubmatrixCertificate(Hexagram(), IndexSet({k}, 6)));
}

TEST(Fragile, AvoidingRowsCertify) {
  const auto& inst = Four();
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const IndexSet rows = AvoidingRows(inst, i);
    EXPECT_EQ(rows.size(), 6u);
    const auto cert = SubmatrixCertificateFor(inst, rows, i);
    ASSERT_TRUE(cert.has_value()) << "triangle " << i;
    EXPECT_TRUE(cert->uq_inv.is_nonnegative());
    EXPECT_TRUE(cert->qv.is_nonnegative());
    EXPECT_EQ(cert->uq_inv * cert->q, inst.u.select_rows(rows));
    EXPECT_EQ(cert->factorization().product(), inst.m.select_rows(rows));
  }
  // A row on triangle 2 blocks the certificate for triangle 2.
  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < inst.s.size(); ++k)
    if (inst.s[k].touches(2)) rows.push_back(k);
  EXPECT_FALSE(SubmatrixCertificateFor(inst, IndexSet({rows[0]}, inst.s.size()), 2));
}

TEST(Fragile, BlockCompose) {
  EXPECT_EQ(BlockCompose(Hexagram(), 1), Hexagram().m);
  const auto two = BlockCompose(Hexagram(), 2);
  EXPECT_EQ(two.rows(), 12u);
  EXPECT_EQ(Rank(two), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 6; j < 12; ++j) {
      EXPECT_TRUE(two(i, j).is_zero());
      EXPECT_TRUE(two(j, i).is_zero());
    }
  EXPECT_THROW(BlockCompose(Hexagram(), 0), InvalidInput);
}

TEST(Fragile, BlockCertificates) {
  const auto& inst = Four();
  const auto big = BlockCompose(inst, 2);
  EXPECT_EQ(big.rows(), 24u);
  EXPECT_EQ(Rank(big), 6u);
  // Block 0 avoids triangle 1, block 1 avoids triangle 3.
  std::vector<std::size_t> rows;
  for (auto k : AvoidingRows(inst, 1)) rows.push_back(k);
  for (auto k : AvoidingRows(inst, 3)) rows.push_back(12 + k);
  const IndexSet set(rows, 24);
  const auto cert = BlockCertificate(inst, 2, set);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->inner(), 6u);
  EXPECT_TRUE(cert->a.is_nonnegative());
  EXPECT_TRUE(cert->w.is_nonnegative());
  EXPECT_EQ(cert->product(), big.select_rows(set));
  // Every point of S in one block touches all triangles together.
  std::vector<std::size_t> all(12);
  for (std::size_t k = 0; k < 12; ++k) all[k] = k;
  EXPECT_FALSE(BlockCertificate(inst, 2, IndexSet(all, 24)));
}

TEST(FragileBundle, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "nnr_fragile_bundle_test";
  std::filesystem::remove_all(dir);
  WriteBundle(dir, Four());
  for (const char* f : {"family.txt", "epsilon.txt", "S.mat", "U.mat", "V.mat", "M.mat", "incidence.txt",
                        "provenance.txt"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  const auto loaded = LoadBundle(dir);
  EXPECT_EQ(loaded.params, Four().params);
  EXPECT_EQ(loaded.epsilon, Four().epsilon);
  EXPECT_EQ(loaded.m, Four().m);
  EXPECT_EQ(loaded.p, Four().p);
  EXPECT_TRUE(VerifyBundle(loaded).all());

  // A tampered matrix entry is caught.
  auto m = loaded.m;
  m(0, 0) = m(0, 0) + QS3(1);
  SaveMatrix((dir / "M.mat").string(), m);
  const auto rep = VerifyBundle(LoadBundle(dir));
  EXPECT_FALSE(rep.m_equals_uv);
  EXPECT_FALSE(rep.all());
  std::filesystem::remove_all(dir);
}

TEST(FragileBundle, MalformedIncidence) {
  const auto dir = std::filesystem::temp_directory_path() / "nnr_fragile_bad_incidence";
  std::filesystem::remove_all(dir);
  WriteBundle(dir, Hexagram());
  {
    std::ofstream out(dir / "incidence.txt");
    out << "0 0 1 1\n";
  }
  EXPECT_THROW(LoadBundle(dir), ParseError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nnr
