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
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnr/factorization.hpp"
#include "nnr/linalg.hpp"
#include "nnr/qs3.hpp"

namespace nnr {

using Point = std::array<QS3, 2>;

inline Point operator+(const Point& p, const Point& q) { return {p[0] + q[0], p[1] + q[1]}; }
inline Point operator-(const Point& p, const Point& q) { return {p[0] - q[0], p[1] - q[1]}; }
inline Point Scale(const QS3& s, const Point& p) { return {s * p[0], s * p[1]}; }
inline QS3 Dot(const Point& p, const Point& q) { return p[0] * q[0] + p[1] * q[1]; }
inline QS3 Cross(const Point& p, const Point& q) { return p[0] * q[1] - p[1] * q[0]; }
inline QS3 Norm2(const Point& p) { return Dot(p, p); }

// Counterclockwise angular order starting at the positive x-axis.
inline bool AngleLess(const Point& p, const Point& q) {
  auto half = [](const Point& x) {
    return x[1].sign() < 0 || (x[1].is_zero() && x[0].sign() < 0) ? 1 : 0;
  };
  if (half(p) != half(q)) return half(p) < half(q);
  return Cross(p, q).sign() > 0;
}

// Rotation by 2*pi/3.
inline Point Turn(const Point& p) {
  const QS3 c(Rat(-1, 2)), s(Rat(0), Rat(1, 2));
  return {c * p[0] - s * p[1], s * p[0] + c * p[1]};
}

// Equilateral triangle inscribed in the unit circle. Edge k is opposite
// vertex k and lies on the line <x, normals[k]> = 1/2, where
// normals[k] = -vertices[k].
struct Triangle {
  QS3 param;
  Point rotation;
  std::array<Point, 3> vertices;
  std::array<Point, 3> normals;

  // <p, u_k> <= scale/2 for every edge.
  bool contains(const Point& p, const Rat& scale = Rat(1)) const {
    for (const auto& u : normals)
      if (Dot(p, u) > QS3(scale / Rat(2))) return false;
    return true;
  }
  bool strictly_contains(const Point& p, const Rat& scale = Rat(1)) const {
    for (const auto& u : normals)
      if (Dot(p, u) >= QS3(scale / Rat(2))) return false;
    return true;
  }
};

inline Triangle MakeTriangle(const QS3& t) {
  const QS3 den = QS3(1) + t * t;
  Triangle tri;
  tri.param = t;
  tri.rotation = {(QS3(1) - t * t) / den, QS3(2) * t / den};
  tri.vertices[0] = tri.rotation;
  tri.vertices[1] = Turn(tri.vertices[0]);
  tri.vertices[2] = Turn(tri.vertices[1]);
  for (std::size_t k = 0; k < 3; ++k) tri.normals[k] = {-tri.vertices[k][0], -tri.vertices[k][1]};
  return tri;
}

// Triangles from tangent-half-angle parameters; rotation_i is the point
// ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)) of the unit circle.
inline std::vector<Triangle> GenTriangleFamily(const std::vector<QS3>& params) {
  if (params.size() < 2) throw InvalidInput("fragile: need at least two triangles");
  std::vector<Triangle> out;
  for (const auto& t : params) out.push_back(MakeTriangle(t));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto& v : out[j].vertices) {
        if (v == out[i].rotation) {
          throw InvalidInput("fragile: parameters " + out[j].param.str() + " and " +
                             out[i].param.str() + " give the same triangle directions");
        }
      }
    }
  }
  return out;
}

struct Incidence {
  std::size_t triangle = 0;
  std::size_t edge = 0;

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct SPoint {
  Point p;
  std::array<Incidence, 2> on;

  bool touches(std::size_t triangle) const {
    return on[0].triangle == triangle || on[1].triangle == triangle;
  }
};

namespace internal {

inline bool InsideAll(const std::vector<Triangle>& tris, const Point& p) {
  for (const auto& t : tris)
    if (!t.contains(p)) return false;
  return true;
}

}  // namespace internal

// Vertices of the intersection of all triangles with the two (triangle,
// edge) lines through each, sorted by the pair of triangles, then by angle. Throws unless |S| = 3n, every
// point lies on edges of two distinct triangles and every edge carries two
// points.
inline std::vector<SPoint> IntersectAndExtractS(const std::vector<Triangle>& tris) {
  const QS3 half(Rat(1, 2));
  std::vector<SPoint> s;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t j = i + 1; j < tris.size(); ++j) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          const Point& u = tris[i].normals[a];
          const Point& w = tris[j].normals[b];
          const QS3 det = Cross(u, w);
          if (det.is_zero()) continue;
          // Solve <x, u> = <x, w> = 1/2.
          const Point x = {half * (w[1] - u[1]) / det, half * (u[0] - w[0]) / det};
          if (!internal::InsideAll(tris, x)) continue;
          if (std::any_of(s.begin(), s.end(), [&](const SPoint& q) { return q.p == x; })) continue;
          s.push_back({x, {}});
        }
      }
    }
  }
  for (auto& sp : s) {
    std::vector<Incidence> on;
    for (std::size_t i = 0; i < tris.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k)
        if (Dot(sp.p, tris[i].normals[k]) == half) on.push_back({i, k});
    if (on.size() != 2 || on[0].triangle == on[1].triangle) {
      throw InvalidInput("fragile: degenerate family, a point of S lies on " +
                         std::to_string(on.size()) + " edges");
    }
    sp.on = {on[0], on[1]};
  }
  if (s.size() != 3 * tris.size()) {
    throw InvalidInput("fragile: degenerate family, |S| = " + std::to_string(s.size()));
  }
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto count = std::count_if(s.begin(), s.end(), [&](const SPoint& q) {
        return q.on[0] == Incidence{i, k} || q.on[1] == Incidence{i, k};
      });
      if (count != 2) throw InvalidInput("fragile: degenerate family, an edge holds " + std::to_string(count) + " points");
    }
  }
  std::sort(s.begin(), s.end(), [](const SPoint& x, const SPoint& y) {
    const auto kx = std::pair(x.on[0].triangle, x.on[1].triangle);
    const auto ky = std::pair(y.on[0].triangle, y.on[1].triangle);
    return kx != ky ? kx < ky : AngleLess(x.p, y.p);
  });
  return s;
}

// Indices of S in counterclockwise order around conv(S).
inline std::vector<std::size_t> HullOrder(const std::vector<SPoint>& s) {
  std::vector<std::size_t> order(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return AngleLess(s[a].p, s[b].p); });
  return order;
}

// Squared distance from the origin to the line through p and q.
inline QS3 LineDistance2(const Point& p, const Point& q) {
  const QS3 c = Cross(p, q);
  return c * c / Norm2(q - p);
}

// A rational r with 0 < r <= x for x > 0, from decimal bounds on sqrt(3).
inline Rat RationalLowerBound(const QS3& x) {
  if (x.sign() <= 0) throw InvalidInput("rational lower bound of a nonpositive value");
  for (unsigned digits = 20;; digits *= 2) {
    mpz_class scale, root;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    const mpz_class three = 3 * scale * scale;
    mpz_sqrt(root.get_mpz_t(), three.get_mpz_t());
    const Rat lo(root, scale), hi(mpz_class(root + 1), scale);
    const Rat bound = x.a() + x.b() * (x.b().sign() >= 0 ? lo : hi);
    if (bound.sign() > 0) return bound;
  }
}

struct FragileInstance {
  std::vector<QS3> params;
  std::vector<Triangle> triangles;
  std::vector<SPoint> s;
  Rat epsilon;
  std::vector<Point> p;  // vertices of P, counterclockwise
  Matrix<QS3> u, v, m;

  std::size_t n() const { return triangles.size(); }
};

namespace internal {

inline std::vector<Point> ScaledVertices(const std::vector<Triangle>& tris, const Rat& epsilon) {
  std::vector<Point> out;
  for (const auto& t : tris)
    for (const auto& v : t.vertices) out.push_back(Scale(QS3(Rat(1) - epsilon), v));
  std::sort(out.begin(), out.end(), AngleLess);
  return out;
}

inline bool StrictlyInsidePolygon(const std::vector<Point>& poly, const Point& x) {
  for (std::size_t a = 0; a < poly.size(); ++a) {
    const Point& p = poly[a];
    const Point& q = poly[(a + 1) % poly.size()];
    if (Cross(q - p, x - p).sign() <= 0) return false;
  }
  return true;
}

// Points of S off T_i lie strictly inside T_i^(1-eps); points on T_i lie
// outside it. Hence no point is strictly between an edge and its scaled copy.
inline bool ScaleSeparationHolds(const std::vector<Triangle>& tris, const std::vector<SPoint>& s,
                            const Rat& epsilon) {
  const Rat scale = Rat(1) - epsilon;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (const auto& sp : s) {
      const bool inside = tris[i].contains(sp.p, scale);
      if (sp.touches(i) ? inside : !tris[i].strictly_contains(sp.p, scale)) return false;
    }
  }
  return true;
}

}  // namespace internal

// Smallest positive slack 1/2 - <s, u_e> over edges e and points s of S.
inline QS3 MinGap(const std::vector<Triangle>& tris, const std::vector<SPoint>& s) {
  const QS3 half(Rat(1, 2));
  std::optional<QS3> best;
  for (const auto& t : tris) {
    for (const auto& u : t.normals) {
      for (const auto& sp : s) {
        const QS3 gap = half - Dot(sp.p, u);
        if (gap.is_zero()) continue;
        if (!best || gap < *best) best = gap;
      }
    }
  }
  if (!best) throw InvalidInput("fragile: no positive gap");
  return *best;
}

// Starts from min(lower bound of the minimum gap, 1/4) and halves epsilon
// until S is strictly inside P and the scale separation holds.
inline std::pair<Rat, std::vector<Point>> ChooseEpsilonAndBuildP(const std::vector<Triangle>& tris,
                                                                 const std::vector<SPoint>& s) {
  Rat eps = std::min(RationalLowerBound(MinGap(tris, s)), Rat(1, 4));
  for (int round = 0; round < 200; ++round, eps = eps / Rat(2)) {
    auto poly = internal::ScaledVertices(tris, eps);
    bool ok = true;
    for (const auto& sp : s) ok = ok && internal::StrictlyInsidePolygon(poly, sp.p);
    if (ok && internal::ScaleSeparationHolds(tris, s, eps)) return {eps, std::move(poly)};
  }
  throw InvalidInput("fragile: epsilon search did not terminate");
}

// Affine embedding of the plane onto x + y + z = 1; the unit disc lands in
// the open positive orthant.
inline std::array<QS3, 3> Embed(const Point& p) {
  const QS3 third(Rat(1, 3));
  return {third + p[0] / QS3(6) + p[1] / QS3(12), third - p[0] / QS3(6) + p[1] / QS3(12),
          third - p[1] / QS3(6)};
}

inline std::array<QS3, 3> Cross3(const std::array<QS3, 3>& a, const std::array<QS3, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct ConeMatrices {
  Matrix<QS3> u, v, m;
};

// U has rows Embed(s); V has one column per edge of P, the normal of the
// cone facet through consecutive embedded vertices, oriented to be positive
// on Embed(0).
inline ConeMatrices ConeReduce(const std::vector<Point>& poly, const std::vector<SPoint>& s) {
  ConeMatrices out{Matrix<QS3>(s.size(), 3), Matrix<QS3>(3, poly.size()), {}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto e = Embed(s[i].p);
    for (std::size_t c = 0; c < 3; ++c) out.u(i, c) = e[c];
  }
  const auto center = Embed({QS3(0), QS3(0)});
  for (std::size_t a = 0; a < poly.size(); ++a) {
    auto normal = Cross3(Embed(poly[a]), Embed(poly[(a + 1) % poly.size()]));
    const QS3 side = normal[0] * center[0] + normal[1] * center[1] + normal[2] * center[2];
    if (side.is_zero()) throw InvalidInput("fragile: degenerate cone facet");
    if (side.sign() < 0)
      for (auto& x : normal) x = -x;
    for (std::size_t c = 0; c < 3; ++c) out.v(c, a) = normal[c];
  }
  out.m = out.u * out.v;
  if (!out.m.is_nonnegative()) throw InvalidInput("fragile: reduced matrix has a negative entry");
  if (Rank(out.m) != 3) throw InvalidInput("fragile: reduced matrix does not have rank 3");
  return out;
}

inline FragileInstance BuildFragileInstance(const std::vector<QS3>& params) {
  FragileInstance inst;
  inst.params = params;
  inst.triangles = GenTriangleFamily(params);
  inst.s = IntersectAndExtractS(inst.triangles);
  std::tie(inst.epsilon, inst.p) = ChooseEpsilonAndBuildP(inst.triangles, inst.s);
  auto red = ConeReduce(inst.p, inst.s);
  inst.u = std::move(red.u);
  inst.v = std::move(red.v);
  inst.m = std::move(red.m);
  return inst;
}

// Certificate that the rows S' of M have nonnegative rank at most 3:
// M^{S'} = (U_{S'} Q^{-1}) (Q V) with both factors nonnegative.
struct SubCert {
  std::size_t triangle = 0;
  IndexSet rows;
  Matrix<QS3> q;
  Matrix<QS3> uq_inv;
  Matrix<QS3> qv;

  Factorization<QS3> factorization() const { return {uq_inv, qv}; }
};

// Q has rows Embed of the vertices of T_i^(1-eps).
inline std::optional<SubCert> SubmatrixCertificateFor(const FragileInstance& inst,
                                                      const IndexSet& rows, std::size_t i) {
  if (rows.universe() != inst.s.size()) throw InvalidInput("sub-certificate: row set has the wrong universe");
  if (i >= inst.n()) throw InvalidInput("sub-certificate: triangle index out of range");
  for (auto r : rows)
    if (inst.s[r].touches(i)) return std::nullopt;
  SubCert cert;
  cert.triangle = i;
  cert.rows = rows;
  cert.q = Matrix<QS3>(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto e = Embed(Scale(QS3(Rat(1) - inst.epsilon), inst.triangles[i].vertices[k]));
    for (std::size_t c = 0; c < 3; ++c) cert.q(k, c) = e[c];
  }
  auto q_inv = Inverse(cert.q);
  if (!q_inv) return std::nullopt;
  cert.uq_inv = inst.u.select_rows(rows) * *q_inv;
  cert.qv = cert.q * inst.v;
  if (!cert.uq_inv.is_nonnegative() || !cert.qv.is_nonnegative()) return std::nullopt;
  return cert;
}

// Searches triangles in order for one avoided by every row of S'.
inline std::optional<SubCert> SubmatrixCertificate(const FragileInstance& inst, const IndexSet& rows) {
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (auto cert = SubmatrixCertificateFor(inst, rows, i)) return cert;
  }
  return std::nullopt;
}

struct PremiseReport {
  bool facets_at_half = false;             // (i) conv(S) contains the circle of radius 1/2
  bool p_inside_unit_circle = false;       // (ii) P's vertices at radius 1 - eps < 1
  bool triangles_on_unit_circle = false;   // (iii) each T_i has its vertices at radius 1
  bool no_scaled_triangle_covers_s = false;  // (iv)

  bool all() const {
    return facets_at_half && p_inside_unit_circle && triangles_on_unit_circle &&
           no_scaled_triangle_covers_s;
  }
};

inline PremiseReport VerifyNoPremises(const FragileInstance& inst) {
  PremiseReport rep;
  const QS3 quarter(Rat(1, 4));
  rep.facets_at_half = !inst.s.empty();
  const auto order = HullOrder(inst.s);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Point& p = inst.s[order[a]].p;
    const Point& q = inst.s[order[(a + 1) % order.size()]].p;
    rep.facets_at_half = rep.facets_at_half && !(p == q) && LineDistance2(p, q) == quarter;
  }
  const Rat scale = Rat(1) - inst.epsilon;
  rep.p_inside_unit_circle = !inst.p.empty() && scale < Rat(1) && scale.sign() > 0;
  for (const auto& v : inst.p)
    rep.p_inside_unit_circle = rep.p_inside_unit_circle && Norm2(v) == QS3(scale * scale);
  rep.triangles_on_unit_circle = !inst.triangles.empty();
  for (const auto& t : inst.triangles)
    for (const auto& v : t.vertices)
      rep.triangles_on_unit_circle = rep.triangles_on_unit_circle && Norm2(v) == QS3(1);
  rep.no_scaled_triangle_covers_s = true;
  for (const auto& t : inst.triangles) {
    const bool covers = std::all_of(inst.s.begin(), inst.s.end(),
                                    [&](const SPoint& sp) { return t.contains(sp.p, scale); });
    rep.no_scaled_triangle_covers_s = rep.no_scaled_triangle_covers_s && !covers;
  }
  return rep;
}

inline Matrix<QS3> BlockCompose(const FragileInstance& inst, std::size_t blocks) {
  if (blocks < 1) throw InvalidInput("block_compose: need at least one block");
  return BlockDiagonal(std::vector<Matrix<QS3>>(blocks, inst.m));
}

// Certificate for rows of the block-diagonal matrix: one SubCert per block,
// assembled into block-diagonal factors of inner dimension 3 * blocks.
inline std::optional<Factorization<QS3>> BlockCertificate(const FragileInstance& inst,
                                                          std::size_t blocks,
                                                          const IndexSet& rows) {
  const std::size_t size = inst.s.size();
  if (rows.universe() != size * blocks) throw InvalidInput("block certificate: row set has the wrong universe");
  std::vector<Matrix<QS3>> left, right;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<std::size_t> local;
    for (auto r : rows)
      if (r / size == b) local.push_back(r % size);
    auto cert = SubmatrixCertificate(inst, IndexSet(local, size));
    if (!cert) return std::nullopt;
    left.push_back(cert->uq_inv);
    right.push_back(cert->qv);
  }
  return Factorization<QS3>{BlockDiagonal(left), BlockDiagonal(right)};
}

}  // namespace nnr
