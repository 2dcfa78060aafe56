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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nnr/fragile.hpp"
#include "nnr/matrix_io.hpp"
#include "nnr/text_io.hpp"

namespace nnr {

inline constexpr const char* kFragileGenerator = "nnr-fragile 1";

// Bundle layout: family.txt, epsilon.txt, S.mat, U.mat, V.mat, M.mat,
// incidence.txt and provenance.txt inside one directory.
inline void WriteBundle(const std::filesystem::path& dir, const FragileInstance& inst) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
    return out;
  };
  {
    auto out = open("family.txt");
    out << "# tangent half-angle parameters, one per triangle\n";
    for (const auto& t : inst.params) out << t.str() << "\n";
  }
  open("epsilon.txt") << inst.epsilon.str() << "\n";
  Matrix<QS3> s(inst.s.size(), 2);
  for (std::size_t k = 0; k < inst.s.size(); ++k) {
    s(k, 0) = inst.s[k].p[0];
    s(k, 1) = inst.s[k].p[1];
  }
  SaveMatrix((dir / "S.mat").string(), s);
  SaveMatrix((dir / "U.mat").string(), inst.u);
  SaveMatrix((dir / "V.mat").string(), inst.v);
  SaveMatrix((dir / "M.mat").string(), inst.m);
  {
    auto out = open("incidence.txt");
    out << "# point triangle edge triangle edge\n";
    for (std::size_t k = 0; k < inst.s.size(); ++k) {
      const auto& on = inst.s[k].on;
      out << k << " " << on[0].triangle << " " << on[0].edge << " " << on[1].triangle << " "
          << on[1].edge << "\n";
    }
  }
  {
    const auto rep = VerifyNoPremises(inst);
    auto out = open("provenance.txt");
    out << "generator: " << kFragileGenerator << "\n";
    out << "triangles: " << inst.n() << "\n";
    out << "points: " << inst.s.size() << "\n";
    out << "check facets_at_half: " << rep.facets_at_half << "\n";
    out << "check p_inside_unit_circle: " << rep.p_inside_unit_circle << "\n";
    out << "check triangles_on_unit_circle: " << rep.triangles_on_unit_circle << "\n";
    out << "check no_scaled_triangle_covers_s: " << rep.no_scaled_triangle_covers_s << "\n";
  }
}

namespace internal {

struct BundleLine {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<BundleLine> BundleLines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  LineReader reader(in);
  std::vector<BundleLine> out;
  std::string line;
  while (reader.Next(line)) out.push_back({reader.line(), Tokenize(line)});
  return out;
}

}  // namespace internal

// Reads a bundle back. Triangles and P are regenerated from the stored
// parameters and epsilon; points, incidences and matrices are taken as stored.
inline FragileInstance LoadBundle(const std::filesystem::path& dir) {
  FragileInstance inst;
  for (const auto& line : internal::BundleLines(dir / "family.txt")) {
    if (line.tokens.size() != 1) throw ParseError("family.txt: expected one parameter", line.number, 1);
    inst.params.push_back(QS3::Parse(line.tokens[0].text));
  }
  inst.triangles = GenTriangleFamily(inst.params);
  const auto eps = internal::BundleLines(dir / "epsilon.txt");
  if (eps.size() != 1 || eps[0].tokens.size() != 1) throw ParseError("epsilon.txt: expected one value", 1, 1);
  inst.epsilon = Rat::Parse(eps[0].tokens[0].text);
  inst.p = internal::ScaledVertices(inst.triangles, inst.epsilon);

  const auto s = LoadMatrix<QS3>((dir / "S.mat").string());
  if (s.cols() != 2) throw InvalidInput("S.mat: expected two columns");
  inst.s.resize(s.rows());
  for (std::size_t k = 0; k < s.rows(); ++k) inst.s[k].p = {s(k, 0), s(k, 1)};
  std::vector<bool> seen(s.rows(), false);
  for (const auto& line : internal::BundleLines(dir / "incidence.txt")) {
    const auto& tokens = line.tokens;
    if (tokens.size() != 5) throw ParseError("incidence.txt: expected 5 fields", line.number, 1);
    std::vector<std::size_t> f;
    for (const auto& t : tokens) {
      const auto v = ParseIndexList(t.text);
      if (v.size() != 1) throw ParseError("incidence.txt: expected an index", line.number, t.column);
      f.push_back(v[0]);
    }
    if (f[0] >= s.rows() || seen[f[0]]) throw ParseError("incidence.txt: bad point index", line.number, 1);
    seen[f[0]] = true;
    inst.s[f[0]].on = {Incidence{f[1], f[2]}, Incidence{f[3], f[4]}};
  }
  for (bool b : seen)
    if (!b) throw InvalidInput("incidence.txt: missing point");
  inst.u = LoadMatrix<QS3>((dir / "U.mat").string());
  inst.v = LoadMatrix<QS3>((dir / "V.mat").string());
  inst.m = LoadMatrix<QS3>((dir / "M.mat").string());
  return inst;
}

// Exact checks on a loaded bundle.
struct BundleReport {
  bool incidences_exact = false;  // each point lies on both stated edges
  bool edge_counts = false;       // every edge holds exactly two points
  bool matches_rebuild = false;   // S, U, V, M equal a fresh build from family.txt
  bool m_equals_uv = false;
  bool m_positive = false;
  bool m_rank_three = false;
  PremiseReport premises;

  bool all() const {
    return incidences_exact && edge_counts && matches_rebuild && m_equals_uv && m_positive &&
           m_rank_three && premises.all();
  }
};

inline BundleReport VerifyBundle(const FragileInstance& inst) {
  BundleReport rep;
  const QS3 half(Rat(1, 2));
  const std::size_t n = inst.n();
  std::vector<std::size_t> counts(3 * n, 0);
  rep.incidences_exact = inst.s.size() == 3 * n;
  for (const auto& sp : inst.s) {
    for (const auto& inc : sp.on) {
      if (inc.triangle >= n || inc.edge >= 3) {
        rep.incidences_exact = false;
        continue;
      }
      ++counts[3 * inc.triangle + inc.edge];
      rep.incidences_exact = rep.incidences_exact &&
                             Dot(sp.p, inst.triangles[inc.triangle].normals[inc.edge]) == half;
    }
    rep.incidences_exact = rep.incidences_exact && sp.on[0].triangle != sp.on[1].triangle;
  }
  rep.edge_counts = std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 2; });
  rep.m_equals_uv = inst.u.cols() == 3 && inst.u.rows() == inst.s.size() && inst.v.rows() == 3 &&
                    inst.u * inst.v == inst.m;
  rep.m_positive = !inst.m.data().empty() &&
                   std::all_of(inst.m.data().begin(), inst.m.data().end(),
                               [](const QS3& x) { return x.sign() > 0; });
  rep.m_rank_three = Rank(inst.m) == 3;
  try {
    const auto fresh = BuildFragileInstance(inst.params);
    bool same = fresh.epsilon == inst.epsilon && fresh.s.size() == inst.s.size() &&
                fresh.u == inst.u && fresh.v == inst.v && fresh.m == inst.m;
    for (std::size_t k = 0; same && k < inst.s.size(); ++k)
      same = fresh.s[k].p == inst.s[k].p && fresh.s[k].on == inst.s[k].on;
    rep.matches_rebuild = same;
  } catch (const InvalidInput&) {
    rep.matches_rebuild = false;
  }
  rep.premises = VerifyNoPremises(inst);
  return rep;
}

}  // namespace nnr
