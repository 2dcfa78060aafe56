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
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nnr/compiler.hpp"
#include "nnr/text_io.hpp"

namespace nnr {

// Polynomial text: terms joined by " + " / " - ", each term a coefficient
// followed by factors "*x<i>^<e>". The zero polynomial is "0".
template <ExactField F>
std::string FormatPolynomial(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    F coef = c;
    if (!first) {
      if (coef.sign() < 0) {
        os << " - ";
        coef = -coef;
      } else {
        os << " + ";
      }
    }
    first = false;
    os << coef.str();
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v]) os << "*x" << v << "^" << e[v];
  }
  return os.str();
}

template <ExactField F>
Polynomial<F> ParsePolynomial(std::string_view text, std::size_t num_vars) {
  Polynomial<F> p(num_vars);
  std::string_view rest = text;
  int sign = 1;
  while (true) {
    std::size_t cut = std::string_view::npos;
    int next_sign = 1;
    for (std::size_t i = 0; i + 2 < rest.size(); ++i) {
      if (rest[i] == ' ' && (rest[i + 1] == '+' || rest[i + 1] == '-') && rest[i + 2] == ' ') {
        cut = i;
        next_sign = rest[i + 1] == '-' ? -1 : 1;
        break;
      }
    }
    std::string_view term = rest.substr(0, cut);
    while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
    while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
    if (term.empty()) throw ParseError("empty polynomial term");

    Exponents e(num_vars, 0);
    F coef(1);
    std::size_t start = 0;
    bool first_factor = true;
    while (start <= term.size()) {
      const auto star = term.find('*', start);
      std::string_view f = term.substr(start, star == std::string_view::npos ? term.npos : star - start);
      if (f.empty()) throw ParseError("empty factor in '" + std::string(term) + "'");
      if (f[0] == 'x') {
        const auto caret = f.find('^');
        const auto var = ParseIndexList(f.substr(1, caret == std::string_view::npos ? f.npos : caret - 1));
        unsigned power = 1;
        if (caret != std::string_view::npos) {
          const auto pw = ParseIndexList(f.substr(caret + 1));
          if (pw.size() != 1) throw ParseError("malformed exponent in '" + std::string(f) + "'");
          power = static_cast<unsigned>(pw[0]);
        }
        if (var.size() != 1 || var[0] >= num_vars) {
          throw ParseError("bad variable '" + std::string(f) + "'");
        }
        e[var[0]] += power;
      } else if (first_factor) {
        coef = F::Parse(f);
      } else {
        throw ParseError("coefficient must be the first factor in '" + std::string(term) + "'");
      }
      first_factor = false;
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    p.AddTerm(e, sign < 0 ? -coef : coef);
    if (cut == std::string_view::npos) break;
    rest = rest.substr(cut + 3);
    sign = next_sign;
  }
  return p;
}

template <ExactField F>
void WritePolySystem(std::ostream& os, const PolySystem<F>& sys) {
  os << "nnr-poly v1 mode=" << ToString(sys.mode) << "\n";
  os << "vars " << sys.var_count << "\n";
  for (std::size_t x = 0; x < sys.roles.size(); ++x) {
    os << "var " << x << " = " << sys.roles[x].block << "[" << JoinIndices(sys.roles[x].coords)
       << "]\n";
  }
  for (const auto& p : sys.polys) {
    os << "poly " << ToString(p.family) << "[" << JoinIndices(p.index)
       << "] = " << FormatPolynomial(p.poly) << "\n";
  }
  const SystemMeta& m = sys.meta;
  os << "meta\n";
  os << "field " << FieldTraits<F>::kTag << "\n";
  os << "m " << m.m << "\nn " << m.n << "\nr " << m.r << "\ns " << m.s << "\nt " << m.t << "\n";
  os << "U " << JoinIndices(m.u.indices()) << "\nV " << JoinIndices(m.v.indices()) << "\n";
  os << "p " << m.p << "\nq " << m.q << "\n";
  os << "end\n";
}

template <ExactField F>
std::string FormatPolySystem(const PolySystem<F>& sys) {
  std::ostringstream os;
  WritePolySystem(os, sys);
  return os.str();
}

namespace internal {

// Runs `fn`, attaching the reader's position to position-less parse errors.
template <typename Fn>
auto AtLine(const LineReader& reader, std::size_t column, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    throw ParseError(e.what(), reader.line(), column);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), reader.line(), column);
  }
}

inline Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kDetA, Family::kDetW, Family::kNumA, Family::kNumW, Family::kProd})
    if (ToString(f) == name) return f;
  throw ParseError("unknown polynomial family '" + std::string(name) + "'");
}

// Splits "name[i,j]" into name and indices.
inline std::pair<std::string, std::vector<std::size_t>> ParseBracketed(std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || text.back() != ']') {
    throw ParseError("expected name[indices], got '" + std::string(text) + "'");
  }
  return {std::string(text.substr(0, open)),
          ParseIndexList(text.substr(open + 1, text.size() - open - 2))};
}

}  // namespace internal

template <ExactField F>
PolySystem<F> ReadPolySystem(std::istream& in) {
  LineReader reader(in);
  PolySystem<F> sys;
  {
    const auto toks = Tokenize(reader.Require("header"));
    if (toks.size() != 3 || toks[0].text != "nnr-poly" || toks[1].text != "v1") {
      reader.Fail("expected 'nnr-poly v1 mode=<take1|take2>'");
    }
    if (toks[2].text == "mode=take1") {
      sys.mode = CompileMode::kTake1;
    } else if (toks[2].text == "mode=take2") {
      sys.mode = CompileMode::kTake2;
    } else {
      reader.Fail("unknown mode '" + toks[2].text + "'", toks[2].column);
    }
  }
  {
    const auto toks = Tokenize(reader.Require("vars"));
    if (toks.size() != 2 || toks[0].text != "vars") reader.Fail("expected 'vars <k>'");
    sys.var_count = internal::AtLine(reader, toks[1].column, [&] {
      const auto v = ParseIndexList(toks[1].text);
      if (v.size() != 1) throw ParseError("malformed variable count");
      return v[0];
    });
  }
  std::string line;
  bool saw_meta = false;
  while (reader.Next(line)) {
    const auto toks = Tokenize(line);
    if (toks[0].text == "meta") {
      saw_meta = true;
      break;
    }
    if (toks.size() < 4 || toks[2].text != "=") reader.Fail("expected 'var' or 'poly' line");
    if (toks[0].text == "var") {
      const auto idx = internal::AtLine(reader, toks[1].column, [&] { return ParseIndexList(toks[1].text); });
      if (idx.size() != 1 || idx[0] != sys.roles.size()) reader.Fail("variables must be listed in order", toks[1].column);
      auto [block, coords] = internal::AtLine(reader, toks[3].column, [&] { return internal::ParseBracketed(toks[3].text); });
      if (block != "A_U" && block != "W_V" && block != "B" && block != "C") {
        reader.Fail("unknown variable block '" + block + "'", toks[3].column);
      }
      sys.roles.push_back({block, coords});
    } else if (toks[0].text == "poly") {
      NamedPolynomial<F> p;
      internal::AtLine(reader, toks[1].column, [&] {
        auto [name, idx] = internal::ParseBracketed(toks[1].text);
        p.family = internal::ParseFamily(name);
        p.index = idx;
        return 0;
      });
      const std::size_t body = line.find(" = ") + 3;
      p.poly = internal::AtLine(reader, body + 1, [&] {
        return ParsePolynomial<F>(std::string_view(line).substr(body), sys.var_count);
      });
      sys.polys.push_back(std::move(p));
    } else {
      reader.Fail("unexpected keyword '" + toks[0].text + "'");
    }
  }
  if (!saw_meta) throw ParseError("missing meta block", reader.line() + 1, 1);
  if (sys.roles.size() != sys.var_count) throw ParseError("variable roles do not match 'vars'", reader.line(), 1);

  std::map<std::string, std::string> kv;
  bool saw_end = false;
  while (reader.Next(line)) {
    const auto toks = Tokenize(line);
    if (toks[0].text == "end") {
      saw_end = true;
      break;
    }
    if (toks.size() > 2) reader.Fail("expected '<key> <value>'");
    kv[toks[0].text] = toks.size() == 2 ? toks[1].text : "";
  }
  if (!saw_end) throw ParseError("missing 'end'", reader.line() + 1, 1);
  auto get = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("meta block lacks '" + key + "'", reader.line(), 1);
    return it->second;
  };
  if (get("field") != FieldTraits<F>::kTag) {
    throw ParseError("system is over field '" + get("field") + "'", reader.line(), 1);
  }
  auto number = [&](const std::string& key) {
    return internal::AtLine(reader, 1, [&] {
      const auto v = ParseIndexList(get(key));
      if (v.size() != 1) throw ParseError("meta '" + key + "' must be one integer");
      return v[0];
    });
  };
  SystemMeta& m = sys.meta;
  m.m = number("m");
  m.n = number("n");
  m.r = number("r");
  m.s = number("s");
  m.t = number("t");
  m.p = number("p");
  m.q = number("q");
  m.u = internal::AtLine(reader, 1, [&] { return IndexSet(ParseIndexList(get("U")), m.m); });
  m.v = internal::AtLine(reader, 1, [&] { return IndexSet(ParseIndexList(get("V")), m.n); });
  return sys;
}

template <ExactField F>
PolySystem<F> ParsePolySystem(const std::string& text) {
  std::istringstream in(text);
  return ReadPolySystem<F>(in);
}

template <ExactField F>
PolySystem<F> LoadPolySystem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return ReadPolySystem<F>(in);
}

}  // namespace nnr
