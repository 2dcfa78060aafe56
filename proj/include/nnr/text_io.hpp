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
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nnr/errors.hpp"

namespace nnr {

// Line-oriented reader shared by the text formats. Blank lines and lines
// starting with '#' are skipped; positions are 1-based.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next content line, or false at end of input.
  bool Next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::string Require(std::string_view what) {
    std::string line;
    if (!Next(line)) throw ParseError("unexpected end of input, expected " + std::string(what), number_ + 1, 1);
    return line;
  }

  std::size_t line() const { return number_; }

  [[noreturn]] void Fail(const std::string& what, std::size_t column = 1) const {
    throw ParseError(what, number_, column);
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

// Parses a comma-separated list of nonnegative integers; empty text is [].
inline std::vector<std::size_t> ParseIndexList(std::string_view text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("malformed index list '" + std::string(text) + "'");
    }
    out.push_back(std::stoull(std::string(part)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string JoinIndices(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace nnr
