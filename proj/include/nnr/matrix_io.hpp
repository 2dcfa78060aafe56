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
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "nnr/field.hpp"
#include "nnr/matrix.hpp"
#include "nnr/text_io.hpp"

namespace nnr {

// nnr-matrix v1
// dims <m> <n>
// field rat|qs3
// <m rows of n whitespace-separated scalars>
template <ExactField F>
void WriteMatrix(std::ostream& os, const Matrix<F>& m) {
  os << "nnr-matrix v1\n";
  os << "dims " << m.rows() << " " << m.cols() << "\n";
  os << "field " << FieldTraits<F>::kTag << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).str();
    os << "\n";
  }
}

template <ExactField F>
std::string EmitMatrix(const Matrix<F>& m) {
  std::ostringstream os;
  WriteMatrix(os, m);
  return os.str();
}

namespace internal {

struct MatrixHeader {
  std::size_t rows = 0, cols = 0;
  std::string field;
};

inline MatrixHeader ReadMatrixHeader(LineReader& reader) {
  MatrixHeader h;
  auto toks = Tokenize(reader.Require("header"));
  if (toks.size() != 2 || toks[0].text != "nnr-matrix" || toks[1].text != "v1") {
    reader.Fail("expected 'nnr-matrix v1'");
  }
  toks = Tokenize(reader.Require("dims"));
  if (toks.size() != 3 || toks[0].text != "dims") reader.Fail("expected 'dims <m> <n>'");
  for (int k = 1; k <= 2; ++k) {
    const auto& t = toks[static_cast<std::size_t>(k)];
    if (t.text.find_first_not_of("0123456789") != std::string::npos) {
      reader.Fail("malformed dimension '" + t.text + "'", t.column);
    }
    (k == 1 ? h.rows : h.cols) = std::stoull(t.text);
  }
  toks = Tokenize(reader.Require("field"));
  if (toks.size() != 2 || toks[0].text != "field" ||
      (toks[1].text != "rat" && toks[1].text != "qs3")) {
    reader.Fail("expected 'field rat|qs3'");
  }
  h.field = toks[1].text;
  return h;
}

}  // namespace internal

// Field tag of a matrix text ("rat" or "qs3").
inline std::string MatrixField(const std::string& text) {
  std::istringstream in(text);
  LineReader reader(in);
  return internal::ReadMatrixHeader(reader).field;
}

// Reads a matrix over F. A rational file may be read over QS3.
template <ExactField F>
Matrix<F> ReadMatrix(std::istream& in) {
  LineReader reader(in);
  const auto h = internal::ReadMatrixHeader(reader);
  if (h.field != FieldTraits<F>::kTag && !(h.field == "rat" && std::is_same_v<F, QS3>)) {
    reader.Fail("matrix is over field '" + h.field + "', expected '" +
                std::string(FieldTraits<F>::kTag) + "'");
  }
  Matrix<F> m(h.rows, h.cols);
  for (std::size_t i = 0; i < h.rows; ++i) {
    const auto toks = Tokenize(reader.Require("matrix row"));
    if (toks.size() != h.cols) {
      reader.Fail("expected " + std::to_string(h.cols) + " entries, found " +
                  std::to_string(toks.size()));
    }
    for (std::size_t j = 0; j < h.cols; ++j) {
      try {
        m(i, j) = F::Parse(toks[j].text);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), reader.line(), toks[j].column);
      } catch (const InvalidInput& e) {
        throw ParseError(e.what(), reader.line(), toks[j].column);
      }
    }
  }
  std::string extra;
  if (reader.Next(extra)) reader.Fail("unexpected content after the last row");
  return m;
}

template <ExactField F>
Matrix<F> ParseMatrix(const std::string& text) {
  std::istringstream in(text);
  return ReadMatrix<F>(in);
}

template <ExactField F>
Matrix<F> LoadMatrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return ReadMatrix<F>(in);
}

template <ExactField F>
void SaveMatrix(const std::string& path, const Matrix<F>& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  WriteMatrix(out, m);
}

}  // namespace nnr
