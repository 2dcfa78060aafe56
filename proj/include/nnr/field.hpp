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

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>

#include "nnr/qs3.hpp"
#include "nnr/rat.hpp"

namespace nnr {

// The exact scalar fields the library is instantiated over.
template <typename F>
concept ExactField = requires(const F& x, const F& y) {
  { x + y } -> std::same_as<F>;
  { x - y } -> std::same_as<F>;
  { x * y } -> std::same_as<F>;
  { x / y } -> std::same_as<F>;
  { -x } -> std::same_as<F>;
  { x == y } -> std::convertible_to<bool>;
  { x.sign() } -> std::same_as<int>;
  { x.is_zero() } -> std::convertible_to<bool>;
  { x.to_double() } -> std::same_as<double>;
  { x.str() } -> std::same_as<std::string>;
  { F::Parse(std::string_view{}) } -> std::same_as<F>;
  { x.bit_length() } -> std::same_as<std::size_t>;
};

template <ExactField F>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static constexpr std::string_view kTag = "rat";
};

template <>
struct FieldTraits<QS3> {
  static constexpr std::string_view kTag = "qs3";
};

// Embeds a rational into F.
template <ExactField F>
F FromRat(const Rat& r) {
  return F(r);
}

template <ExactField F>
int Sign(const F& x) {
  return x.sign();
}

}  // namespace nnr
