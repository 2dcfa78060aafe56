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

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "nnr/errors.hpp"

namespace nnr {

// Arbitrary-precision rational in canonical form: positive denominator,
// numerator and denominator coprime, zero stored as 0/1.
//
// Thin value wrapper over mpq_class. Every operation materializes its
// result, so no GMP expression templates leak into user code.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : q_(v) {}                   // NOLINT(google-explicit-constructor)
  Rat(long v) : q_(v) {}                  // NOLINT(google-explicit-constructor)
  Rat(long long v) : q_(mpz_class(std::to_string(v))) {}  // NOLINT
  Rat(const mpz_class& v) : q_(v) {}      // NOLINT(google-explicit-constructor)
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidInput("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}
  explicit Rat(const mpq_class& v) : q_(v) { q_.canonicalize(); }

  // Exact value of a finite double.
  static Rat FromDouble(double v) {
    Rat r;
    r.q_ = mpq_class(v);
    return r;
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  // Bits needed for numerator and denominator together.
  std::size_t bit_length() const {
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) +
           mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }
  Rat inverse() const {
    if (is_zero()) throw InvalidInput("division by zero");
    return Rat(mpq_class(1 / q_));
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // `p/q`, or `p` when the denominator is one.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  // Accepts `p`, `p/q` with optional leading sign; q must be nonzero.
  static Rat Parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    const auto slash = text.find('/');
    auto parse_int = [](std::string_view s, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
      for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') {
          throw ParseError("malformed integer '" + std::string(s) + "'");
        }
      }
      std::string digits(s.substr(s[0] == '+' ? 1 : 0));
      return mpz_class(digits, 10);
    };
    if (slash == std::string_view::npos) return Rat(parse_int(text, true));
    mpz_class num = parse_int(text.substr(0, slash), true);
    mpz_class den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

}  // namespace nnr
