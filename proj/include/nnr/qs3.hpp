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

#include <cmath>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "nnr/rat.hpp"

namespace nnr {

// Element a + b*sqrt(3) of Q(sqrt 3). Representation is unique because
// sqrt(3) is irrational, so equality is componentwise.
class QS3 {
 public:
  QS3() = default;
  QS3(int a) : a_(a) {}          // NOLINT(google-explicit-constructor)
  QS3(long a) : a_(a) {}         // NOLINT(google-explicit-constructor)
  QS3(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QS3(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static QS3 Sqrt3() { return QS3(Rat(0), Rat(1)); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  // a^2 - 3 b^2; nonzero for every nonzero element.
  Rat norm() const { return a_ * a_ - Rat(3) * b_ * b_; }
  QS3 conjugate() const { return QS3(a_, -b_); }

  // Exact sign of the real number a + b*sqrt(3).
  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // Opposite signs: |a| vs sqrt(3)|b| decided by a^2 vs 3b^2.
    const Rat diff = a_ * a_ - Rat(3) * b_ * b_;
    return diff.sign() > 0 ? sa : (diff.sign() < 0 ? sb : 0);
  }

  double to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(3.0);
  }

  std::size_t bit_length() const { return a_.bit_length() + b_.bit_length(); }

  QS3 operator-() const { return QS3(-a_, -b_); }
  QS3 abs() const { return sign() < 0 ? -*this : *this; }

  QS3 inverse() const {
    const Rat n = norm();
    if (n.is_zero()) throw InvalidInput("division by zero");
    return QS3(a_ / n, -b_ / n);
  }

  QS3& operator+=(const QS3& o) { a_ += o.a_; b_ += o.b_; return *this; }
  QS3& operator-=(const QS3& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  QS3& operator*=(const QS3& o) {
    Rat a = a_ * o.a_ + Rat(3) * b_ * o.b_;
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QS3& operator/=(const QS3& o) { return *this *= o.inverse(); }

  friend QS3 operator+(QS3 x, const QS3& y) { return x += y; }
  friend QS3 operator-(QS3 x, const QS3& y) { return x -= y; }
  friend QS3 operator*(QS3 x, const QS3& y) { return x *= y; }
  friend QS3 operator/(QS3 x, const QS3& y) { return x /= y; }

  friend bool operator==(const QS3& x, const QS3& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  // Ordering of the underlying real numbers.
  friend std::strong_ordering operator<=>(const QS3& x, const QS3& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // `a` when b = 0, otherwise `a~b`.
  std::string str() const {
    if (b_.is_zero()) return a_.str();
    return a_.str() + "~" + b_.str();
  }

  static QS3 Parse(std::string_view text) {
    const auto tilde = text.find('~');
    if (tilde == std::string_view::npos) return QS3(Rat::Parse(text));
    return QS3(Rat::Parse(text.substr(0, tilde)),
               Rat::Parse(text.substr(tilde + 1)));
  }

  friend std::ostream& operator<<(std::ostream& os, const QS3& x) {
    return os << x.str();
  }

 private:
  Rat a_;
  Rat b_;
};

}  // namespace nnr
