// Copyright 2026 The Tsirelson Authors
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

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "tsirelson/rational.hpp"

namespace tsirelson::detail {

struct SmallOverflow : std::overflow_error {
  SmallOverflow() : std::overflow_error("small rational overflow") {}
};

// Canonical int64 fraction; every operation checks for overflow and throws
// SmallOverflow so callers can redo the work with mpq_class.
class SmallRational {
 public:
  using Wide = __int128;

  SmallRational() = default;
  SmallRational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT

  static SmallRational from(const Rational& q) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw SmallOverflow();
    SmallRational r;
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
    return r;
  }

  Rational to_rational() const { return Rational(mpz_class(num_), mpz_class(den_)); }

  friend SmallRational operator+(const SmallRational& a, const SmallRational& b) { return add(a, b.num_, b.den_); }
  friend SmallRational operator-(const SmallRational& a, const SmallRational& b) { return add(a, -b.num_, b.den_); }
  friend SmallRational operator*(const SmallRational& a, const SmallRational& b) {
    std::int64_t n, d;
    if (!__builtin_mul_overflow(a.num_, b.num_, &n) && !__builtin_mul_overflow(a.den_, b.den_, &d)) return make64(n, d);
    return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
  }
  SmallRational& operator+=(const SmallRational& b) { return *this = *this + b; }

  // a + b > c, without normalizing the sum when the operands are small.
  friend bool sum_exceeds(const SmallRational& a, const SmallRational& b, const SmallRational& c) {
    constexpr std::int64_t kSmall = std::int64_t{1} << 40;
    auto small = [](const SmallRational& q) { return q.num_ < kSmall && q.num_ > -kSmall && q.den_ < kSmall; };
    if (small(a) && small(b) && small(c)) {
      Wide n = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
      Wide d = Wide(a.den_) * b.den_;
      return n * c.den_ > Wide(c.num_) * d;
    }
    return c < a + b;
  }

  friend bool operator==(const SmallRational& a, const SmallRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const SmallRational& a, const SmallRational& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    return Wide(a.num_) * b.den_ < Wide(b.num_) * a.den_;
  }
  friend bool operator>(const SmallRational& a, const SmallRational& b) { return b < a; }
  friend bool operator<=(const SmallRational& a, const SmallRational& b) { return !(b < a); }
  friend bool operator>=(const SmallRational& a, const SmallRational& b) { return !(a < b); }

 private:
  static SmallRational add(const SmallRational& a, std::int64_t bn, std::int64_t bd) {
    std::int64_t n, d, x, y;
    if (a.den_ == bd) {
      if (!__builtin_add_overflow(a.num_, bn, &n)) return make64(n, bd);
      return make(Wide(a.num_) + bn, bd);
    }
    if (!__builtin_mul_overflow(a.num_, bd, &x) && !__builtin_mul_overflow(bn, a.den_, &y) &&
        !__builtin_add_overflow(x, y, &n) && !__builtin_mul_overflow(a.den_, bd, &d)) {
      return make64(n, d);
    }
    return make(Wide(a.num_) * bd + Wide(bn) * a.den_, Wide(a.den_) * bd);
  }

  static std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
      b >>= __builtin_ctzll(b);
      if (a > b) std::swap(a, b);
      b -= a;
    } while (b != 0);
    return a << shift;
  }

  static SmallRational make64(std::int64_t n, std::int64_t d) {
    if (n == 0) return SmallRational(0);
    if (n == INT64_MIN) return make(n, d);
    std::uint64_t g = gcd64(static_cast<std::uint64_t>(n < 0 ? -n : n), static_cast<std::uint64_t>(d));
    SmallRational r;
    r.num_ = n / static_cast<std::int64_t>(g);
    r.den_ = d / static_cast<std::int64_t>(g);
    return r;
  }

  static Wide gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    while (b != 0) {
      Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static SmallRational make(Wide n, Wide d) {
    if (n == 0) return SmallRational(0);
    Wide g = gcd(n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
    constexpr Wide kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax) throw SmallOverflow();
    SmallRational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline SmallRational max(const SmallRational& a, const SmallRational& b) { return a < b ? b : a; }

}  // namespace tsirelson::detail
