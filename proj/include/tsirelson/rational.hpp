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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tsirelson {

/// Exact rational scalar. Every quantity in the library is carried in this
/// type; there is no floating-point path.
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws InputError on malformed text or a zero
/// denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, always with an explicit denominator ("1/1", "0/1").
std::string to_pq_string(const Rational& value);

/// Canonical short form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

inline Rational abs(const Rational& value) {
  Rational r = value;
  if (sgn(r) < 0) r = -r;
  return r;
}

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);

/// Largest integer <= value.
std::int64_t floor_to_int(const Rational& value);

}  // namespace tsirelson
