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

#include "tsirelson/vector.hpp"

#include <algorithm>

#include "tsirelson/error.hpp"

namespace tsirelson {

FiniteVector::FiniteVector(std::vector<Entry> coords) : coords_(std::move(coords)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].first < 1) throw InputError("vector indices must be positive");
    if (i > 0 && coords_[i - 1].first >= coords_[i].first) throw InputError("vector indices must be strictly increasing");
    if (sgn(coords_[i].second) == 0) throw InputError("stored vector coefficients must be nonzero");
    coords_[i].second.canonicalize();
  }
}

FiniteVector FiniteVector::from_map(const std::map<Index, Rational>& coords) {
  std::vector<Entry> out;
  for (const auto& [i, v] : coords) {
    if (sgn(v) != 0) out.emplace_back(i, v);
  }
  return FiniteVector(std::move(out));
}

FiniteVector FiniteVector::unit(Index n, Rational value) {
  if (sgn(value) == 0) return {};
  return FiniteVector({{n, std::move(value)}});
}

Index FiniteVector::min_index() const {
  if (coords_.empty()) throw InputError("zero vector has no support");
  return coords_.front().first;
}

Index FiniteVector::max_index() const {
  if (coords_.empty()) throw InputError("zero vector has no support");
  return coords_.back().first;
}

FiniteSet FiniteVector::support() const {
  std::vector<Index> s;
  s.reserve(coords_.size());
  for (const auto& c : coords_) s.push_back(c.first);
  return FiniteSet(std::move(s));
}

Rational FiniteVector::at(Index n) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), n,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != coords_.end() && it->first == n) return it->second;
  return 0;
}

Rational FiniteVector::sup_norm() const {
  Rational best = 0;
  for (const auto& c : coords_) best = max(best, tsirelson::abs(c.second));
  return best;
}

Rational FiniteVector::l1_norm() const {
  Rational s = 0;
  for (const auto& c : coords_) s += tsirelson::abs(c.second);
  return s;
}

Rational FiniteVector::sum() const {
  Rational s = 0;
  for (const auto& c : coords_) s += c.second;
  return s;
}

FiniteVector FiniteVector::abs() const {
  FiniteVector out = *this;
  for (auto& c : out.coords_) c.second = tsirelson::abs(c.second);
  return out;
}

FiniteVector FiniteVector::scaled(const Rational& factor) const {
  if (sgn(factor) == 0) return {};
  FiniteVector out = *this;
  for (auto& c : out.coords_) c.second *= factor;
  return out;
}

FiniteVector FiniteVector::restricted(Index lo, Index hi) const {
  FiniteVector out;
  for (const auto& c : coords_) {
    if (c.first >= lo && c.first <= hi) out.coords_.push_back(c);
  }
  return out;
}

namespace {

FiniteVector combine(const FiniteVector& a, const FiniteVector& b, int sign) {
  std::map<Index, Rational> m;
  for (const auto& [i, v] : a.coords()) m[i] += v;
  for (const auto& [i, v] : b.coords()) m[i] += sign > 0 ? Rational(v) : Rational(-v);
  return FiniteVector::from_map(m);
}

}  // namespace

FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) { return combine(a, b, 1); }
FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) { return combine(a, b, -1); }

bool precedes(const FiniteVector& x, const FiniteVector& y) {
  if (x.is_zero() || y.is_zero()) return true;
  return x.max_index() < y.min_index();
}

}  // namespace tsirelson
