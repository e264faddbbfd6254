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

#include <map>
#include <utility>
#include <vector>

#include "tsirelson/families.hpp"
#include "tsirelson/rational.hpp"

namespace tsirelson {

/// A finitely supported vector sum_i x_i e_i with exact coefficients. Stored
/// as (index, value) pairs with strictly increasing indices and nonzero values.
class FiniteVector {
 public:
  using Entry = std::pair<Index, Rational>;

  FiniteVector() = default;
  /// Throws InputError on unsorted/duplicate/non-positive indices or zeros.
  explicit FiniteVector(std::vector<Entry> coords);
  /// Zero entries are dropped.
  static FiniteVector from_map(const std::map<Index, Rational>& coords);
  static FiniteVector unit(Index n, Rational value = 1);

  const std::vector<Entry>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  bool is_zero() const { return coords_.empty(); }
  Index min_index() const;
  Index max_index() const;
  FiniteSet support() const;
  Rational at(Index n) const;

  Rational sup_norm() const;
  Rational l1_norm() const;
  Rational sum() const;

  FiniteVector abs() const;
  FiniteVector scaled(const Rational& factor) const;
  /// Restriction E x to indices in [lo, hi].
  FiniteVector restricted(Index lo, Index hi) const;

  friend FiniteVector operator+(const FiniteVector& a, const FiniteVector& b);
  friend FiniteVector operator-(const FiniteVector& a, const FiniteVector& b);
  friend bool operator==(const FiniteVector& a, const FiniteVector& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Entry> coords_;
};

/// x < y: max supp x < min supp y (zero vectors are successive to anything).
bool precedes(const FiniteVector& x, const FiniteVector& y);

}  // namespace tsirelson
