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

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "tsirelson/families.hpp"
#include "tsirelson/norming_tree.hpp"
#include "tsirelson/vector.hpp"

namespace gen {

using tsirelson::FiniteSet;
using tsirelson::FiniteVector;
using tsirelson::Index;
using tsirelson::NormingTree;
using tsirelson::Rational;
using Rng = std::mt19937_64;

inline Index pick(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

inline FiniteSet set(Rng& rng, std::size_t max_size, Index max_index) {
  std::vector<Index> pool;
  for (Index i = 1; i <= max_index; ++i) pool.push_back(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(pick(rng, 1, static_cast<Index>(max_size))));
  return FiniteSet::from_unsorted(pool);
}

// p/q with q <= 4, |p/q| <= 3, never zero.
inline Rational coefficient(Rng& rng, bool non_negative) {
  Index q = pick(rng, 1, 4);
  Index p = 0;
  while (p == 0) p = pick(rng, non_negative ? 1 : -3 * q, 3 * q);
  Rational r(static_cast<long>(p), static_cast<long>(q));
  r.canonicalize();
  return r;
}

inline FiniteVector vector(Rng& rng, std::size_t max_support = 8, Index max_index = 16, bool non_negative = false) {
  std::map<Index, Rational> coords;
  for (Index i : set(rng, max_support, max_index)) coords[i] = coefficient(rng, non_negative);
  return FiniteVector::from_map(coords);
}

// A tree on [lo, hi]; not necessarily valid.
inline NormingTree tree(Rng& rng, Index lo, Index hi, int depth) {
  if (depth == 0 || lo == hi || pick(rng, 0, 3) == 0) {
    return NormingTree::Leaf(pick(rng, 0, 1) ? 1 : -1, pick(rng, lo, hi));
  }
  std::vector<NormingTree> children;
  Index at = lo;
  while (at <= hi && children.size() < 4) {
    Index end = pick(rng, at, std::min(hi, at + 4));
    children.push_back(tree(rng, at, end, depth - 1));
    at = end + 1 + pick(rng, 0, 1);
  }
  return NormingTree::Internal(pick(rng, 1, 3), std::move(children));
}

}  // namespace gen
