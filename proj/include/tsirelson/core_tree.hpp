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

#include <cstddef>
#include <optional>
#include <vector>

#include "tsirelson/families.hpp"
#include "tsirelson/rational.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson {

/// Finite truncation of a parameter tree. Every node carries its weight index m
/// and its successors; M of a node is the number of successors kept.
struct CoreTree {
  Index m = 1;
  std::vector<CoreTree> children;

  std::size_t M() const { return children.size(); }
  std::size_t depth() const;
  std::size_t node_count() const;

  /// One node per level with the given weight indices (M = 1 everywhere but
  /// the last level).
  static CoreTree chain(const std::vector<Index>& ms);
  /// Complete tree: every node at level l has weight ms[l] and branching[l]
  /// children (branching.size() == ms.size() - 1).
  static CoreTree uniform(const std::vector<Index>& ms, const std::vector<std::size_t>& branching);

  friend bool operator==(const CoreTree&, const CoreTree&) = default;
};

/// Child positions from the root, 1-based.
using CorePath = std::vector<int>;

const CoreTree* descend(const CoreTree& root, const CorePath& path);

/// Strict lexicographic order on equal-length paths, prefix-first otherwise.
bool lex_less(const CorePath& a, const CorePath& b);

/// Enumeration mu_0 = root, mu_1, ... level by level, lexicographic within a
/// level, together with the quantities attached to each node.
class CoreIndex {
 public:
  /// Throws InputError when some m is below 1.
  explicit CoreIndex(const CoreTree& root);

  std::size_t size() const { return paths_.size(); }
  const CorePath& path(std::size_t j) const { return paths_.at(j); }
  std::size_t level(std::size_t j) const { return paths_.at(j).size(); }
  Index m(std::size_t j) const { return ms_.at(j); }
  std::size_t M(std::size_t j) const { return Ms_.at(j); }

  std::optional<std::size_t> find(const CorePath& path) const;
  std::optional<std::size_t> parent(std::size_t j) const;

  /// Sum of m over strict ancestors.
  Index ord(std::size_t j) const;
  /// Product of theta_m over strict ancestors.
  Rational c(std::size_t j, const ThetaSequence& theta) const;

  /// Nodes on the level of mu_j that come after it, together with the
  /// successors of the nodes on that level that come before it.
  std::vector<std::size_t> I(std::size_t j) const;
  std::size_t n(std::size_t j) const { return I(j).size(); }

  std::vector<std::size_t> level_nodes(std::size_t level) const;

 private:
  std::vector<CorePath> paths_;
  std::vector<Index> ms_;
  std::vector<std::size_t> Ms_;
};

}  // namespace tsirelson
