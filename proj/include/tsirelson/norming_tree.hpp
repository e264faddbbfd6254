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
#include <string>
#include <vector>

#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace tsirelson {

/// A tree-analysis of a norming functional. Leaves are +-e_n^*; an internal
/// node with weight index n denotes theta_n times the sum of its children.
struct NormingTree {
  bool leaf = true;
  int sign = 1;
  Index index = 1;
  Index weight = 0;
  std::vector<NormingTree> children;

  static NormingTree Leaf(int sign, Index index);
  static NormingTree Internal(Index weight, std::vector<NormingTree> children);

  Index min_support() const;
  Index max_support() const;
  FiniteSet support() const;
  std::size_t leaf_count() const;
  std::size_t depth() const;

  friend bool operator==(const NormingTree&, const NormingTree&) = default;
};

/// f(x), exact.
Rational eval(const NormingTree& f, const FiniteVector& x, const ThetaSequence& theta);

/// The functional as a coordinate map n -> f(e_n).
std::map<Index, Rational> coefficients(const NormingTree& f, const ThetaSequence& theta);

/// Evaluates a coordinate map at x.
Rational apply_coefficients(const std::map<Index, Rational>& f, const FiniteVector& x);

struct ValidationReport {
  bool ok = true;
  /// Child positions from the root down to the first violating node.
  std::vector<std::size_t> path;
  std::string message;
};

/// Structural check that `f` is a tree-analysis in the norming set K of
/// `space`: at every internal node the children are successive and their
/// minima lie in F_weight.
ValidationReport validate(const NormingTree& f, const SpaceSpec& space);

}  // namespace tsirelson
