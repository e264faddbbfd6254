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

#include <optional>
#include <vector>

#include "tsirelson/norming_tree.hpp"
#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace tsirelson {

/// ||x|| in T[(F_n, theta_n)], exact.
///
/// By 1-unconditionality an optimal admissible family may be taken to consist
/// of consecutive intervals of the support that begin at chosen start points
/// s_1 < ... < s_d (with (s_i) in F_n) and run up to the next start; support
/// points before s_1 are dropped. The norm of every support interval is
/// memoized and the start selections are searched with an online membership
/// automaton. Weights are scanned until theta_n * l1(interval) can no longer
/// beat the best value found.
Rational norm(const FiniteVector& x, const SpaceSpec& space);

/// sup{ f(x) : f in K, w(f) = theta_j }: theta_j times the best
/// F_j-admissible start selection over the whole support.
Rational weighted_norm(const FiniteVector& x, Index j, const SpaceSpec& space);

/// weighted_norm(x, j) for j = 1..max_j, sharing one interval table.
std::vector<Rational> weighted_norms(const FiniteVector& x, Index max_j, const SpaceSpec& space);

struct NormResult {
  Rational value;
  /// An f in K with f(x) = value; a single +-e_k^* when the sup norm wins.
  /// Absent for the zero vector.
  std::optional<NormingTree> witness;
  /// Largest weight index whose start-selection search had to be run.
  Index max_weight_searched = 0;
};

NormResult norm_with_witness(const FiniteVector& x, const SpaceSpec& space);

/// Exhaustive reference norm: recursion over every sequence of successive
/// subsets of the support, membership decided by exhaustive decomposition.
/// Throws InputError for supports larger than 10.
Rational brute_force_norm(const FiniteVector& x, const SpaceSpec& space);

struct CoordinateBound {
  Rational value;      ///< ||sum_i f_i(x) e_i||
  Rational norm_of_x;  ///< ||x||
  bool holds = false;  ///< value <= norm_of_x
};

/// Pushes (f_i(x))_i onto the unit vector basis e_1, e_2, ... and compares the
/// norm with ||x||. Throws InputError unless the functionals are successive.
CoordinateBound coordinate_functional_bound(const std::vector<NormingTree>& fs, const FiniteVector& x,
                                            const SpaceSpec& space);

/// ||x||_G = sup over F in `fam` of sum_{n in F} |G_n(x)|, where position n is
/// identified with minsupp(G_n).
Rational g_norm(const FiniteVector& x, const std::vector<NormingTree>& functionals, FamilyKind fam,
                const ThetaSequence& theta);

}  // namespace tsirelson
