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
#include <functional>
#include <optional>
#include <vector>

#include "tsirelson/core_tree.hpp"
#include "tsirelson/norming_tree.hpp"
#include "tsirelson/report.hpp"
#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace tsirelson {

struct RisParams {
  Rational epsilon;
  Rational epsilon_tilde;
  /// Upper bound for the norms of the x_p; taken as given.
  Rational c = 1;
  int M = 1;
  int N = 1;
  /// n_0..n_{M+1} and q_0..q_{M+1}.
  std::vector<Index> n;
  std::vector<Index> q;
  /// w(epsilon, q_0) when known; the check is skipped otherwise.
  std::optional<Index> w_value;

  friend bool operator==(const RisParams&, const RisParams&) = default;
};

/// The ladder conditions on (n_i), (q_i). Reported as premises.
Report check_p1(const RisParams& params, const SpaceSpec& space);

/// Upper estimates of |f(x_p)| in terms of w(f), checked through weighted
/// norms. Throws InputError unless xs is a block sequence of length N*M.
Report check_p_conditions(const std::vector<FiniteVector>& xs, const RisParams& params, const SpaceSpec& space);

struct PeriodicAverage {
  std::vector<FiniteVector> xs;
  std::vector<Rational> a;
  FiniteVector x;

  friend bool operator==(const PeriodicAverage&, const PeriodicAverage&) = default;
};

/// Sum of a_p x_p. Throws InputError unless xs is a block sequence and a has
/// one positive coefficient per term summing to 1.
PeriodicAverage make_periodic_average(std::vector<FiniteVector> xs, std::vector<Rational> a);

/// Coefficients forming an (n_0, epsilon)-basic average at the maxima of the
/// supports of all of xs. Throws VerificationError if no such average uses
/// exactly these points.
std::vector<Rational> periodic_coefficients(const std::vector<FiniteVector>& xs, int n0, const Rational& epsilon,
                                            Ladder ladder);

/// Norm estimates for theta_{n_0}^{-1} x. The hypotheses, including (P1)-(P3)
/// and the coefficient condition, are premises; the general estimate is always
/// checked, the sharper ones only when the coefficient condition holds.
Report check_prop43(const PeriodicAverage& avg, const RisParams& params, const SpaceSpec& space);

struct BundleNode {
  /// Path in the tree T, 1-based child positions.
  CorePath path;
  /// v(alpha); for terminal nodes, the parent's image.
  CorePath core;
  bool terminal = false;
  /// Weight index of f_alpha (0 on terminal nodes).
  Index m = 0;
  /// a_alpha in the parent's combination, 1 at the root.
  Rational coefficient = 1;
  Rational epsilon;
  Rational epsilon_tilde;
  FiniteVector x;
  NormingTree f;
  std::vector<std::size_t> children;

  friend bool operator==(const BundleNode&, const BundleNode&) = default;
};

struct RisBundle {
  std::size_t height = 0;
  Ladder ladder = Ladder::S;
  bool relaxed = false;
  /// Least p with supp x in F_p, and the bound read off the core.
  Index p_n = 0;
  Index p_bound = 0;
  /// Preorder, root first.
  std::vector<BundleNode> nodes;

  const FiniteVector& vector() const { return nodes.at(0).x; }
  const NormingTree& functional() const { return nodes.at(0).f; }

  friend bool operator==(const RisBundle&, const RisBundle&) = default;
};

struct BundleOptions {
  bool relaxed = false;
  /// Overrides for the averages one level above the leaves and for the
  /// periodic averages; only accepted in relaxed mode.
  std::optional<Rational> leaf_epsilon;
  std::optional<Rational> periodic_epsilon;
  int retry_budget = 64;
  std::size_t max_points = 1u << 14;
};

/// Throws InputError for a core that is too shallow, VerificationError (with
/// the node path) when a structural check fails.
RisBundle build_ris_bundle(const CoreTree& core, std::size_t height, Index min_start, const SpaceSpec& space,
                           const BundleOptions& options = {});

/// Structural checks on a bundle: leaves, averages, v, weights per level,
/// admissibility per core node, f(x) = 1, validity of f, support rank.
Report verify_bundle(const RisBundle& bundle, const CoreTree& core, const SpaceSpec& space);

/// Supplies w(eps, k) or nothing.
using WOracle = std::function<std::optional<Index>(const Rational& eps, Index k)>;

/// Conditions on the core: for each enumerated node j, (R0) against q[j]
/// (skipped when q or the oracle is missing), (R1), and (R2) on nodes that
/// have successors in the truncation.
Report check_r_conditions(const CoreTree& core, const std::vector<Index>& q, const SpaceSpec& space,
                          const WOracle& w = {});

/// Exact node norms against the product bound, f(x) = 1, validity of f and
/// the resulting lower bound for the norm of f.
Report check_lemma410(const RisBundle& bundle, const CoreTree& core, const SpaceSpec& space,
                      const Report& r_conditions);

/// sum_{j in L} a_j <= 1/M + max_{j in L} a_j for a non-increasing
/// probability vector a (1-based positions) and an M-skipped set L.
Report check_lemma34(const std::vector<Rational>& a, const std::vector<Index>& L, Index M);

}  // namespace tsirelson
