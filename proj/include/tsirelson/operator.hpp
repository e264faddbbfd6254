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

#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tsirelson/core_tree.hpp"
#include "tsirelson/norming_tree.hpp"
#include "tsirelson/report.hpp"
#include "tsirelson/ris.hpp"
#include "tsirelson/space.hpp"

namespace tsirelson {

/// Least k >= 1 with theta_{r+k'} / theta_{k'} > c for every k' >= k. Throws
/// InputError when no such k exists (constant ratio at most c, or c >= 1) or
/// the kind has no monotone tail to scan against.
Index compute_k_r(const ThetaSequence& theta, const Rational& c, Index r);

/// Sampled theta_{nk} / theta_n for n up to `window`: minimum, last value and
/// whether the ratio is non-decreasing along powers of two.
Report check_fact510(const ThetaSequence& theta, Index k, Index window);

struct OperatorSpec {
  /// g_n, n = 1..K.
  std::vector<NormingTree> functionals;
  /// t_n = r_{n+1}.
  std::vector<Index> targets;
  SpaceSpec space;
  CoreTree core;
  /// r_1, ..., r_{K+1}.
  std::vector<Index> r;
  std::vector<std::size_t> heights;
  Rational c;
  bool relaxed = false;
  /// x_{r_{n+1}}, n = 1..K.
  std::vector<RisBundle> bundles;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

struct OperatorOptions {
  Rational c{1, 2};
  Index min_start = 1;
  BundleOptions bundle;
};

/// Builds one bundle per height (bundle n uses heights[n-1]), on successive
/// supports. Throws VerificationError when a structural invariant fails, or
/// when (R0)-(R4) fail outside relaxed mode. Needs r.size() == heights.size()
/// + 1, or both empty.
OperatorSpec build_operator(const CoreTree& core, const std::vector<Index>& r, const std::vector<std::size_t>& heights,
                            const SpaceSpec& space, const OperatorOptions& options = {});

/// Block structure, validity, increasing targets, and (R3)/(R4) for each j.
Report verify_operator(const OperatorSpec& T);

FiniteVector apply(const OperatorSpec& T, const FiniteVector& x);

struct TailMajorant {
  /// eps_{j+1} <= eps_ratio * eps_j and N_{j+1} <= n_ratio * N_j beyond J.
  Rational eps_ratio;
  Rational n_ratio;
};

struct Prop21Bound {
  Rational partial;
  std::optional<Rational> tail;
  bool certified = false;
  Rational total;
};

/// sum_{j <= J} (eps_j j + 4 eps_j N_j) plus a tail bound derived from the
/// majorant. Without a usable majorant the partial sum comes back uncertified.
Prop21Bound prop21_bound(const std::vector<Rational>& eps, const std::vector<Index>& N, std::size_t J,
                         const std::optional<TailMajorant>& tail);

/// Bundles labelled by their position n in the sequence (x_n).
using LabelledBundles = std::vector<std::pair<Index, const RisBundle*>>;

struct Lemma53Result {
  Report report;
  std::optional<NormingTree> certificate;
  Rational ratio;
};

Lemma53Result check_lemma53(const LabelledBundles& bundles, const CoreTree& core, const CorePath& beta, Index r,
                            const Rational& c, const SpaceSpec& space);

/// j indexes the enumeration of the core, j >= 1.
Report check_lemma54(const LabelledBundles& bundles, const CoreTree& core, std::size_t j, Index r, const Rational& c,
                     const SpaceSpec& space);

struct NoncompactnessWitness {
  Rational delta;
  Report report;
};

/// Throws InputError with fewer than two bundles.
NoncompactnessWitness noncompactness_witness(const OperatorSpec& T);

/// 1/j0 + 8/(c 2^{j0-1}) + 1/(c 2^{k0-1}), mu_{j0} a successor of mu_{k0}.
Rational estimate_rhs(const OperatorSpec& T, std::size_t j0);

struct ProbeResult {
  Report report;
  FiniteVector x;
  Rational g_norm;
  Rational t_norm;
  Rational rhs;
};

/// Searches integer combinations of the probes for a unit vector with small
/// ||x||_G relative to ||x||, then reports (||x||_G, ||Tx||) against the
/// estimate. Throws InputError unless the probes are successive and non-zero.
ProbeResult singularity_probe(const OperatorSpec& T, const std::vector<FiniteVector>& probes, std::size_t j0,
                              std::size_t max_evaluations = 200);

}  // namespace tsirelson
