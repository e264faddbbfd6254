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
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tsirelson/report.hpp"
#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace tsirelson {

/// An (n, epsilon)-basic special convex combination.
struct SpecialAverage {
  FiniteVector vector;
  int rank = 0;
  Rational epsilon;
  Ladder ladder = Ladder::S;

  friend bool operator==(const SpecialAverage&, const SpecialAverage&) = default;
};

/// Candidate support points by position; nullopt past the end of a finite list.
using PointSource = std::function<std::optional<Index>(std::size_t)>;

/// Coefficients placed on positions of a PointSource.
struct PlacedAverage {
  std::vector<std::size_t> positions;
  std::vector<Rational> coefficients;
};

/// Builds an (n, epsilon)-basic average on points taken from `points`, first
/// point at position `from` or later.
///
/// S ladder: k successive blocks of mass 1/k each. The first k - 1 are full
/// rank-(n-1) blocks and the last is a full rank-j block for some j < n, where
/// a full rank-j block opened at point b is the uniform average of b successive
/// full rank-(j-1) blocks and a rank-0 block is one point. The least (k, j)
/// with k <= b that passes check_scc is used; if none does, the construction
/// restarts one position later. A ladder: n successive points with weight 1/n.
/// Candidates whose point count is not a multiple of `multiple_of` are skipped.
///
/// Throws VerificationError when the retry budget runs out or the points are
/// exhausted, BudgetExhausted when a block would exceed `max_points`.
PlacedAverage average_on_points(int n, const Rational& epsilon, Ladder ladder, const PointSource& points,
                                std::size_t from, int retry_budget = 64, std::size_t max_points = 1u << 16,
                                std::size_t multiple_of = 1);

/// Average on the consecutive integers from `min_start` on (A ladder: from
/// max(min_start, floor(1/epsilon) + 1)).
SpecialAverage make_basic_average(int n, const Rational& epsilon, Index min_start, Ladder ladder,
                                  int retry_budget = 64, std::size_t max_points = 1u << 16);

bool check_scc(const SpecialAverage& x);
bool check_scc(const std::map<Index, Rational>& coefficients, int n, const Rational& epsilon, Ladder ladder);

/// theta_n <= ||x|| <= theta_n + epsilon, with the exact norm.
Report check_lemma36(const SpecialAverage& x, const SpaceSpec& space);

/// weighted_norm(theta_n^{-1} x, j) <= (1 + eps) theta_j for j = 1..k.
Report check_lemma37(const SpecialAverage& x, int k, const Rational& eps, const SpaceSpec& space);

struct WSearch {
  int max_rank = 2;
  std::size_t max_points = 4096;
  std::vector<Index> starts = {3, 5};
  std::chrono::milliseconds budget{60000};
};

/// Least rank n such that check_lemma37(., k, eps) passes on freshly built
/// (n', eps)-averages at every start in search.starts for every sampled rank
/// n' in [n, search.max_rank]. Ranks whose averages exceed the point budget are
/// not sampled. Throws BudgetExhausted when even the largest sampled rank
/// fails, when no rank can be sampled, or on timeout.
int estimate_w(const Rational& eps, int k, const SpaceSpec& space, const WSearch& search = {});

}  // namespace tsirelson
