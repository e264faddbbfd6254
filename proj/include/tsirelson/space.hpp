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

#include "tsirelson/families.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson {

/// The space T[(F_n, theta_n)] with F_n = A_n or S_n.
struct SpaceSpec {
  Ladder ladder = Ladder::S;
  ThetaSequence theta = ThetaSequence::reciprocal_shift();
  /// Initial weight cutoff J. Searches raise it on their own whenever
  /// theta_{J+1} * l1(x) could still beat the best value found.
  Index weight_cutoff = 8;

  FamilyKind family(Index n) const { return {ladder, static_cast<int>(n)}; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

}  // namespace tsirelson
