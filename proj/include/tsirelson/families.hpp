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

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "tsirelson/rational.hpp"

namespace tsirelson {

using Index = std::int64_t;

/// A finite subset of the positive integers, kept strictly increasing.
class FiniteSet {
 public:
  FiniteSet() = default;
  /// Throws InputError unless `elements` is strictly increasing and >= 1.
  explicit FiniteSet(std::vector<Index> elements);
  FiniteSet(std::initializer_list<Index> elements);

  /// Sorts and deduplicates before validating.
  static FiniteSet from_unsorted(std::vector<Index> elements);

  const std::vector<Index>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Index min() const;
  Index max() const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<Index> elements_;
};

enum class Ladder { A, S };

/// One rung of a family ladder: A(k) = {F : #F <= k}; S(0) = singletons and
/// the empty set, S(k+1) = S(1)[S(k)].
struct FamilyKind {
  Ladder ladder = Ladder::S;
  int rank = 0;

  friend bool operator==(const FamilyKind&, const FamilyKind&) = default;
};

std::string to_string(Ladder ladder);
Ladder parse_ladder(const std::string& text);
std::string to_string(const FamilyKind& fam);

/// Online membership test: elements are pushed in increasing order and the
/// tracker answers whether the set built so far is still in the family.
///
/// For Schreier families the state is one open piece per rank. A new element
/// joins the open piece one rank down whenever that piece still accepts it;
/// only otherwise is a new piece opened. This is the greedy maximal initial
/// segment decomposition, which uses the fewest pieces.
class AdmissibilityTracker {
 public:
  explicit AdmissibilityTracker(FamilyKind fam);

  /// Appends `x` (which must exceed every earlier element). Returns false and
  /// leaves the state untouched if the enlarged set leaves the family.
  bool push(Index x);
  bool can_push(Index x) const;

  std::size_t count() const { return count_; }
  const FamilyKind& family() const { return fam_; }

  /// Canonical state for memoization. Capacities are clamped to `cap`, so two
  /// states with equal keys accept exactly the same continuations of at most
  /// `cap` further elements.
  std::vector<std::int64_t> key(std::int64_t cap) const;

  /// The same key packed into `bits`-bit fields; false when it does not fit.
  bool packed_key(std::int64_t cap, unsigned bits, std::uint64_t& out) const;

 private:
  bool push_level(int level, Index x);
  void open_level(int level, Index x);

  FamilyKind fam_;
  std::size_t count_ = 0;
  // Schreier ladder: per rank L >= 1, the budget (min of the open piece) and
  // the number of sub-pieces used; rank 0 records whether its slot is taken.
  boost::container::small_vector<Index, 6> budget_;
  boost::container::small_vector<Index, 6> pieces_;
  bool slot_used_ = false;
};

bool is_member(const FiniteSet& set, FamilyKind fam);

/// Membership by exhaustive search over all decompositions. Exponential; meant
/// as an independent reference for small sets.
bool is_member_exhaustive(const FiniteSet& set, FamilyKind fam);

/// True iff the sets are successive and their minima form a member of `fam`.
/// Throws EmptySetError if any set is empty.
bool is_admissible(const std::vector<FiniteSet>& sets, FamilyKind fam);

/// Membership in outer[inner]: `set` splits into successive inner-members
/// whose minima form an outer-member.
bool compose(FamilyKind outer, FamilyKind inner, const FiniteSet& set);

/// sup over G in `fam` of the sum of weights[i], i in G. Weights must be
/// non-negative (InputError otherwise).
Rational family_sup(const std::map<Index, Rational>& weights, FamilyKind fam);

}  // namespace tsirelson
