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

#include "tsirelson/families.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "tsirelson/error.hpp"

namespace tsirelson {

FiniteSet::FiniteSet(std::vector<Index> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 1) throw InputError("set elements must be positive integers");
    if (i > 0 && elements_[i - 1] >= elements_[i]) throw InputError("set elements must be strictly increasing");
  }
}

FiniteSet::FiniteSet(std::initializer_list<Index> elements) : FiniteSet(std::vector<Index>(elements)) {}

FiniteSet FiniteSet::from_unsorted(std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return FiniteSet(std::move(elements));
}

Index FiniteSet::min() const {
  if (elements_.empty()) throw EmptySetError("min of the empty set");
  return elements_.front();
}

Index FiniteSet::max() const {
  if (elements_.empty()) throw EmptySetError("max of the empty set");
  return elements_.back();
}

std::string to_string(Ladder ladder) { return ladder == Ladder::A ? "A" : "S"; }

Ladder parse_ladder(const std::string& text) {
  if (text == "A") return Ladder::A;
  if (text == "S") return Ladder::S;
  throw InputError("unknown ladder '" + text + "' (expected A or S)");
}

std::string to_string(const FamilyKind& fam) {
  return to_string(fam.ladder) + "(" + std::to_string(fam.rank) + ")";
}

// ---------------------------------------------------------------------------
// AdmissibilityTracker

AdmissibilityTracker::AdmissibilityTracker(FamilyKind fam) : fam_(fam) {
  if (fam_.rank < 0) throw InputError("family rank must be non-negative");
  if (fam_.ladder == Ladder::S) {
    budget_.assign(static_cast<std::size_t>(fam_.rank) + 1, 0);
    pieces_.assign(static_cast<std::size_t>(fam_.rank) + 1, 0);
  }
}

void AdmissibilityTracker::open_level(int level, Index x) {
  for (int l = level; l >= 1; --l) {
    budget_[l] = x;
    pieces_[l] = 1;
  }
  slot_used_ = true;
}

bool AdmissibilityTracker::push_level(int level, Index x) {
  if (level == 0) return false;
  if (push_level(level - 1, x)) return true;
  if (pieces_[level] < budget_[level]) {
    ++pieces_[level];
    open_level(level - 1, x);
    return true;
  }
  return false;
}

bool AdmissibilityTracker::push(Index x) {
  if (fam_.ladder == Ladder::A) {
    if (count_ >= static_cast<std::size_t>(fam_.rank)) return false;
    ++count_;
    return true;
  }
  if (count_ == 0) {
    open_level(fam_.rank, x);
    ++count_;
    return true;
  }
  // push_level only mutates on success
  if (!push_level(fam_.rank, x)) return false;
  ++count_;
  return true;
}

bool AdmissibilityTracker::can_push(Index x) const {
  AdmissibilityTracker copy = *this;
  return copy.push(x);
}

std::vector<std::int64_t> AdmissibilityTracker::key(std::int64_t cap) const {
  if (fam_.ladder == Ladder::A) {
    return {std::min<std::int64_t>(fam_.rank - static_cast<std::int64_t>(count_), cap)};
  }
  std::vector<std::int64_t> k;
  k.reserve(budget_.size() + 2);
  k.push_back(count_ == 0 ? 0 : 1);
  if (count_ > 0) {
    for (int l = 1; l <= fam_.rank; ++l) k.push_back(std::min<std::int64_t>(budget_[l] - pieces_[l], cap));
    k.push_back(slot_used_ ? 1 : 0);
  }
  return k;
}

bool AdmissibilityTracker::packed_key(std::int64_t cap, unsigned bits, std::uint64_t& out) const {
  const std::int64_t limit = std::int64_t{1} << bits;
  std::uint64_t acc = 0;
  unsigned used = 0;
  auto put = [&](std::int64_t v) {
    if (v >= limit || used + bits > 64) return false;
    acc |= static_cast<std::uint64_t>(v) << used;
    used += bits;
    return true;
  };
  if (fam_.ladder == Ladder::A) {
    if (!put(std::min<std::int64_t>(fam_.rank - static_cast<std::int64_t>(count_), cap))) return false;
  } else {
    if (!put(count_ == 0 ? 0 : 1)) return false;
    if (count_ > 0) {
      for (int l = 1; l <= fam_.rank; ++l) {
        if (!put(std::min<std::int64_t>(budget_[l] - pieces_[l], cap))) return false;
      }
      if (!put(slot_used_ ? 1 : 0)) return false;
    }
  }
  out = acc;
  return true;
}

// ---------------------------------------------------------------------------
// Membership

bool is_member(const FiniteSet& set, FamilyKind fam) {
  AdmissibilityTracker tracker(fam);
  for (Index x : set) {
    if (!tracker.push(x)) return false;
  }
  return true;
}

namespace {

bool exhaustive(const std::vector<Index>& v, std::size_t lo, std::size_t hi, FamilyKind fam) {
  std::size_t n = hi - lo;
  if (fam.ladder == Ladder::A) return n <= static_cast<std::size_t>(fam.rank);
  if (n == 0) return true;
  if (fam.rank == 0) return n <= 1;
  FamilyKind inner{Ladder::S, fam.rank - 1};
  Index budget = v[lo];
  // Try every split of v[lo, hi) into consecutive runs.
  std::function<bool(std::size_t, Index)> split = [&](std::size_t pos, Index used) -> bool {
    if (pos == hi) return true;
    if (used == budget) return false;
    for (std::size_t end = pos + 1; end <= hi; ++end) {
      if (exhaustive(v, pos, end, inner) && split(end, used + 1)) return true;
    }
    return false;
  };
  return split(lo, 0);
}

}  // namespace

bool is_member_exhaustive(const FiniteSet& set, FamilyKind fam) {
  if (fam.rank < 0) throw InputError("family rank must be non-negative");
  return exhaustive(set.elements(), 0, set.size(), fam);
}

bool is_admissible(const std::vector<FiniteSet>& sets, FamilyKind fam) {
  for (const auto& s : sets) {
    if (s.empty()) throw EmptySetError("admissibility is undefined for a list containing an empty set");
  }
  std::vector<Index> minima;
  minima.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i > 0 && sets[i - 1].max() >= sets[i].min()) return false;
    minima.push_back(sets[i].min());
  }
  return is_member(FiniteSet(std::move(minima)), fam);
}

bool compose(FamilyKind outer, FamilyKind inner, const FiniteSet& set) {
  const auto& v = set.elements();
  if (v.empty()) return true;
  std::function<bool(std::size_t, const AdmissibilityTracker&)> go =
      [&](std::size_t pos, const AdmissibilityTracker& minima) -> bool {
    AdmissibilityTracker next = minima;
    if (!next.push(v[pos])) return false;
    for (std::size_t end = v.size(); end > pos; --end) {
      FiniteSet run(std::vector<Index>(v.begin() + static_cast<std::ptrdiff_t>(pos),
                                       v.begin() + static_cast<std::ptrdiff_t>(end)));
      if (!is_member(run, inner)) continue;
      if (end == v.size() || go(end, next)) return true;
    }
    return false;
  };
  return go(0, AdmissibilityTracker(outer));
}

// ---------------------------------------------------------------------------
// family_sup

namespace {

class SupSolver {
 public:
  SupSolver(std::vector<Index> idx, std::vector<Rational> w) : idx_(std::move(idx)), w_(std::move(w)) {}

  // sup over S(rank) sets inside positions [lo, hi).
  Rational schreier(int rank, std::size_t lo, std::size_t hi) {
    if (lo >= hi) return 0;
    if (rank == 0) {
      Rational best = 0;
      for (std::size_t p = lo; p < hi; ++p) best = max(best, w_[p]);
      return best;
    }
    if (rank == 1) return schreier_one(lo, hi);
    auto key = pack(rank, lo, hi, 0);
    if (auto it = window_.find(key); it != window_.end()) return it->second;
    Rational best = 0;
    for (std::size_t p = lo; p < hi; ++p) {
      best = max(best, chain(rank, p, budget_at(p, hi), hi));
    }
    window_.emplace(key, best);
    return best;
  }

  Rational top(std::size_t k) const {
    std::vector<Rational> sorted = w_;
    std::sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return a > b; });
    Rational sum = 0;
    for (std::size_t i = 0; i < std::min(k, sorted.size()); ++i) sum += sorted[i];
    return sum;
  }

  std::size_t size() const { return idx_.size(); }

 private:
  std::size_t budget_at(std::size_t p, std::size_t hi) const {
    auto remaining = static_cast<Index>(hi - p);
    return static_cast<std::size_t>(std::min(idx_[p], remaining));
  }

  // First element at p, then the heaviest idx[p]-1 further elements.
  Rational schreier_one(std::size_t lo, std::size_t hi) {
    Rational best = 0;
    for (std::size_t p = lo; p < hi; ++p) {
      std::vector<Rational> rest(w_.begin() + static_cast<std::ptrdiff_t>(p + 1),
                                 w_.begin() + static_cast<std::ptrdiff_t>(hi));
      std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(idx_[p] - 1), rest.size());
      std::partial_sort(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take), rest.end(),
                        [](const Rational& a, const Rational& b) { return a > b; });
      Rational sum = w_[p];
      for (std::size_t i = 0; i < take; ++i) sum += rest[i];
      best = max(best, sum);
    }
    return best;
  }

  // Best sum of at most `budget` successive windows [p, e1), [e1, e2), ...
  // inside [p, hi), each contributing its best S(rank-1) subset.
  Rational chain(int rank, std::size_t p, std::size_t budget, std::size_t hi) {
    if (p >= hi || budget == 0) return 0;
    auto key = pack(rank, p, hi, budget);
    if (auto it = chain_.find(key); it != chain_.end()) return it->second;
    Rational best = 0;
    for (std::size_t e = p + 1; e <= hi; ++e) {
      Rational v = schreier(rank - 1, p, e);
      if (e < hi && budget > 1) v += chain(rank, e, budget - 1, hi);
      best = max(best, v);
    }
    chain_.emplace(key, best);
    return best;
  }

  static std::uint64_t pack(int rank, std::size_t a, std::size_t b, std::size_t c) {
    return (static_cast<std::uint64_t>(rank) << 56) ^ (static_cast<std::uint64_t>(a) << 38) ^
           (static_cast<std::uint64_t>(b) << 20) ^ static_cast<std::uint64_t>(c);
  }

  std::vector<Index> idx_;
  std::vector<Rational> w_;
  std::unordered_map<std::uint64_t, Rational> window_;
  std::unordered_map<std::uint64_t, Rational> chain_;
};

}  // namespace

Rational family_sup(const std::map<Index, Rational>& weights, FamilyKind fam) {
  if (fam.rank < 0) throw InputError("family rank must be non-negative");
  std::vector<Index> idx;
  std::vector<Rational> w;
  for (const auto& [i, a] : weights) {
    if (sgn(a) < 0) throw InputError("family_sup requires non-negative weights");
    if (i < 1) throw InputError("indices must be positive");
    if (sgn(a) == 0) continue;
    idx.push_back(i);
    w.push_back(a);
  }
  if (idx.size() >= (std::size_t{1} << 18)) throw InputError("support too large for family_sup");
  SupSolver solver(std::move(idx), std::move(w));
  if (fam.ladder == Ladder::A) return solver.top(static_cast<std::size_t>(fam.rank));
  return solver.schreier(fam.rank, 0, solver.size());
}

}  // namespace tsirelson
