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

#include "tsirelson/norm.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <unordered_map>

#include "small_rational.hpp"
#include "tsirelson/error.hpp"

namespace tsirelson {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

// Interval DP over support positions 0..s-1. N(l, r) is the norm of x
// restricted to positions l..r.
template <class Num>
class NormEngine {
 public:
  NormEngine(const FiniteVector& x, const SpaceSpec& space, bool record)
      : space_(space), record_(record) {
    for (const auto& [i, v] : x.coords()) {
      idx_.push_back(i);
      val_.push_back(convert(abs(v)));
      sign_.push_back(sgn(v) > 0 ? 1 : -1);
    }
    bits_ = static_cast<unsigned>(std::bit_width(idx_.size() + 1));
    prefix_.assign(idx_.size() + 1, Num(0));
    for (std::size_t p = 0; p < idx_.size(); ++p) prefix_[p + 1] = prefix_[p] + val_[p];
    build();
  }

  std::size_t size() const { return idx_.size(); }
  const Num& at(std::size_t l, std::size_t r) const { return table_[r][l]; }
  Index max_weight_searched() const { return max_weight_; }

  static bool exceeds(const Num& a, const Num& b, const Num& c) {
    if constexpr (std::is_same_v<Num, Rational>) {
      return c < a + b;
    } else {
      return sum_exceeds(a, b, c);
    }
  }

  static Num convert(const Rational& q) {
    if constexpr (std::is_same_v<Num, Rational>) {
      return q;
    } else {
      return Num::from(q);
    }
  }

  static Rational exact(const Num& q) {
    if constexpr (std::is_same_v<Num, Rational>) {
      return q;
    } else {
      return q.to_rational();
    }
  }

  Num weighted(Index j) {
    if (idx_.empty()) return 0;
    std::size_t r = idx_.size() - 1;
    Num best = 0;
    if (counted(j)) {
      CountTable ct(r, prefix_);
      for (std::size_t p = 0; p <= r; ++p) best = max(best, count_best(ct, p, budget(j, p) - 1));
      return theta(j) * best;
    }
    Selection sel(j, r);
    for (std::size_t p = 0; p <= r; ++p) {
      AdmissibilityTracker t(space_.family(j));
      t.push(idx_[p]);
      best = max(best, extend(sel, p, t).value);
    }
    return theta(j) * best;
  }

  NormingTree tree(std::size_t l, std::size_t r) const {
    const Choice& c = choices_[r][l];
    if (c.weight == 0) return NormingTree::Leaf(sign_[c.argmax], idx_[c.argmax]);
    std::vector<NormingTree> children;
    for (std::size_t i = 0; i < c.starts.size(); ++i) {
      std::size_t end = i + 1 < c.starts.size() ? c.starts[i + 1] - 1 : r;
      children.push_back(tree(c.starts[i], end));
    }
    return NormingTree::Internal(c.weight, std::move(children));
  }

 private:
  struct Choice {
    Index weight = 0;
    std::size_t argmax = 0;
    std::vector<std::size_t> starts;
  };

  // next: kSingle = one piece to the right end, kAll = every remaining
  // position is a start, otherwise the next start position.
  static constexpr std::int64_t kSingle = -1;
  static constexpr std::int64_t kAll = -2;

  struct Entry {
    Num value;
    std::int64_t next = kSingle;
  };

  // Memo of best start selections for a fixed right end and weight.
  struct Selection {
    Selection(Index weight, std::size_t right) : n(weight), r(right), lowest(right + 1) {}
    Index n;
    std::size_t r;
    std::unordered_map<std::vector<std::int64_t>, Entry, KeyHash> memo;
    std::vector<std::unordered_map<std::uint64_t, Entry>> packed = std::vector<std::unordered_map<std::uint64_t, Entry>>(r + 1);
    std::size_t lowest;  // suffix maximum covers start positions >= lowest
    Num suffix_value = -1;
    std::size_t suffix_arg = 0;
  };

  const Num& theta(Index n) {
    while (static_cast<Index>(theta_.size()) < n) theta_.push_back(convert(space_.theta.value(static_cast<Index>(theta_.size()) + 1)));
    return theta_[static_cast<std::size_t>(n - 1)];
  }

  Num l1(std::size_t l, std::size_t r) const { return prefix_[r + 1] - prefix_[l]; }

  std::vector<std::int64_t> key(std::size_t q, const AdmissibilityTracker& t, std::size_t r) const {
    std::vector<std::int64_t> k = t.key(static_cast<std::int64_t>(r - q));
    k.push_back(static_cast<std::int64_t>(q));
    return k;
  }

  bool absorbs_rest(AdmissibilityTracker t, std::size_t q, std::size_t r) const {
    for (std::size_t p = q + 1; p <= r; ++p) {
      if (!t.push(idx_[p])) return false;
    }
    return true;
  }

  // Best sum over selections whose first start is q (already pushed into t).
  const Entry& extend(Selection& sel, std::size_t q, const AdmissibilityTracker& t) {
    std::uint64_t pk = 0;
    const bool small = t.packed_key(static_cast<std::int64_t>(sel.r - q), bits_, pk);
    std::vector<std::int64_t> k;
    if (small) {
      if (auto it = sel.packed[q].find(pk); it != sel.packed[q].end()) return it->second;
    } else {
      k = key(q, t, sel.r);
      if (auto it = sel.memo.find(k); it != sel.memo.end()) return it->second;
    }
    Entry e;
    Num cap = l1(q, sel.r);
    if (absorbs_rest(t, q, sel.r)) {
      e.value = cap;
      e.next = kAll;
    } else {
      e.value = at(q, sel.r);
      e.next = kSingle;
      for (std::size_t q2 = q + 1; q2 <= sel.r && e.value < cap; ++q2) {
        AdmissibilityTracker t2 = t;
        // pushability does not depend on the pushed index: stop at the first refusal
        if (!t2.push(idx_[q2])) break;
        Num v = at(q, q2 - 1) + extend(sel, q2, t2).value;
        if (v > e.value) {
          e.value = std::move(v);
          e.next = static_cast<std::int64_t>(q2);
        }
      }
    }
    if (small) return sel.packed[q].emplace(pk, std::move(e)).first->second;
    return sel.memo.emplace(std::move(k), std::move(e)).first->second;
  }

  void trace(Selection& sel, std::size_t q, AdmissibilityTracker t, std::vector<std::size_t>& starts) {
    while (true) {
      starts.push_back(q);
      const Entry& e = extend(sel, q, t);
      if (e.next == kSingle) return;
      if (e.next == kAll) {
        for (std::size_t p = q + 1; p <= sel.r; ++p) starts.push_back(p);
        return;
      }
      q = static_cast<std::size_t>(e.next);
      t.push(idx_[q]);
    }
  }

  // Families whose state is a piece count: A_n, and S_1 where a selection
  // opened at p may use idx_p starts.
  struct CountTable {
    CountTable(std::size_t right, const std::vector<Num>& prefix)
        : r(right), mass(right + 1), val(right + 1), arg(right + 1) {
      for (std::size_t q = 0; q <= right; ++q) mass[q] = prefix[right + 1] - prefix[q];
    }
    std::size_t r;
    std::vector<Num> mass;  // l1 of positions q..r
    std::vector<std::vector<Num>> val;
    std::vector<std::vector<std::int64_t>> arg;
  };

  bool counted(Index n) const { return space_.ladder == Ladder::A || n == 1; }

  std::int64_t budget(Index n, std::size_t p) const { return space_.ladder == Ladder::A ? n : idx_[p]; }

  // Best sum over selections starting at q with at most c further starts.
  Num count_best(CountTable& ct, std::size_t q, std::int64_t c) {
    std::size_t r = ct.r;
    if (c >= static_cast<std::int64_t>(r - q)) return ct.mass[q];
    if (c == 0) return at(q, r);
    auto& row = ct.val[q];
    auto& arg = ct.arg[q];
    if (row.empty()) {
      row.push_back(at(q, r));
      arg.push_back(kSingle);
    }
    const Num& cap = ct.mass[q];
    while (static_cast<std::int64_t>(row.size()) <= c) {
      std::int64_t level = static_cast<std::int64_t>(row.size());
      Num best = at(q, r);
      std::int64_t next = kSingle;
      for (std::size_t q2 = q + 1; q2 <= r && best < cap; ++q2) {
        Num tail = count_best(ct, q2, level - 1);
        if (exceeds(at(q, q2 - 1), tail, best)) {
          best = at(q, q2 - 1) + tail;
          next = static_cast<std::int64_t>(q2);
        }
      }
      row.push_back(std::move(best));
      arg.push_back(next);
    }
    return row[static_cast<std::size_t>(c)];
  }

  void count_trace(CountTable& ct, std::size_t q, std::int64_t c, std::vector<std::size_t>& starts) {
    while (true) {
      starts.push_back(q);
      if (c >= static_cast<std::int64_t>(ct.r - q)) {
        for (std::size_t p = q + 1; p <= ct.r; ++p) starts.push_back(p);
        return;
      }
      if (c == 0) return;
      count_best(ct, q, c);
      std::int64_t next = ct.arg[q][static_cast<std::size_t>(c)];
      if (next == kSingle) return;
      q = static_cast<std::size_t>(next);
      --c;
    }
  }

  Num count_selection(CountTable& ct, Index n, std::size_t l, std::vector<std::size_t>* starts) {
    std::size_t r = ct.r;
    std::int64_t c = budget(n, l) - 1;
    Num best = -1;
    std::int64_t best_next = kSingle;
    bool from_l = false;
    if (c >= 1) {
      for (std::size_t q2 = l + 1; q2 <= r; ++q2) {
        Num v = at(l, q2 - 1) + count_best(ct, q2, c - 1);
        if (v > best) {
          best = std::move(v);
          best_next = static_cast<std::int64_t>(q2);
          from_l = true;
        }
      }
    }
    for (std::size_t p = l + 1; p <= r; ++p) {
      Num v = count_best(ct, p, budget(n, p) - 1);
      if (v > best) {
        best = std::move(v);
        best_next = static_cast<std::int64_t>(p);
        from_l = false;
      }
    }
    if (starts != nullptr) {
      starts->clear();
      std::size_t q = static_cast<std::size_t>(best_next);
      if (from_l) {
        starts->push_back(l);
        count_trace(ct, q, c - 1, *starts);
      } else {
        count_trace(ct, q, budget(n, q) - 1, *starts);
      }
    }
    return best;
  }

  // Best start selection for the interval [l, r] other than the single piece
  // [l, r] itself.
  Num best_selection(Selection& sel, std::size_t l, std::vector<std::size_t>* starts) {
    std::size_t r = sel.r;
    AdmissibilityTracker first(space_.family(sel.n));
    first.push(idx_[l]);
    Num best = -1;
    std::int64_t best_next = kSingle;
    for (std::size_t q2 = l + 1; q2 <= r; ++q2) {
      AdmissibilityTracker t2 = first;
      if (!t2.push(idx_[q2])) break;
      Num v = at(l, q2 - 1) + extend(sel, q2, t2).value;
      if (v > best) {
        best = std::move(v);
        best_next = static_cast<std::int64_t>(q2);
      }
    }
    while (sel.lowest > l + 1) {
      --sel.lowest;
      AdmissibilityTracker t(space_.family(sel.n));
      t.push(idx_[sel.lowest]);
      const Num& v = extend(sel, sel.lowest, t).value;
      if (v > sel.suffix_value) {
        sel.suffix_value = v;
        sel.suffix_arg = sel.lowest;
      }
    }
    bool use_suffix = sel.lowest <= r && sel.suffix_value > best;
    if (use_suffix) best = sel.suffix_value;
    if (starts != nullptr) {
      starts->clear();
      if (use_suffix) {
        AdmissibilityTracker t(space_.family(sel.n));
        t.push(idx_[sel.suffix_arg]);
        trace(sel, sel.suffix_arg, t, *starts);
      } else if (best_next != kSingle) {
        starts->push_back(l);
        std::size_t q2 = static_cast<std::size_t>(best_next);
        AdmissibilityTracker t2 = first;
        t2.push(idx_[q2]);
        trace(sel, q2, t2, *starts);
      }
    }
    return best;
  }

  void build() {
    std::size_t s = idx_.size();
    table_.resize(s);
    if (record_) choices_.resize(s);
    for (std::size_t r = 0; r < s; ++r) {
      table_[r].assign(r + 1, Num(0));
      if (record_) choices_[r].resize(r + 1);
      std::unordered_map<Index, Selection> selections;
      std::optional<CountTable> counts;
      Num sup = 0;
      std::size_t argmax = r;
      for (std::size_t l = r + 1; l-- > 0;) {
        if (val_[l] >= sup) {
          sup = val_[l];
          argmax = l;
        }
        Num best = sup;
        Choice choice;
        choice.argmax = argmax;
        if (l < r) {
          Num mass = l1(l, r);
          bool whole = false;
          {
            // smallest n for which every position may be a start
            AdmissibilityTracker probe(space_.family(1));
            probe.push(idx_[l]);
            whole = absorbs_rest(probe, l, r);
          }
          for (Index n = 1;; ++n) {
            const Num& th = theta(n);
            if (th * mass <= best) break;
            AdmissibilityTracker probe(space_.family(n));
            probe.push(idx_[l]);
            if (n > 1) whole = absorbs_rest(probe, l, r);
            Num value;
            std::vector<std::size_t> starts;
            if (whole) {
              value = mass;
              if (record_) {
                for (std::size_t p = l; p <= r; ++p) starts.push_back(p);
              }
            } else {
              max_weight_ = std::max(max_weight_, n);
              if (counted(n)) {
                if (!counts) counts.emplace(r, prefix_);
                value = count_selection(*counts, n, l, record_ ? &starts : nullptr);
              } else {
                auto [it, inserted] = selections.try_emplace(n, n, r);
                value = best_selection(it->second, l, record_ ? &starts : nullptr);
              }
            }
            Num candidate = th * value;
            if (candidate > best) {
              best = std::move(candidate);
              choice.weight = n;
              choice.starts = std::move(starts);
            }
            if (whole) break;
          }
        }
        table_[r][l] = std::move(best);
        if (record_) choices_[r][l] = std::move(choice);
      }
    }
  }

  const SpaceSpec& space_;
  bool record_;
  std::vector<Index> idx_;
  std::vector<Num> val_;
  std::vector<int> sign_;
  std::vector<Num> prefix_;
  std::vector<Num> theta_;
  std::vector<std::vector<Num>> table_;
  std::vector<std::vector<Choice>> choices_;
  Index max_weight_ = 0;
  unsigned bits_ = 1;
};

}  // namespace

// Runs `body` on the int64 engine and redoes it with mpq_class on overflow.
template <class Body>
auto with_engine(const FiniteVector& x, const SpaceSpec& space, bool record, Body body) {
  try {
    NormEngine<detail::SmallRational> engine(x, space, record);
    return body(engine);
  } catch (const detail::SmallOverflow&) {
    NormEngine<Rational> engine(x, space, record);
    return body(engine);
  }
}

Rational norm(const FiniteVector& x, const SpaceSpec& space) {
  if (x.is_zero()) return 0;
  return with_engine(x, space, false, [](auto& e) { return e.exact(e.at(0, e.size() - 1)); });
}

NormResult norm_with_witness(const FiniteVector& x, const SpaceSpec& space) {
  NormResult result;
  if (x.is_zero()) return result;
  return with_engine(x, space, true, [](auto& e) {
    NormResult r;
    r.value = e.exact(e.at(0, e.size() - 1));
    r.witness = e.tree(0, e.size() - 1);
    r.max_weight_searched = e.max_weight_searched();
    return r;
  });
}

Rational weighted_norm(const FiniteVector& x, Index j, const SpaceSpec& space) {
  if (j < 1) throw InputError("weight index must be >= 1");
  if (x.is_zero()) return 0;
  return with_engine(x, space, false, [j](auto& e) { return e.exact(e.weighted(j)); });
}

std::vector<Rational> weighted_norms(const FiniteVector& x, Index max_j, const SpaceSpec& space) {
  if (max_j < 0) throw InputError("weight index must be >= 1");
  if (x.is_zero()) return std::vector<Rational>(static_cast<std::size_t>(max_j), Rational(0));
  return with_engine(x, space, false, [max_j](auto& e) {
    std::vector<Rational> out;
    for (Index j = 1; j <= max_j; ++j) out.push_back(e.exact(e.weighted(j)));
    return out;
  });
}

namespace {

// True definition over arbitrary successive subsets, bitmask indexed.
class BruteForce {
 public:
  BruteForce(const FiniteVector& x, const SpaceSpec& space) : space_(space) {
    for (const auto& [i, v] : x.coords()) {
      idx_.push_back(i);
      val_.push_back(abs(v));
    }
    memo_.resize(std::size_t{1} << idx_.size());
  }

  Rational run() { return solve((std::uint32_t{1} << idx_.size()) - 1); }

 private:
  bool member(std::uint32_t minima, Index n) {
    auto key = std::make_pair(minima, n);
    if (auto it = membership_.find(key); it != membership_.end()) return it->second;
    std::vector<Index> elems;
    for (std::size_t p = 0; p < idx_.size(); ++p) {
      if (minima & (std::uint32_t{1} << p)) elems.push_back(idx_[p]);
    }
    bool ok = is_member_exhaustive(FiniteSet(elems), space_.family(n));
    membership_.emplace(key, ok);
    return ok;
  }

  const Rational& solve(std::uint32_t mask) {
    if (memo_[mask]) return *memo_[mask];
    Rational sup = 0;
    Rational mass = 0;
    std::vector<std::size_t> positions;
    for (std::size_t p = 0; p < idx_.size(); ++p) {
      if (mask & (std::uint32_t{1} << p)) {
        positions.push_back(p);
        sup = max(sup, val_[p]);
        mass += val_[p];
      }
    }
    Rational best = sup;
    if (positions.size() >= 2) {
      std::uint32_t full_minima = mask;
      for (Index n = 1;; ++n) {
        Rational th = space_.theta.value(n);
        if (th * mass <= best) break;
        Rational found = 0;
        search(mask, positions, 0, 0, 0, 0, Rational(0), n, found);
        best = max(best, th * found);
        if (member(full_minima, n)) break;
      }
    }
    memo_[mask] = best;
    return *memo_[mask];
  }

  // Assigns positions in order to: skipped, the current block, or a new block.
  void search(std::uint32_t mask, const std::vector<std::size_t>& positions, std::size_t at,
              std::uint32_t minima, std::uint32_t done_blocks, std::uint32_t current, Rational acc, Index n,
              Rational& found) {
    if (at == positions.size()) {
      std::uint32_t all = done_blocks | current;
      if (current == 0 || (minima == (minima & -minima) && all == mask)) return;
      if (!member(minima, n)) return;
      found = max(found, acc + solve(current));
      return;
    }
    std::uint32_t bit = std::uint32_t{1} << positions[at];
    search(mask, positions, at + 1, minima, done_blocks, current, acc, n, found);
    if (current != 0) search(mask, positions, at + 1, minima, done_blocks, current | bit, acc, n, found);
    Rational closed = current != 0 ? acc + solve(current) : acc;
    search(mask, positions, at + 1, minima | bit, done_blocks | current, bit, closed, n, found);
  }

  const SpaceSpec& space_;
  std::vector<Index> idx_;
  std::vector<Rational> val_;
  std::vector<std::optional<Rational>> memo_;
  std::map<std::pair<std::uint32_t, Index>, bool> membership_;
};

}  // namespace

Rational brute_force_norm(const FiniteVector& x, const SpaceSpec& space) {
  if (x.size() > 10) throw InputError("brute_force_norm: support larger than 10");
  if (x.is_zero()) return 0;
  return BruteForce(x, space).run();
}

CoordinateBound coordinate_functional_bound(const std::vector<NormingTree>& fs, const FiniteVector& x,
                                            const SpaceSpec& space) {
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    if (!(fs[i].max_support() < fs[i + 1].min_support())) {
      throw InputError("coordinate_functional_bound: functionals are not successive");
    }
  }
  std::map<Index, Rational> pushed;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    pushed[static_cast<Index>(i + 1)] = eval(fs[i], x, space.theta);
  }
  CoordinateBound out;
  out.value = norm(FiniteVector::from_map(pushed), space);
  out.norm_of_x = norm(x, space);
  out.holds = out.value <= out.norm_of_x;
  return out;
}

Rational g_norm(const FiniteVector& x, const std::vector<NormingTree>& functionals, FamilyKind fam,
                const ThetaSequence& theta) {
  std::map<Index, Rational> weights;
  for (const auto& g : functionals) {
    Rational v = abs(eval(g, x, theta));
    auto [it, inserted] = weights.try_emplace(g.min_support(), v);
    if (!inserted) it->second = max(it->second, v);
  }
  return family_sup(weights, fam);
}

}  // namespace tsirelson
