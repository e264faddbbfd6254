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


// Reference implementations written straight from the definitions. They share
// no code with the library beyond the value types.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tsirelson/families.hpp"
#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace oracle {

using tsirelson::Index;
using tsirelson::Ladder;
using tsirelson::Rational;

// S_0 = sets with at most one element; F in S_{k+1} iff F = E_1 u ... u E_d with
// E_1 < ... < E_d in S_k and d <= min F.
inline bool schreier(const std::vector<Index>& f, int k) {
  if (f.size() <= 1) return true;
  if (k == 0) return false;
  const std::size_t n = f.size();
  // Successive pieces of a sorted set are runs; try every cut pattern.
  for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
    Index pieces = 1 + __builtin_popcount(cuts);
    if (pieces > f.front()) continue;
    bool ok = true;
    std::vector<Index> piece{f[0]};
    for (std::size_t i = 1; i <= n && ok; ++i) {
      if (i == n || (cuts >> (i - 1)) & 1u) {
        ok = schreier(piece, k - 1);
        piece.clear();
      }
      if (i < n) piece.push_back(f[i]);
    }
    if (ok) return true;
  }
  return false;
}

inline bool member(const std::vector<Index>& f, Ladder ladder, int k) {
  if (ladder == Ladder::A) return static_cast<Index>(f.size()) <= k;
  return schreier(f, k);
}

inline Rational family_sup(const std::map<Index, Rational>& w, Ladder ladder, int k) {
  std::vector<std::pair<Index, Rational>> items(w.begin(), w.end());
  Rational best = 0;
  for (std::uint32_t mask = 1; mask < (1u << items.size()); ++mask) {
    std::vector<Index> f;
    Rational s = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if ((mask >> i) & 1u) {
        f.push_back(items[i].first);
        s += items[i].second;
      }
    }
    if (s > best && member(f, ladder, k)) best = s;
  }
  return best;
}

// ||x|| = max(||x||_inf, sup_n theta_n sup sum_i ||E_i x||) over successive
// E_1 < ... < E_d with (min E_i) in F_n. Every E_i x is a restriction of x to
// a subset of its support, so the recursion runs over support masks. For a
// support of size s the admissible minima sets stop growing at n = s (A_s
// holds every subset; a set of size t >= 2 that lies in some S_n lies in
// S_{t-1}), and theta is decreasing, so n <= s suffices.
class Norm {
 public:
  Norm(const tsirelson::FiniteVector& x, const tsirelson::SpaceSpec& space) : space_(space) {
    for (const auto& [i, v] : x.coords()) {
      idx_.push_back(i);
      val_.push_back(tsirelson::abs(v));
    }
    const std::size_t s = idx_.size();
    memo_.assign(std::size_t{1} << s, Rational(-1));
    members_.assign(s + 1, std::vector<char>(std::size_t{1} << s, 0));
    for (std::size_t n = 1; n <= s; ++n) {
      for (std::uint32_t m = 0; m < (1u << s); ++m) {
        members_[n][m] = member(points(m), space.ladder, static_cast<int>(n));
      }
    }
  }

  Rational value() { return of((1u << idx_.size()) - 1); }

 private:
  std::vector<Index> points(std::uint32_t mask) const {
    std::vector<Index> f;
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if ((mask >> i) & 1u) f.push_back(idx_[i]);
    }
    return f;
  }

  Rational of(std::uint32_t mask) {
    if (mask == 0) return 0;
    if (memo_[mask] >= 0) return memo_[mask];
    Rational best = 0;
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if ((mask >> i) & 1u) best = tsirelson::max(best, val_[i]);
    }
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if ((mask >> i) & 1u) pos.push_back(i);
    }
    // Best block sum for each set of block minima.
    std::map<std::uint32_t, Rational> by_minima;
    walk(mask, pos, 0, 0, 0, 0, by_minima);
    for (std::size_t n = 1; n <= idx_.size(); ++n) {
      Rational t = space_.theta.value(static_cast<Index>(n));
      for (const auto& [minima, sum] : by_minima) {
        if (members_[n][minima] && t * sum > best) best = t * sum;
      }
    }
    memo_[mask] = best;
    return best;
  }

  // Each point is dropped, joins the open block, or opens a new block. A
  // single block covering all of `mask` gives theta_n ||x|| < ||x|| and is
  // skipped.
  void walk(std::uint32_t mask, const std::vector<std::size_t>& pos, std::size_t at, std::uint32_t minima, std::uint32_t open,
            Rational closed, std::map<std::uint32_t, Rational>& out) {
    if (at == pos.size()) {
      if (open == 0 || (open == mask && __builtin_popcount(minima) == 1)) return;
      Rational total = closed + of(open);
      auto [it, fresh] = out.emplace(minima, total);
      if (!fresh && total > it->second) it->second = total;
      return;
    }
    const std::uint32_t bit = 1u << pos[at];
    walk(mask, pos, at + 1, minima, open, closed, out);
    if (open) walk(mask, pos, at + 1, minima, open | bit, closed, out);
    walk(mask, pos, at + 1, minima | bit, bit, open ? closed + of(open) : closed, out);
  }

  const tsirelson::SpaceSpec& space_;
  std::vector<Index> idx_;
  std::vector<Rational> val_;
  std::vector<Rational> memo_;
  std::vector<std::vector<char>> members_;
};

inline Rational norm(const tsirelson::FiniteVector& x, const tsirelson::SpaceSpec& space) {
  return Norm(x, space).value();
}

}  // namespace oracle
