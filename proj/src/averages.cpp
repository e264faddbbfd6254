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

#include "tsirelson/averages.hpp"

#include "tsirelson/error.hpp"
#include "tsirelson/norm.hpp"

namespace tsirelson {

namespace {

struct PointsExhausted {};

class Builder {
 public:
  Builder(const PointSource& points, std::size_t max_points) : points_(points), max_points_(max_points) {}

  Index point(std::size_t pos) const {
    auto p = points_(pos);
    if (!p) throw PointsExhausted{};
    return *p;
  }

  // Appends a full rank-j block with total mass w; returns the next free position.
  std::size_t full(int j, std::size_t pos, const Rational& w, std::vector<std::pair<std::size_t, Rational>>& out) {
    if (out.size() >= max_points_) throw BudgetExhausted("average construction exceeds the point budget");
    if (j == 0) {
      point(pos);
      out.emplace_back(pos, w);
      return pos + 1;
    }
    Index b = point(pos);
    Rational share = w / Rational(b);
    for (Index t = 0; t < b; ++t) pos = full(j - 1, pos, share, out);
    return pos;
  }

 private:
  const PointSource& points_;
  std::size_t max_points_;
};

// k - 1 full rank-(n-1) blocks followed by one full rank-j block, j < n, with
// mass 1/k each; the least (k, j) that verifies wins.
std::optional<PlacedAverage> schreier_attempt(int n, const Rational& epsilon, Builder& builder, std::size_t from,
                                              std::size_t multiple_of) {
  Index b = builder.point(from);
  std::vector<std::pair<std::size_t, Rational>> head;
  std::size_t next = from;
  for (Index k = 1; k <= b; ++k) {
    Rational share(1, static_cast<long>(k));
    for (int j = 0; j < n; ++j) {
      std::vector<std::pair<std::size_t, Rational>> last;
      builder.full(j, next, Rational(1), last);
      PlacedAverage placed;
      std::map<Index, Rational> coeffs;
      for (const auto* part : {&head, &last}) {
        for (const auto& [pos, w] : *part) {
          placed.positions.push_back(pos);
          placed.coefficients.push_back(w * share);
          coeffs[builder.point(pos)] = w * share;
        }
      }
      if (placed.positions.size() % multiple_of == 0 && check_scc(coeffs, n, epsilon, Ladder::S)) return placed;
    }
    std::vector<std::pair<std::size_t, Rational>> block;
    next = builder.full(n - 1, next, Rational(1), block);
    // head holds unnormalized block masses: each full block carries mass 1
    for (auto& entry : block) head.push_back(entry);
  }
  return std::nullopt;
}

}  // namespace

PlacedAverage average_on_points(int n, const Rational& epsilon, Ladder ladder, const PointSource& points,
                                std::size_t from, int retry_budget, std::size_t max_points, std::size_t multiple_of) {
  if (n < 0) throw InputError("average rank must be non-negative");
  if (multiple_of == 0) throw InputError("multiple_of must be positive");
  if (sgn(epsilon) <= 0) throw InputError("average epsilon must be positive");
  Builder builder(points, max_points);
  try {
    if (n == 0) {
      if (multiple_of != 1) throw VerificationError("a rank-0 average has exactly one point");
      builder.point(from);
      return {{from}, {Rational(1)}};
    }
    if (ladder == Ladder::A) {
      if (!(Rational(1, n) < epsilon)) {
        throw VerificationError("no (" + std::to_string(n) + ", " + to_string(epsilon) + ")-average on the A ladder: 1/n >= epsilon");
      }
      if (static_cast<std::size_t>(n) % multiple_of != 0) {
        throw VerificationError("A-ladder average size " + std::to_string(n) + " is not a multiple of " + std::to_string(multiple_of));
      }
      PlacedAverage placed;
      for (int i = 0; i < n; ++i) {
        builder.point(from + static_cast<std::size_t>(i));
        placed.positions.push_back(from + static_cast<std::size_t>(i));
        placed.coefficients.emplace_back(1, n);
      }
      return placed;
    }
    for (int attempt = 0; attempt <= retry_budget; ++attempt) {
      if (auto placed = schreier_attempt(n, epsilon, builder, from + static_cast<std::size_t>(attempt), multiple_of)) return *placed;
    }
  } catch (const PointsExhausted&) {
    throw VerificationError("average construction ran out of candidate points");
  }
  throw VerificationError("average construction did not verify within the retry budget");
}

SpecialAverage make_basic_average(int n, const Rational& epsilon, Index min_start, Ladder ladder, int retry_budget,
                                  std::size_t max_points) {
  if (min_start < 1) throw InputError("min_start must be >= 1");
  if (sgn(epsilon) <= 0) throw InputError("average epsilon must be positive");
  Index start = min_start;
  if (ladder == Ladder::A && n > 0) start = std::max<Index>(min_start, floor_to_int(1 / epsilon) + 1);
  PointSource points = [start](std::size_t i) -> std::optional<Index> { return start + static_cast<Index>(i); };
  PlacedAverage placed = average_on_points(n, epsilon, ladder, points, 0, retry_budget, max_points);
  std::map<Index, Rational> coeffs;
  for (std::size_t i = 0; i < placed.positions.size(); ++i) {
    coeffs[start + static_cast<Index>(placed.positions[i])] = placed.coefficients[i];
  }
  SpecialAverage out{FiniteVector::from_map(coeffs), n, epsilon, ladder};
  if (!check_scc(out)) throw VerificationError("constructed average failed verification");
  return out;
}

bool check_scc(const std::map<Index, Rational>& coefficients, int n, const Rational& epsilon, Ladder ladder) {
  if (n < 0 || coefficients.empty()) return false;
  Rational total = 0;
  std::vector<Index> support;
  for (const auto& [i, a] : coefficients) {
    if (sgn(a) <= 0) return false;
    total += a;
    support.push_back(i);
  }
  if (total != 1) return false;
  if (n == 0) return support.size() == 1;
  if (ladder == Ladder::A) {
    if (support.size() != static_cast<std::size_t>(n)) return false;
    for (const auto& [i, a] : coefficients) {
      if (a != Rational(1, n)) return false;
    }
    return Rational(1, n) < epsilon;
  }
  if (!is_member(FiniteSet(support), FamilyKind{Ladder::S, n})) return false;
  return family_sup(coefficients, FamilyKind{Ladder::S, n - 1}) < epsilon;
}

bool check_scc(const SpecialAverage& x) {
  std::map<Index, Rational> coeffs;
  for (const auto& [i, a] : x.vector.coords()) coeffs[i] = a;
  return check_scc(coeffs, x.rank, x.epsilon, x.ladder);
}

Report check_lemma36(const SpecialAverage& x, const SpaceSpec& space) {
  Report report;
  report.claim = "theta_n <= ||x|| <= theta_n + epsilon";
  report.premise("special average", check_scc(x));
  report.premise("ladder matches space", x.ladder == space.ladder);
  Rational value = norm(x.vector, space);
  report.note("rank", std::to_string(x.rank));
  report.note("epsilon", to_string(x.epsilon));
  report.note("support size", std::to_string(x.vector.size()));
  report.note("norm", to_string(value));
  if (x.rank == 0) {
    report.check("norm of a unit vector", value == 1, to_string(value));
    return report;
  }
  Rational theta = space.theta.value(x.rank);
  report.note("theta_n", to_string(theta));
  if (!space.theta.is_exact()) {
    report.note("theta_n enclosure", "[" + to_string(space.theta.lower(x.rank)) + ", " + to_string(space.theta.upper(x.rank)) + "]");
  }
  report.check("lower bound", theta <= value, "margin " + to_string(value - theta));
  report.check("upper bound", value <= theta + x.epsilon, "margin " + to_string(theta + x.epsilon - value));
  return report;
}

Report check_lemma37(const SpecialAverage& x, int k, const Rational& eps, const SpaceSpec& space) {
  if (k < 0) throw InputError("k must be non-negative");
  if (x.rank == 0 && k > 0) throw InputError("check_lemma37 needs an average of rank >= 1");
  Report report;
  report.claim = "|f(theta_n^{-1} x)| <= (1 + eps) w(f) whenever w(f) >= theta_k";
  report.premise("special average", check_scc(x));
  report.note("rank", std::to_string(x.rank));
  report.note("k", std::to_string(k));
  if (k == 0) return report;
  Rational theta = space.theta.value(x.rank);
  FiniteVector scaled = x.vector.scaled(1 / theta);
  std::vector<Rational> values = weighted_norms(scaled, k, space);
  for (int j = 1; j <= k; ++j) {
    Rational bound = (1 + eps) * space.theta.value(j);
    const Rational& v = values[static_cast<std::size_t>(j - 1)];
    report.check("weight index " + std::to_string(j), v <= bound, to_string(v) + " <= " + to_string(bound));
  }
  return report;
}

int estimate_w(const Rational& eps, int k, const SpaceSpec& space, const WSearch& search) {
  if (sgn(eps) <= 0) throw InputError("epsilon must be positive");
  auto deadline = std::chrono::steady_clock::now() + search.budget;
  std::optional<int> threshold;
  bool sampled = false;
  for (int n = search.max_rank; n >= 1; --n) {
    bool ok = true;
    bool built = true;
    for (Index start : search.starts) {
      if (std::chrono::steady_clock::now() > deadline) throw BudgetExhausted("estimate_w: time budget exhausted");
      SpecialAverage x;
      try {
        x = make_basic_average(n, eps, start, space.ladder, 64, search.max_points);
      } catch (const BudgetExhausted&) {
        built = false;
        break;
      } catch (const VerificationError&) {
        built = false;
        break;
      }
      if (!check_lemma37(x, k, eps, space).passed()) {
        ok = false;
        break;
      }
    }
    if (!built) continue;
    sampled = true;
    if (!ok) break;
    threshold = n;
  }
  if (!sampled) throw BudgetExhausted("estimate_w: no rank up to " + std::to_string(search.max_rank) + " fits the point budget");
  if (!threshold) throw BudgetExhausted("estimate_w: the largest sampled rank fails");
  return *threshold;
}

}  // namespace tsirelson
