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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsirelson/families.hpp"
#include "tsirelson/rational.hpp"

namespace tsirelson {

enum class ThetaKind { ReciprocalShift, Geometric, LogEnclosure, Table };

std::string to_string(ThetaKind kind);

/// The weight sequence (theta_n), n >= 1, as a closed-form descriptor.
///
/// `value(n)` is the rational actually used by every norm computation. For the
/// exact kinds it is theta_n itself. For the log enclosure it is the lower end
/// of a directed-rounding enclosure of 1/log2(n+1), so the computed space is
/// T[(F_n, value(n))]; `lower`/`upper` bracket the real weight.
class ThetaSequence {
 public:
  /// theta_n = 1/(n+1).
  static ThetaSequence reciprocal_shift();
  /// theta_n = ratio^n, ratio in (0,1).
  static ThetaSequence geometric(Rational ratio);
  /// Enclosures of 1/log2(n+1) at `precision_bits` of binary precision.
  static ThetaSequence log_enclosure(int precision_bits = 64);
  /// theta_n = values[n-1] for n <= values.size(), then `tail`.
  static ThetaSequence table(std::vector<Rational> values, const ThetaSequence& tail);

  ThetaKind kind() const { return kind_; }
  const Rational& ratio() const { return ratio_; }
  int precision_bits() const { return precision_bits_; }
  const std::vector<Rational>& table_values() const { return table_; }
  const ThetaSequence* tail() const { return tail_.get(); }

  Rational value(Index n) const;
  Rational lower(Index n) const;
  Rational upper(Index n) const;
  bool is_exact() const;

  /// Same kind at twice the precision (identity for exact kinds).
  ThetaSequence widened() const;

  friend bool operator==(const ThetaSequence& a, const ThetaSequence& b);

 private:
  struct Enclosure {
    Rational lo;
    Rational hi;
  };
  struct Cache;

  ThetaSequence() = default;
  Enclosure enclosure(Index n) const;

  ThetaKind kind_ = ThetaKind::ReciprocalShift;
  Rational ratio_;
  int precision_bits_ = 0;
  std::vector<Rational> table_;
  std::shared_ptr<const ThetaSequence> tail_;
  std::shared_ptr<Cache> cache_;
};

/// First (n, m) pair with n, m <= bound violating regularity of the
/// representatives: theta_n theta_m <= theta_{n+m} (S ladder) or
/// theta_n theta_m <= theta_{nm} (A ladder). nullopt when none.
std::optional<std::pair<Index, Index>> find_regularity_violation(const ThetaSequence& theta, Ladder ladder,
                                                                 Index bound);

/// First n <= bound where the representatives fail to be strictly decreasing
/// inside (0, 1]. nullopt when none.
std::optional<Index> find_monotonicity_violation(const ThetaSequence& theta, Index bound);

}  // namespace tsirelson
