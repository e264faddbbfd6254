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

#include <optional>
#include <string>
#include <vector>

namespace tsirelson {

struct Premise {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// A named quantity; `holds` is set when the entry is a checked conclusion.
struct Witness {
  std::string name;
  std::string value;
  std::optional<bool> holds;
};

/// Outcome of a theorem checker. Premise failures never change the verdict,
/// which depends only on the checked conclusions.
struct Report {
  std::string claim;
  std::vector<Premise> premises;
  std::vector<Witness> witnesses;
  /// "premises-relaxed", "finite-evidence", "empirical-w", ...
  std::vector<std::string> flags;

  void premise(std::string name, bool holds, std::string detail = {});
  void note(std::string name, std::string value);
  /// Records a checked conclusion and returns `holds`.
  bool check(std::string name, bool holds, std::string value = {});
  void flag(const std::string& f);
  /// Appends the other report's entries, prefixing names with `prefix`.
  void absorb(const Report& other, const std::string& prefix);
  /// Like absorb, but the other report's checked witnesses become premises.
  void absorb_as_premises(const Report& other, const std::string& prefix);

  bool premises_hold() const;
  bool passed() const;
  std::string verdict() const { return passed() ? "pass" : "fail"; }
  bool has_flag(const std::string& f) const;
};

}  // namespace tsirelson
