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

#include "tsirelson/report.hpp"

#include <algorithm>

namespace tsirelson {

void Report::premise(std::string name, bool holds, std::string detail) {
  premises.push_back({std::move(name), holds, std::move(detail)});
}

void Report::note(std::string name, std::string value) { witnesses.push_back({std::move(name), std::move(value), {}}); }

bool Report::check(std::string name, bool holds, std::string value) {
  witnesses.push_back({std::move(name), std::move(value), holds});
  return holds;
}

void Report::flag(const std::string& f) {
  if (!has_flag(f)) flags.push_back(f);
}

void Report::absorb(const Report& other, const std::string& prefix) {
  for (const auto& p : other.premises) premises.push_back({prefix + p.name, p.holds, p.detail});
  for (const auto& w : other.witnesses) witnesses.push_back({prefix + w.name, w.value, w.holds});
  for (const auto& f : other.flags) flag(f);
}

void Report::absorb_as_premises(const Report& other, const std::string& prefix) {
  for (const auto& p : other.premises) premises.push_back({prefix + p.name, p.holds, p.detail});
  for (const auto& w : other.witnesses) {
    if (w.holds) premises.push_back({prefix + w.name, *w.holds, w.value});
  }
  for (const auto& f : other.flags) flag(f);
}

bool Report::premises_hold() const {
  return std::all_of(premises.begin(), premises.end(), [](const Premise& p) { return p.holds; });
}

bool Report::passed() const {
  return std::all_of(witnesses.begin(), witnesses.end(), [](const Witness& w) { return w.holds.value_or(true); });
}

bool Report::has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

}  // namespace tsirelson
