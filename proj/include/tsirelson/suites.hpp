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
#include <cstdint>
#include <string>
#include <vector>

#include "tsirelson/report.hpp"

namespace tsirelson {

struct SuiteConfig {
  std::uint64_t seed = 20261019;
  std::size_t cases = 200;
  /// Time allowed to each w search.
  std::chrono::milliseconds budget{60000};
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  /// One line, suitable for a pass/fail table.
  std::string summary;
  std::vector<std::pair<std::string, Report>> reports;
  double seconds = 0;
};

/// families, norms, lemma36, lemma37, prop43, lemma410, lemma53, lemma54, operator.
const std::vector<std::string>& suite_names();

/// Throws InputError for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace tsirelson
