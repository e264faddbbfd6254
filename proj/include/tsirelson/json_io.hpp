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

#include <string>
#include <vector>

#include <json.hpp>

#include "tsirelson/averages.hpp"
#include "tsirelson/core_tree.hpp"
#include "tsirelson/norming_tree.hpp"
#include "tsirelson/operator.hpp"
#include "tsirelson/report.hpp"
#include "tsirelson/ris.hpp"
#include "tsirelson/space.hpp"
#include "tsirelson/vector.hpp"

namespace tsirelson::io {

using Json = nlohmann::ordered_json;

// Readers throw InputError on malformed documents.

Json to_json(const Rational& value);
Rational rational_from_json(const Json& j);

Json to_json(const FiniteSet& set);
FiniteSet set_from_json(const Json& j);

Json to_json(const FamilyKind& fam);
FamilyKind family_from_json(const Json& j);

Json to_json(const ThetaSequence& theta);
ThetaSequence theta_from_json(const Json& j);

Json to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const Json& j);

Json to_json(const FiniteVector& x);
FiniteVector vector_from_json(const Json& j);

Json to_json(const NormingTree& f);
NormingTree tree_from_json(const Json& j);

Json to_json(const SpecialAverage& x);
SpecialAverage average_from_json(const Json& j);

Json to_json(const CoreTree& core);
CoreTree core_from_json(const Json& j);

Json to_json(const RisBundle& bundle);
RisBundle bundle_from_json(const Json& j);

Json to_json(const OperatorSpec& T);
OperatorSpec operator_from_json(const Json& j);

Json to_json(const Report& report);
Report report_from_json(const Json& j);

/// One row per premise and witness: claim,instance,kind,name,holds,value.
std::string csv_header();
std::string to_csv(const Report& report, const std::string& instance);

Json parse(const std::string& text);
Json load_file(const std::string& path);
void save_file(const std::string& path, const Json& j);

}  // namespace tsirelson::io
