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


#include <doctest.h>

#include "random.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/json_io.hpp"

using namespace tsirelson;

namespace {

template <class T, class Read>
void round_trip(const T& value, Read read) {
  io::Json j = io::to_json(value);
  T back = read(io::parse(j.dump()));
  CHECK(back == value);
  CHECK(io::to_json(back).dump() == j.dump());
}

}  // namespace

TEST_CASE("scalar and set round trips") {
  for (const Rational& q : {Rational(0), Rational(-7, 3), Rational(1, 1024), Rational(5)}) round_trip(q, io::rational_from_json);
  round_trip(FiniteSet{}, io::set_from_json);
  round_trip(FiniteSet{2, 5, 9}, io::set_from_json);
  round_trip(FamilyKind{Ladder::A, 3}, io::family_from_json);
  round_trip(FamilyKind{Ladder::S, 0}, io::family_from_json);
}

TEST_CASE("theta and space round trips") {
  auto theta = [](const io::Json& j) { return io::theta_from_json(j); };
  round_trip(ThetaSequence::reciprocal_shift(), theta);
  round_trip(ThetaSequence::geometric(Rational(2, 3)), theta);
  round_trip(ThetaSequence::log_enclosure(80), theta);
  round_trip(ThetaSequence::table({Rational(1, 2), Rational(1, 5)}, ThetaSequence::geometric(Rational(1, 3))), theta);
  SpaceSpec space;
  space.ladder = Ladder::A;
  space.weight_cutoff = 12;
  space.theta = ThetaSequence::geometric(Rational(1, 2));
  round_trip(space, io::space_from_json);
}

TEST_CASE("random vectors and trees round trip") {
  gen::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    round_trip(gen::vector(rng), io::vector_from_json);
    round_trip(gen::tree(rng, 1, 20, 3), io::tree_from_json);
  }
}

TEST_CASE("structured objects round trip") {
  SpaceSpec space;
  round_trip(make_basic_average(1, Rational(1, 2), 3, Ladder::S), io::average_from_json);
  CoreTree core{1, {{1, {{1, {}}}}, {2, {{3, {}}}}}};
  round_trip(core, io::core_from_json);
  RisBundle b = build_ris_bundle(CoreTree::chain({1, 1}), 2, 1, space);
  round_trip(b, io::bundle_from_json);
  OperatorOptions o;
  o.c = Rational(1, 4);
  o.bundle.relaxed = true;
  OperatorSpec T = build_operator(CoreTree::chain({1, 1}), {1, 2, 3}, {1, 1}, space, o);
  round_trip(T, io::operator_from_json);
}

TEST_CASE("reports round trip through json and csv") {
  Report r;
  r.claim = "sample, with \"quotes\"";
  r.premise("p", false, "1 > 0");
  r.check("c", true, "a,b");
  r.note("n", "3/4");
  r.flag("finite-evidence");
  Report back = io::report_from_json(io::parse(io::to_json(r).dump()));
  CHECK(io::to_json(back).dump() == io::to_json(r).dump());
  CHECK(back.has_flag("finite-evidence"));
  CHECK(back.passed() == r.passed());
  std::string csv = io::to_csv(r, "x");
  CHECK(csv.find("\"a,b\"") != std::string::npos);
  CHECK(csv.find("\"sample, with \"\"quotes\"\"\"") != std::string::npos);
  CHECK(io::csv_header().rfind("claim,instance,kind,name,holds,value", 0) == 0);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(io::parse("{"), InputError);
  CHECK_THROWS_AS(io::rational_from_json(io::parse("\"1/0\"")), InputError);
  CHECK_THROWS_AS(io::rational_from_json(io::parse("\"abc\"")), InputError);
  CHECK_THROWS_AS(io::set_from_json(io::parse("[3, 2]")), InputError);
  CHECK_THROWS_AS(io::set_from_json(io::parse("[0]")), InputError);
  CHECK_THROWS_AS(io::family_from_json(io::parse("{\"ladder\": \"Q\", \"rank\": 1}")), InputError);
  CHECK_THROWS_AS(io::theta_from_json(io::parse("{\"kind\": \"nope\"}")), InputError);
  CHECK_THROWS_AS(io::vector_from_json(io::parse("{\"x\": 1}")), InputError);
  CHECK_THROWS_AS(io::tree_from_json(io::parse("[1, 2]")), InputError);
  CHECK_THROWS_AS(io::core_from_json(io::parse("{\"m\": -1}")), InputError);
  CHECK_THROWS_AS(io::bundle_from_json(io::parse("{}")), InputError);
  CHECK_THROWS_AS(io::operator_from_json(io::parse("{}")), InputError);
  CHECK_THROWS_AS(io::load_file("/nonexistent/path.json"), InputError);
}
