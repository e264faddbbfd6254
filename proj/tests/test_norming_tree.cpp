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
#include "tsirelson/norm.hpp"
#include "tsirelson/norming_tree.hpp"

using namespace tsirelson;

namespace {
NormingTree L(Index i, int sign = 1) { return NormingTree::Leaf(sign, i); }
}  // namespace

TEST_CASE("evaluation") {
  auto theta = ThetaSequence::reciprocal_shift();
  CHECK(eval(L(3), FiniteVector::unit(3), theta) == 1);
  NormingTree f = NormingTree::Internal(1, {L(2), L(3)});
  CHECK(eval(f, FiniteVector({{2, 1}, {3, 1}}), theta) == 1);
  CHECK(eval(f, FiniteVector(), theta) == 0);
  CHECK(eval(L(4, -1), FiniteVector({{4, 3}}), theta) == -3);
  auto c = coefficients(NormingTree::Internal(2, {L(3), NormingTree::Internal(1, {L(5), L(6, -1)})}), theta);
  CHECK(c.at(3) == Rational(1, 3));
  CHECK(c.at(5) == Rational(1, 6));
  CHECK(c.at(6) == Rational(-1, 6));
  CHECK(apply_coefficients(c, FiniteVector({{3, 3}, {6, 6}})) == 0);
}

TEST_CASE("validation") {
  SpaceSpec space;
  CHECK(validate(NormingTree::Internal(1, {L(2), L(3)}), space).ok);
  ValidationReport bad = validate(NormingTree::Internal(1, {L(1), L(2)}), space);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.message.empty());
  CHECK(validate(L(7, -1), space).ok);
  CHECK_FALSE(validate(NormingTree::Internal(2, {L(3), L(3)}), space).ok);
  ValidationReport deep = validate(NormingTree::Internal(2, {L(2), NormingTree::Internal(1, {L(3), L(4), L(5), L(6)})}), space);
  CHECK_FALSE(deep.ok);
  CHECK(deep.path == std::vector<std::size_t>{1});
}

TEST_CASE("tree shape") {
  NormingTree f = NormingTree::Internal(2, {L(3), NormingTree::Internal(1, {L(5), L(6)})});
  CHECK(f.min_support() == 3);
  CHECK(f.max_support() == 6);
  CHECK(f.leaf_count() == 3);
  CHECK(f.depth() == 2);
  CHECK(f.support() == FiniteSet({3, 5, 6}));
}

TEST_CASE("valid trees never exceed the norm") {
  SpaceSpec space;
  gen::Rng rng(21);
  int valid = 0;
  while (valid < 300) {
    NormingTree f = gen::tree(rng, 1, 14, 3);
    if (!validate(f, space).ok) continue;
    ++valid;
    FiniteVector x = gen::vector(rng, 8, 14);
    CHECK(abs(eval(f, x, space.theta)) <= norm(x, space));
    auto c = coefficients(f, space.theta);
    CHECK(apply_coefficients(c, x) == eval(f, x, space.theta));
  }
}
