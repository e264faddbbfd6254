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

#include "oracles.hpp"
#include "random.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/norm.hpp"

using namespace tsirelson;

namespace {
FiniteVector e(Index i, Rational v = 1) { return FiniteVector::unit(i, v); }
SpaceSpec schlumprecht() {
  SpaceSpec s;
  s.ladder = Ladder::A;
  s.theta = ThetaSequence::log_enclosure();
  return s;
}
}  // namespace

TEST_CASE("small norms") {
  SpaceSpec space;
  CHECK(norm(e(5), space) == 1);
  CHECK(norm(e(2) + e(3), space) == 1);
  CHECK(norm(e(1) + e(2), space) == 1);
  CHECK(norm(FiniteVector(), space) == 0);
  CHECK(norm(e(4, 2), space) == 2);
  CHECK(norm(e(3) + e(4) + e(5), space) == Rational(3, 2));
}

TEST_CASE("weighted norms") {
  SpaceSpec space;
  CHECK(weighted_norm(e(2) + e(3), 1, space) == 1);
  CHECK(weighted_norm(e(2) + e(3), 2, space) == Rational(2, 3));
  CHECK(weighted_norm(e(1), 1, space) == Rational(1, 2));
  auto all = weighted_norms(e(2) + e(3), 3, space);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == 1);
  CHECK(all[1] == Rational(2, 3));
  CHECK(all[2] == Rational(1, 2));
}

TEST_CASE("the witness attains the norm") {
  gen::Rng rng(31);
  for (const SpaceSpec& space : {SpaceSpec{}, schlumprecht()}) {
    for (int c = 0; c < 100; ++c) {
      FiniteVector x = gen::vector(rng, 10, 20);
      NormResult r = norm_with_witness(x, space);
      REQUIRE(r.witness);
      CHECK(validate(*r.witness, space).ok);
      CHECK(eval(*r.witness, x, space.theta) == r.value);
      CHECK(r.value == norm(x, space));
    }
  }
}

TEST_CASE("norm matches the reference recursion") {
  gen::Rng rng(32);
  for (const SpaceSpec& space : {SpaceSpec{}, schlumprecht()}) {
    for (int c = 0; c < 100; ++c) {
      FiniteVector x = gen::vector(rng);
      Rational r = oracle::norm(x, space);
      CHECK(norm(x, space) == r);
      CHECK(brute_force_norm(x, space) == r);
    }
  }
}

TEST_CASE("reference norm rejects large supports") {
  std::map<Index, Rational> c;
  for (Index i = 1; i <= 11; ++i) c[i] = 1;
  CHECK_THROWS_AS(brute_force_norm(FiniteVector::from_map(c), SpaceSpec{}), InputError);
}

TEST_CASE("norm bounds") {
  SpaceSpec space;
  gen::Rng rng(33);
  for (int c = 0; c < 100; ++c) {
    FiniteVector x = gen::vector(rng, 12, 30);
    Rational n = norm(x, space);
    CHECK(x.sup_norm() <= n);
    CHECK(n <= x.l1_norm());
    CHECK(norm(x.scaled(-3), space) == 3 * n);
  }
}

TEST_CASE("coordinate functionals") {
  SpaceSpec space;
  CoordinateBound b = coordinate_functional_bound({NormingTree::Leaf(1, 2), NormingTree::Leaf(1, 3)}, e(2) + e(3), space);
  CHECK(b.value == norm(e(1) + e(2), space));
  CHECK(b.holds);
  CoordinateBound empty = coordinate_functional_bound({}, e(2), space);
  CHECK(empty.value == 0);
  CHECK(coordinate_functional_bound({NormingTree::Leaf(1, 4)}, e(2), space).value == 0);
  CHECK_THROWS_AS(coordinate_functional_bound({NormingTree::Leaf(1, 3), NormingTree::Leaf(1, 2)}, e(2), space),
                  InputError);
}

TEST_CASE("norms against a functional sequence") {
  auto theta = ThetaSequence::reciprocal_shift();
  std::vector<NormingTree> g{NormingTree::Leaf(1, 2), NormingTree::Leaf(1, 3)};
  CHECK(g_norm(e(2) + e(3), g, {Ladder::S, 1}, theta) == 2);
  CHECK(g_norm(FiniteVector(), g, {Ladder::S, 1}, theta) == 0);
  CHECK(g_norm(e(3, -4), {NormingTree::Leaf(1, 3)}, {Ladder::S, 0}, theta) == 4);
}
