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
#include "tsirelson/families.hpp"

using namespace tsirelson;

namespace {
FamilyKind S(int k) { return {Ladder::S, k}; }
FamilyKind A(int k) { return {Ladder::A, k}; }
}  // namespace

TEST_CASE("finite sets are strictly increasing and positive") {
  CHECK_THROWS_AS(FiniteSet({3, 2}), InputError);
  CHECK_THROWS_AS(FiniteSet({0, 2}), InputError);
  CHECK_THROWS_AS(FiniteSet({2, 2}), InputError);
  CHECK(FiniteSet::from_unsorted({5, 2, 5}) == FiniteSet({2, 5}));
  CHECK(FiniteSet({2, 7}).min() == 2);
  CHECK(FiniteSet({2, 7}).max() == 7);
}

TEST_CASE("membership on small sets") {
  CHECK(is_member({1}, S(1)));
  CHECK_FALSE(is_member({1, 2}, S(1)));
  CHECK(is_member({2, 3, 4}, S(2)));
  CHECK(is_member({1, 2, 3}, A(3)));
  CHECK(is_member({}, S(0)));
  CHECK_FALSE(is_member({3, 4}, S(0)));
  CHECK(is_member({3, 4, 5}, S(1)));
  CHECK_FALSE(is_member({3, 4, 5, 6}, S(1)));
  CHECK_FALSE(is_member({1, 2, 3, 4}, A(3)));
}

TEST_CASE("admissibility of successive sets") {
  CHECK(is_admissible({{2}, {3, 4}}, S(1)));
  CHECK_FALSE(is_admissible({{1}, {2}}, S(1)));
  CHECK_FALSE(is_admissible({{5, 6}, {6, 7}}, S(2)));
  CHECK_THROWS_AS(is_admissible({{2}, {}}, S(1)), EmptySetError);
}

TEST_CASE("composition of families") {
  CHECK(compose(S(1), S(1), {2, 3, 4}));
  CHECK(compose(A(1), S(1), {3, 4, 5}));
  CHECK_FALSE(compose(A(2), A(1), {1, 2, 3}));
}

TEST_CASE("family sums") {
  CHECK(family_sup({{2, Rational(1, 3)}, {3, Rational(1, 3)}, {4, Rational(1, 3)}}, S(1)) == Rational(2, 3));
  CHECK(family_sup({{2, 1}}, S(0)) == 1);
  CHECK(family_sup({{4, Rational(1, 4)}, {5, Rational(1, 4)}, {6, Rational(1, 4)}, {7, Rational(1, 4)}}, A(2)) ==
        Rational(1, 2));
  CHECK(family_sup({}, S(2)) == 0);
  CHECK_THROWS_AS(family_sup({{2, -1}}, S(1)), InputError);
}

TEST_CASE("online membership agrees with the reference definition") {
  gen::Rng rng(11);
  for (int c = 0; c < 400; ++c) {
    FiniteSet f = gen::set(rng, 8, 20);
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      CHECK(is_member(f, S(k)) == oracle::member(f.elements(), Ladder::S, k));
      CHECK(is_member_exhaustive(f, S(k)) == oracle::member(f.elements(), Ladder::S, k));
    }
    CHECK(is_member(f, A(3)) == (f.size() <= 3));
  }
}

TEST_CASE("S(k) is contained in S(k+1)") {
  gen::Rng rng(12);
  for (int c = 0; c < 300; ++c) {
    FiniteSet f = gen::set(rng, 8, 30);
    for (int k = 0; k < 4; ++k) {
      if (is_member(f, S(k))) CHECK(is_member(f, S(k + 1)));
    }
  }
}

TEST_CASE("tracker rejects without changing state") {
  AdmissibilityTracker t(S(1));
  CHECK(t.push(2));
  CHECK(t.push(5));
  CHECK_FALSE(t.can_push(9));
  CHECK_FALSE(t.push(9));
  CHECK(t.count() == 2);
}

TEST_CASE("family names round trip") {
  CHECK(to_string(S(2)) == "S(2)");
  CHECK(parse_ladder("A") == Ladder::A);
  CHECK_THROWS_AS(parse_ladder("B"), InputError);
}
