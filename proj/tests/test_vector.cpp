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

#include "tsirelson/error.hpp"
#include "tsirelson/rational.hpp"
#include "tsirelson/vector.hpp"

using namespace tsirelson;

TEST_CASE("rational text") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-2") == -2);
  CHECK(to_pq_string(Rational(2)) == "2/1");
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("a"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK(floor_to_int(Rational(-1, 2)) == -1);
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("vector construction") {
  CHECK_THROWS_AS(FiniteVector({{3, 1}, {2, 1}}), InputError);
  CHECK_THROWS_AS(FiniteVector({{0, 1}}), InputError);
  CHECK_THROWS_AS(FiniteVector({{2, 0}}), InputError);
  FiniteVector x = FiniteVector::from_map({{2, 1}, {5, 0}, {7, Rational(-1, 2)}});
  CHECK(x.size() == 2);
  CHECK(x.support() == FiniteSet({2, 7}));
  CHECK(x.at(7) == Rational(-1, 2));
  CHECK(x.at(3) == 0);
  CHECK(x.l1_norm() == Rational(3, 2));
  CHECK(x.sup_norm() == 1);
  CHECK(x.sum() == Rational(1, 2));
}

TEST_CASE("vector arithmetic") {
  FiniteVector x({{1, 1}, {3, 2}});
  FiniteVector y({{3, -2}, {4, 1}});
  CHECK(x + y == FiniteVector({{1, 1}, {4, 1}}));
  CHECK(x - x == FiniteVector());
  CHECK(x.scaled(Rational(1, 2)) == FiniteVector({{1, Rational(1, 2)}, {3, 1}}));
  CHECK(x.restricted(2, 3) == FiniteVector({{3, 2}}));
  CHECK(y.abs() == FiniteVector({{3, 2}, {4, 1}}));
  CHECK(FiniteVector::unit(5).at(5) == 1);
}

TEST_CASE("successive vectors") {
  CHECK(precedes(FiniteVector::unit(2), FiniteVector::unit(3)));
  CHECK_FALSE(precedes(FiniteVector::unit(3), FiniteVector::unit(3)));
  CHECK(precedes(FiniteVector(), FiniteVector::unit(1)));
}
