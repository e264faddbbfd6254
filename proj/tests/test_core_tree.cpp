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

#include "tsirelson/core_tree.hpp"
#include "tsirelson/error.hpp"

using namespace tsirelson;

namespace {
CoreTree branching() { return CoreTree{1, {CoreTree{1, {CoreTree{1, {}}}}, CoreTree{2, {CoreTree{3, {}}}}}}; }
}  // namespace

TEST_CASE("tree shapes") {
  CoreTree c = CoreTree::chain({1, 2, 3});
  CHECK(c.depth() == 2);
  CHECK(c.node_count() == 3);
  CHECK(c.M() == 1);
  CoreTree u = CoreTree::uniform({1, 2, 3}, {2, 3});
  CHECK(u.node_count() == 1 + 2 + 6);
  CHECK(u.children[1].m == 2);
  CHECK(u.children[1].children[2].m == 3);
  CHECK(descend(u, {2, 3})->m == 3);
  CHECK(descend(u, {3}) == nullptr);
}

TEST_CASE("path order") {
  CHECK(lex_less({1}, {2}));
  CHECK(lex_less({}, {1}));
  CHECK(lex_less({1}, {1, 1}));
  CHECK_FALSE(lex_less({2}, {1, 1}));
  CHECK_FALSE(lex_less({1, 2}, {1, 2}));
}

TEST_CASE("enumeration is level by level") {
  CoreIndex idx(branching());
  REQUIRE(idx.size() == 5);
  CHECK(idx.path(0).empty());
  CHECK(idx.path(1) == CorePath{1});
  CHECK(idx.path(2) == CorePath{2});
  CHECK(idx.path(3) == CorePath{1, 1});
  CHECK(idx.path(4) == CorePath{2, 1});
  CHECK(idx.find({2, 1}) == 4u);
  CHECK_FALSE(idx.find({3}));
  CHECK(idx.parent(4) == 2u);
  CHECK_FALSE(idx.parent(0));
  CHECK(idx.level(3) == 2);
  CHECK(idx.level_nodes(1) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("attached quantities") {
  auto theta = ThetaSequence::reciprocal_shift();
  CoreIndex idx(branching());
  CHECK(idx.ord(0) == 0);
  CHECK(idx.ord(3) == 2);
  CHECK(idx.ord(4) == 3);
  CHECK(idx.c(0, theta) == 1);
  CHECK(idx.c(4, theta) == Rational(1, 6));
  CHECK(idx.I(1) == std::vector<std::size_t>{2});
  CHECK(idx.I(2) == std::vector<std::size_t>{3});
  CHECK(idx.I(3) == std::vector<std::size_t>{4});
  CHECK(idx.I(4).empty());
  CHECK(idx.n(1) == 1);
}

TEST_CASE("weights below one are rejected") {
  CHECK_THROWS_AS(CoreIndex(CoreTree{0, {}}), InputError);
}
