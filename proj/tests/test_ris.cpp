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

#include "tsirelson/averages.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/ris.hpp"

using namespace tsirelson;

namespace {

std::vector<FiniteVector> rank_one_blocks(std::size_t count, Index start) {
  std::vector<FiniteVector> xs;
  for (std::size_t i = 0; i < count; ++i) {
    SpecialAverage a = make_basic_average(1, Rational(1, 2), start, Ladder::S);
    start = a.vector.max_index() + 1;
    xs.push_back(a.vector);
  }
  return xs;
}

RisParams single(Index n1) {
  RisParams p;
  p.epsilon = Rational(1, 2);
  p.epsilon_tilde = Rational(1, 4);
  p.M = 1;
  p.N = 1;
  p.n = {1, n1, n1 + 1};
  p.q = {1, 2, 3};
  return p;
}

}  // namespace

TEST_CASE("periodic averages") {
  auto xs = rank_one_blocks(3, 3);
  std::vector<Rational> a = periodic_coefficients(xs, 1, Rational(1, 2), Ladder::S);
  Rational total = 0;
  for (const auto& v : a) total += v;
  CHECK(total == 1);
  PeriodicAverage avg = make_periodic_average(xs, a);
  CHECK(avg.x.size() == 9);
  CHECK(avg.x.sum() == 1);
  PeriodicAverage one = make_periodic_average({xs[0]}, {1});
  CHECK(one.x == xs[0]);
  CHECK_THROWS_AS(make_periodic_average({xs[1], xs[0]}, {Rational(1, 2), Rational(1, 2)}), InputError);
  CHECK_THROWS_AS(make_periodic_average({xs[0], xs[1]}, {Rational(1, 2), Rational(1, 3)}), InputError);
  CHECK_THROWS_AS(periodic_coefficients({xs[0], xs[1]}, 1, Rational(1, 2), Ladder::S), VerificationError);
}

TEST_CASE("ladder conditions are premises") {
  SpaceSpec space;
  Report r = check_p1(single(2), space);
  CHECK(r.witnesses.empty());
  CHECK_FALSE(r.premises_hold());
  CHECK(r.has_flag("p1-last-index-unchecked"));
  RisParams with_w = single(2);
  with_w.w_value = 1;
  CHECK(check_p1(with_w, space).has_flag("empirical-w"));
}

TEST_CASE("weight conditions on blocks") {
  SpaceSpec space;
  auto xs = rank_one_blocks(1, 3);
  Report ok = check_p_conditions(xs, single(1), space);
  CHECK(ok.passed());
  Report bad = check_p_conditions({FiniteVector::unit(4, 2)}, single(1), space);
  CHECK_FALSE(bad.passed());
  bool named = false;
  for (const auto& w : bad.witnesses) {
    if (w.holds && !*w.holds && w.name.rfind("P2 p=1", 0) == 0) named = true;
  }
  CHECK(named);
  CHECK_THROWS_AS(check_p_conditions(rank_one_blocks(2, 3), single(1), space), InputError);
}

TEST_CASE("norm estimates for a degenerate periodic average") {
  SpaceSpec space;
  Rational t = space.theta.value(1);
  PeriodicAverage avg = make_periodic_average({FiniteVector::unit(5, t)}, {1});
  Report r = check_prop43(avg, single(1), space);
  CHECK(r.passed());
  CHECK_FALSE(r.premises_hold());
  CHECK(r.has_flag("premises-relaxed"));
  bool measured = false;
  for (const auto& w : r.witnesses) {
    if (w.name == "norm <= 1 + 2 theta_{n_0} (measured)") measured = w.value.rfind("holds", 0) == 0;
  }
  CHECK(measured);
}

TEST_CASE("height 1 bundles are basic averages") {
  SpaceSpec space;
  CoreTree core = CoreTree::chain({1});
  RisBundle b = build_ris_bundle(core, 1, 1, space);
  CHECK(b.nodes.size() == b.vector().size() + 1);
  CHECK(eval(b.functional(), b.vector(), space.theta) == 1);
  CHECK(b.functional().weight == 1);
  CHECK(b.functional().leaf_count() == b.vector().size());
  CHECK(verify_bundle(b, core, space).passed());
}

TEST_CASE("height 2 bundles") {
  SpaceSpec space;
  CoreTree core = CoreTree::chain({1, 1});
  RisBundle b = build_ris_bundle(core, 2, 1, space);
  CHECK(eval(b.functional(), b.vector(), space.theta) == 1);
  CHECK(validate(b.functional(), space).ok);
  Report v = verify_bundle(b, core, space);
  CHECK(v.passed());
  CHECK(b.p_n <= b.p_bound);
  CHECK(is_member(b.vector().support(), space.family(b.p_bound)));
  Report l = check_lemma410(b, core, space, check_r_conditions(core, {}, space));
  CHECK(l.passed());
}

TEST_CASE("A ladder with one period per node follows the core") {
  SpaceSpec space;
  space.ladder = Ladder::A;
  BundleOptions o;
  o.relaxed = true;
  o.leaf_epsilon = Rational(1, 2);
  o.periodic_epsilon = Rational(1, 2);
  CoreTree core = CoreTree::uniform({4, 4}, {4});
  RisBundle b = build_ris_bundle(core, 2, 1, space, o);
  for (const auto& node : b.nodes) {
    if (!node.terminal) CHECK(node.core == node.path);
  }
  CHECK(verify_bundle(b, core, space).passed());
  CHECK(eval(b.functional(), b.vector(), space.theta) == 1);
}

TEST_CASE("bundle input errors") {
  SpaceSpec space;
  CHECK_THROWS_AS(build_ris_bundle(CoreTree::chain({1}), 3, 1, space), InputError);
  BundleOptions o;
  o.leaf_epsilon = Rational(1, 2);
  CHECK_THROWS_AS(build_ris_bundle(CoreTree::chain({1}), 1, 1, space, o), InputError);
  CHECK_THROWS_AS(build_ris_bundle(CoreTree::chain({1}), 0, 1, space), InputError);
}

TEST_CASE("core conditions") {
  SpaceSpec space;
  // m_j + 1 > 2^{j+1} for each j.
  Report r = check_r_conditions(CoreTree::chain({2, 4, 8}), {}, space);
  for (const auto& w : r.witnesses) {
    if (w.name.rfind("R1", 0) == 0) CHECK(w.holds.value_or(false));
  }
  Report small = check_r_conditions(CoreTree::chain({1, 1}), {}, space);
  bool r2_fails = false;
  for (const auto& w : small.witnesses) {
    if (w.name.rfind("R2", 0) == 0 && w.holds && !*w.holds) r2_fails = true;
  }
  CHECK(r2_fails);
  WOracle w = [](const Rational&, Index) -> std::optional<Index> { return 1; };
  Report with_w = check_r_conditions(CoreTree::chain({2, 4}), {1, 1}, space, w);
  CHECK(with_w.has_flag("empirical-w"));
}

TEST_CASE("skipped sets") {
  std::vector<Rational> a{Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
  CHECK(check_lemma34(a, {1, 3}, 2).passed());
  CHECK(check_lemma34(a, {1, 2, 3, 4}, 1).passed());
  Report bad = check_lemma34(a, {1, 2}, 2);
  CHECK_FALSE(bad.premises_hold());
  CHECK(bad.witnesses.empty());
  CHECK_FALSE(check_lemma34({Rational(1, 4), Rational(3, 4)}, {1}, 1).premises_hold());
}
