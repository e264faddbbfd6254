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
#include "tsirelson/operator.hpp"

using namespace tsirelson;

namespace {

OperatorOptions relaxed(Rational c) {
  OperatorOptions o;
  o.c = c;
  o.bundle.relaxed = true;
  return o;
}

const OperatorSpec& standard() {
  static const OperatorSpec T = build_operator(CoreTree::chain({1, 1, 6, 32, 248}), {4, 16, 88, 704}, {2, 2, 2},
                                               SpaceSpec{}, relaxed(Rational(1, 4)));
  return T;
}

bool fails(const Report& r, const std::string& prefix) {
  for (const auto& w : r.witnesses) {
    if (w.holds && !*w.holds && w.name.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("k_r") {
  ThetaSequence rec = ThetaSequence::reciprocal_shift();
  for (Index r = 1; r <= 20; ++r) CHECK(compute_k_r(rec, Rational(1, 2), r) == r);
  CHECK(compute_k_r(rec, Rational(1, 2), 0) == 1);
  CHECK_THROWS_AS(compute_k_r(rec, 1, 3), InputError);
  ThetaSequence geo = ThetaSequence::geometric(Rational(1, 2));
  CHECK(compute_k_r(geo, Rational(1, 4), 1) == 1);
  CHECK_THROWS_AS(compute_k_r(geo, Rational(1, 2), 1), InputError);
  CHECK_THROWS_AS(compute_k_r(rec, Rational(1, 2), -1), InputError);
  ThetaSequence tab = ThetaSequence::table({Rational(1, 2), Rational(1, 3)}, rec);
  CHECK(compute_k_r(tab, Rational(1, 2), 4) == 4);
}

TEST_CASE("ratio sampling") {
  Report r = check_fact510(ThetaSequence::log_enclosure(), 3, 1024);
  CHECK(r.passed());
  CHECK_FALSE(check_fact510(ThetaSequence::reciprocal_shift(), 3, 1024).passed());
  CHECK(r.has_flag("finite-evidence"));
  CHECK_THROWS_AS(check_fact510(ThetaSequence::reciprocal_shift(), 0, 8), InputError);
}

TEST_CASE("standard operator") {
  const OperatorSpec& T = standard();
  REQUIRE(T.bundles.size() == 3);
  CHECK(T.targets == std::vector<Index>{16, 88, 704});
  CHECK(verify_operator(T).passed());
  for (std::size_t n = 0; n < T.bundles.size(); ++n) {
    CHECK(apply(T, T.bundles[n].vector()) == FiniteVector::unit(T.targets[n]));
  }
  FiniteVector a = T.bundles[0].vector();
  FiniteVector b = T.bundles[1].vector().scaled(Rational(-2, 3));
  CHECK(apply(T, a + b) == apply(T, a) + apply(T, b));
  Index past = T.bundles.back().vector().max_index() + 1;
  CHECK(apply(T, FiniteVector::unit(past)).size() == 0);

  NoncompactnessWitness nw = noncompactness_witness(T);
  CHECK(nw.report.passed());
  CHECK(nw.delta == Rational(1, 2));
  CHECK(estimate_rhs(T, 1) == 41);
  CHECK(estimate_rhs(T, 2) == Rational(41, 2));
  CHECK(estimate_rhs(T, 3) == Rational(31, 3));
}

TEST_CASE("small operators") {
  SpaceSpec space;
  OperatorSpec T = build_operator(CoreTree::chain({1, 1}), {1, 2, 3}, {1, 1}, space, relaxed(Rational(1, 4)));
  Report v = verify_operator(T);
  CHECK_FALSE(v.passed());
  CHECK(fails(v, "R3 j=1"));
  CHECK_THROWS_AS(estimate_rhs(T, 2), InputError);

  OperatorSpec zero = build_operator(CoreTree::chain({1, 1}), {}, {}, space, relaxed(Rational(1, 4)));
  CHECK(zero.bundles.empty());
  CHECK(apply(zero, FiniteVector::unit(3)).size() == 0);
  CHECK_THROWS_AS(noncompactness_witness(zero), InputError);

  CHECK_THROWS_AS(build_operator(CoreTree::chain({1, 1}), {1, 2}, {1, 1}, space, relaxed(Rational(1, 4))), InputError);
}

TEST_CASE("perturbation sums") {
  Prop21Bound zero = prop21_bound({0, 0, 0}, {1, 2, 3}, 3, std::nullopt);
  CHECK(zero.partial == 0);
  Prop21Bound one = prop21_bound({Rational(1, 8)}, {2}, 1, std::nullopt);
  CHECK(one.partial == Rational(9, 8));
  CHECK_FALSE(one.certified);

  std::vector<Rational> eps;
  std::vector<Index> N;
  for (int j = 1; j <= 10; ++j) {
    eps.push_back(1 / pow(Rational(4), j));
    N.push_back(Index{1} << j);
  }
  Prop21Bound pb = prop21_bound(eps, N, 10, TailMajorant{Rational(1, 4), 2});
  CHECK(pb.partial == Rational(2328119, 524288));
  REQUIRE(pb.tail.has_value());
  CHECK(*pb.tail == Rational(18449, 4718592));
  CHECK(pb.certified);
  CHECK(pb.total == pb.partial + *pb.tail);
}

TEST_CASE("kernel probes") {
  const OperatorSpec& T = standard();
  Index st = T.bundles.back().vector().max_index() + 1;
  std::vector<FiniteVector> kernel{FiniteVector::unit(st), FiniteVector::unit(st + 1)};
  ProbeResult pr = singularity_probe(T, kernel, 2);
  CHECK(sgn(pr.g_norm) == 0);
  CHECK(sgn(pr.t_norm) == 0);
  CHECK(pr.rhs == Rational(41, 2));
  CHECK_THROWS_AS(singularity_probe(T, {FiniteVector::unit(st + 1), FiniteVector::unit(st)}, 1), InputError);
  CHECK_THROWS_AS(singularity_probe(T, {FiniteVector{}}, 1), InputError);
}
