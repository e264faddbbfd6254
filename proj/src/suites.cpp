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


#include "tsirelson/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include "tsirelson/averages.hpp"
#include "tsirelson/core_tree.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/families.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/operator.hpp"
#include "tsirelson/ris.hpp"

namespace tsirelson {
namespace {

using Rng = std::mt19937_64;

std::string rs(const Rational& v) { return to_string(v); }

Index uniform(Rng& rng, Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); }

FiniteSet random_support(Rng& rng, std::size_t max_size, Index max_index) {
  std::size_t size = static_cast<std::size_t>(uniform(rng, 1, static_cast<Index>(max_size)));
  std::vector<Index> pool;
  for (Index i = 1; i <= max_index; ++i) pool.push_back(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(size);
  return FiniteSet::from_unsorted(pool);
}

// Nonzero p/q with q in 1..4 and |p/q| <= 3.
Rational random_coefficient(Rng& rng, bool non_negative) {
  Index q = uniform(rng, 1, 4);
  Index p = 0;
  while (p == 0) p = uniform(rng, non_negative ? 1 : -3 * q, 3 * q);
  Rational r(static_cast<long>(p), static_cast<long>(q));
  r.canonicalize();
  return r;
}

FiniteVector random_vector(Rng& rng, bool non_negative) {
  std::map<Index, Rational> coords;
  for (Index i : random_support(rng, 8, 16)) coords[i] = random_coefficient(rng, non_negative);
  return FiniteVector::from_map(coords);
}

Rational exhaustive_sup(const FiniteVector& x, FamilyKind fam) {
  const auto& c = x.coords();
  Rational best = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << c.size()); ++mask) {
    std::vector<Index> el;
    Rational s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        el.push_back(c[i].first);
        s += c[i].second;
      }
    }
    if (s > best && is_member_exhaustive(FiniteSet(el), fam)) best = s;
  }
  return best;
}

std::string instance_name(const FiniteVector& x) {
  std::string out = "x=";
  for (const auto& [i, v] : x.coords()) out += rs(v) + "e" + std::to_string(i) + " ";
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

SuiteResult families_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  Rng rng(cfg.seed);
  Report membership;
  membership.claim = "online membership agrees with exhaustive decomposition";
  const std::vector<FamilyKind> kinds = {{Ladder::S, 0}, {Ladder::S, 1}, {Ladder::S, 2}, {Ladder::S, 3},
                                         {Ladder::A, 1}, {Ladder::A, 2}, {Ladder::A, 3}};
  std::size_t mismatches = 0;
  for (std::size_t c = 0; c < cfg.cases; ++c) {
    FiniteSet set = random_support(rng, 8, 16);
    for (const auto& fam : kinds) {
      bool a = is_member(set, fam);
      bool b = is_member_exhaustive(set, fam);
      if (a != b) {
        ++mismatches;
        std::string el;
        for (Index i : set) el += std::to_string(i) + " ";
        membership.check(to_string(fam) + " {" + el + "}", false, a ? "online yes, exhaustive no" : "online no, exhaustive yes");
      }
    }
  }
  membership.check("mismatches", mismatches == 0, std::to_string(mismatches) + " of " +
                                                      std::to_string(cfg.cases * kinds.size()));
  Report sup;
  sup.claim = "family_sup equals enumeration of all subsets";
  std::size_t sup_mismatches = 0;
  for (std::size_t c = 0; c < cfg.cases; ++c) {
    FiniteVector x = random_vector(rng, true);
    std::map<Index, Rational> w(x.coords().begin(), x.coords().end());
    for (FamilyKind fam : {FamilyKind{Ladder::S, 1}, FamilyKind{Ladder::S, 2}, FamilyKind{Ladder::A, 3}}) {
      Rational a = family_sup(w, fam);
      Rational b = exhaustive_sup(x, fam);
      if (a != b) {
        ++sup_mismatches;
        sup.check(to_string(fam) + " " + instance_name(x), false, rs(a) + " vs " + rs(b));
      }
    }
  }
  sup.check("mismatches", sup_mismatches == 0, std::to_string(sup_mismatches) + " of " + std::to_string(cfg.cases * 3));
  res.passed = membership.passed() && sup.passed();
  res.summary = std::to_string(cfg.cases) + " random sets, " + std::to_string(cfg.cases) + " random weight vectors";
  res.reports = {{"membership", membership}, {"sup", sup}};
  return res;
}

SuiteResult norms_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  Rng rng(cfg.seed + 1);
  res.passed = true;
  for (Ladder ladder : {Ladder::S, Ladder::A}) {
    SpaceSpec space;
    space.ladder = ladder;
    space.theta = ladder == Ladder::S ? ThetaSequence::reciprocal_shift() : ThetaSequence::log_enclosure();
    Report r;
    r.claim = "norm equals the exhaustive reference norm (" + to_string(ladder) + " ladder)";
    std::size_t mismatches = 0;
    for (std::size_t c = 0; c < cfg.cases; ++c) {
      FiniteVector x = random_vector(rng, false);
      Rational a = norm(x, space);
      Rational b = brute_force_norm(x, space);
      if (a != b) {
        ++mismatches;
        r.check(instance_name(x), false, rs(a) + " vs " + rs(b));
      }
    }
    r.check("mismatches", mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(cfg.cases));
    res.passed = res.passed && r.passed();
    res.reports.emplace_back(to_string(ladder), r);
  }
  res.summary = std::to_string(cfg.cases) + " random vectors per ladder";
  return res;
}

struct AverageCase {
  std::string name;
  SpecialAverage x;
};

std::vector<AverageCase> standard_averages(const SpaceSpec& space) {
  std::vector<AverageCase> out;
  for (int n : {1, 2}) {
    for (Rational eps : {Rational(1, 2), Rational(1, 4)}) {
      for (Index start : {3, 5, 10}) {
        std::string name = "n=" + std::to_string(n) + " eps=" + rs(eps) + " start=" + std::to_string(start);
        out.push_back({name, make_basic_average(n, eps, start, space.ladder)});
      }
    }
  }
  return out;
}

SuiteResult lemma36_suite(const SuiteConfig&) {
  SuiteResult res;
  SpaceSpec space;
  res.passed = true;
  auto averages = standard_averages(space);
  for (const auto& c : averages) {
    Report r = check_lemma36(c.x, space);
    res.passed = res.passed && r.passed();
    res.reports.emplace_back(c.name, r);
  }
  res.summary = std::to_string(averages.size()) + " averages";
  return res;
}

SuiteResult lemma37_suite(const SuiteConfig& cfg) {
  SuiteResult res;
  SpaceSpec space;
  const Rational eps = 1;
  auto averages = standard_averages(space);
  res.passed = true;
  std::string summary;
  for (int k : {1, 2}) {
    Report search;
    search.claim = "estimate_w(1, " + std::to_string(k) + ") terminates";
    std::optional<int> w;
    try {
      WSearch ws;
      ws.budget = cfg.budget;
      w = estimate_w(eps, k, space, ws);
      search.check("w", true, std::to_string(*w));
    } catch (const BudgetExhausted& e) {
      search.check("w", false, e.what());
    }
    res.passed = res.passed && search.passed();
    res.reports.emplace_back("w k=" + std::to_string(k), search);
    std::size_t failed = 0;
    std::size_t measured = 0;
    for (const auto& c : averages) {
      Report r = check_lemma37(c.x, k, eps, space);
      if (r.passed()) ++measured;
      if (w && c.x.rank >= *w) {
        res.passed = res.passed && r.passed();
        if (!r.passed()) ++failed;
      } else {
        r.flag("below-w-or-w-unknown");
        for (auto& wit : r.witnesses) {
          if (wit.holds) {
            wit.value = std::string(*wit.holds ? "holds: " : "fails: ") + wit.value;
            wit.holds.reset();
          }
        }
      }
      res.reports.emplace_back(c.name + " k=" + std::to_string(k), r);
    }
    summary += "k=" + std::to_string(k) + ": " + (w ? "w=" + std::to_string(*w) + ", " + std::to_string(failed) + " failing"
                                                     : std::string("w not found")) +
               " (" + std::to_string(measured) + "/" + std::to_string(averages.size()) + " averages hold); ";
  }
  res.summary = summary.substr(0, summary.size() - 2);
  return res;
}

struct PeriodicInstance {
  std::string name;
  std::vector<int> ranks;
  int M;
  int N;
  Rational coefficient_eps;
};

SuiteResult prop43_suite(const SuiteConfig&) {
  SuiteResult res;
  SpaceSpec space;
  res.passed = true;
  const std::vector<PeriodicInstance> instances = {
      {"M=2 N=1", {1, 2}, 2, 1, Rational(3, 4)},
      {"M=3 N=1", {1, 1, 2}, 3, 1, Rational(1, 2)},
  };
  for (const auto& inst : instances) {
    std::vector<FiniteVector> xs;
    Index start = 4;
    for (int rank : inst.ranks) {
      SpecialAverage a = make_basic_average(rank, Rational(1, 2), start, space.ladder);
      start = a.vector.max_index() + 1;
      xs.push_back(a.vector);
    }
    const Index n0 = 1;
    std::vector<Rational> a = periodic_coefficients(xs, static_cast<int>(n0), inst.coefficient_eps, space.ladder);
    PeriodicAverage avg = make_periodic_average(xs, a);
    RisParams params;
    params.epsilon = inst.coefficient_eps;
    Rational t0 = space.theta.value(n0);
    params.epsilon_tilde = t0 * t0;
    params.M = inst.M;
    params.N = inst.N;
    params.n.push_back(n0);
    for (int i = 0; i < inst.M; ++i) params.n.push_back(inst.ranks[static_cast<std::size_t>(i)]);
    params.n.push_back(params.n.back() + 1);
    for (int i = 0; i < inst.M + 2; ++i) params.q.push_back(i + 1);
    Report r = check_prop43(avg, params, space);

    // Independent recomputation of the coefficient condition and the bound.
    Report audit;
    audit.claim = "premise report and general estimate";
    Rational sup_a = *std::max_element(a.begin(), a.end());
    Rational lhs = 4 * (Rational(1, inst.M) + sup_a);
    Rational rhs = (1 - space.theta.value(1)) * t0 * t0 * t0;
    bool condition = lhs <= rhs;
    const Premise* reported = nullptr;
    for (const auto& p : r.premises) {
      if (p.name.rfind("4(1/M", 0) == 0) reported = &p;
    }
    audit.check("coefficient condition reported correctly", reported && reported->holds == condition,
                rs(lhs) + (condition ? " <= " : " > ") + rs(rhs));
    audit.check("premises reported as failing", !r.premises_hold());
    Rational value = norm(avg.x.scaled(1 / t0), space);
    Rational eps1 = (1 + params.epsilon_tilde) * space.theta.value(params.n[1]);
    Rational eps2 = 2 * (Rational(1, inst.M) + sup_a) / (1 - space.theta.value(1));
    Rational bound = (1 + params.epsilon) * (1 + params.epsilon_tilde) + (eps1 + eps2) / t0;
    audit.check("general estimate", value <= bound, rs(value) + " <= " + rs(bound));
    audit.check("checker agrees", r.passed());
    res.passed = res.passed && audit.passed();
    res.reports.emplace_back(inst.name, r);
    res.reports.emplace_back(inst.name + " audit", audit);
  }
  res.summary = "2 periodic averages; coefficient condition unattainable at this scale, general estimate checked";
  return res;
}

CoreTree branching_core() { return CoreTree{1, {CoreTree{1, {CoreTree{1, {}}}}, CoreTree{1, {CoreTree{1, {}}}}}}; }

SuiteResult lemma410_suite(const SuiteConfig&) {
  SuiteResult res;
  SpaceSpec space;
  res.passed = true;
  struct Case {
    std::string name;
    CoreTree core;
    BundleOptions options;
  };
  BundleOptions relaxed;
  relaxed.relaxed = true;
  relaxed.leaf_epsilon = Rational(1, 2);
  relaxed.periodic_epsilon = Rational(1, 2);
  const std::vector<Case> cases = {
      {"chain [1,1]", CoreTree::chain({1, 1}), {}},
      {"branching", branching_core(), {}},
      {"chain [1,1] relaxed", CoreTree::chain({1, 1}), relaxed},
  };
  for (const auto& c : cases) {
    RisBundle b = build_ris_bundle(c.core, 2, 1, space, c.options);
    Report rc = check_r_conditions(c.core, {}, space);
    Report r = check_lemma410(b, c.core, space, rc);
    Report basics;
    basics.claim = "f(x) = 1, f is valid, ||x|| and f(x)/||x||";
    Rational fx = eval(b.functional(), b.vector(), space.theta);
    basics.check("f(x) = 1", fx == 1, rs(fx));
    ValidationReport v = validate(b.functional(), space);
    basics.check("f valid", v.ok, v.message);
    Rational nx = norm(b.vector(), space);
    basics.note("||x||", rs(nx));
    basics.note("f(x)/||x||", rs(fx / nx));
    bool ok = basics.passed() && (c.options.relaxed && c.options.leaf_epsilon ? true : r.passed());
    res.passed = res.passed && ok;
    res.reports.emplace_back(c.name, basics);
    res.reports.emplace_back(c.name + " node bounds", r);
  }
  res.summary = "height-2 bundles: node bounds on standard instances, identities on all";
  return res;
}

struct BranchingBundles {
  SpaceSpec space;
  CoreTree core = branching_core();
  RisBundle b2;
  RisBundle b3;
};

BranchingBundles branching_bundles() {
  BranchingBundles out;
  out.b2 = build_ris_bundle(out.core, 2, 1, out.space);
  out.b3 = build_ris_bundle(out.core, 2, out.b2.vector().max_index() + 1, out.space);
  return out;
}

SuiteResult lemma53_suite(const SuiteConfig&) {
  SuiteResult res;
  BranchingBundles bb = branching_bundles();
  res.passed = true;
  const Rational c(1, 2);
  for (Index r : {0, 1}) {
    LabelledBundles L = r == 0 ? LabelledBundles{{2, &bb.b2}} : LabelledBundles{{2, &bb.b2}, {3, &bb.b3}};
    for (int beta : {1, 2}) {
      Lemma53Result out = check_lemma53(L, bb.core, {beta}, r, c, bb.space);
      bool ok = out.report.passed() && out.certificate && validate(*out.certificate, bb.space).ok && out.ratio <= 2;
      res.passed = res.passed && ok;
      res.reports.emplace_back("beta=(" + std::to_string(beta) + ") r=" + std::to_string(r), out.report);
    }
  }
  res.summary = "branching core, c = 1/2, beta on level 1, r in {0, 1}";
  return res;
}

SuiteResult lemma54_suite(const SuiteConfig&) {
  SuiteResult res;
  BranchingBundles bb = branching_bundles();
  res.passed = true;
  LabelledBundles L{{2, &bb.b2}, {3, &bb.b3}};
  for (std::size_t j : {1, 2}) {
    Report r = check_lemma54(L, bb.core, j, 1, Rational(1, 2), bb.space);
    res.passed = res.passed && r.passed();
    res.reports.emplace_back("j=" + std::to_string(j), r);
  }
  res.summary = "branching core, c = 1/2, r = 1";
  return res;
}

SuiteResult operator_suite(const SuiteConfig&) {
  SuiteResult res;
  SpaceSpec space;
  OperatorOptions opt;
  opt.c = Rational(1, 4);
  opt.bundle.relaxed = true;
  OperatorSpec T = build_operator(CoreTree::chain({1, 1, 6, 32, 248}), {4, 16, 88, 704}, {2, 2, 2}, space, opt);
  Report inv = verify_operator(T);
  NoncompactnessWitness nw = noncompactness_witness(T);

  Report p21;
  p21.claim = "sum_{j<=10} (j 4^-j + 4 2^-j) plus certified tail";
  std::vector<Rational> eps;
  std::vector<Index> N;
  Rational direct = 0;
  for (int j = 1; j <= 10; ++j) {
    eps.push_back(1 / pow(Rational(4), j));
    N.push_back(Index{1} << j);
    direct += Rational(j) / pow(Rational(4), j) + 4 / pow(Rational(2), j);
  }
  Prop21Bound pb = prop21_bound(eps, N, 10, TailMajorant{Rational(1, 4), 2});
  p21.check("partial sum", pb.partial == direct, rs(pb.partial) + " = " + rs(direct));
  p21.check("tail certified", pb.certified && pb.tail.has_value(), pb.tail ? rs(*pb.tail) : "none");
  p21.check("total", pb.tail && pb.total == pb.partial + *pb.tail, rs(pb.total));

  Report probe;
  probe.claim = "kernel probes and the decreasing estimate";
  std::vector<FiniteVector> kernel;
  Index st = T.bundles.back().vector().max_index() + 1;
  for (Index i = 0; i < 3; ++i) kernel.push_back(FiniteVector::unit(st + i));
  std::optional<Rational> previous;
  for (std::size_t j0 : {1, 2, 3}) {
    ProbeResult pr = singularity_probe(T, kernel, j0);
    std::string tag = "j0=" + std::to_string(j0);
    probe.check(tag + " (||x||_G, ||Tx||) = (0, 0)", sgn(pr.g_norm) == 0 && sgn(pr.t_norm) == 0,
                "(" + rs(pr.g_norm) + ", " + rs(pr.t_norm) + ")");
    if (previous) probe.check(tag + " estimate decreases", pr.rhs < *previous, rs(pr.rhs) + " < " + rs(*previous));
    probe.note(tag + " estimate", rs(pr.rhs));
    previous = pr.rhs;
  }
  res.passed = inv.passed() && nw.report.passed() && sgn(nw.delta) > 0 && p21.passed() && probe.passed();
  res.summary = "3 bundles, c = 1/4, r = (4, 16, 88, 704), delta = " + rs(nw.delta);
  res.reports = {{"invariants", inv}, {"noncompactness", nw.report}, {"prop21", p21}, {"probe", probe}};
  return res;
}

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"families", families_suite}, {"norms", norms_suite},       {"lemma36", lemma36_suite},
      {"lemma37", lemma37_suite},   {"prop43", prop43_suite},     {"lemma410", lemma410_suite},
      {"lemma53", lemma53_suite},   {"lemma54", lemma54_suite},   {"operator", operator_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& config) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = fn(config);
    } catch (const VerificationError& e) {
      r.passed = false;
      r.summary = std::string("construction failed: ") + e.what();
    } catch (const BudgetExhausted& e) {
      r.passed = false;
      r.summary = std::string("budget exhausted: ") + e.what();
    }
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw InputError("unknown suite: " + name);
}

}  // namespace tsirelson
