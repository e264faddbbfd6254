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


#include "tsirelson/ris.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tsirelson/averages.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/norm.hpp"

namespace tsirelson {

namespace {

std::string path_string(const CorePath& path) {
  std::string out = "(";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  return out + ")";
}

void require_block_sequence(const std::vector<FiniteVector>& xs) {
  for (std::size_t p = 0; p < xs.size(); ++p) {
    if (xs[p].is_zero()) throw InputError("block sequence contains a zero vector at position " + std::to_string(p + 1));
    if (p && !precedes(xs[p - 1], xs[p])) {
      throw InputError("vectors " + std::to_string(p) + " and " + std::to_string(p + 1) + " are not successive");
    }
  }
}

// Least j >= from with theta_j * mass <= bound.
Index weight_guard(const ThetaSequence& theta, Index from, const Rational& mass, const Rational& bound) {
  Index j = std::max<Index>(from, 1);
  while (theta.value(j) * mass > bound) {
    if (++j > (Index{1} << 16)) throw BudgetExhausted("weight guard beyond 65536");
  }
  return j;
}

std::string rs(const Rational& v) { return to_string(v); }

}  // namespace

Report check_p1(const RisParams& params, const SpaceSpec& space) {
  if (params.M < 1 || params.N < 1) throw InputError("M and N must be positive");
  const std::size_t len = static_cast<std::size_t>(params.M) + 2;
  if (params.n.size() != len || params.q.size() != len) throw InputError("ladders need M + 2 entries each");
  const ThetaSequence& theta = space.theta;
  Report report;
  report.claim = "(P1) ladder conditions";
  std::vector<Index> chain;
  for (std::size_t i = 0; i < len; ++i) {
    chain.push_back(params.q[i]);
    if (i + 1 < len) chain.push_back(params.n[i]);
  }
  bool increasing = chain.front() >= 1;
  for (std::size_t i = 1; i < chain.size(); ++i) increasing = increasing && chain[i - 1] < chain[i];
  report.premise("q_0 < n_0 < q_1 < ... < q_{M+1}", increasing);
  if (chain.front() < 1) return report;
  Rational tn0 = theta.value(params.n[0]);
  report.premise("theta_{q_1} <= eps~ theta_{n_0}^2 / 2", theta.value(params.q[1]) <= params.epsilon_tilde * tn0 * tn0 / 2);
  if (params.w_value) {
    report.premise("n_0 >= w(eps, q_0)", params.n[0] >= *params.w_value, "w = " + std::to_string(*params.w_value));
    report.flag("empirical-w");
  } else {
    report.premise("n_0 >= w(eps, q_0)", false, "w not supplied");
  }
  for (std::size_t i = 0; i + 1 < len; ++i) {
    Rational tni = theta.value(params.n[i]);
    report.premise("theta_{q_" + std::to_string(i + 1) + "} <= theta_{n_" + std::to_string(i) + "}^2",
                   theta.value(params.q[i + 1]) <= tni * tni);
  }
  report.flag("p1-last-index-unchecked");
  return report;
}

Report check_p_conditions(const std::vector<FiniteVector>& xs, const RisParams& params, const SpaceSpec& space) {
  Report p1 = check_p1(params, space);
  if (xs.size() != static_cast<std::size_t>(params.M) * static_cast<std::size_t>(params.N)) {
    throw InputError("expected N*M = " + std::to_string(params.M * params.N) + " vectors, got " + std::to_string(xs.size()));
  }
  require_block_sequence(xs);
  const ThetaSequence& theta = space.theta;
  Report report;
  report.claim = "(P2)/(P3) for a periodic block sequence";
  report.absorb(p1, "");
  Rational scale = params.c * (1 + params.epsilon_tilde);
  for (std::size_t p = 0; p < xs.size(); ++p) {
    std::size_t i = p % static_cast<std::size_t>(params.M) + 1;
    Index upper2 = params.q[i];
    Index from3 = params.q[i + 1];
    Rational bound3 = scale * theta.value(params.n[i]);
    Index guard = weight_guard(theta, from3, xs[p].l1_norm(), bound3);
    Index top = std::max(upper2, guard - 1);
    std::vector<Rational> values = top >= 1 ? weighted_norms(xs[p], top, space) : std::vector<Rational>{};
    std::string tag = "p=" + std::to_string(p + 1) + " j=";
    for (Index j = 1; j <= upper2; ++j) {
      Rational bound = scale * theta.value(j);
      const Rational& v = values[static_cast<std::size_t>(j - 1)];
      report.check("P2 " + tag + std::to_string(j), v <= bound, rs(v) + " <= " + rs(bound));
    }
    for (Index j = from3; j < guard; ++j) {
      const Rational& v = values[static_cast<std::size_t>(j - 1)];
      report.check("P3 " + tag + std::to_string(j), v <= bound3, rs(v) + " <= " + rs(bound3));
    }
    report.note("P3 guard p=" + std::to_string(p + 1), std::to_string(guard));
  }
  return report;
}

PeriodicAverage make_periodic_average(std::vector<FiniteVector> xs, std::vector<Rational> a) {
  if (xs.empty()) throw InputError("periodic average of an empty sequence");
  if (a.size() != xs.size()) throw InputError("misaligned supports: one coefficient per vector is required");
  require_block_sequence(xs);
  Rational total = 0;
  for (const auto& v : a) {
    if (sgn(v) <= 0) throw InputError("coefficients must be positive");
    total += v;
  }
  if (total != 1) throw InputError("coefficients must sum to 1");
  FiniteVector x;
  for (std::size_t p = 0; p < xs.size(); ++p) x = x + xs[p].scaled(a[p]);
  return {std::move(xs), std::move(a), std::move(x)};
}

std::vector<Rational> periodic_coefficients(const std::vector<FiniteVector>& xs, int n0, const Rational& epsilon,
                                            Ladder ladder) {
  require_block_sequence(xs);
  PointSource points = [&xs](std::size_t pos) -> std::optional<Index> {
    if (pos >= xs.size()) return std::nullopt;
    return xs[pos].max_index();
  };
  PlacedAverage placed = average_on_points(n0, epsilon, ladder, points, 0, 0, xs.size());
  if (placed.positions.size() != xs.size()) {
    throw VerificationError("the average uses " + std::to_string(placed.positions.size()) + " of " +
                            std::to_string(xs.size()) + " vectors");
  }
  return placed.coefficients;
}

Report check_prop43(const PeriodicAverage& avg, const RisParams& params, const SpaceSpec& space) {
  const ThetaSequence& theta = space.theta;
  Report report;
  report.claim = "||theta_{n_0}^{-1} x|| estimates for a periodic average";
  report.absorb_as_premises(check_p_conditions(avg.xs, params, space), "");
  Index n0 = params.n.at(0);
  Rational t0 = theta.value(n0);
  report.premise("theta_{n_0} <= 1/10", t0 <= Rational(1, 10), rs(t0));
  report.premise("0 < eps, eps~ <= theta_{n_0}^2",
                 sgn(params.epsilon) > 0 && sgn(params.epsilon_tilde) > 0 && params.epsilon <= t0 * t0 &&
                     params.epsilon_tilde <= t0 * t0);
  for (std::size_t p = 0; p < avg.xs.size(); ++p) {
    Rational v = norm(avg.xs[p], space);
    report.premise("||x_" + std::to_string(p + 1) + "|| <= 1", v <= 1, rs(v));
  }
  std::map<Index, Rational> placed;
  for (std::size_t p = 0; p < avg.xs.size(); ++p) placed[avg.xs[p].max_index()] = avg.a.at(p);
  report.premise("coefficients form an (n_0, eps)-basic average at the support maxima",
                 check_scc(placed, static_cast<int>(n0), params.epsilon, space.ladder));

  Rational sup_a = *std::max_element(avg.a.begin(), avg.a.end());
  Rational skip = Rational(1, params.M) + sup_a;
  Rational one_minus = 1 - theta.value(1);
  Rational lhs42 = 4 * skip;
  Rational rhs42 = one_minus * t0 * t0 * t0;
  bool coefficient_condition = lhs42 <= rhs42;
  report.premise("4(1/M + sup a_p) <= (1 - theta_1) theta_{n_0}^3", coefficient_condition, rs(lhs42) + " vs " + rs(rhs42));

  FiniteVector y = avg.x.scaled(1 / t0);
  Rational value = norm(y, space);
  report.note("||theta_{n_0}^{-1} x||", rs(value));
  Rational eps1 = (1 + params.epsilon_tilde) * theta.value(params.n.at(1));
  Rational eps2 = 2 * skip / one_minus;
  Rational general = (1 + params.epsilon) * (1 + params.epsilon_tilde) + (eps1 + eps2) / t0;
  report.note("eps_1", rs(eps1));
  report.note("eps_2", rs(eps2));
  report.check("general estimate", value <= general, rs(value) + " <= " + rs(general));

  bool assert_sharp = report.premises_hold();
  if (!assert_sharp) report.flag("premises-relaxed");
  auto conclude = [&](const std::string& name, bool holds, const std::string& detail) {
    if (assert_sharp) {
      report.check(name, holds, detail);
    } else {
      report.note(name + " (measured)", std::string(holds ? "holds: " : "fails: ") + detail);
    }
  };
  conclude("norm <= 1 + 2 theta_{n_0}", value <= 1 + 2 * t0, rs(value) + " <= " + rs(1 + 2 * t0));
  Rational factor = 1 + 3 * t0;
  Index q0 = params.q.at(0);
  Index q1 = params.q.at(1);
  Rational small_bound = factor * t0;
  Index guard = weight_guard(theta, q1, y.l1_norm(), small_bound);
  Index top = std::max(q0, guard - 1);
  std::vector<Rational> values = top >= 1 ? weighted_norms(y, top, space) : std::vector<Rational>{};
  for (Index j = 1; j <= q0; ++j) {
    const Rational& v = values[static_cast<std::size_t>(j - 1)];
    Rational bound = factor * theta.value(j);
    conclude("large weight j=" + std::to_string(j), v <= bound, rs(v) + " <= " + rs(bound));
  }
  for (Index j = q1; j < guard; ++j) {
    const Rational& v = values[static_cast<std::size_t>(j - 1)];
    conclude("small weight j=" + std::to_string(j), v <= small_bound, rs(v) + " <= " + rs(small_bound));
  }
  report.note("small weight guard", std::to_string(guard));
  return report;
}

namespace {

Rational standard_leaf_epsilon(const ThetaSequence& theta, Index m) {
  Rational t = theta.value(m);
  return t * t;
}

Rational standard_periodic_epsilon(const ThetaSequence& theta, Index m) {
  Rational t = theta.value(m);
  return t * t * t / 4;
}

class BundleBuilder {
 public:
  BundleBuilder(const CoreTree& core, std::size_t height, const SpaceSpec& space, const BundleOptions& options)
      : core_(core), height_(height), space_(space), options_(options) {}

  std::vector<BundleNode> nodes;

  // Appends the subtree of alpha (preorder) and returns the root's position.
  std::size_t build(const CorePath& alpha, const CorePath& mu, Index start) {
    const CoreTree* node = descend(core_, mu);
    if (!node) throw InputError("core tree has no node " + path_string(mu));
    std::size_t self = nodes.size();
    nodes.push_back({alpha, mu, false, node->m, 1, 0, 0, {}, {}, {}});
    if (alpha.size() + 1 == height_) {
      build_basic(self, *node, start);
    } else {
      build_periodic(self, *node, start);
    }
    return self;
  }

 private:
  void build_basic(std::size_t self, const CoreTree& node, Index start) {
    Rational eps = options_.leaf_epsilon.value_or(standard_leaf_epsilon(space_.theta, node.m));
    SpecialAverage avg;
    try {
      avg = make_basic_average(static_cast<int>(node.m), eps, start, space_.ladder, options_.retry_budget, options_.max_points);
    } catch (const VerificationError& e) {
      throw VerificationError("node " + path_string(nodes[self].path) + ": " + e.what());
    }
    Rational t = space_.theta.value(node.m);
    std::vector<NormingTree> leaves;
    std::vector<std::size_t> kids;
    CorePath alpha = nodes[self].path;
    CorePath mu = nodes[self].core;
    int k = 0;
    for (const auto& [i, a] : avg.vector.coords()) {
      CorePath child = alpha;
      child.push_back(++k);
      kids.push_back(nodes.size());
      nodes.push_back({child, mu, true, 0, a, 0, 0, FiniteVector::unit(i), NormingTree::Leaf(1, i), {}});
      leaves.push_back(NormingTree::Leaf(1, i));
    }
    BundleNode& me = nodes[self];
    me.epsilon = eps;
    me.epsilon_tilde = 0;
    me.x = avg.vector.scaled(1 / t);
    me.f = NormingTree::Internal(node.m, std::move(leaves));
    me.children = std::move(kids);
  }

  void build_periodic(std::size_t self, const CoreTree& node, Index start) {
    if (node.children.empty()) {
      throw InputError("core node " + path_string(nodes[self].core) + " needs successors for a bundle of height " +
                       std::to_string(height_));
    }
    const std::size_t M = node.children.size();
    Rational eps = options_.periodic_epsilon.value_or(standard_periodic_epsilon(space_.theta, node.m));
    Rational t = space_.theta.value(node.m);
    const CorePath alpha = nodes[self].path;
    const CorePath mu = nodes[self].core;
    for (int attempt = 0; attempt <= options_.retry_budget; ++attempt, ++start) {
      nodes.resize(self + 1);
      std::vector<std::size_t> kids;
      std::vector<std::size_t> marks;
      Index next = start;
      PointSource points = [&](std::size_t pos) -> std::optional<Index> {
        while (kids.size() <= pos) {
          if (kids.size() >= options_.max_points) return std::nullopt;
          CorePath child = alpha;
          child.push_back(static_cast<int>(kids.size() + 1));
          CorePath image = mu;
          image.push_back(static_cast<int>(kids.size() % M + 1));
          std::size_t at = build(child, image, next);
          kids.push_back(at);
          marks.push_back(nodes.size());
          next = nodes[at].x.max_index() + 1;
        }
        return nodes[kids[pos]].x.max_index();
      };
      PlacedAverage placed;
      try {
        placed = average_on_points(static_cast<int>(node.m), eps, space_.ladder, points, 0, 0, options_.max_points, M);
      } catch (const VerificationError&) {
        continue;
      }
      std::size_t used = placed.positions.size();
      nodes.resize(marks[used - 1]);
      kids.resize(used);
      std::vector<Index> minima;
      for (std::size_t k : kids) minima.push_back(nodes[k].x.min_index());
      if (!is_member(FiniteSet(minima), space_.family(node.m))) continue;
      FiniteVector sum;
      std::vector<NormingTree> fs;
      for (std::size_t p = 0; p < used; ++p) {
        nodes[kids[p]].coefficient = placed.coefficients[p];
        sum = sum + nodes[kids[p]].x.scaled(placed.coefficients[p]);
        fs.push_back(nodes[kids[p]].f);
      }
      BundleNode& me = nodes[self];
      me.epsilon = eps;
      me.epsilon_tilde = t * t;
      me.x = sum.scaled(1 / t);
      me.f = NormingTree::Internal(node.m, std::move(fs));
      me.children = std::move(kids);
      return;
    }
    throw VerificationError("node " + path_string(alpha) + ": no periodic average within the retry budget");
  }

  const CoreTree& core_;
  std::size_t height_;
  const SpaceSpec& space_;
  const BundleOptions& options_;
};

// Largest family index reached along a root-to-level-(height-1) core path.
Index support_rank_bound(const CoreTree& core, std::size_t height, Ladder ladder) {
  Index best = 0;
  std::function<void(const CoreTree&, std::size_t, Index)> walk = [&](const CoreTree& node, std::size_t level, Index acc) {
    Index here = ladder == Ladder::S ? acc + node.m : acc * node.m;
    if (level + 1 == height) {
      best = std::max(best, here);
      return;
    }
    for (const auto& child : node.children) walk(child, level + 1, here);
  };
  walk(core, 0, ladder == Ladder::S ? 0 : 1);
  return best;
}

}  // namespace

RisBundle build_ris_bundle(const CoreTree& core, std::size_t height, Index min_start, const SpaceSpec& space,
                           const BundleOptions& options) {
  if (height < 1) throw InputError("bundle height must be >= 1");
  if (min_start < 1) throw InputError("min_start must be >= 1");
  if (!options.relaxed && (options.leaf_epsilon || options.periodic_epsilon)) {
    throw InputError("epsilon overrides require relaxed mode");
  }
  if (core.depth() + 1 < height) throw InputError("core tree is shallower than height - 1");
  BundleBuilder builder(core, height, space, options);
  builder.build({}, {}, min_start);
  RisBundle bundle;
  bundle.height = height;
  bundle.ladder = space.ladder;
  bundle.relaxed = options.relaxed;
  bundle.nodes = std::move(builder.nodes);
  bundle.p_bound = support_rank_bound(core, height, space.ladder);
  FiniteSet support = bundle.vector().support();
  if (space.ladder == Ladder::A) {
    bundle.p_n = static_cast<Index>(support.size());
  } else {
    Index p = 0;
    while (p < bundle.p_bound && !is_member(support, space.family(p))) ++p;
    bundle.p_n = p;
  }
  Report checks = verify_bundle(bundle, core, space);
  if (!checks.passed()) {
    for (const auto& w : checks.witnesses) {
      if (w.holds && !*w.holds) throw VerificationError("bundle check failed: " + w.name + " " + w.value);
    }
  }
  return bundle;
}

Report verify_bundle(const RisBundle& bundle, const CoreTree& core, const SpaceSpec& space) {
  const ThetaSequence& theta = space.theta;
  Report report;
  report.claim = "periodic RIS tree-analysis";
  report.premise("ladder matches space", bundle.ladder == space.ladder);
  if (bundle.nodes.empty()) {
    report.check("non-empty", false);
    return report;
  }
  const std::size_t n = bundle.height;
  bool leaves_ok = true;
  bool basic_ok = true;
  bool periodic_ok = true;
  bool v_ok = true;
  bool standard_eps = true;
  std::string first_bad;
  auto bad = [&](bool& flag, const BundleNode& node, const std::string& what) {
    if (flag && first_bad.empty()) first_bad = what + " at " + path_string(node.path);
    flag = false;
  };
  std::map<std::size_t, std::set<Index>> weights;
  std::map<CorePath, std::vector<FiniteSet>> per_core;
  for (const auto& node : bundle.nodes) {
    const std::size_t level = node.path.size();
    if (node.terminal) {
      if (level != n || node.x.size() != 1 || node.x.coords()[0].second != 1 || !node.children.empty()) {
        bad(leaves_ok, node, "terminal node");
      }
      continue;
    }
    if (level >= n) bad(leaves_ok, node, "non-terminal node at depth >= height");
    const CoreTree* image = descend(core, node.core);
    if (!image || image->m != node.m || node.core.size() != level) {
      bad(v_ok, node, "core image");
      continue;
    }
    weights[level].insert(node.m);
    per_core[node.core].push_back(node.x.support());
    Rational t = theta.value(node.m);
    std::map<Index, Rational> coeffs;
    for (std::size_t k : node.children) {
      const BundleNode& child = bundle.nodes[k];
      coeffs[child.x.max_index()] = child.coefficient;
      if (!child.terminal) {
        CorePath expect = node.core;
        int pos = child.path.back();
        expect.push_back(static_cast<int>((pos - 1) % static_cast<int>(image->children.size())) + 1);
        if (child.core != expect) bad(v_ok, child, "v(alpha k)");
      }
    }
    FiniteVector sum;
    for (std::size_t k : node.children) sum = sum + bundle.nodes[k].x.scaled(bundle.nodes[k].coefficient);
    bool scaled_ok = node.x == sum.scaled(1 / t);
    if (level + 1 == n) {
      if (!scaled_ok || !check_scc(coeffs, static_cast<int>(node.m), node.epsilon, space.ladder)) {
        bad(basic_ok, node, "basic average");
      }
      if (node.epsilon != standard_leaf_epsilon(theta, node.m)) standard_eps = false;
    } else {
      bool period = !image->children.empty() && node.children.size() % image->children.size() == 0;
      if (!scaled_ok || !period || !check_scc(coeffs, static_cast<int>(node.m), node.epsilon, space.ladder)) {
        bad(periodic_ok, node, "periodic average");
      }
      if (node.epsilon != standard_periodic_epsilon(theta, node.m) || node.epsilon_tilde != theta.value(node.m) * theta.value(node.m)) {
        standard_eps = false;
      }
    }
  }
  report.premise("standard epsilons", standard_eps);
  if (bundle.relaxed || !standard_eps) report.flag("premises-relaxed");
  report.check("terminal nodes are unit vectors at depth n", leaves_ok, first_bad);
  report.check("depth n-1 nodes are seminormalized basic averages", basic_ok, first_bad);
  report.check("shallower nodes are seminormalized periodic averages", periodic_ok, first_bad);
  report.check("v(alpha) follows the period", v_ok, first_bad);

  CoreIndex index(core);
  bool levels_ok = true;
  std::string level_detail;
  for (std::size_t l = 0; l < n; ++l) {
    std::set<Index> expect;
    for (std::size_t j : index.level_nodes(l)) expect.insert(index.m(j));
    if (weights[l] != expect) {
      levels_ok = false;
      if (level_detail.empty()) level_detail = "level " + std::to_string(l);
    }
  }
  report.check("weights per level match the core", levels_ok, level_detail);

  bool admissible = true;
  std::string adm_detail;
  for (const auto& [mu, sets] : per_core) {
    auto j = index.find(mu);
    if (!j) continue;
    Index rank = space.ladder == Ladder::S ? index.ord(*j) : 1;
    if (space.ladder == Ladder::A) {
      for (auto k = index.parent(*j); k; k = index.parent(*k)) rank *= index.m(*k);
    }
    if (!is_admissible(sets, space.family(rank))) {
      admissible = false;
      if (adm_detail.empty()) adm_detail = path_string(mu);
    }
  }
  report.check("per-core-node families admissible", admissible, adm_detail);

  const FiniteVector& x = bundle.vector();
  const NormingTree& f = bundle.functional();
  Rational fx = eval(f, x, theta);
  report.check("f(x) = 1", fx == 1, rs(fx));
  ValidationReport valid = validate(f, space);
  report.check("f is a valid tree-analysis", valid.ok, valid.message);
  FiniteSet fs = f.support();
  FiniteSet xs = x.support();
  report.check("supp f within supp x", std::includes(xs.begin(), xs.end(), fs.begin(), fs.end()));
  report.note("p_n", std::to_string(bundle.p_n));
  report.check("supp x in F_{p_bound}", is_member(xs, space.family(bundle.p_bound)), std::to_string(bundle.p_bound));
  return report;
}

Report check_r_conditions(const CoreTree& core, const std::vector<Index>& q, const SpaceSpec& space, const WOracle& w) {
  const ThetaSequence& theta = space.theta;
  CoreIndex index(core);
  Report report;
  report.claim = "core tree conditions (R0)-(R2)";
  Rational one_minus = 1 - theta.value(1);
  for (std::size_t j = 0; j < index.size(); ++j) {
    std::string tag = " j=" + std::to_string(j);
    Rational t = theta.value(index.m(j));
    if (j + 1 < index.size()) {
      if (j < q.size() && w) {
        bool q_ok = theta.value(q[j]) <= t * t * t * t;
        std::optional<Index> wv = w(t * t * t / 4, q[j]);
        report.flag("empirical-w");
        if (wv) {
          report.check("R0" + tag, q_ok && index.m(j + 1) >= *wv,
                       "q=" + std::to_string(q[j]) + " w=" + std::to_string(*wv) + " m_{j+1}=" + std::to_string(index.m(j + 1)));
        } else {
          report.check("R0" + tag, false, "w unavailable");
        }
      } else {
        report.check("R0" + tag, false, "no q ladder or w oracle");
      }
    }
    Rational half = Rational(1) / pow(Rational(2), static_cast<unsigned>(j + 1));
    report.check("R1" + tag, t < half, rs(t) + " < " + rs(half));
    if (index.M(j) > 0) {
      Rational bound = 4 / (one_minus * t * t * t * t);
      Rational lhs = space.ladder == Ladder::S ? Rational(static_cast<long>(index.M(j))) : Rational(static_cast<long>(index.m(j)));
      report.check("R2" + tag, lhs > bound, rs(lhs) + " > " + rs(bound));
    }
  }
  if (space.ladder == Ladder::A) report.note("R2 form", "m_j in place of M_j");
  return report;
}

Report check_lemma410(const RisBundle& bundle, const CoreTree& core, const SpaceSpec& space, const Report& r_conditions) {
  const ThetaSequence& theta = space.theta;
  Report report;
  report.claim = "||x_alpha|| <= prod (1 + 3 theta_{m_j}); f(x) = 1; ||f|| >= 1/3";
  report.absorb_as_premises(r_conditions, "");
  Report structure = verify_bundle(bundle, core, space);
  for (const auto& p : structure.premises) report.premise(p.name, p.holds, p.detail);
  for (const auto& f : structure.flags) report.flag(f);
  if (!report.premises_hold()) report.flag("premises-relaxed");
  CoreIndex index(core);
  const std::size_t n = bundle.height;
  std::size_t terminal = 0;
  for (const auto& node : bundle.nodes) {
    if (node.terminal) {
      ++terminal;
      continue;
    }
    Rational bound = 1;
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (index.level(j) >= node.path.size() && index.level(j) < n) bound *= 1 + 3 * theta.value(index.m(j));
    }
    Rational value = norm(node.x, space);
    report.check("(4.18) at " + path_string(node.path), value <= bound, rs(value) + " <= " + rs(bound));
  }
  report.note("terminal nodes (norm 1)", std::to_string(terminal));
  const FiniteVector& x = bundle.vector();
  const NormingTree& f = bundle.functional();
  Rational fx = eval(f, x, theta);
  report.check("f(x) = 1", fx == 1, rs(fx));
  ValidationReport valid = validate(f, space);
  report.check("validate(f), so ||f|| <= 1", valid.ok, valid.message);
  Rational nx = norm(x, space);
  Rational lower = fx / nx;
  report.note("||x||", rs(nx));
  report.note("f(x)/||x||", rs(lower));
  if (report.premises_hold()) {
    report.check("||x|| <= 3", nx <= 3, rs(nx));
    report.check("||f|| >= 1/3", lower >= Rational(1, 3), rs(lower));
  } else {
    report.note("||x|| <= 3 (measured)", nx <= 3 ? "holds" : "fails");
    report.note("f(x)/||x|| >= 1/3 (measured)", lower >= Rational(1, 3) ? "holds" : "fails");
  }
  return report;
}

Report check_lemma34(const std::vector<Rational>& a, const std::vector<Index>& L, Index M) {
  Report report;
  report.claim = "sum_{j in L} a_j <= 1/M + max_{j in L} a_j";
  bool non_increasing = true;
  bool non_negative = true;
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    non_negative = non_negative && sgn(a[i]) >= 0;
    if (i) non_increasing = non_increasing && a[i] <= a[i - 1];
    total += a[i];
  }
  report.premise("non-increasing", non_increasing);
  report.premise("non-negative", non_negative);
  report.premise("sums to 1", total == 1, rs(total));
  report.premise("M >= 1", M >= 1);
  std::vector<Index> sorted = L;
  std::sort(sorted.begin(), sorted.end());
  bool skipped = !sorted.empty();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > static_cast<Index>(a.size())) skipped = false;
    if (i && sorted[i] - sorted[i - 1] < M) skipped = false;
  }
  report.premise("L is non-empty and M-skipped", skipped);
  if (!skipped || M < 1) return report;
  Rational sum = 0;
  Rational top = 0;
  for (Index j : sorted) {
    const Rational& v = a[static_cast<std::size_t>(j - 1)];
    sum += v;
    top = max(top, v);
  }
  Rational bound = Rational(1, M) + top;
  report.check("skipped-set inequality", sum <= bound, rs(sum) + " <= " + rs(bound));
  return report;
}

}  // namespace tsirelson
