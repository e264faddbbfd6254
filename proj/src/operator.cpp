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


#include "tsirelson/operator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tsirelson/error.hpp"
#include "tsirelson/norm.hpp"

namespace tsirelson {

namespace {

std::string rs(const Rational& v) { return to_string(v); }

std::string path_string(const CorePath& path) {
  std::string out = "(";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  return out + ")";
}

Rational two_pow(long e) {
  Rational p = pow(Rational(2), static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? 1 / p : p;
}

constexpr Index kScanLimit = Index{1} << 20;

bool ratio_exceeds(const ThetaSequence& theta, Index r, Index k, const Rational& c) {
  return theta.lower(r + k) > c * theta.upper(k);
}

using CoefficientMap = std::map<Index, Rational>;

void add_into(CoefficientMap& acc, const CoefficientMap& more, const Rational& scale) {
  for (const auto& [i, v] : more) {
    Rational& slot = acc[i];
    slot += scale * v;
    if (sgn(slot) == 0) acc.erase(i);
  }
}

FiniteSet labels_of(const LabelledBundles& bundles) {
  std::vector<Index> labels;
  for (const auto& [n, b] : bundles) {
    if (!b) throw InputError("null bundle");
    labels.push_back(n);
  }
  return FiniteSet(labels);
}

}  // namespace

Index compute_k_r(const ThetaSequence& theta, const Rational& c, Index r) {
  if (r < 0) throw InputError("r must be non-negative");
  if (sgn(c) <= 0) throw InputError("c must be positive");
  switch (theta.kind()) {
    case ThetaKind::Geometric:
      if (!ratio_exceeds(theta, r, 1, c)) {
        throw InputError("theta_{r+k}/theta_k = " + rs(pow(theta.ratio(), static_cast<unsigned>(r))) + " <= c at k = 1 for every k");
      }
      return 1;
    case ThetaKind::ReciprocalShift:
    case ThetaKind::LogEnclosure: {
      // Both ratios increase in k towards 1.
      if (c >= 1) throw InputError("theta_{r+k}/theta_k < 1 <= c for every k");
      for (Index k = 1; k <= kScanLimit; ++k) {
        if (ratio_exceeds(theta, r, k, c)) return k;
      }
      throw BudgetExhausted("k_r scan exceeded 2^20");
    }
    case ThetaKind::Table: {
      Index k = compute_k_r(*theta.tail(), c, r);
      Index size = static_cast<Index>(theta.table_values().size());
      if (k > size + 1) return k;
      while (k > 1 && ratio_exceeds(theta, r, k - 1, c)) --k;
      return k;
    }
  }
  throw InputError("unsupported theta kind");
}

Report check_fact510(const ThetaSequence& theta, Index k, Index window) {
  if (k < 1 || window < 1) throw InputError("k and window must be positive");
  Report report;
  report.claim = "theta_{nk}/theta_n approaches 1";
  report.flag("finite-evidence");
  std::set<Index> sample;
  for (Index n = 1; n <= std::min<Index>(window, 4096); ++n) sample.insert(n);
  for (Index n = 1; n <= window; n *= 2) sample.insert(n);
  Rational lowest = 2;
  Index at = 1;
  for (Index n : sample) {
    Rational ratio = theta.value(n * k) / theta.value(n);
    if (ratio < lowest) {
      lowest = ratio;
      at = n;
    }
  }
  bool non_decreasing = true;
  Rational prev = 0;
  Rational last = 0;
  for (Index n = 1; n <= window; n *= 2) {
    Rational lo = theta.lower(n * k) / theta.upper(n);
    Rational hi = theta.upper(n * k) / theta.lower(n);
    if (n > 1 && hi < prev) non_decreasing = false;
    prev = lo;
    last = theta.value(n * k) / theta.value(n);
  }
  report.note("minimum ratio", rs(lowest) + " at n = " + std::to_string(at));
  report.note("ratio at the last power of two", rs(last));
  report.check("ratio non-decreasing along powers of two", non_decreasing);
  return report;
}

OperatorSpec build_operator(const CoreTree& core, const std::vector<Index>& r, const std::vector<std::size_t>& heights,
                            const SpaceSpec& space, const OperatorOptions& options) {
  if (!(r.empty() && heights.empty()) && r.size() != heights.size() + 1) {
    throw InputError("need one more r than heights");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 1 || (i && r[i] <= r[i - 1])) throw InputError("r must be positive and strictly increasing");
  }
  if (sgn(options.c) <= 0 || options.c >= 1) throw InputError("c must lie in (0, 1)");
  if (!options.bundle.relaxed && !check_r_conditions(core, {}, space).passed()) {
    throw VerificationError("core conditions (R0)-(R2) fail; relaxed mode is required");
  }
  OperatorSpec T;
  T.space = space;
  T.core = core;
  T.r = r;
  T.heights = heights;
  T.c = options.c;
  T.relaxed = options.bundle.relaxed;
  Index start = options.min_start;
  for (std::size_t n = 0; n < heights.size(); ++n) {
    RisBundle bundle = build_ris_bundle(core, heights[n], start, space, options.bundle);
    start = bundle.vector().max_index() + 1;
    T.functionals.push_back(bundle.functional());
    T.targets.push_back(r[n + 1]);
    T.bundles.push_back(std::move(bundle));
  }
  Report report = verify_operator(T);
  for (const auto& w : report.witnesses) {
    if (!w.holds || *w.holds) continue;
    bool parameter = w.name.rfind("R3", 0) == 0 || w.name.rfind("R4", 0) == 0;
    if (!parameter || !T.relaxed) throw VerificationError("operator invariant failed: " + w.name + " " + w.value);
  }
  return T;
}

Report verify_operator(const OperatorSpec& T) {
  const ThetaSequence& theta = T.space.theta;
  Report report;
  report.claim = "operator invariants";
  if (T.relaxed) report.flag("premises-relaxed");
  bool valid = true;
  bool block = true;
  std::string detail;
  for (std::size_t n = 0; n < T.functionals.size(); ++n) {
    ValidationReport v = validate(T.functionals[n], T.space);
    if (!v.ok) {
      valid = false;
      if (detail.empty()) detail = "g_" + std::to_string(n + 1) + ": " + v.message;
    }
    if (n && T.functionals[n - 1].max_support() >= T.functionals[n].min_support()) block = false;
  }
  report.check("functionals valid", valid, detail);
  report.check("functionals successive", block);
  bool increasing = T.targets.size() == T.functionals.size();
  for (std::size_t n = 1; n < T.targets.size(); ++n) increasing = increasing && T.targets[n - 1] < T.targets[n];
  report.check("targets strictly increasing", increasing);
  bool matches = T.bundles.size() == T.functionals.size();
  for (std::size_t n = 0; matches && n < T.bundles.size(); ++n) matches = T.bundles[n].functional() == T.functionals[n];
  report.check("functionals come from the bundles", matches);

  CoreIndex index(T.core);
  for (std::size_t j = 1; j <= T.r.size(); ++j) {
    std::string tag = " j=" + std::to_string(j);
    Rational rj = theta.upper(T.r[j - 1]);
    if (j - 1 < index.size()) {
      Rational total = 0;
      for (std::size_t i = 0; i < j; ++i) total += static_cast<long>(index.M(i)) + index.m(i);
      Rational lhs = rj * total;
      Rational bound = two_pow(-static_cast<long>(j));
      report.check("R3" + tag, lhs < bound, rs(lhs) + " < " + rs(bound));
    } else {
      report.check("R3" + tag, false, "core enumeration too short");
    }
    if (j < index.size()) {
      Index arg = T.r[j - 1] + index.ord(j);
      try {
        Index k = compute_k_r(theta, T.c, arg);
        report.check("R4" + tag, k <= index.m(j), "k_" + std::to_string(arg) + " = " + std::to_string(k) + " <= " + std::to_string(index.m(j)));
      } catch (const InputError& e) {
        report.check("R4" + tag, false, e.what());
      }
    } else {
      report.check("R4" + tag, false, "core enumeration too short");
    }
  }
  return report;
}

FiniteVector apply(const OperatorSpec& T, const FiniteVector& x) {
  std::map<Index, Rational> out;
  for (std::size_t n = 0; n < T.functionals.size(); ++n) {
    out[T.targets.at(n)] = eval(T.functionals[n], x, T.space.theta);
  }
  return FiniteVector::from_map(out);
}

Prop21Bound prop21_bound(const std::vector<Rational>& eps, const std::vector<Index>& N, std::size_t J,
                         const std::optional<TailMajorant>& tail) {
  if (eps.size() < J || N.size() < J) throw InputError("need eps_j and N_j for j <= J");
  Prop21Bound out;
  for (std::size_t j = 1; j <= J; ++j) {
    const Rational& e = eps[j - 1];
    out.partial += e * static_cast<long>(j) + 4 * e * N[j - 1];
  }
  out.total = out.partial;
  if (!tail || J == 0) return out;
  const Rational& rho = tail->eps_ratio;
  Rational sigma = rho * tail->n_ratio;
  if (sgn(rho) < 0 || rho >= 1 || sgn(sigma) < 0 || sigma >= 1) return out;
  const Rational& eJ = eps[J - 1];
  Rational NJ = N[J - 1];
  Rational Jr = static_cast<long>(J);
  // sum_{i>=1} rho^i (J+i) and sum_{i>=1} sigma^i in closed form.
  Rational t = eJ * (Jr * rho / (1 - rho) + rho / ((1 - rho) * (1 - rho))) + 4 * eJ * NJ * sigma / (1 - sigma);
  out.tail = t;
  out.certified = true;
  out.total = out.partial + t;
  return out;
}

Lemma53Result check_lemma53(const LabelledBundles& bundles, const CoreTree& core, const CorePath& beta, Index r,
                            const Rational& c, const SpaceSpec& space) {
  const ThetaSequence& theta = space.theta;
  CoreIndex index(core);
  auto jb = index.find(beta);
  if (!jb) throw InputError("core has no node " + path_string(beta));
  if (r < 0) throw InputError("r must be non-negative");
  FiniteSet F = labels_of(bundles);
  Lemma53Result out;
  Report& report = out.report;
  report.claim = "||sum_n sum_{v(alpha)=beta} f_alpha^n|| <= 1/c";
  report.premise("F in F_r", is_member(F, space.family(r)));
  report.premise("F > |beta|", F.empty() || F.min() > static_cast<Index>(beta.size()));
  Index ord = index.ord(*jb);
  Index m = index.m(*jb);
  try {
    Index k = compute_k_r(theta, c, r + ord);
    report.premise("m_beta >= k_{r+ord(beta)}", m >= k, std::to_string(m) + " vs " + std::to_string(k));
  } catch (const InputError& e) {
    report.premise("m_beta >= k_{r+ord(beta)}", false, e.what());
  }
  Index w = m + ord + r;
  out.ratio = theta.value(m) / theta.value(w);
  report.note("weight index of the certificate", std::to_string(w));
  CoefficientMap sum;
  std::vector<NormingTree> flat;
  std::size_t count = 0;
  for (const auto& [n, b] : bundles) {
    if (b->ladder != space.ladder) throw InputError("bundle ladder differs from the space");
    for (const auto& node : b->nodes) {
      if (node.terminal || node.core != beta) continue;
      ++count;
      add_into(sum, coefficients(node.f, theta), 1);
      for (std::size_t k : node.children) flat.push_back(b->nodes[k].f);
    }
  }
  report.note("nodes mapped to beta", std::to_string(count));
  report.check("ratio theta_{m_beta}/theta_{m_beta+ord+r} <= 1/c", out.ratio <= 1 / c, rs(out.ratio) + " <= " + rs(1 / c));
  if (flat.empty()) {
    report.check("empty sum", sum.empty());
    return out;
  }
  NormingTree g = NormingTree::Internal(w, std::move(flat));
  ValidationReport valid = validate(g, space);
  report.check("certificate valid", valid.ok, valid.message);
  CoefficientMap scaled;
  add_into(scaled, coefficients(g, theta), out.ratio);
  report.check("sum = ratio * g", scaled == sum);
  Rational peak = 0;
  for (const auto& [i, v] : sum) peak = max(peak, abs(v));
  report.note("dual norm lower bound (largest coefficient)", rs(peak));
  out.certificate = std::move(g);
  return out;
}

Report check_lemma54(const LabelledBundles& bundles, const CoreTree& core, std::size_t j, Index r, const Rational& c,
                     const SpaceSpec& space) {
  const ThetaSequence& theta = space.theta;
  CoreIndex index(core);
  if (j < 1 || j >= index.size()) throw InputError("j must index a non-root core node");
  FiniteSet F = labels_of(bundles);
  const CorePath& mu = index.path(j);
  std::vector<std::size_t> I = index.I(j);
  Report report;
  report.claim = "||sum f_n - sum c_j f_alpha^n|| <= n_j/c";
  report.premise("F in F_r", is_member(F, space.family(r)));
  report.premise("F > |mu_j|", F.empty() || F.min() > static_cast<Index>(mu.size()));
  for (std::size_t b : I) {
    std::string name = "m_beta >= k_{r+ord(beta)} for beta = " + path_string(index.path(b));
    try {
      Index k = compute_k_r(theta, c, r + index.ord(b));
      report.premise(name, index.m(b) >= k, std::to_string(index.m(b)) + " vs " + std::to_string(k));
    } catch (const InputError& e) {
      report.premise(name, false, e.what());
    }
  }
  std::set<CorePath> cut;
  cut.insert(mu);
  for (std::size_t b : I) cut.insert(index.path(b));

  std::set<CorePath> classes;
  std::set<CorePath> fallback;
  bool identity = true;
  for (const auto& [n, b] : bundles) {
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      const BundleNode& node = b->nodes[k];
      bool last = node.path.size() + 1 == b->height;
      if (cut.count(node.core) || last) {
        if (!cut.count(node.core)) fallback.insert(node.core);
        chosen.push_back(k);
        classes.insert(node.core);
        continue;
      }
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
    }
    CoefficientMap decomposed;
    for (std::size_t k : chosen) {
      const BundleNode& node = b->nodes[k];
      add_into(decomposed, coefficients(node.f, theta), index.c(*index.find(node.core), theta));
    }
    if (decomposed != coefficients(b->functional(), theta)) identity = false;
  }
  report.check("f_n decomposes over the cut", identity);
  for (const auto& p : fallback) report.note("successors not in the trees, node used instead", path_string(p));

  Rational total = 0;
  bool certified = true;
  for (const auto& beta : classes) {
    if (beta == mu) continue;
    Lemma53Result sub = check_lemma53(bundles, core, beta, r, c, space);
    std::string prefix = "beta " + path_string(beta) + ": ";
    for (const auto& p : sub.report.premises) report.premise(prefix + p.name, p.holds, p.detail);
    for (const auto& w : sub.report.witnesses) {
      bool certificate_part = w.name == "certificate valid" || w.name == "sum = ratio * g" || w.name == "empty sum";
      if (certificate_part) {
        report.check(prefix + w.name, w.holds.value_or(true), w.value);
        certified = certified && w.holds.value_or(true);
      } else {
        report.note(prefix + w.name, w.value + (w.holds ? (*w.holds ? " (holds)" : " (fails)") : ""));
      }
    }
    total += index.c(*index.find(beta), theta) * sub.ratio;
  }
  Rational bound = Rational(static_cast<long>(I.size())) / c;
  report.note("n_j", std::to_string(I.size()));
  report.note("classes in the cut besides mu_j", std::to_string(classes.size() - classes.count(mu)));
  report.check("certified total <= n_j/c", certified && total <= bound, rs(total) + " <= " + rs(bound));
  return report;
}

NoncompactnessWitness noncompactness_witness(const OperatorSpec& T) {
  if (T.bundles.size() < 2) throw InputError("need at least two bundles");
  NoncompactnessWitness out;
  Report& report = out.report;
  report.claim = "||T u_n - T u_m|| >= delta > 0";
  Report r = check_r_conditions(T.core, {}, T.space);
  bool premises = r.passed() && !T.relaxed;
  report.premise("core conditions (R0)-(R2)", r.passed());
  report.premise("not relaxed", !T.relaxed);
  if (!premises) report.flag("premises-relaxed");
  std::vector<FiniteVector> images;
  for (std::size_t n = 0; n < T.bundles.size(); ++n) {
    const FiniteVector& x = T.bundles[n].vector();
    Rational nx = norm(x, T.space);
    FiniteVector u = x.scaled(1 / nx);
    images.push_back(apply(T, u));
    report.note("g_" + std::to_string(n + 1) + "(u_" + std::to_string(n + 1) + ")", rs(eval(T.functionals[n], u, T.space.theta)));
  }
  bool first = true;
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      Rational d = norm(images[a] - images[b], T.space);
      if (first || d < out.delta) out.delta = d;
      first = false;
    }
  }
  report.note("delta", rs(out.delta));
  report.check("delta > 0", sgn(out.delta) > 0, rs(out.delta));
  if (premises) {
    report.check("delta >= 1/3", out.delta >= Rational(1, 3), rs(out.delta));
  } else {
    report.note("delta >= 1/3 (measured)", out.delta >= Rational(1, 3) ? "holds" : "fails");
  }
  return out;
}

Rational estimate_rhs(const OperatorSpec& T, std::size_t j0) {
  if (j0 < 1) throw InputError("j0 must be >= 1");
  CoreIndex index(T.core);
  if (j0 >= index.size()) throw InputError("core enumeration has no mu_" + std::to_string(j0));
  std::size_t k0 = *index.parent(j0);
  return Rational(1, static_cast<long>(j0)) + 8 / (T.c * two_pow(static_cast<long>(j0) - 1)) +
         1 / (T.c * two_pow(static_cast<long>(k0) - 1));
}

ProbeResult singularity_probe(const OperatorSpec& T, const std::vector<FiniteVector>& probes, std::size_t j0,
                              std::size_t max_evaluations) {
  if (probes.empty()) throw InputError("no probes");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].is_zero()) throw InputError("zero probe");
    if (i && !precedes(probes[i - 1], probes[i])) throw InputError("probes must be successive");
  }
  ProbeResult out;
  Report& report = out.report;
  report.claim = "||Tx|| <= estimate whenever ||x|| = 1 and ||x||_G <= 1/j0";
  report.flag("finite-evidence");
  if (T.relaxed) report.flag("premises-relaxed");
  out.rhs = estimate_rhs(T, j0);
  Index rank = 0;
  if (j0 < T.r.size()) {
    rank = T.r[j0];
  } else if (!T.r.empty()) {
    rank = T.r.back();
    report.note("family index", "r_{j0+1} unavailable, using the last r");
  }
  FamilyKind fam = T.space.family(rank);
  auto combine = [&](const std::vector<long>& lambda) {
    FiniteVector x;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i]) x = x + probes[i].scaled(Rational(lambda[i]));
    }
    return x;
  };
  std::size_t evaluations = 0;
  auto objective = [&](const FiniteVector& x) {
    ++evaluations;
    return g_norm(x, T.functionals, fam, T.space.theta) / norm(x, T.space);
  };
  std::vector<long> best(probes.size(), 0);
  Rational best_value;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    std::vector<long> lambda(probes.size(), 0);
    lambda[i] = 1;
    Rational v = objective(combine(lambda));
    if (i == 0 || v < best_value) {
      best_value = v;
      best = lambda;
    }
  }
  bool improved = true;
  while (improved && sgn(best_value) > 0 && evaluations < max_evaluations) {
    improved = false;
    for (std::size_t i = 0; i < probes.size() && evaluations < max_evaluations; ++i) {
      for (long step : {1L, -1L}) {
        std::vector<long> lambda = best;
        lambda[i] += step;
        FiniteVector x = combine(lambda);
        if (x.is_zero()) continue;
        Rational v = objective(x);
        if (v < best_value) {
          best_value = v;
          best = lambda;
          improved = true;
        }
      }
    }
  }
  if (evaluations >= max_evaluations) report.note("search", "evaluation budget exhausted, best found reported");
  FiniteVector x = combine(best);
  out.x = x.scaled(1 / norm(x, T.space));
  out.g_norm = g_norm(out.x, T.functionals, fam, T.space.theta);
  out.t_norm = norm(apply(T, out.x), T.space);
  report.note("||x||_G", rs(out.g_norm));
  report.note("||Tx||", rs(out.t_norm));
  report.note("estimate", rs(out.rhs));
  Rational threshold(1, static_cast<long>(j0));
  bool small = out.g_norm <= threshold;
  report.premise("||x||_G <= 1/j0", small, rs(out.g_norm));
  if (small) {
    report.check("||Tx|| <= estimate", out.t_norm <= out.rhs, rs(out.t_norm) + " <= " + rs(out.rhs));
  } else {
    report.note("||Tx|| <= estimate (measured)", out.t_norm <= out.rhs ? "holds" : "fails");
  }
  return out;
}

}  // namespace tsirelson
