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


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsirelson/averages.hpp"
#include "tsirelson/error.hpp"
#include "tsirelson/json_io.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/operator.hpp"
#include "tsirelson/ris.hpp"
#include "tsirelson/suites.hpp"

namespace tsirelson::cli {
namespace {

using io::Json;

struct Global {
  std::string space_file;
  std::string out_file;
  std::string format = "json";
  std::uint64_t seed = 20261019;
  long budget_ms = 60000;
  bool relaxed = false;
};

struct Output {
  Json doc = Json::object();
  std::vector<std::pair<std::string, Report>> reports;
  bool failed = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

Index parse_index(const std::string& text) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw InputError("not an integer: " + text);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("not an integer: " + text);
  }
}

std::vector<Index> parse_indices(const std::string& text) {
  std::vector<Index> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_index(p));
  return out;
}

// "2:1,3:-1/2"
FiniteVector parse_coords(const std::string& text) {
  std::map<Index, Rational> coords;
  for (const auto& entry : split(text, ',')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos) throw InputError("coordinates are index:value, got " + entry);
    Index i = parse_index(entry.substr(0, colon));
    if (coords.count(i)) throw InputError("duplicate index " + std::to_string(i));
    coords[i] = parse_rational(entry.substr(colon + 1));
  }
  return FiniteVector::from_map(coords);
}

// Accepts either the artifact itself or a command output that holds it under `key`.
Json unwrap(const Json& doc, const std::string& key) {
  if (doc.is_object() && doc.contains(key) && doc.contains("config")) return doc.at(key);
  return doc;
}

FiniteVector read_vector(const std::string& coords, const std::string& file) {
  if (!coords.empty() && !file.empty()) throw InputError("give either --coords or --vector");
  if (!file.empty()) return io::vector_from_json(io::load_file(file));
  return parse_coords(coords);
}

CoreTree read_core(const std::string& chain, const std::string& file) {
  if (!chain.empty() && !file.empty()) throw InputError("give either --chain or --core");
  if (!file.empty()) return io::core_from_json(unwrap(io::load_file(file), "core"));
  if (chain.empty()) throw InputError("a core is required (--chain or --core)");
  return CoreTree::chain(parse_indices(chain));
}

void emit(const Output& o, const Global& g, std::ostream& out) {
  std::ostringstream text;
  if (g.format == "csv") {
    text << "# config: " << o.doc.at("config").dump() << "\n";
    if (!o.reports.empty()) {
      text << io::csv_header();
      for (const auto& [instance, report] : o.reports) text << io::to_csv(report, instance);
    } else {
      text << "name,value\n";
      for (const auto& [key, value] : o.doc.items()) {
        if (key == "config") continue;
        text << key << "," << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else {
    text << o.doc.dump(2) << "\n";
  }
  if (g.out_file.empty()) {
    out << text.str();
  } else {
    std::ofstream file(g.out_file);
    if (!file) throw InputError("cannot write " + g.out_file);
    file << text.str();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in mixed Tsirelson spaces", "tsirelson"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.fallthrough();
  Global g;
  app.add_option("--space", g.space_file, "Space descriptor (JSON)");
  app.add_option("--out", g.out_file, "Write the result to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for the randomized suites");
  app.add_option("--budget-ms", g.budget_ms, "Time budget for bounded searches")->check(CLI::PositiveNumber);
  app.add_flag("--relaxed", g.relaxed, "Allow parameters outside the theorem hypotheses");

  std::string coords, vector_file, set_text, eps_text = "1/2", chain, core_file, r_text, heights_text, c_text = "1/2";
  std::string leaf_eps, periodic_eps, operator_file, probes_file, bundle_file;
  Index j = 1, rank = 1, start = 1;
  int n = 1, retries = 64;
  std::size_t height = 1, j0 = 1, kernel = 0, cases = 200, jobs = 1, max_evaluations = 200;
  bool witness = false;
  std::vector<std::string> suites;

  auto add_vector = [&](CLI::App* sub) {
    sub->add_option("--coords", coords, "Coordinates, e.g. 2:1,3:-1/2");
    sub->add_option("--vector", vector_file, "Vector file (JSON)");
  };
  auto add_core = [&](CLI::App* sub) {
    sub->add_option("--chain", chain, "Chain core given by its weight indices, e.g. 1,1");
    sub->add_option("--core", core_file, "Core tree file (JSON)");
  };

  auto* norm_cmd = app.add_subcommand("norm", "Exact norm of a vector");
  add_vector(norm_cmd);
  norm_cmd->add_flag("--witness", witness, "Emit an optimal norming tree");
  auto* wnorm_cmd = app.add_subcommand("weighted-norm", "Largest value of functionals of weight theta_j");
  add_vector(wnorm_cmd);
  wnorm_cmd->add_option("--j", j, "Weight index")->required()->check(CLI::PositiveNumber);
  auto* family_cmd = app.add_subcommand("family", "Membership of a finite set");
  family_cmd->add_option("--set", set_text, "Elements, e.g. 3,4,5")->required();
  family_cmd->add_option("--rank", rank, "Family rank")->check(CLI::NonNegativeNumber);
  auto* sup_cmd = app.add_subcommand("sup", "Largest family sum of non-negative weights");
  add_vector(sup_cmd);
  sup_cmd->add_option("--rank", rank, "Family rank")->check(CLI::NonNegativeNumber);
  auto* scc_cmd = app.add_subcommand("scc", "Build an (n, eps)-average");
  scc_cmd->add_option("--n", n, "Rank")->check(CLI::NonNegativeNumber);
  scc_cmd->add_option("--eps", eps_text, "epsilon");
  scc_cmd->add_option("--start", start, "Least support point")->check(CLI::PositiveNumber);
  scc_cmd->add_option("--retries", retries, "Retry budget")->check(CLI::NonNegativeNumber);
  auto* bundle_cmd = app.add_subcommand("bundle", "Build a bundle of vectors and functionals along a core");
  add_core(bundle_cmd);
  bundle_cmd->add_option("--height", height, "Height")->check(CLI::PositiveNumber);
  bundle_cmd->add_option("--start", start, "Least support point")->check(CLI::PositiveNumber);
  bundle_cmd->add_option("--leaf-eps", leaf_eps, "Override for the averages above the leaves (relaxed only)");
  bundle_cmd->add_option("--periodic-eps", periodic_eps, "Override for the periodic averages (relaxed only)");
  bundle_cmd->add_option("--retries", retries, "Retry budget")->check(CLI::NonNegativeNumber);
  auto* operator_cmd = app.add_subcommand("operator", "Build the operator from a core and ranks r");
  add_core(operator_cmd);
  operator_cmd->add_option("--r", r_text, "r_1,...,r_{K+1}")->required();
  operator_cmd->add_option("--heights", heights_text, "Bundle heights, K of them")->required();
  operator_cmd->add_option("--c", c_text, "Ratio constant c in (0, 1)");
  operator_cmd->add_option("--start", start, "Least support point")->check(CLI::PositiveNumber);
  auto* apply_cmd = app.add_subcommand("apply", "Apply an operator to a vector");
  apply_cmd->add_option("--operator", operator_file, "Operator file (JSON)")->required();
  add_vector(apply_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites or check a stored artifact");
  verify_cmd->add_option("--suite", suites, "Suite to run (repeatable); all by default");
  verify_cmd->add_option("--cases", cases, "Random cases per randomized suite")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--jobs", jobs, "Suites run concurrently")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--operator", operator_file, "Operator file to check instead");
  verify_cmd->add_option("--bundle", bundle_file, "Bundle file to check instead (with --chain or --core)");
  add_core(verify_cmd);
  auto* probe_cmd = app.add_subcommand("probe", "Search for a vector with small ||x||_G and compare ||Tx||");
  probe_cmd->add_option("--operator", operator_file, "Operator file (JSON)")->required();
  probe_cmd->add_option("--j0", j0, "j0 >= 1")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--probes", probes_file, "JSON array of successive vectors");
  probe_cmd->add_option("--kernel", kernel, "Use this many unit vectors past the operator's support");
  probe_cmd->add_option("--max-evaluations", max_evaluations, "Search budget");

  // args[0] is the program name.
  std::vector<const char*> argv{"tsirelson"};
  for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    SpaceSpec space;
    if (!g.space_file.empty()) space = io::space_from_json(io::load_file(g.space_file));
    Output o;
    Json config{{"space", io::to_json(space)}, {"format", g.format}, {"seed", g.seed},
                {"budget_ms", g.budget_ms}, {"relaxed", g.relaxed}};
    auto sub = app.get_subcommands().front();
    config["command"] = sub->get_name();
    for (const auto* opt : sub->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      auto results = opt->results();
      Json value;
      if (opt->get_expected_min() == 0) {
        value = opt->count() > 0;
      } else if (opt->get_expected_max() > 1) {
        value = Json(results);
      } else if (results.empty()) {
        value = opt->get_default_str();
      } else {
        value = results.size() == 1 ? Json(results.front()) : Json(results);
      }
      config[opt->get_lnames().front()] = value;
    }
    o.doc["config"] = config;
    const std::string cmd = sub->get_name();

    if (cmd == "norm") {
      FiniteVector x = read_vector(coords, vector_file);
      NormResult r = norm_with_witness(x, space);
      o.doc["norm"] = to_string(r.value);
      if (witness && r.witness) o.doc["witness"] = io::to_json(*r.witness);
    } else if (cmd == "weighted-norm") {
      o.doc["weighted_norm"] = to_string(weighted_norm(read_vector(coords, vector_file), j, space));
    } else if (cmd == "family") {
      FiniteSet set = FiniteSet::from_unsorted(parse_indices(set_text));
      FamilyKind fam = space.family(rank);
      o.doc["family"] = to_string(fam);
      o.doc["member"] = is_member(set, fam);
    } else if (cmd == "sup") {
      FiniteVector x = read_vector(coords, vector_file);
      std::map<Index, Rational> w(x.coords().begin(), x.coords().end());
      FamilyKind fam = space.family(rank);
      o.doc["family"] = to_string(fam);
      o.doc["sup"] = to_string(family_sup(w, fam));
    } else if (cmd == "scc") {
      SpecialAverage x = make_basic_average(n, parse_rational(eps_text), start, space.ladder, retries);
      Report r = check_lemma36(x, space);
      r.check("special convex combination", check_scc(x));
      o.doc["average"] = io::to_json(x);
      o.doc["report"] = io::to_json(r);
      o.reports.emplace_back("average", r);
      o.failed = !r.passed();
    } else if (cmd == "bundle") {
      CoreTree core = read_core(chain, core_file);
      BundleOptions options;
      options.relaxed = g.relaxed;
      options.retry_budget = retries;
      if (!leaf_eps.empty()) options.leaf_epsilon = parse_rational(leaf_eps);
      if (!periodic_eps.empty()) options.periodic_epsilon = parse_rational(periodic_eps);
      RisBundle b = build_ris_bundle(core, height, start, space, options);
      Report r = verify_bundle(b, core, space);
      o.doc["bundle"] = io::to_json(b);
      o.doc["core"] = io::to_json(core);
      o.doc["report"] = io::to_json(r);
      o.reports.emplace_back("bundle", r);
      o.failed = !r.passed();
    } else if (cmd == "operator") {
      CoreTree core = read_core(chain, core_file);
      OperatorOptions options;
      options.c = parse_rational(c_text);
      options.min_start = start;
      options.bundle.relaxed = g.relaxed;
      std::vector<std::size_t> heights;
      for (Index h : parse_indices(heights_text)) {
        if (h < 1) throw InputError("heights must be positive");
        heights.push_back(static_cast<std::size_t>(h));
      }
      OperatorSpec T = build_operator(core, parse_indices(r_text), heights, space, options);
      Report r = verify_operator(T);
      o.doc["operator"] = io::to_json(T);
      o.doc["report"] = io::to_json(r);
      o.reports.emplace_back("operator", r);
      o.failed = !r.passed();
    } else if (cmd == "apply") {
      OperatorSpec T = io::operator_from_json(unwrap(io::load_file(operator_file), "operator"));
      o.doc["image"] = io::to_json(apply(T, read_vector(coords, vector_file)));
    } else if (cmd == "verify") {
      if (!operator_file.empty() || !bundle_file.empty()) {
        if (!operator_file.empty()) {
          Report r = verify_operator(io::operator_from_json(unwrap(io::load_file(operator_file), "operator")));
          o.reports.emplace_back(operator_file, r);
        }
        if (!bundle_file.empty()) {
          CoreTree core = read_core(chain, core_file);
          Report r = verify_bundle(io::bundle_from_json(unwrap(io::load_file(bundle_file), "bundle")), core, space);
          o.reports.emplace_back(bundle_file, r);
        }
        Json rows = Json::array();
        for (const auto& [instance, r] : o.reports) {
          rows.push_back(Json{{"instance", instance}, {"report", io::to_json(r)}});
          o.failed = o.failed || !r.passed();
        }
        o.doc["artifacts"] = rows;
      } else {
        if (suites.empty()) suites = suite_names();
        SuiteConfig cfg;
        cfg.seed = g.seed;
        cfg.cases = cases;
        cfg.budget = std::chrono::milliseconds(g.budget_ms);
        for (const auto& name : suites) {
          if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
            throw InputError("unknown suite: " + name);
          }
        }
        std::vector<SuiteResult> results(suites.size());
        for (std::size_t lo = 0; lo < suites.size(); lo += jobs) {
          std::vector<std::future<SuiteResult>> running;
          for (std::size_t i = lo; i < std::min(suites.size(), lo + jobs); ++i) {
            running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                         [&, i] { return run_suite(suites[i], cfg); }));
          }
          for (std::size_t i = 0; i < running.size(); ++i) results[lo + i] = running[i].get();
        }
        Json table = Json::array();
        for (const auto& r : results) {
          Json reports = Json::array();
          for (const auto& [instance, rep] : r.reports) {
            reports.push_back(Json{{"instance", instance}, {"report", io::to_json(rep)}});
            o.reports.emplace_back(r.name + "/" + instance, rep);
          }
          table.push_back(Json{{"suite", r.name},
                               {"verdict", r.passed ? "pass" : "fail"},
                               {"summary", r.summary},
                               {"reports", reports}});
          err << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.summary << "\n";
          o.failed = o.failed || !r.passed;
        }
        o.doc["suites"] = table;
      }
    } else if (cmd == "probe") {
      OperatorSpec T = io::operator_from_json(unwrap(io::load_file(operator_file), "operator"));
      std::vector<FiniteVector> probes;
      if (!probes_file.empty()) {
        Json list = io::load_file(probes_file);
        if (!list.is_array()) throw InputError("probes file must hold an array of vectors");
        for (const auto& v : list) probes.push_back(io::vector_from_json(v));
      }
      Index next = 1;
      for (const auto& b : T.bundles) next = std::max(next, b.vector().max_index() + 1);
      if (!probes.empty()) next = std::max(next, probes.back().max_index() + 1);
      for (std::size_t i = 0; i < kernel; ++i) probes.push_back(FiniteVector::unit(next + static_cast<Index>(i)));
      ProbeResult r = singularity_probe(T, probes, j0, max_evaluations);
      o.doc["x"] = io::to_json(r.x);
      o.doc["g_norm"] = to_string(r.g_norm);
      o.doc["t_norm"] = to_string(r.t_norm);
      o.doc["estimate"] = to_string(r.rhs);
      o.doc["report"] = io::to_json(r.report);
      o.reports.emplace_back("probe", r.report);
      o.failed = !r.report.passed();
    }
    emit(o, g, out);
    return o.failed ? kVerificationFailure : kOk;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace tsirelson::cli
