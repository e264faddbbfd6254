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


#include "tsirelson/json_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "tsirelson/error.hpp"

namespace tsirelson::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

Json path_json(const CorePath& p) { return Json(p); }

CorePath path_from(const Json& j) { return j.get<CorePath>(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const Rational& value) { return to_pq_string(value); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rationals are \"p/q\" strings");
}

Json to_json(const FiniteSet& set) { return Json(set.elements()); }

FiniteSet set_from_json(const Json& j) {
  return guarded("set", [&] { return FiniteSet(j.get<std::vector<Index>>()); });
}

Json to_json(const FamilyKind& fam) { return Json{{"ladder", to_string(fam.ladder)}, {"rank", fam.rank}}; }

FamilyKind family_from_json(const Json& j) {
  return guarded("family", [&] {
    FamilyKind fam{parse_ladder(field(j, "ladder").get<std::string>()), field(j, "rank").get<int>()};
    if (fam.rank < 0) throw InputError("family rank must be non-negative");
    return fam;
  });
}

Json to_json(const ThetaSequence& theta) {
  Json j{{"kind", to_string(theta.kind())}};
  switch (theta.kind()) {
    case ThetaKind::ReciprocalShift:
      break;
    case ThetaKind::Geometric:
      j["ratio"] = to_json(theta.ratio());
      break;
    case ThetaKind::LogEnclosure:
      j["precision_bits"] = theta.precision_bits();
      break;
    case ThetaKind::Table: {
      Json values = Json::array();
      for (const auto& v : theta.table_values()) values.push_back(to_json(v));
      j["values"] = values;
      j["tail"] = to_json(*theta.tail());
      break;
    }
  }
  return j;
}

ThetaSequence theta_from_json(const Json& j) {
  return guarded("theta", [&]() -> ThetaSequence {
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "reciprocal-shift") return ThetaSequence::reciprocal_shift();
    if (kind == "geometric") return ThetaSequence::geometric(rational_from_json(field(j, "ratio")));
    if (kind == "log-enclosure") {
      return ThetaSequence::log_enclosure(j.contains("precision_bits") ? j.at("precision_bits").get<int>() : 64);
    }
    if (kind == "table") {
      std::vector<Rational> values;
      for (const auto& v : field(j, "values")) values.push_back(rational_from_json(v));
      return ThetaSequence::table(std::move(values), theta_from_json(field(j, "tail")));
    }
    throw InputError("unknown theta kind \"" + kind + "\"");
  });
}

Json to_json(const SpaceSpec& space) {
  return Json{{"ladder", to_string(space.ladder)}, {"theta", to_json(space.theta)}, {"weight_cutoff", space.weight_cutoff}};
}

SpaceSpec space_from_json(const Json& j) {
  return guarded("space", [&] {
    SpaceSpec space;
    space.ladder = parse_ladder(field(j, "ladder").get<std::string>());
    if (j.contains("theta")) space.theta = theta_from_json(j.at("theta"));
    if (j.contains("weight_cutoff")) space.weight_cutoff = j.at("weight_cutoff").get<Index>();
    if (space.weight_cutoff < 1) throw InputError("weight_cutoff must be positive");
    return space;
  });
}

Json to_json(const FiniteVector& x) {
  Json coords = Json::array();
  for (const auto& [i, v] : x.coords()) coords.push_back(Json::array({i, to_json(v)}));
  return Json{{"coords", coords}};
}

FiniteVector vector_from_json(const Json& j) {
  return guarded("vector", [&] {
    std::vector<FiniteVector::Entry> coords;
    for (const auto& entry : field(j, "coords")) {
      if (!entry.is_array() || entry.size() != 2) throw InputError("coordinates are [index, \"p/q\"] pairs");
      coords.emplace_back(entry.at(0).get<Index>(), rational_from_json(entry.at(1)));
    }
    return FiniteVector(std::move(coords));
  });
}

Json to_json(const NormingTree& f) {
  if (f.leaf) return Json{{"leaf", Json::array({f.sign, f.index})}};
  Json children = Json::array();
  for (const auto& c : f.children) children.push_back(to_json(c));
  return Json{{"op", f.weight}, {"children", children}};
}

NormingTree tree_from_json(const Json& j) {
  return guarded("tree", [&] {
    if (j.contains("leaf")) {
      const Json& leaf = j.at("leaf");
      if (!leaf.is_array() || leaf.size() != 2) throw InputError("leaf is [sign, index]");
      int sign = leaf.at(0).get<int>();
      Index index = leaf.at(1).get<Index>();
      if ((sign != 1 && sign != -1) || index < 1) throw InputError("leaf needs sign +-1 and index >= 1");
      return NormingTree::Leaf(sign, index);
    }
    Index op = field(j, "op").get<Index>();
    if (op < 1) throw InputError("operation index must be >= 1");
    std::vector<NormingTree> children;
    for (const auto& c : field(j, "children")) children.push_back(tree_from_json(c));
    if (children.empty()) throw InputError("internal node without children");
    return NormingTree::Internal(op, std::move(children));
  });
}

Json to_json(const SpecialAverage& x) {
  Json j = to_json(x.vector);
  j["rank"] = x.rank;
  j["epsilon"] = to_json(x.epsilon);
  j["ladder"] = to_string(x.ladder);
  return j;
}

SpecialAverage average_from_json(const Json& j) {
  return guarded("average", [&] {
    return SpecialAverage{vector_from_json(j), field(j, "rank").get<int>(), rational_from_json(field(j, "epsilon")),
                          parse_ladder(field(j, "ladder").get<std::string>())};
  });
}

Json to_json(const CoreTree& core) {
  Json children = Json::array();
  for (const auto& c : core.children) children.push_back(to_json(c));
  return Json{{"m", core.m}, {"children", children}};
}

CoreTree core_from_json(const Json& j) {
  return guarded("core tree", [&] {
    CoreTree core;
    core.m = field(j, "m").get<Index>();
    if (core.m < 1) throw InputError("core weight index must be >= 1");
    if (j.contains("children")) {
      for (const auto& c : j.at("children")) core.children.push_back(core_from_json(c));
    }
    return core;
  });
}

Json to_json(const RisBundle& bundle) {
  Json v_map = Json::array();
  Json nodes = Json::array();
  for (const auto& node : bundle.nodes) {
    if (node.terminal) {
      nodes.push_back(Json{{"path", path_json(node.path)}, {"t", node.x.min_index()}, {"coefficient", to_json(node.coefficient)}});
      continue;
    }
    v_map.push_back(Json::array({path_json(node.path), path_json(node.core)}));
    nodes.push_back(Json{{"path", path_json(node.path)},
                         {"core", path_json(node.core)},
                         {"m", node.m},
                         {"coefficient", to_json(node.coefficient)},
                         {"epsilon", to_json(node.epsilon)},
                         {"epsilon_tilde", to_json(node.epsilon_tilde)},
                         {"x", to_json(node.x)},
                         {"children", node.children}});
  }
  return Json{{"height", bundle.height},
              {"ladder", to_string(bundle.ladder)},
              {"relaxed", bundle.relaxed},
              {"p_n", bundle.p_n},
              {"p_bound", bundle.p_bound},
              {"vector", to_json(bundle.vector())},
              {"functional", to_json(bundle.functional())},
              {"v_map", v_map},
              {"nodes", nodes}};
}

RisBundle bundle_from_json(const Json& j) {
  return guarded("bundle", [&] {
    RisBundle bundle;
    bundle.height = field(j, "height").get<std::size_t>();
    bundle.ladder = parse_ladder(field(j, "ladder").get<std::string>());
    bundle.relaxed = field(j, "relaxed").get<bool>();
    bundle.p_n = field(j, "p_n").get<Index>();
    bundle.p_bound = field(j, "p_bound").get<Index>();
    for (const auto& n : field(j, "nodes")) {
      BundleNode node;
      node.path = path_from(field(n, "path"));
      node.coefficient = rational_from_json(field(n, "coefficient"));
      if (n.contains("t")) {
        node.terminal = true;
        Index t = n.at("t").get<Index>();
        node.x = FiniteVector::unit(t);
        node.f = NormingTree::Leaf(1, t);
      } else {
        node.core = path_from(field(n, "core"));
        node.m = field(n, "m").get<Index>();
        node.epsilon = rational_from_json(field(n, "epsilon"));
        node.epsilon_tilde = rational_from_json(field(n, "epsilon_tilde"));
        node.x = vector_from_json(field(n, "x"));
        node.children = field(n, "children").get<std::vector<std::size_t>>();
      }
      bundle.nodes.push_back(std::move(node));
    }
    if (bundle.nodes.empty() || bundle.nodes[0].terminal) throw InputError("bundle needs a non-terminal root");
    for (std::size_t k = bundle.nodes.size(); k-- > 0;) {
      BundleNode& node = bundle.nodes[k];
      if (node.terminal) continue;
      std::vector<NormingTree> fs;
      for (std::size_t c : node.children) {
        if (c <= k || c >= bundle.nodes.size()) throw InputError("bundle children must follow their parent");
        BundleNode& child = bundle.nodes[c];
        if (child.terminal) child.core = node.core;
        fs.push_back(child.f);
      }
      if (fs.empty()) throw InputError("non-terminal bundle node without children");
      node.f = NormingTree::Internal(node.m, std::move(fs));
    }
    if (bundle.functional() != tree_from_json(field(j, "functional")) || bundle.vector() != vector_from_json(field(j, "vector"))) {
      throw InputError("bundle root does not match its nodes");
    }
    return bundle;
  });
}

Json to_json(const OperatorSpec& T) {
  Json functionals = Json::array();
  for (const auto& f : T.functionals) functionals.push_back(to_json(f));
  Json bundles = Json::array();
  for (const auto& b : T.bundles) bundles.push_back(to_json(b));
  return Json{{"space", to_json(T.space)},
              {"core", to_json(T.core)},
              {"r", T.r},
              {"heights", T.heights},
              {"c", to_json(T.c)},
              {"relaxed", T.relaxed},
              {"targets", T.targets},
              {"functionals", functionals},
              {"bundles", bundles}};
}

OperatorSpec operator_from_json(const Json& j) {
  return guarded("operator", [&] {
    OperatorSpec T;
    T.space = space_from_json(field(j, "space"));
    T.core = core_from_json(field(j, "core"));
    T.r = field(j, "r").get<std::vector<Index>>();
    T.heights = field(j, "heights").get<std::vector<std::size_t>>();
    T.c = rational_from_json(field(j, "c"));
    T.relaxed = field(j, "relaxed").get<bool>();
    T.targets = field(j, "targets").get<std::vector<Index>>();
    for (const auto& f : field(j, "functionals")) T.functionals.push_back(tree_from_json(f));
    if (j.contains("bundles")) {
      for (const auto& b : j.at("bundles")) T.bundles.push_back(bundle_from_json(b));
    }
    if (T.targets.size() != T.functionals.size()) throw InputError("one target per functional");
    return T;
  });
}

Json to_json(const Report& report) {
  Json premises = Json::array();
  for (const auto& p : report.premises) premises.push_back(Json{{"name", p.name}, {"holds", p.holds}, {"detail", p.detail}});
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json entry{{"name", w.name}, {"value", w.value}};
    if (w.holds) entry["holds"] = *w.holds;
    witnesses.push_back(entry);
  }
  return Json{{"claim", report.claim},
              {"premises", premises},
              {"verdict", report.verdict()},
              {"witnesses", witnesses},
              {"flags", report.flags}};
}

Report report_from_json(const Json& j) {
  return guarded("report", [&] {
    Report report;
    report.claim = field(j, "claim").get<std::string>();
    for (const auto& p : field(j, "premises")) {
      report.premise(field(p, "name").get<std::string>(), field(p, "holds").get<bool>(), p.value("detail", ""));
    }
    for (const auto& w : field(j, "witnesses")) {
      std::optional<bool> holds;
      if (w.contains("holds")) holds = w.at("holds").get<bool>();
      report.witnesses.push_back({field(w, "name").get<std::string>(), w.value("value", ""), holds});
    }
    if (j.contains("flags")) report.flags = j.at("flags").get<std::vector<std::string>>();
    return report;
  });
}

std::string csv_header() { return "claim,instance,kind,name,holds,value\n"; }

std::string to_csv(const Report& report, const std::string& instance) {
  std::ostringstream out;
  std::string head = csv_escape(report.claim) + "," + csv_escape(instance) + ",";
  for (const auto& p : report.premises) {
    out << head << "premise," << csv_escape(p.name) << "," << (p.holds ? "true" : "false") << "," << csv_escape(p.detail) << "\n";
  }
  for (const auto& w : report.witnesses) {
    out << head << (w.holds ? "check," : "note,") << csv_escape(w.name) << ","
        << (w.holds ? (*w.holds ? "true" : "false") : "") << "," << csv_escape(w.value) << "\n";
  }
  return out.str();
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void save_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace tsirelson::io
