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

#include "tsirelson/norming_tree.hpp"

#include <algorithm>

#include "tsirelson/error.hpp"

namespace tsirelson {

NormingTree NormingTree::Leaf(int sign, Index index) {
  NormingTree t;
  t.leaf = true;
  t.sign = sign;
  t.index = index;
  return t;
}

NormingTree NormingTree::Internal(Index weight, std::vector<NormingTree> children) {
  NormingTree t;
  t.leaf = false;
  t.weight = weight;
  t.children = std::move(children);
  return t;
}

Index NormingTree::min_support() const {
  if (leaf) return index;
  if (children.empty()) throw InputError("internal node without children has no support");
  return children.front().min_support();
}

Index NormingTree::max_support() const {
  if (leaf) return index;
  if (children.empty()) throw InputError("internal node without children has no support");
  return children.back().max_support();
}

namespace {

void collect(const NormingTree& f, std::vector<Index>& out) {
  if (f.leaf) {
    out.push_back(f.index);
    return;
  }
  for (const auto& c : f.children) collect(c, out);
}

void accumulate(const NormingTree& f, const ThetaSequence& theta, const Rational& scale,
                std::map<Index, Rational>& out) {
  if (f.leaf) {
    out[f.index] += f.sign > 0 ? Rational(scale) : Rational(-scale);
    return;
  }
  Rational s = scale * theta.value(f.weight);
  for (const auto& c : f.children) accumulate(c, theta, s, out);
}

}  // namespace

FiniteSet NormingTree::support() const {
  std::vector<Index> v;
  collect(*this, v);
  return FiniteSet::from_unsorted(std::move(v));
}

std::size_t NormingTree::leaf_count() const {
  if (leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

std::size_t NormingTree::depth() const {
  if (leaf) return 0;
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.depth());
  return d + 1;
}

Rational eval(const NormingTree& f, const FiniteVector& x, const ThetaSequence& theta) {
  if (f.leaf) {
    Rational v = x.at(f.index);
    return f.sign > 0 ? v : Rational(-v);
  }
  Rational sum = 0;
  for (const auto& c : f.children) sum += eval(c, x, theta);
  return theta.value(f.weight) * sum;
}

std::map<Index, Rational> coefficients(const NormingTree& f, const ThetaSequence& theta) {
  std::map<Index, Rational> out;
  accumulate(f, theta, Rational(1), out);
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

Rational apply_coefficients(const std::map<Index, Rational>& f, const FiniteVector& x) {
  Rational sum = 0;
  for (const auto& [i, v] : x.coords()) {
    if (auto it = f.find(i); it != f.end()) sum += it->second * v;
  }
  return sum;
}

namespace {

bool check(const NormingTree& f, const SpaceSpec& space, ValidationReport& report) {
  if (f.leaf) {
    if (f.sign != 1 && f.sign != -1) {
      report.message = "leaf sign must be +1 or -1";
      return false;
    }
    if (f.index < 1) {
      report.message = "leaf index must be positive";
      return false;
    }
    return true;
  }
  if (f.weight < 1) {
    report.message = "internal node weight index must be >= 1";
    return false;
  }
  if (f.children.empty()) {
    report.message = "internal node has no children";
    return false;
  }
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    report.path.push_back(i);
    if (!check(f.children[i], space, report)) return false;
    report.path.pop_back();
  }
  std::vector<Index> minima;
  minima.reserve(f.children.size());
  for (std::size_t i = 0; i < f.children.size(); ++i) {
    if (i > 0 && f.children[i - 1].max_support() >= f.children[i].min_support()) {
      report.message = "children " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not successive";
      return false;
    }
    minima.push_back(f.children[i].min_support());
  }
  if (!is_member(FiniteSet(std::move(minima)), space.family(f.weight))) {
    report.message = "children minima are not in " + to_string(space.family(f.weight));
    return false;
  }
  return true;
}

}  // namespace

ValidationReport validate(const NormingTree& f, const SpaceSpec& space) {
  ValidationReport report;
  report.ok = check(f, space, report);
  if (report.ok) report.path.clear();
  return report;
}

}  // namespace tsirelson
