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


#include "tsirelson/core_tree.hpp"

#include <algorithm>
#include <deque>

#include "tsirelson/error.hpp"

namespace tsirelson {

std::size_t CoreTree::depth() const {
  std::size_t d = 0;
  for (const auto& child : children) d = std::max(d, child.depth() + 1);
  return d;
}

std::size_t CoreTree::node_count() const {
  std::size_t count = 1;
  for (const auto& child : children) count += child.node_count();
  return count;
}

CoreTree CoreTree::chain(const std::vector<Index>& ms) {
  if (ms.empty()) throw InputError("a core tree needs at least the root");
  CoreTree tree{ms.back(), {}};
  for (auto it = ms.rbegin() + 1; it != ms.rend(); ++it) tree = CoreTree{*it, {tree}};
  return tree;
}

CoreTree CoreTree::uniform(const std::vector<Index>& ms, const std::vector<std::size_t>& branching) {
  if (ms.empty() || branching.size() + 1 != ms.size()) throw InputError("uniform core: need one branching per non-last level");
  CoreTree tree{ms.back(), {}};
  for (std::size_t l = ms.size() - 1; l-- > 0;) {
    tree = CoreTree{ms[l], std::vector<CoreTree>(branching[l], tree)};
  }
  return tree;
}

const CoreTree* descend(const CoreTree& root, const CorePath& path) {
  const CoreTree* node = &root;
  for (int step : path) {
    if (step < 1 || static_cast<std::size_t>(step) > node->children.size()) return nullptr;
    node = &node->children[static_cast<std::size_t>(step - 1)];
  }
  return node;
}

bool lex_less(const CorePath& a, const CorePath& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

CoreIndex::CoreIndex(const CoreTree& root) {
  std::deque<std::pair<CorePath, const CoreTree*>> queue{{CorePath{}, &root}};
  while (!queue.empty()) {
    auto [path, node] = queue.front();
    queue.pop_front();
    if (node->m < 1) throw InputError("core weight index must be >= 1");
    for (std::size_t i = 0; i < node->children.size(); ++i) {
      CorePath child = path;
      child.push_back(static_cast<int>(i + 1));
      queue.emplace_back(std::move(child), &node->children[i]);
    }
    paths_.push_back(std::move(path));
    ms_.push_back(node->m);
    Ms_.push_back(node->M());
  }
}

std::optional<std::size_t> CoreIndex::find(const CorePath& path) const {
  auto lo = std::find(paths_.begin(), paths_.end(), path);
  if (lo == paths_.end()) return std::nullopt;
  return static_cast<std::size_t>(lo - paths_.begin());
}

std::optional<std::size_t> CoreIndex::parent(std::size_t j) const {
  const CorePath& p = path(j);
  if (p.empty()) return std::nullopt;
  return find(CorePath(p.begin(), p.end() - 1));
}

Index CoreIndex::ord(std::size_t j) const {
  Index total = 0;
  for (auto k = parent(j); k; k = parent(*k)) total += m(*k);
  return total;
}

Rational CoreIndex::c(std::size_t j, const ThetaSequence& theta) const {
  Rational product = 1;
  for (auto k = parent(j); k; k = parent(*k)) product *= theta.value(m(*k));
  return product;
}

std::vector<std::size_t> CoreIndex::level_nodes(std::size_t level) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < paths_.size(); ++j) {
    if (paths_[j].size() == level) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> CoreIndex::I(std::size_t j) const {
  const CorePath& mu = path(j);
  std::vector<std::size_t> out;
  for (std::size_t b : level_nodes(mu.size())) {
    if (lex_less(mu, paths_[b])) {
      out.push_back(b);
    } else if (lex_less(paths_[b], mu)) {
      for (std::size_t child : level_nodes(mu.size() + 1)) {
        if (*parent(child) == b) out.push_back(child);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tsirelson
