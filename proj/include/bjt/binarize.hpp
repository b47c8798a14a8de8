/*
 *   Copyright 2026 The bjt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BJT_BINARIZE_HPP
#define BJT_BINARIZE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/jointree.hpp"

namespace bjt {

/// Node with the largest label state space, ties by lowest id.
inline NodeId default_root(const JoinTree& tree) {
  if (tree.node_count() == 0) throw UsageError("default_root: empty tree");
  NodeId best = 0;
  std::uint64_t best_weight = 0;
  for (const auto& n : tree.nodes()) {
    const auto w = state_space_size(n.label, tree.variables());
    if (n.id == 0 || w > best_weight) {
      best = n.id;
      best_weight = w;
    }
  }
  return best;
}

/// Parent pointers and a root-first visiting order of a tree.
struct RootedTree {
  NodeId root = 0;
  std::vector<std::optional<NodeId>> parent;
  std::vector<NodeId> preorder;
};

inline RootedTree root_tree(const JoinTree& tree, NodeId root, bool descending_children = false) {
  RootedTree out;
  out.root = root;
  out.parent.assign(tree.node_count(), std::nullopt);
  std::vector<bool> seen(tree.node_count(), false);
  std::vector<NodeId> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    out.preorder.push_back(u);
    std::vector<NodeId> kids;
    for (NodeId v : tree.neighbors(u))
      if (!seen[v]) kids.push_back(v);
    if (!descending_children) std::reverse(kids.begin(), kids.end());
    // Pushed in reverse so the first child in visiting order is popped first.
    for (NodeId v : kids) {
      seen[v] = true;
      out.parent[v] = u;
      stack.push_back(v);
    }
  }
  return out;
}

/// Replaces every node of degree k > 3 by a chain of same-label copies, each
/// doing one binary combination. Directed toward `root`, such a node folds
/// its children and its input valuation into the message for its parent:
/// with m such items the chain has m − 1 copies. The first copy takes the two
/// lightest children (by subtree state-space weight), each later copy takes
/// the next item, and the root-side copy takes the last item, which is the
/// input valuation when there is one, plus the parent. That copy keeps the
/// original node id; the others are appended. Nodes of degree ≤ 3 are left
/// alone, so an already-binary tree comes back unchanged.
inline JoinTree binarize(const JoinTree& tree, std::optional<NodeId> root = std::nullopt) {
  if (auto check = verify_join_tree(tree); !check)
    throw UsageError("binarize: invalid join tree: " + check.diagnostic);
  const NodeId r = root.value_or(default_root(tree));
  if (r >= tree.node_count()) throw UsageError("binarize: unknown root " + std::to_string(r));
  const auto& vt = tree.variables();
  const auto rooted = root_tree(tree, r);

  std::vector<std::uint64_t> weight(tree.node_count(), 0);
  for (auto it = rooted.preorder.rbegin(); it != rooted.preorder.rend(); ++it) {
    auto w = state_space_size(tree.node(*it).label, vt);
    for (NodeId v : tree.neighbors(*it))
      if (rooted.parent[v] == *it) {
        const auto sum = w + weight[v];
        w = sum < w ? std::numeric_limits<std::uint64_t>::max() : sum;
      }
    weight[*it] = w;
  }

  JoinTree out(tree.table());
  for (const auto& n : tree.nodes()) {
    const NodeId id = out.add_node(n.label);
    out.node(id).input = n.input;
  }

  // owner[{v, w}]: the copy of v that the original edge v–w now attaches to.
  std::map<std::pair<NodeId, NodeId>, NodeId> owner;
  std::vector<std::pair<NodeId, NodeId>> chain_edges;
  for (const auto& n : tree.nodes()) {
    if (tree.degree(n.id) <= 3) continue;
    std::vector<NodeId> children;
    for (NodeId v : tree.neighbors(n.id))
      if (rooted.parent[v] == n.id) children.push_back(v);
    std::stable_sort(children.begin(), children.end(),
                     [&](NodeId a, NodeId b) { return weight[a] < weight[b]; });

    const std::size_t items = children.size() + (n.input ? 1 : 0);
    const std::size_t copies = items - 1;
    std::vector<NodeId> chain;
    for (std::size_t i = 0; i + 1 < copies; ++i) chain.push_back(out.add_node(n.label));
    chain.push_back(n.id);

    // Item i goes to copy max(i, 1) − 1; an input item is always last.
    for (std::size_t i = 0; i < children.size(); ++i)
      owner[{n.id, children[i]}] = chain[i == 0 ? 0 : i - 1];
    if (rooted.parent[n.id]) owner[{n.id, *rooted.parent[n.id]}] = n.id;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      chain_edges.emplace_back(chain[i], chain[i + 1]);
  }

  auto end_of = [&](NodeId v, NodeId w) {
    auto it = owner.find({v, w});
    return it == owner.end() ? v : it->second;
  };
  for (const auto& e : tree.edges()) out.add_edge(end_of(e.a, e.b), end_of(e.b, e.a));
  for (const auto& [a, b] : chain_edges) out.add_edge(a, b);
  return out;
}

}  // namespace bjt

#endif  // BJT_BINARIZE_HPP
