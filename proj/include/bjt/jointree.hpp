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

#ifndef BJT_JOINTREE_HPP
#define BJT_JOINTREE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/op_counter.hpp"
#include "bjt/potential.hpp"

namespace bjt {

using NodeId = std::size_t;

/// One directed message slot, μ^{from→to}.
struct MessageRegister {
  NodeId from = 0;
  NodeId to = 0;
  std::optional<Potential> payload;
};

/// Product of a node's inbound messages and input valuation, built while
/// computing the outgoing message to `excluded`, before marginalization.
/// `product` is empty when there was nothing to combine.
struct CachedProduct {
  NodeId excluded = 0;
  std::optional<Potential> product;
};

struct JoinTreeNode {
  NodeId id = 0;
  Domain label;
  std::optional<Potential> input;
  std::optional<Potential> marginal;
  std::optional<CachedProduct> partial;
};

/// An undirected edge with one register per direction. `a < b`.
struct JoinTreeEdge {
  NodeId a = 0;
  NodeId b = 0;
  MessageRegister forward;   // a → b
  MessageRegister backward;  // b → a
};

class JoinTree {
 public:
  explicit JoinTree(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw UsageError("join tree requires a variable table");
  }

  const TablePtr& table() const { return table_; }
  const VariableTable& variables() const { return *table_; }

  NodeId add_node(Domain label) {
    for (auto v : label)
      if (!table_->contains(v)) throw DomainError("unknown variable id " + std::to_string(v));
    const NodeId id = nodes_.size();
    nodes_.push_back(JoinTreeNode{id, std::move(label), {}, {}, {}});
    adjacency_.emplace_back();
    return id;
  }

  void add_edge(NodeId a, NodeId b) {
    check(a);
    check(b);
    if (a == b) throw UsageError("self-loop on node " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (edge_index_.contains({a, b}))
      throw UsageError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    edge_index_.emplace(std::pair{a, b}, edges_.size());
    edges_.push_back(JoinTreeEdge{a, b, MessageRegister{a, b, {}}, MessageRegister{b, a, {}}});
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const JoinTreeNode& node(NodeId id) const { return nodes_.at(id); }
  JoinTreeNode& node(NodeId id) { return nodes_.at(id); }
  std::span<const JoinTreeNode> nodes() const { return nodes_; }
  std::span<const JoinTreeEdge> edges() const { return edges_; }

  /// Neighbours in ascending id order.
  const std::vector<NodeId>& neighbors(NodeId id) const { return adjacency_.at(id); }
  std::size_t degree(NodeId id) const { return adjacency_.at(id).size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
  }

  bool adjacent(NodeId a, NodeId b) const {
    return edge_index_.contains({std::min(a, b), std::max(a, b)});
  }

  MessageRegister& message(NodeId from, NodeId to) {
    return const_cast<MessageRegister&>(std::as_const(*this).message(from, to));
  }

  const MessageRegister& message(NodeId from, NodeId to) const {
    auto it = edge_index_.find({std::min(from, to), std::max(from, to)});
    if (it == edge_index_.end())
      throw UsageError("nodes " + std::to_string(from) + " and " + std::to_string(to) +
                       " are not adjacent");
    const auto& e = edges_[it->second];
    return from < to ? e.forward : e.backward;
  }

  /// Lowest-id node carrying exactly `label`.
  std::optional<NodeId> find_label(const Domain& label) const {
    for (const auto& n : nodes_)
      if (n.label == label) return n.id;
    return std::nullopt;
  }

  /// Empties every message, marginal and cached product. Inputs stay.
  void clear_registers() {
    for (auto& e : edges_) {
      e.forward.payload.reset();
      e.backward.payload.reset();
    }
    for (auto& n : nodes_) {
      n.marginal.reset();
      n.partial.reset();
    }
  }

  /// Same labels per id, same edge set, same input registers.
  friend bool same_structure(const JoinTree& x, const JoinTree& y) {
    if (x.table_ != y.table_ || x.nodes_.size() != y.nodes_.size() ||
        x.edges_.size() != y.edges_.size())
      return false;
    for (std::size_t i = 0; i < x.nodes_.size(); ++i) {
      if (x.nodes_[i].label != y.nodes_[i].label) return false;
      if (x.nodes_[i].input != y.nodes_[i].input) return false;
    }
    for (const auto& e : x.edges_)
      if (!y.adjacent(e.a, e.b)) return false;
    return true;
  }

 private:
  void check(NodeId id) const {
    if (id >= nodes_.size()) throw UsageError("unknown node id " + std::to_string(id));
  }

  static void insert_sorted(std::vector<NodeId>& v, NodeId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }

  TablePtr table_;
  std::vector<JoinTreeNode> nodes_;
  std::vector<JoinTreeEdge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> edge_index_;
};

/// Outcome of verify_join_tree; `diagnostic` explains a failure.
struct TreeCheck {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

namespace detail {

/// Nodes reachable from `start` using only nodes accepted by `keep`.
template <class Keep>
std::vector<bool> reachable(const JoinTree& tree, NodeId start, Keep keep) {
  std::vector<bool> seen(tree.node_count(), false);
  std::queue<NodeId> q;
  seen[start] = true;
  q.push(start);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v : tree.neighbors(u))
      if (!seen[v] && keep(v)) {
        seen[v] = true;
        q.push(v);
      }
  }
  return seen;
}

/// Node sequence of the tree path from `from` to `to`.
inline std::vector<NodeId> tree_path(const JoinTree& tree, NodeId from, NodeId to) {
  std::vector<NodeId> parent(tree.node_count(), tree.node_count());
  std::queue<NodeId> q;
  parent[from] = from;
  q.push(from);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (NodeId v : tree.neighbors(u))
      if (parent[v] == tree.node_count()) {
        parent[v] = u;
        q.push(v);
      }
  }
  std::vector<NodeId> path;
  if (parent[to] == tree.node_count()) return path;
  for (NodeId v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

inline std::string node_name(const JoinTree& tree, NodeId id) {
  return "#" + std::to_string(id) + format_domain(tree.node(id).label, tree.variables());
}

}  // namespace detail

/// Checks that the edges form a tree and that every variable's nodes induce a
/// connected subtree (running intersection).
inline TreeCheck verify_join_tree(const JoinTree& tree) {
  const auto n = tree.node_count();
  if (n == 0) return {false, "tree has no nodes"};
  if (tree.edge_count() != n - 1)
    return {false, "expected " + std::to_string(n - 1) + " edges for " + std::to_string(n) +
                       " nodes, found " + std::to_string(tree.edge_count())};
  const auto all = detail::reachable(tree, 0, [](NodeId) { return true; });
  for (NodeId v = 0; v < n; ++v)
    if (!all[v]) return {false, "node " + detail::node_name(tree, v) + " is disconnected"};

  for (const auto& var : tree.variables().entries()) {
    std::vector<NodeId> holders;
    for (const auto& node : tree.nodes())
      if (node.label.contains(var.id)) holders.push_back(node.id);
    if (holders.size() < 2) continue;
    const auto seen = detail::reachable(
        tree, holders.front(), [&](NodeId v) { return tree.node(v).label.contains(var.id); });
    for (NodeId h : holders) {
      if (seen[h]) continue;
      std::string path;
      for (NodeId p : detail::tree_path(tree, holders.front(), h)) {
        if (!path.empty()) path += " - ";
        path += detail::node_name(tree, p);
      }
      return {false, "running intersection fails for variable '" + var.name + "' on path " +
                         path};
    }
  }
  return {};
}

/// No node has more than three neighbours.
inline bool is_binary(const JoinTree& tree) { return tree.max_degree() <= 3; }

/// Places each valuation in the input register of one node: the lowest-id
/// node whose label equals its domain, otherwise the covering node with the
/// smallest state space (ties by id). Valuations landing on the same node
/// are combined, and those combinations are counted.
inline JoinTree attach_valuations(JoinTree tree, std::span<const Potential> valuations,
                                  OpCounter* counter = nullptr) {
  const auto& vt = tree.variables();
  for (const auto& val : valuations) {
    if (val.table() != tree.table())
      throw UsageError("attach_valuations: valuation uses a different variable table");
    std::optional<NodeId> target = tree.find_label(val.domain());
    if (!target && val.domain().empty() && tree.node_count() > 0) target = 0;
    if (!target) {
      std::uint64_t best = 0;
      for (const auto& node : tree.nodes()) {
        if (!val.domain().subset_of(node.label)) continue;
        const auto w = state_space_size(node.label, vt);
        if (!target || w < best) {
          target = node.id;
          best = w;
        }
      }
    }
    if (!target)
      throw UsageError("attach_valuations: no node covers " + format_domain(val.domain(), vt));
    auto& slot = tree.node(*target).input;
    slot = slot ? combine(*slot, val, counter) : val;
  }
  return tree;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// Graphviz rendering. Labels shared by several nodes get " #k" suffixes in
/// id order; nodes holding an input valuation are drawn with a double border.
inline std::string export_dot(const JoinTree& tree) {
  std::map<Domain, std::size_t> multiplicity;
  for (const auto& n : tree.nodes()) ++multiplicity[n.label];
  std::map<Domain, std::size_t> seen;

  std::ostringstream out;
  out << "graph join_tree {\n  node [shape=box];\n";
  for (const auto& n : tree.nodes()) {
    std::string text = format_domain(n.label, tree.variables());
    if (multiplicity[n.label] > 1) text += " #" + std::to_string(++seen[n.label]);
    out << "  n" << n.id << " [label=\"" << detail::dot_escape(text) << "\"";
    if (n.input) out << ", peripheries=2";
    out << "];\n";
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& e : tree.edges()) edges.emplace_back(e.a, e.b);
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << "  n" << a << " -- n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace bjt

#endif  // BJT_JOINTREE_HPP
