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

#ifndef BJT_PROPAGATION_HPP
#define BJT_PROPAGATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bjt/binarize.hpp"
#include "bjt/build.hpp"
#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/jointree.hpp"
#include "bjt/op_counter.hpp"
#include "bjt/potential.hpp"

namespace bjt {

using DirectedEdge = std::pair<NodeId, NodeId>;

enum class ChildOrder { Ascending, Descending };

struct ScheduleOptions {
  std::optional<NodeId> root;  // default_root() when empty
  ChildOrder child_order = ChildOrder::Ascending;
};

struct PropagationOptions {
  ScheduleOptions schedule;
  /// Build each marginal from a cached message product plus the one
  /// remaining inbound message instead of recombining everything.
  bool reuse_partials = true;
};

struct PropagationReport {
  std::map<NodeId, Potential> marginals;
  OpCounter counter;
  std::map<NodeId, OpCounter> per_node;
  std::vector<DirectedEdge> schedule;
};

inline std::vector<NodeId> all_nodes(const JoinTree& tree) {
  std::vector<NodeId> out(tree.node_count());
  for (NodeId i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

/// One node per distinct label, the lowest id of each.
inline std::vector<NodeId> distinct_label_nodes(const JoinTree& tree) {
  std::set<Domain> seen;
  std::vector<NodeId> out;
  for (const auto& n : tree.nodes())
    if (seen.insert(n.label).second) out.push_back(n.id);
  return out;
}

/// Messages needed for every target to hold all its inbound messages, in a
/// dependency-respecting order: an inward sweep toward the root (post-order)
/// followed by an outward sweep (pre-order). With every node as a target
/// this is exactly two messages per edge.
inline std::vector<DirectedEdge> schedule(const JoinTree& tree, std::span<const NodeId> targets,
                                          const ScheduleOptions& options = {}) {
  if (tree.node_count() == 0) return {};
  const NodeId root = options.root.value_or(default_root(tree));
  const auto rooted = root_tree(tree, root, options.child_order == ChildOrder::Descending);

  std::vector<std::size_t> below(tree.node_count(), 0);
  std::size_t total = 0;
  for (NodeId t : targets) {
    if (t >= tree.node_count()) throw UsageError("unknown target node " + std::to_string(t));
    ++below[t];
    ++total;
  }
  for (auto it = rooted.preorder.rbegin(); it != rooted.preorder.rend(); ++it)
    if (rooted.parent[*it]) below[*rooted.parent[*it]] += below[*it];

  std::vector<DirectedEdge> out;
  // Reversed pre-order visits every child before its parent.
  std::vector<NodeId> postorder;
  {
    const auto mirrored = root_tree(tree, root, options.child_order == ChildOrder::Ascending);
    postorder.assign(mirrored.preorder.rbegin(), mirrored.preorder.rend());
  }
  for (NodeId v : postorder)
    if (rooted.parent[v] && total > below[v]) out.emplace_back(v, *rooted.parent[v]);
  for (NodeId v : rooted.preorder)
    if (rooted.parent[v] && below[v] > 0) out.emplace_back(*rooted.parent[v], v);
  return out;
}

namespace detail {

/// Left fold of `items` with combine; empty when there is nothing to fold.
inline std::optional<Potential> fold_combine(std::vector<const Potential*> items,
                                             OpCounter& counter) {
  if (items.empty()) return std::nullopt;
  Potential acc = *items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = combine(acc, *items[i], &counter);
  return acc;
}

inline const Potential& inbound(const JoinTree& tree, NodeId from, NodeId to) {
  const auto& reg = tree.message(from, to);
  if (!reg.payload)
    throw SchedulingError("message " + node_name(tree, from) + " -> " + node_name(tree, to) +
                          " has not been computed");
  return *reg.payload;
}

/// `product` (or the identity when empty) projected to its part of `target`,
/// then vacuously extended to all of `target`.
inline Potential shape_to(const JoinTree& tree, const std::optional<Potential>& product,
                          const Domain& target, SemiringKind kind, OpCounter& counter) {
  if (!product) return Potential::identity(tree.table(), kind, target);
  auto projected =
      marginalize_to(*product, domain_intersection(product->domain(), target), &counter);
  return extend(projected, target);
}

inline SemiringKind tree_kind(const JoinTree& tree) {
  for (const auto& n : tree.nodes())
    if (n.input) return n.input->kind();
  for (const auto& e : tree.edges()) {
    if (e.forward.payload) return e.forward.payload->kind();
    if (e.backward.payload) return e.backward.payload->kind();
  }
  return SemiringKind::SumProduct;
}

}  // namespace detail

/// μ^{r→s}: the inbound messages from r's other neighbours (ascending id) and
/// r's input valuation, combined pairwise left to right and projected onto
/// label(r) ∩ label(s). The result is stored in the edge register, and the
/// unprojected product is cached on r for marginal_at.
inline const Potential& compute_message(JoinTree& tree, NodeId r, NodeId s, OpCounter& counter) {
  if (!tree.adjacent(r, s))
    throw UsageError("compute_message: " + std::to_string(r) + " and " + std::to_string(s) +
                     " are not adjacent");
  std::vector<const Potential*> items;
  for (NodeId t : tree.neighbors(r))
    if (t != s) items.push_back(&detail::inbound(tree, t, r));
  auto& node = tree.node(r);
  if (node.input) items.push_back(&*node.input);

  auto product = detail::fold_combine(std::move(items), counter);
  const Domain sep = domain_intersection(node.label, tree.node(s).label);
  auto& reg = tree.message(r, s);
  reg.payload = detail::shape_to(tree, product, sep, detail::tree_kind(tree), counter);
  node.partial = CachedProduct{s, std::move(product)};
  return *reg.payload;
}

/// φ↓label(r). With `reuse_partials`, the product cached by r's last outgoing
/// message is combined with the single inbound message it left out.
inline const Potential& marginal_at(JoinTree& tree, NodeId r, OpCounter& counter,
                                    bool reuse_partials = true) {
  auto& node = tree.node(r);
  for (NodeId t : tree.neighbors(r)) detail::inbound(tree, t, r);
  std::optional<Potential> product;
  if (reuse_partials && node.partial) {
    const auto& missing = detail::inbound(tree, node.partial->excluded, r);
    product = node.partial->product ? combine(*node.partial->product, missing, &counter)
                                    : missing;
  } else {
    std::vector<const Potential*> items;
    for (NodeId t : tree.neighbors(r)) items.push_back(&detail::inbound(tree, t, r));
    if (node.input) items.push_back(&*node.input);
    product = detail::fold_combine(std::move(items), counter);
  }
  node.marginal = detail::shape_to(tree, product, node.label, detail::tree_kind(tree), counter);
  return *node.marginal;
}

/// Runs the two propagation rules: fills every message the targets need,
/// then computes each target's marginal.
inline PropagationReport propagate(JoinTree& tree, std::span<const NodeId> targets,
                                   const PropagationOptions& options = {}) {
  if (auto check = verify_join_tree(tree); !check)
    throw UsageError("propagate: invalid join tree: " + check.diagnostic);
  tree.clear_registers();
  PropagationReport report;
  report.schedule = schedule(tree, targets, options.schedule);
  for (const auto& [r, s] : report.schedule) compute_message(tree, r, s, report.per_node[r]);
  for (NodeId t : targets)
    report.marginals.emplace(t, marginal_at(tree, t, report.per_node[t], options.reuse_partials));
  for (const auto& [id, c] : report.per_node) report.counter += c;
  return report;
}

inline PropagationReport propagate(JoinTree& tree, const PropagationOptions& options = {}) {
  return propagate(tree, all_nodes(tree), options);
}

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

/// The joint valuation, built by brute force and marginalized to `target`.
/// Target variables no valuation mentions are vacuously extended.
inline Potential brute_force_marginal(std::span<const Potential> valuations, const Domain& target,
                                      TablePtr table, SemiringKind kind,
                                      std::uint64_t cap = kDefaultOracleCap) {
  Domain all = target;
  for (const auto& v : valuations) all = domain_union(all, v.domain());
  const auto cells = state_space_size(all, *table);
  if (cells > cap)
    throw ResourceError("brute_force_marginal: joint has " + std::to_string(cells) +
                        " cells, cap is " + std::to_string(cap));
  Potential joint = Potential::identity(table, kind, all);
  for (const auto& v : valuations) joint = combine(joint, v);
  return marginalize_to(joint, target);
}

inline Potential brute_force_marginal(std::span<const Potential> valuations, const Domain& target,
                                      std::uint64_t cap = kDefaultOracleCap) {
  if (valuations.empty()) throw UsageError("brute_force_marginal: no valuations");
  return brute_force_marginal(valuations, target, valuations.front().table(),
                              valuations.front().kind(), cap);
}

// Counting experiments.

enum class CountMode { NaiveNonBinary, CachedNonBinary, Binary };

inline constexpr std::string_view to_string(CountMode m) {
  switch (m) {
    case CountMode::NaiveNonBinary:
      return "naive-nonbinary";
    case CountMode::CachedNonBinary:
      return "cached-nonbinary";
    case CountMode::Binary:
      break;
  }
  return "binary";
}

struct CountOptions {
  /// Root for binarization, as a node label of the built tree.
  std::optional<Domain> root_label;
  ChildOrder child_order = ChildOrder::Ascending;
};

struct CountReport {
  CountMode mode = CountMode::Binary;
  OpCounter total;
  std::map<Domain, OpCounter> by_label;
  JoinTree tree;
};

/// The join tree each counting mode propagates on: built, valuations
/// attached, and binarized for CountMode::Binary.
inline JoinTree tree_for_mode(const BuildInput& input, std::span<const Potential> valuations,
                              CountMode mode, const CountOptions& options = {}) {
  JoinTree tree = attach_valuations(build_join_tree(input), valuations);
  if (mode != CountMode::Binary) return tree;
  std::optional<NodeId> root;
  if (options.root_label) {
    root = tree.find_label(*options.root_label);
    if (!root)
      throw UsageError("root " + format_domain(*options.root_label, tree.variables()) +
                       " is not a node of the join tree");
  }
  return binarize(tree, root);
}

/// All-marginals propagation under `mode`, one marginal per distinct label,
/// with counts attributed to the node doing the work. Attachment-time
/// combinations are not included.
inline CountReport count_comparison(const BuildInput& input, std::span<const Potential> valuations,
                                    CountMode mode, const CountOptions& options = {}) {
  CountReport out{mode, {}, {}, tree_for_mode(input, valuations, mode, options)};
  PropagationOptions popts;
  popts.reuse_partials = mode != CountMode::NaiveNonBinary;
  popts.schedule.child_order = options.child_order;
  auto report = propagate(out.tree, distinct_label_nodes(out.tree), popts);
  out.total = report.counter;
  for (const auto& [id, c] : report.per_node) out.by_label[out.tree.node(id).label] += c;
  return out;
}

/// α₁ ⊗ … ⊗ α_m with every operand first extended to the full union domain,
/// so each combination works on all of it.
inline Potential combine_flat(std::span<const Potential> operands, OpCounter& counter) {
  if (operands.empty()) throw UsageError("combine_flat: no operands");
  Domain all;
  for (const auto& p : operands) all = domain_union(all, p.domain());
  Potential acc = extend(operands.front(), all);
  for (std::size_t i = 1; i < operands.size(); ++i)
    acc = combine(acc, extend(operands[i], all), &counter);
  return acc;
}

/// α₁ ⊗ … ⊗ α_m combined left to right, each step on the union so far.
inline Potential combine_staged(std::span<const Potential> operands, OpCounter& counter) {
  if (operands.empty()) throw UsageError("combine_staged: no operands");
  Potential acc = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) acc = combine(acc, operands[i], &counter);
  return acc;
}

}  // namespace bjt

#endif  // BJT_PROPAGATION_HPP
