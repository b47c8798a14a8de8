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

#ifndef BJT_BUILD_HPP
#define BJT_BUILD_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/jointree.hpp"

namespace bjt {

/// Inputs to join-tree construction. `subsets` holds the domains of the input
/// valuations plus every domain a marginal is wanted for. An empty
/// `elimination_order` selects variables automatically.
struct BuildInput {
  TablePtr variables;
  std::vector<Domain> subsets;
  std::optional<std::vector<VariableId>> elimination_order;
};

/// The pair of candidates whose union has the smallest state space. Ties go
/// to the lexicographically smallest pair, each pair written smaller-first.
inline std::pair<Domain, Domain> pick_pair(std::span<const Domain> candidates,
                                           const VariableTable& vt) {
  if (candidates.size() < 2)
    throw UsageError("pick_pair: need at least two candidates, got " +
                     std::to_string(candidates.size()));
  std::optional<std::pair<Domain, Domain>> best;
  std::uint64_t best_weight = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      std::pair<Domain, Domain> pair = std::minmax(candidates[i], candidates[j]);
      const auto w = state_space_size(domain_union(pair.first, pair.second), vt);
      if (!best || w < best_weight || (w == best_weight && pair < *best)) {
        best = std::move(pair);
        best_weight = w;
      }
    }
  }
  return *best;
}

namespace detail {

class DisjointSets {
 public:
  std::size_t find(std::size_t x) {
    grow(x);
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  void grow(std::size_t x) {
    while (parent_.size() <= x) parent_.push_back(parent_.size());
  }
  std::vector<std::size_t> parent_;
};

/// Join tree under construction, with nodes keyed by label.
class TreeBuilder {
 public:
  explicit TreeBuilder(TablePtr table) : tree_(std::move(table)) {}

  NodeId node(const Domain& label) {
    auto it = ids_.find(label);
    if (it != ids_.end()) return it->second;
    const NodeId id = tree_.add_node(label);
    ids_.emplace(label, id);
    return id;
  }

  void connect(const Domain& a, const Domain& b) {
    const NodeId x = node(a);
    const NodeId y = node(b);
    // A repeated label may already link the two components.
    if (x != y && components_.unite(x, y)) tree_.add_edge(x, y);
  }

  JoinTree release() { return std::move(tree_); }

 private:
  JoinTree tree_;
  std::map<Domain, NodeId> ids_;
  DisjointSets components_;
};

inline std::vector<VariableId> variables_in(const std::set<Domain>& subsets) {
  std::set<VariableId> vars;
  for (const auto& s : subsets) vars.insert(s.begin(), s.end());
  return {vars.begin(), vars.end()};
}

/// The variable whose elimination leaves the smallest combined domain:
/// argmin over Y of ‖(∪ Φ_Y) − {Y}‖, ties by id.
inline VariableId min_weight_variable(const std::set<Domain>& remaining,
                                      const VariableTable& vt) {
  std::optional<VariableId> best;
  std::uint64_t best_weight = 0;
  for (VariableId y : variables_in(remaining)) {
    Domain merged;
    for (const auto& s : remaining)
      if (s.contains(y)) merged = domain_union(merged, s);
    const auto w = state_space_size(merged.without(y), vt);
    if (!best || w < best_weight) {
      best = y;
      best_weight = w;
    }
  }
  return *best;
}

inline void check_order(const std::vector<VariableId>& order,
                        const std::vector<VariableId>& needed, const VariableTable& vt) {
  std::set<VariableId> given;
  for (VariableId v : order) {
    if (!vt.contains(v)) throw UsageError("elimination order names unknown variable id " +
                                          std::to_string(v));
    if (!given.insert(v).second)
      throw UsageError("elimination order repeats '" + vt.at(v).name + "'");
  }
  for (VariableId v : given)
    if (!std::binary_search(needed.begin(), needed.end(), v))
      throw UsageError("elimination order names '" + vt.at(v).name +
                       "', which appears in no subset");
}

}  // namespace detail

/// Builds a join tree by binary combination. Variables are deleted one at a
/// time; the subsets containing the deleted variable are merged two at a
/// time, cheapest union first, and the survivor is linked to itself minus
/// the variable. Every input subset ends up as a node label. The result
/// satisfies running intersection but may have nodes of degree > 3.
inline JoinTree build_join_tree(const BuildInput& input) {
  if (!input.variables) throw UsageError("build_join_tree: no variable table");
  if (input.subsets.empty()) throw UsageError("build_join_tree: no subsets given");
  const auto& vt = *input.variables;
  for (const auto& s : input.subsets)
    for (auto v : s)
      if (!vt.contains(v))
        throw UsageError("build_join_tree: unknown variable id " + std::to_string(v));

  std::set<Domain> remaining(input.subsets.begin(), input.subsets.end());
  if (input.elimination_order)
    detail::check_order(*input.elimination_order, detail::variables_in(remaining), vt);

  detail::TreeBuilder builder(input.variables);
  std::size_t next = 0;
  while (remaining.size() > 1) {
    VariableId y = 0;
    if (input.elimination_order) {
      const auto& order = *input.elimination_order;
      const auto present = detail::variables_in(remaining);
      while (next < order.size() &&
             !std::binary_search(present.begin(), present.end(), order[next]))
        ++next;
      if (next == order.size()) {
        std::string missing;
        for (VariableId v : present) missing += (missing.empty() ? "'" : ", '") + vt.at(v).name + "'";
        throw UsageError("elimination order ends with " + std::to_string(remaining.size()) +
                         " subsets left; it omits needed variables among " + missing);
      }
      y = order[next++];
    } else {
      y = detail::min_weight_variable(remaining, vt);
    }

    std::vector<Domain> with_y;
    for (const auto& s : remaining)
      if (s.contains(y)) {
        with_y.push_back(s);
        builder.node(s);
      }

    while (with_y.size() > 1) {
      auto [s1, s2] = pick_pair(with_y, vt);
      auto drop = [&](const Domain& d) { std::erase(with_y, d); };
      if (s1.subset_of(s2) || s2.subset_of(s1)) {
        const auto& small = s1.subset_of(s2) ? s1 : s2;
        const auto& big = s1.subset_of(s2) ? s2 : s1;
        builder.connect(small, big);
        drop(small);
      } else {
        Domain u = domain_union(s1, s2);
        builder.connect(s1, u);
        builder.connect(s2, u);
        drop(s1);
        drop(s2);
        if (std::find(with_y.begin(), with_y.end(), u) == with_y.end()) with_y.push_back(u);
      }
    }

    const Domain s = with_y.front();
    const Domain rest = s.without(y);
    builder.connect(s, rest);
    std::erase_if(remaining, [&](const Domain& d) { return d.contains(y); });
    remaining.insert(rest);
  }
  for (const auto& s : remaining) builder.node(s);
  return builder.release();
}

}  // namespace bjt

#endif  // BJT_BUILD_HPP
