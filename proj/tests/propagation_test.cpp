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

#include <gtest/gtest.h>

#include <algorithm>

#include "bjt/propagation.hpp"
#include "test_support.hpp"

namespace bjt {
namespace {

using testing::oracle_joint_marginal;

const std::vector<VariableId> kExample2Order{1, 2, 3, 4};

JoinTree attached(const Network& net, std::optional<std::vector<VariableId>> order = std::nullopt) {
  return attach_valuations(build_join_tree(net.build_input(std::move(order))), net.valuations);
}

JoinTree path_tree(std::size_t n) {
  auto vt = std::make_shared<VariableTable>();
  for (std::size_t i = 0; i <= n; ++i) vt->add("P" + std::to_string(i), 2);
  JoinTree t(vt);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<VariableId>(i);
    t.add_node(Domain{v, v + 1});
    if (i > 0) t.add_edge(i - 1, i);
  }
  return t;
}

TEST(Schedule, PathWithAllTargetsHasTwoMessagesPerEdge) {
  const auto t = path_tree(3);
  const auto all = all_nodes(t);
  const auto s = schedule(t, all, {.root = 0});
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], DirectedEdge(2, 1));
  EXPECT_EQ(s[1], DirectedEdge(1, 0));
  EXPECT_EQ(s[2], DirectedEdge(0, 1));
  EXPECT_EQ(s[3], DirectedEdge(1, 2));
}

TEST(Schedule, StarWithLeafTargetNeedsOnlyInboundMessages) {
  auto vt = std::make_shared<VariableTable>(
      VariableTable{{"H", 2}, {"A", 2}, {"B", 2}, {"C", 2}, {"E", 2}});
  JoinTree star(vt);
  const NodeId hub = star.add_node(Domain{0});
  for (VariableId k = 1; k <= 4; ++k) star.add_edge(hub, star.add_node(Domain{0, k}));
  const std::vector<NodeId> target{3};
  const auto s = schedule(star, target, {.root = hub});
  // Three leaves into the hub, then the hub out to the target.
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.back(), DirectedEdge(hub, 3));
  for (std::size_t i = 0; i + 1 < s.size(); ++i) EXPECT_EQ(s[i].second, hub);
}

TEST(Schedule, SingleNodeIsEmpty) {
  const auto t = path_tree(1);
  const std::vector<NodeId> target{0};
  EXPECT_TRUE(schedule(t, target).empty());
  const std::vector<NodeId> bad{7};
  EXPECT_THROW(schedule(t, bad), UsageError);
}

TEST(Schedule, EveryMessageFollowsItsInputs) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = random_hypergraph(rng);
    const auto t = build_join_tree(net.build_input());
    for (auto order : {ChildOrder::Ascending, ChildOrder::Descending}) {
      const auto all = all_nodes(t);
      const auto s = schedule(t, all, {.root = std::nullopt, .child_order = order});
      ASSERT_EQ(s.size(), 2 * t.edge_count());
      std::set<DirectedEdge> done;
      for (const auto& [r, to] : s) {
        for (NodeId w : t.neighbors(r)) {
          if (w == to) continue;
          ASSERT_TRUE(done.count({w, r})) << "trial " << trial;
        }
        done.insert({r, to});
      }
    }
  }
}

TEST(ComputeMessage, HubToXYZCombinesThreeInbound) {
  const auto net = example1_network(1995);
  auto tree = testing::figure2_tree(net.variables);
  tree = attach_valuations(std::move(tree), net.valuations);
  ASSERT_FALSE(tree.node(0).input);
  OpCounter c;
  for (NodeId leaf : {1, 2, 3}) compute_message(tree, leaf, 0, c);
  EXPECT_EQ(c.combinations(), 0u);
  EXPECT_EQ(c.marginalizations(), 0u);
  const auto& m = compute_message(tree, 0, 4, c);
  EXPECT_EQ(c.combinations(), 2u);
  EXPECT_EQ(m.domain(), (Domain{1, 2, 3}));
  // Oracle: (α ⊗ β ⊗ γ) marginalized to {X, Y, Z}.
  const std::vector<Potential> abg(net.valuations.begin(), net.valuations.begin() + 3);
  EXPECT_TRUE(allclose(m, oracle_joint_marginal(abg, Domain{1, 2, 3}), 1e-12));
}

TEST(ComputeMessage, WXYNodeCombinesOnce) {
  const auto net = example1_network(1995);
  auto tree = attached(net);
  const NodeId wxy = *tree.find_label(Domain{0, 1, 2});
  const NodeId hub = *tree.find_label(Domain{0, 1, 2, 3});
  OpCounter c;
  compute_message(tree, *tree.find_label(Domain{0, 1}), wxy, c);
  compute_message(tree, *tree.find_label(Domain{0, 2}), wxy, c);
  ASSERT_EQ(c, OpCounter());
  compute_message(tree, wxy, hub, c);
  EXPECT_EQ(c.combinations(), 1u);
  EXPECT_EQ(c.cell_ops(), 24u);
  EXPECT_EQ(c.marginalizations(), 0u);
}

TEST(ComputeMessage, Errors) {
  const auto net = example1_network(1995);
  auto tree = testing::figure2_tree(net.variables);
  tree = attach_valuations(std::move(tree), net.valuations);
  OpCounter c;
  EXPECT_THROW(compute_message(tree, 0, 4, c), SchedulingError);
  EXPECT_THROW(compute_message(tree, 1, 2, c), UsageError);
}

TEST(ComputeMessage, MessageDomainIsTheSeparator) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = random_network(rng);
    auto tree = attached(net);
    propagate(tree);
    for (const auto& e : tree.edges()) {
      const auto sep = domain_intersection(tree.node(e.a).label, tree.node(e.b).label);
      ASSERT_EQ(tree.message(e.a, e.b).payload->domain(), sep);
      ASSERT_EQ(tree.message(e.b, e.a).payload->domain(), sep);
    }
  }
}

TEST(MarginalAt, Example2CountsAtD) {
  const auto net = example2_network(1996);
  const auto input = net.build_input(kExample2Order);
  const auto cached = count_comparison(input, net.valuations, CountMode::CachedNonBinary);
  const auto naive = count_comparison(input, net.valuations, CountMode::NaiveNonBinary);
  CountOptions opts;
  opts.root_label = Domain{4};
  const auto binary = count_comparison(input, net.valuations, CountMode::Binary, opts);
  EXPECT_EQ(cached.by_label.at(Domain{0}).combinations(), 13u);
  EXPECT_EQ(binary.by_label.at(Domain{0}).combinations(), 9u);
  EXPECT_EQ(naive.by_label.at(Domain{0}).combinations(), 16u);
  EXPECT_EQ(testing::nodes_labeled(binary.tree, Domain{0}).size(), 3u);
}

TEST(MarginalAt, ReuseMatchesFreshProduct) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_network(rng);
    auto a = attached(net);
    auto b = a;
    PropagationOptions fresh;
    fresh.reuse_partials = false;
    const auto ra = propagate(a);
    const auto rb = propagate(b, fresh);
    for (const auto& [id, m] : ra.marginals) ASSERT_TRUE(allclose(m, rb.marginals.at(id), 1e-12));
    ASSERT_LE(ra.counter.combinations(), rb.counter.combinations());
  }
}

TEST(Propagate, Example1MarginalsMatchOracle) {
  for (auto kind : {SemiringKind::SumProduct, SemiringKind::MinSum}) {
    const auto net = example1_network(1995, kind);
    auto tree = attached(net);
    const auto report = propagate(tree);
    for (const auto& [id, m] : report.marginals)
      EXPECT_TRUE(allclose(m, oracle_joint_marginal(net.valuations, tree.node(id).label), 1e-9));
  }
}

TEST(Propagate, RejectsInvalidTree) {
  auto vt = std::make_shared<VariableTable>(VariableTable{{"A", 2}, {"B", 2}, {"C", 2}});
  JoinTree bad(vt);
  bad.add_node(Domain{0, 1});
  bad.add_node(Domain{2});
  bad.add_node(Domain{1, 2});
  bad.add_edge(0, 1);
  bad.add_edge(1, 2);
  EXPECT_THROW(propagate(bad), UsageError);
}

class OracleFixture : public ::testing::TestWithParam<SemiringKind> {};

TEST_P(OracleFixture, RandomNetworksMatchBruteForce) {
  Rng rng(GetParam() == SemiringKind::SumProduct ? 101 : 202);
  RandomNetworkShape shape;
  shape.semiring = GetParam();
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = random_network(rng, shape);
    for (auto mode : {CountMode::NaiveNonBinary, CountMode::Binary}) {
      auto tree = tree_for_mode(net.build_input(), net.valuations, mode);
      PropagationOptions opts;
      opts.reuse_partials = mode != CountMode::NaiveNonBinary;
      const auto report = propagate(tree, opts);
      for (const auto& [id, m] : report.marginals) {
        const auto& label = tree.node(id).label;
        ASSERT_TRUE(allclose(m, oracle_joint_marginal(net.valuations, label), 1e-9))
            << "trial " << trial << " node " << id;
        ASSERT_TRUE(allclose(m, brute_force_marginal(net.valuations, label), 1e-9));
      }
    }
  }
}

TEST_P(OracleFixture, ScheduleIndependence) {
  Rng rng(GetParam() == SemiringKind::SumProduct ? 303 : 404);
  RandomNetworkShape shape;
  shape.semiring = GetParam();
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = random_network(rng, shape);
    auto fwd = tree_for_mode(net.build_input(), net.valuations, CountMode::Binary);
    auto rev = fwd;
    PropagationOptions r;
    r.schedule.child_order = ChildOrder::Descending;
    r.schedule.root = fwd.node_count() - 1;
    const auto a = propagate(fwd);
    const auto b = propagate(rev, r);
    for (const auto& [id, m] : a.marginals)
      ASSERT_TRUE(allclose(m, b.marginals.at(id), 1e-12)) << "trial " << trial;
  }
}

TEST_P(OracleFixture, EveryNodeAgreesOnTotal) {
  Rng rng(GetParam() == SemiringKind::SumProduct ? 505 : 606);
  RandomNetworkShape shape;
  shape.semiring = GetParam();
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = random_network(rng, shape);
    auto tree = attached(net);
    const auto report = propagate(tree);
    const auto folded = [](const Potential& m) { return marginalize_to(m, Domain{}).values()[0]; };
    const double t0 = folded(report.marginals.begin()->second);
    for (const auto& [id, m] : report.marginals) ASSERT_TRUE(close(folded(m), t0, 1e-9));
  }
}

INSTANTIATE_TEST_SUITE_P(Semirings, OracleFixture,
                         ::testing::Values(SemiringKind::SumProduct, SemiringKind::MinSum),
                         [](const auto& info) {
                           return info.param == SemiringKind::SumProduct ? "SumProduct" : "MinSum";
                         });

TEST(BruteForce, ExamplesAndCap) {
  auto vt = std::make_shared<VariableTable>(VariableTable{{"A", 2}, {"B", 3}});
  const Potential a(vt, Domain{0}, {0.5, 2.0}, SemiringKind::MinSum);
  const Potential b(vt, Domain{0, 1}, {1, 2, 3, 4, 5, 6}, SemiringKind::MinSum);
  const std::vector<Potential> vals{a, b};
  const auto empty = brute_force_marginal(vals, Domain{});
  ASSERT_EQ(empty.values().size(), 1u);
  EXPECT_DOUBLE_EQ(empty.values()[0], 1.5);
  const auto onB = brute_force_marginal(vals, Domain{1});
  EXPECT_EQ(std::vector<double>(onB.values().begin(), onB.values().end()),
            (std::vector<double>{1.5, 2.5, 3.5}));
  EXPECT_THROW(brute_force_marginal(vals, Domain{1}, 5), ResourceError);
  EXPECT_THROW(brute_force_marginal(std::vector<Potential>{}, Domain{}), UsageError);
}

TEST(CountDominance, BinaryNeverExceedsNaive) {
  Rng rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = random_hypergraph(rng);
    const auto input = net.build_input();
    const auto naive = count_comparison(input, net.valuations, CountMode::NaiveNonBinary);
    const auto binary = count_comparison(input, net.valuations, CountMode::Binary);
    ASSERT_LE(binary.total.combinations(), naive.total.combinations()) << "trial " << trial;
  }
}

TEST(CountDominance, Example1HubTreeCostsMoreCellOps) {
  const auto net = example1_network(1995);
  auto hub = attach_valuations(testing::figure2_tree(net.variables), net.valuations);
  PropagationOptions naive;
  naive.reuse_partials = false;
  const auto on_hub = propagate(hub, distinct_label_nodes(hub), naive);
  const auto binary = count_comparison(net.build_input(), net.valuations, CountMode::Binary);
  EXPECT_LT(binary.total.cell_ops(), on_hub.counter.cell_ops());
}

TEST(CostModel, FlatVersusStaged) {
  const auto net = example1_network(1995);
  const std::vector<Potential> abg(net.valuations.begin(), net.valuations.begin() + 3);
  EXPECT_EQ(state_space_size(Domain{0, 1, 2, 3}, *net.variables), 120u);
  EXPECT_EQ(state_space_size(Domain{0, 1, 2}, *net.variables), 24u);
  OpCounter flat, staged;
  const auto f = combine_flat(abg, flat);
  const auto s = combine_staged(abg, staged);
  EXPECT_EQ(flat.cell_ops(), 240u);
  EXPECT_EQ(staged.cell_ops(), 144u);
  EXPECT_EQ(flat.combinations(), 2u);
  EXPECT_EQ(staged.combinations(), 2u);
  EXPECT_TRUE(allclose(f, s, 1e-12));
  EXPECT_THROW(combine_flat(std::vector<Potential>{}, flat), UsageError);
}

}  // namespace
}  // namespace bjt
