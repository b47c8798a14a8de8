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

#include "bjt/binarize.hpp"
#include "bjt/propagation.hpp"
#include "test_support.hpp"

namespace bjt {
namespace {

// D=0, S1..S4 = 1..4
JoinTree example2_tree() {
  const auto net = example2_network(1996);
  return attach_valuations(build_join_tree(net.build_input(std::vector<VariableId>{1, 2, 3, 4})),
                           net.valuations);
}

std::size_t input_count(const JoinTree& t) {
  std::size_t n = 0;
  for (const auto& node : t.nodes()) n += node.input ? 1 : 0;
  return n;
}

bool has_neighbor_labeled(const JoinTree& t, NodeId v, const Domain& label) {
  for (NodeId w : t.neighbors(v))
    if (t.node(w).label == label) return true;
  return false;
}

TEST(DefaultRoot, LargestStateSpaceLowestId) {
  const auto t = testing::figure2_tree(testing::example1_table());
  EXPECT_EQ(default_root(t), 0u);
  auto vt = std::make_shared<VariableTable>(VariableTable{{"A", 2}, {"B", 2}});
  JoinTree tie(vt);
  tie.add_node(Domain{0});
  tie.add_node(Domain{1});
  tie.add_edge(0, 1);
  EXPECT_EQ(default_root(tie), 0u);
}

TEST(RootTree, ParentsAndPreorder) {
  const auto t = testing::figure2_tree(testing::example1_table());
  const auto r = root_tree(t, 1);
  EXPECT_EQ(r.root, 1u);
  EXPECT_FALSE(r.parent[1]);
  EXPECT_EQ(r.parent[0], std::optional<NodeId>(1));
  EXPECT_EQ(r.parent[4], std::optional<NodeId>(0));
  ASSERT_EQ(r.preorder.size(), 5u);
  EXPECT_EQ(r.preorder.front(), 1u);
  const auto d = root_tree(t, 1, true);
  EXPECT_EQ(d.preorder, (std::vector<NodeId>{1, 0, 4, 3, 2}));
  EXPECT_EQ(r.preorder, (std::vector<NodeId>{1, 0, 2, 3, 4}));
}

TEST(Binarize, Example2RootedAtS4GivesThreeCopiesOfD) {
  const auto tree = example2_tree();
  const NodeId root = *tree.find_label(Domain{4});
  const auto b = binarize(tree, root);
  EXPECT_TRUE(is_binary(b));
  EXPECT_TRUE(verify_join_tree(b));
  EXPECT_EQ(b.node_count(), 11u);
  EXPECT_EQ(input_count(b), input_count(tree));

  const auto copies = testing::nodes_labeled(b, Domain{0});
  ASSERT_EQ(copies.size(), 3u);
  std::size_t with_delta = 0, joins_s1_s2 = 0, joins_s3 = 0;
  for (NodeId c : copies) {
    EXPECT_LE(b.degree(c), 3u);
    if (b.node(c).input) {
      ++with_delta;
      EXPECT_TRUE(has_neighbor_labeled(b, c, Domain{0, 4}));
      EXPECT_EQ(*b.node(c).input, *tree.node(*tree.find_label(Domain{0})).input);
    }
    if (has_neighbor_labeled(b, c, Domain{0, 1}) && has_neighbor_labeled(b, c, Domain{0, 2}))
      ++joins_s1_s2;
    if (has_neighbor_labeled(b, c, Domain{0, 3})) ++joins_s3;
  }
  EXPECT_EQ(with_delta, 1u);
  EXPECT_EQ(joins_s1_s2, 1u);
  EXPECT_EQ(joins_s3, 1u);
  // The original node keeps its id and sits next to the root side.
  EXPECT_EQ(b.node(*tree.find_label(Domain{0})).label, Domain{0});
}

TEST(Binarize, BinaryTreeIsUnchanged) {
  const auto net = example1_network(1995);
  auto tree = attach_valuations(build_join_tree(net.build_input()), net.valuations);
  ASSERT_TRUE(is_binary(tree));
  EXPECT_TRUE(same_structure(binarize(tree), tree));
}

TEST(Binarize, SixLeafStarRootedAtLeaf) {
  auto vt = std::make_shared<VariableTable>(VariableTable{
      {"H", 3}, {"K1", 2}, {"K2", 2}, {"K3", 2}, {"K4", 2}, {"K5", 2}, {"K6", 2}});
  JoinTree star(vt);
  const NodeId hub = star.add_node(Domain{0});
  for (VariableId k = 1; k <= 6; ++k) {
    const NodeId leaf = star.add_node(Domain{0, k});
    star.add_edge(hub, leaf);
    star.node(leaf).input = Potential::identity(vt, SemiringKind::SumProduct, Domain{0, k});
  }
  const auto b = binarize(star, 1);
  EXPECT_TRUE(is_binary(b));
  EXPECT_TRUE(verify_join_tree(b));
  EXPECT_EQ(testing::nodes_labeled(b, Domain{0}).size(), 4u);
  EXPECT_EQ(b.max_degree(), 3u);
  EXPECT_EQ(b.edge_count() + 1, b.node_count());
}

TEST(Binarize, RejectsInvalidTree) {
  auto vt = std::make_shared<VariableTable>(VariableTable{{"A", 2}, {"B", 2}, {"C", 2}});
  JoinTree bad(vt);
  bad.add_node(Domain{0, 1});
  bad.add_node(Domain{2});
  bad.add_node(Domain{1, 2});
  bad.add_edge(0, 1);
  bad.add_edge(1, 2);
  EXPECT_THROW(binarize(bad), UsageError);
}

TEST(Binarize, RandomTreesBecomeBinaryJoinTrees) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    RandomNetworkShape shape;
    shape.max_valuations = 10;
    const auto net = random_network(rng, shape);
    const auto tree = attach_valuations(build_join_tree(net.build_input()), net.valuations);
    const NodeId root = std::uniform_int_distribution<NodeId>(0, tree.node_count() - 1)(rng);
    const auto b = binarize(tree, root);
    ASSERT_TRUE(is_binary(b)) << "trial " << trial;
    const auto check = verify_join_tree(b);
    ASSERT_TRUE(check) << "trial " << trial << ": " << check.diagnostic;
    ASSERT_TRUE(same_structure(binarize(b), b)) << "trial " << trial;

    // Inputs move only to copies with the same label, and none is lost.
    ASSERT_EQ(input_count(b), input_count(tree)) << "trial " << trial;
    for (const auto& n : tree.nodes()) {
      if (!n.input) continue;
      std::size_t found = 0;
      for (const auto& m : b.nodes())
        if (m.input && m.label == n.label && *m.input == *n.input) ++found;
      ASSERT_GE(found, 1u) << "trial " << trial;
    }
    for (const auto& n : tree.nodes()) ASSERT_EQ(b.node(n.id).label, n.label);
  }
}

}  // namespace
}  // namespace bjt
