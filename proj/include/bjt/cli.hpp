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

#ifndef BJT_CLI_HPP
#define BJT_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bjt/binarize.hpp"
#include "bjt/build.hpp"
#include "bjt/jointree.hpp"
#include "bjt/network.hpp"
#include "bjt/propagation.hpp"
#include "bjt/random_network.hpp"
#include "bjt/report.hpp"

namespace bjt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  std::string network;
  bool binary = true;
  std::string order;
  std::string root;
  bool normalize = false;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  bool random = false;
  std::string dot;
};

namespace detail {

inline std::optional<std::vector<VariableId>> order_of(const Options& o, const Network& net) {
  if (o.order.empty()) return std::nullopt;
  return parse_name_list(o.order, *net.variables);
}

inline std::optional<Domain> root_of(const Options& o, const Network& net) {
  if (o.root.empty()) return std::nullopt;
  return Domain(parse_name_list(o.root, *net.variables));
}

inline CountOptions count_options(const Options& o, const Network& net) {
  CountOptions c;
  c.root_label = root_of(o, net);
  return c;
}

inline JoinTree prepared_tree(const Options& o, const Network& net) {
  return tree_for_mode(net.build_input(order_of(o, net)), net.valuations,
                       o.binary ? CountMode::Binary : CountMode::CachedNonBinary,
                       count_options(o, net));
}

inline Network network_of(const Options& o) {
  if (o.network.empty()) throw UsageError("no network file given");
  return load_network(o.network);
}

inline int cmd_build(const Options& o, std::ostream& out) {
  const auto net = network_of(o);
  const auto tree = prepared_tree(o, net);
  const auto dot = export_dot(tree);
  const auto check = verify_join_tree(tree);
  std::ostringstream summary;
  summary << "nodes: " << tree.node_count() << "\n"
          << "edges: " << tree.edge_count() << "\n"
          << "max degree: " << tree.max_degree() << "\n"
          << "binary: " << (is_binary(tree) ? "yes" : "no") << "\n"
          << "running intersection: " << (check ? "ok" : check.diagnostic) << "\n";
  if (!o.dot.empty()) {
    std::ofstream f(o.dot);
    if (!f) throw UsageError("cannot write " + o.dot);
    f << dot;
    out << summary.str();
  } else {
    out << dot;
    std::istringstream lines(summary.str());
    for (std::string line; std::getline(lines, line);) out << "// " << line << "\n";
  }
  return kExitOk;
}

inline int cmd_marginals(const Options& o, std::ostream& out) {
  const auto net = network_of(o);
  auto tree = prepared_tree(o, net);
  std::vector<NodeId> targets;
  for (const auto& q : net.queries) targets.push_back(*tree.find_label(q));
  const auto report = propagate(tree, distinct_label_nodes(tree));
  std::vector<Potential> blocks;
  for (NodeId t : targets) blocks.push_back(report.marginals.at(t));
  out << report_marginals(blocks, report.counter, o.normalize);
  if (!o.dot.empty()) {
    std::ofstream f(o.dot);
    if (!f) throw UsageError("cannot write " + o.dot);
    f << export_dot(tree);
  }
  return kExitOk;
}

/// Compares every node marginal against the brute-force oracle.
inline bool verify_network(const Options& o, const Network& net, std::ostream& out) {
  auto tree = prepared_tree(o, net);
  const auto report = propagate(tree, distinct_label_nodes(tree));
  bool ok = true;
  for (const auto& [id, marginal] : report.marginals) {
    const auto oracle = brute_force_marginal(net.valuations, tree.node(id).label, net.variables,
                                             net.semiring);
    const bool match = allclose(marginal, oracle, o.tolerance);
    double worst = 0.0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const double scale = std::max(std::fabs(oracle[i]), std::fabs(marginal[i]));
      if (scale > 0) worst = std::max(worst, std::fabs(oracle[i] - marginal[i]) / scale);
    }
    out << (match ? "ok       " : "MISMATCH ") << format_domain(tree.node(id).label, *net.variables)
        << "  max rel err " << format_value(worst) << "\n";
    ok = ok && match;
  }
  return ok;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  bool ok = true;
  if (o.random) {
    Rng rng(o.seed);
    for (auto kind : {SemiringKind::SumProduct, SemiringKind::MinSum}) {
      RandomNetworkShape shape;
      shape.semiring = kind;
      const auto net = random_network(rng, shape);
      out << "random " << to_string(kind) << " network (seed " << o.seed << ", "
          << net.variables->size() << " variables, " << net.valuations.size()
          << " valuations)\n";
      Options plain = o;
      plain.order.clear();
      plain.root.clear();
      ok = verify_network(plain, net, out) && ok;
    }
  } else {
    ok = verify_network(o, network_of(o), out);
  }
  out << (ok ? "verify: PASS" : "verify: FAIL") << " (tolerance " << format_value(o.tolerance)
      << ")\n";
  return ok ? kExitOk : kExitMismatch;
}

inline int cmd_count(const Options& o, std::ostream& out) {
  const auto net = network_of(o);
  const auto input = net.build_input(order_of(o, net));
  const auto copts = count_options(o, net);
  std::vector<CountReport> reports;
  for (auto mode : {CountMode::NaiveNonBinary, CountMode::CachedNonBinary, CountMode::Binary})
    reports.push_back(count_comparison(input, net.valuations, mode, copts));
  out << report_counts(reports, *net.variables);
  return kExitOk;
}

}  // namespace detail

/// Entry point shared by the bjt binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary join trees and local-computation propagation", "bjt"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto* build = app.add_subcommand("build", "Construct a join tree and emit it as DOT");
  auto* marginals = app.add_subcommand("marginals", "Propagate and print the queried marginals");
  auto* verify = app.add_subcommand("verify", "Check propagation against brute-force marginals");
  auto* count = app.add_subcommand("count", "Compare combination counts across tree variants");
  for (auto* sub : {build, marginals, verify, count})
    sub->add_option("network", o.network, "Network file (JSON)");

  app.add_flag("--binary,!--non-binary", o.binary, "Binarize the join tree (default)");
  app.add_option("--order", o.order, "Deletion sequence, comma-separated variable names");
  app.add_option("--root", o.root, "Root node label for binarization, e.g. S4 or \"D,S4\"");
  app.add_flag("--normalize", o.normalize, "Normalize sum-product marginals for display");
  app.add_option("--tolerance", o.tolerance, "Relative tolerance for verify")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for verify --random");
  verify->add_flag("--random", o.random, "Verify on generated networks instead of a file");
  app.add_option("--dot", o.dot, "Write the join tree as DOT to this path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return detail::cmd_build(o, out);
    if (*marginals) return detail::cmd_marginals(o, out);
    if (*verify) return detail::cmd_verify(o, out);
    return detail::cmd_count(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bjt::cli

#endif  // BJT_CLI_HPP
