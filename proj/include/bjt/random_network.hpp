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

#ifndef BJT_RANDOM_NETWORK_HPP
#define BJT_RANDOM_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/network.hpp"
#include "bjt/potential.hpp"

namespace bjt {

using Rng = std::mt19937_64;

/// Random table on `domain`: sum-product cells in (0.05, 1] with an
/// occasional exact zero, min-sum cells in [0, 10).
inline Potential random_potential(Rng& rng, const TablePtr& table, const Domain& domain,
                                  SemiringKind kind) {
  std::uniform_real_distribution<double> prob(0.05, 1.0);
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  std::bernoulli_distribution zero(0.05);
  std::vector<double> cells(state_space_size(domain, *table));
  for (double& c : cells) {
    if (kind == SemiringKind::MinSum)
      c = cost(rng);
    else
      c = zero(rng) ? 0.0 : prob(rng);
  }
  return Potential(table, domain, std::move(cells), kind);
}

/// Random non-empty subset of {0, …, n-1} with at most `max_size` members.
inline Domain random_domain(Rng& rng, std::size_t n, std::size_t max_size) {
  std::vector<VariableId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<VariableId>(i);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, std::min(n, max_size)));
  ids.resize(size(rng));
  return Domain(std::move(ids));
}

struct RandomNetworkShape {
  std::size_t max_variables = 6;
  std::size_t max_cardinality = 4;
  std::size_t max_valuations = 8;
  std::size_t max_domain = 3;
  SemiringKind semiring = SemiringKind::SumProduct;
};

/// A random network in which every variable appears in some valuation.
/// Queries are the singletons.
inline Network random_network(Rng& rng, const RandomNetworkShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> nvars(1, shape.max_variables);
  std::uniform_int_distribution<std::size_t> card(1, shape.max_cardinality);
  std::uniform_int_distribution<std::size_t> nvals(1, shape.max_valuations);

  auto table = std::make_shared<VariableTable>();
  const auto n = nvars(rng);
  for (std::size_t i = 0; i < n; ++i) table->add("V" + std::to_string(i), card(rng));

  std::vector<Domain> domains(nvals(rng));
  for (auto& d : domains) d = random_domain(rng, n, shape.max_domain);
  for (VariableId v = 0; v < n; ++v) {
    const bool covered =
        std::any_of(domains.begin(), domains.end(), [&](const Domain& d) { return d.contains(v); });
    if (!covered) {
      std::uniform_int_distribution<std::size_t> pick(0, domains.size() - 1);
      auto& d = domains[pick(rng)];
      d = domain_union(d, Domain{v});
    }
  }

  Network net;
  net.variables = table;
  net.semiring = shape.semiring;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    net.valuation_names.push_back("f" + std::to_string(i));
    net.valuations.push_back(random_potential(rng, table, domains[i], shape.semiring));
  }
  for (const auto& v : table->entries()) net.queries.push_back(Domain{v.id});
  return net;
}

/// A random hypergraph: up to `max_variables` variables (cardinalities 1–3)
/// and up to `max_subsets` non-empty subsets covering every variable.
inline Network random_hypergraph(Rng& rng, std::size_t max_variables = 10,
                                 std::size_t max_subsets = 12,
                                 SemiringKind kind = SemiringKind::SumProduct) {
  RandomNetworkShape shape;
  shape.max_variables = max_variables;
  shape.max_valuations = max_subsets;
  shape.max_domain = 4;
  shape.max_cardinality = 3;
  shape.semiring = kind;
  auto net = random_network(rng, shape);
  net.queries.clear();
  return net;
}

// The two worked examples. Their structure is fixed; table values come
// from `seed`.

/// W, X, Y, Z with 2, 3, 4 and 5 states; α on {W,X}, β on {W,Y}, γ on {W,Z},
/// δ on {X,Y,Z}. Queries are the valuation domains.
inline Network example1_network(std::uint64_t seed, SemiringKind kind = SemiringKind::SumProduct) {
  Rng rng(seed);
  auto table = std::make_shared<VariableTable>(
      VariableTable{{"W", 2}, {"X", 3}, {"Y", 4}, {"Z", 5}});
  Network net;
  net.variables = table;
  net.semiring = kind;
  const Domain wx{0, 1}, wy{0, 2}, wz{0, 3}, xyz{1, 2, 3};
  for (const auto& [name, d] : std::vector<std::pair<std::string, Domain>>{
           {"alpha", wx}, {"beta", wy}, {"gamma", wz}, {"delta", xyz}}) {
    net.valuation_names.push_back(name);
    net.valuations.push_back(random_potential(rng, table, d, kind));
  }
  net.queries = {wx, wy, wz, xyz};
  return net;
}

/// D (3 states) and S1…S4 (2 states each); δ on {D}, σ_i on {D,S_i}, ς_i on
/// {S_i}. Queries are the five singletons.
inline Network example2_network(std::uint64_t seed, SemiringKind kind = SemiringKind::SumProduct) {
  Rng rng(seed);
  auto table = std::make_shared<VariableTable>(
      VariableTable{{"D", 3}, {"S1", 2}, {"S2", 2}, {"S3", 2}, {"S4", 2}});
  Network net;
  net.variables = table;
  net.semiring = kind;
  net.valuation_names.push_back("delta");
  net.valuations.push_back(random_potential(rng, table, Domain{0}, kind));
  for (VariableId i = 1; i <= 4; ++i) {
    net.valuation_names.push_back("sigma" + std::to_string(i));
    net.valuations.push_back(random_potential(rng, table, Domain{0, i}, kind));
  }
  for (VariableId i = 1; i <= 4; ++i) {
    net.valuation_names.push_back("varsigma" + std::to_string(i));
    net.valuations.push_back(random_potential(rng, table, Domain{i}, kind));
  }
  for (VariableId i = 0; i <= 4; ++i) net.queries.push_back(Domain{i});
  return net;
}

}  // namespace bjt

#endif  // BJT_RANDOM_NETWORK_HPP
