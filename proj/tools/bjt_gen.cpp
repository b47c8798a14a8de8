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

// Regenerates the shipped network files in data/networks from pinned seeds.
//
//   bjt-gen <output-directory>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "bjt/network.hpp"
#include "bjt/random_network.hpp"

namespace {

constexpr std::uint64_t kExample1Seed = 1995;
constexpr std::uint64_t kExample2Seed = 1996;
constexpr std::uint64_t kChainSeed = 7;
constexpr std::uint64_t kStarSeed = 11;
constexpr std::uint64_t kRandomSeed = 23;

bjt::Network chain_network() {
  bjt::Rng rng(kChainSeed);
  auto table = std::make_shared<bjt::VariableTable>(
      bjt::VariableTable{{"A", 3}, {"B", 2}, {"C", 4}, {"D", 3}, {"E", 2}});
  bjt::Network net;
  net.variables = table;
  net.semiring = bjt::SemiringKind::MinSum;
  for (bjt::VariableId i = 0; i + 1 < 5; ++i) {
    net.valuation_names.push_back("cost" + std::to_string(i));
    net.valuations.push_back(
        bjt::random_potential(rng, table, bjt::Domain{i, i + 1}, net.semiring));
  }
  net.valuation_names.push_back("prior");
  net.valuations.push_back(bjt::random_potential(rng, table, bjt::Domain{0}, net.semiring));
  return net;
}

bjt::Network star_network() {
  bjt::Rng rng(kStarSeed);
  auto table = std::make_shared<bjt::VariableTable>();
  table->add("H", 3);
  for (int i = 1; i <= 5; ++i) table->add("K" + std::to_string(i), 2);
  bjt::Network net;
  net.variables = table;
  net.semiring = bjt::SemiringKind::SumProduct;
  net.valuation_names.push_back("hub");
  net.valuations.push_back(bjt::random_potential(rng, table, bjt::Domain{0}, net.semiring));
  for (bjt::VariableId i = 1; i <= 5; ++i) {
    net.valuation_names.push_back("spoke" + std::to_string(i));
    net.valuations.push_back(
        bjt::random_potential(rng, table, bjt::Domain{0, i}, net.semiring));
  }
  return net;
}

bjt::Network random_file_network() {
  bjt::Rng rng(kRandomSeed);
  bjt::RandomNetworkShape shape;
  shape.max_variables = 6;
  shape.max_valuations = 8;
  auto net = bjt::random_network(rng, shape);
  net.queries.clear();
  return net;
}

void write(const std::filesystem::path& path, const bjt::Network& net) {
  std::ofstream out(path);
  out << bjt::dump_network(net);
  std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: bjt-gen <output-directory>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  write(dir / "example1.json", bjt::example1_network(kExample1Seed));
  write(dir / "example2.json", bjt::example2_network(kExample2Seed));
  write(dir / "chain_minsum.json", chain_network());
  write(dir / "star_sumproduct.json", star_network());
  write(dir / "random_sumproduct.json", random_file_network());
  return 0;
}
