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

#ifndef BJT_NETWORK_HPP
#define BJT_NETWORK_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bjt/build.hpp"
#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/potential.hpp"

namespace bjt {

// Network files are JSON documents:
//
//   {
//     "semiring": "sum-product",            // or "min-sum"
//     "variables": [{"name": "A", "cardinality": 2},
//                   {"name": "B", "cardinality": 3}],
//     "valuations": [{"name": "f", "domain": ["A", "B"],
//                     "values": [a0b0, a0b1, a0b2, a1b0, a1b1, a1b2]}],
//     "queries": [["A"], ["A", "B"]]       // optional
//   }
//
// Variable ids follow declaration order. Values are listed with the
// variables of the domain sorted by id and the last one varying fastest,
// whatever order the domain is written in. An empty or missing "queries"
// list means one singleton query per variable.

class NetworkError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON.
class ParseError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// Missing fields, wrong JSON types, duplicates.
class SchemaError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// A value list whose length differs from its domain's state-space size.
class LengthMismatchError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// A domain or query naming an undeclared variable.
class UnknownNameError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// A cardinality below 1.
class CardinalityError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// A table value the semiring does not admit (negative, non-finite).
class ValueError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

struct Network {
  TablePtr variables;
  SemiringKind semiring = SemiringKind::SumProduct;
  std::vector<std::string> valuation_names;
  std::vector<Potential> valuations;
  std::vector<Domain> queries;

  /// Valuation domains followed by query domains.
  std::vector<Domain> subsets() const {
    std::vector<Domain> out;
    for (const auto& v : valuations) out.push_back(v.domain());
    out.insert(out.end(), queries.begin(), queries.end());
    return out;
  }

  BuildInput build_input(std::optional<std::vector<VariableId>> order = std::nullopt) const {
    return BuildInput{variables, subsets(), std::move(order)};
  }
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline Domain parse_domain(const json& names, const VariableTable& vt, const std::string& where) {
  if (!names.is_array()) throw SchemaError(where + ": expected a list of variable names");
  std::vector<VariableId> ids;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto at = where + "[" + std::to_string(i) + "]";
    if (!names[i].is_string()) throw SchemaError(at + ": expected a variable name");
    const auto name = names[i].get<std::string>();
    if (!seen.insert(name).second) throw SchemaError(at + ": variable '" + name + "' repeated");
    try {
      ids.push_back(vt.id_of(name));
    } catch (const DomainError&) {
      throw UnknownNameError(at + ": unknown variable '" + name + "'");
    }
  }
  return Domain(std::move(ids));
}

}  // namespace detail

/// Parses and validates a network document. `source` prefixes diagnostics.
inline Network parse_network(std::string_view text, const std::string& source = "<input>") {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  Network net;
  auto table = std::make_shared<VariableTable>();

  const auto& semiring = detail::field(doc, "semiring", source);
  if (semiring == "sum-product")
    net.semiring = SemiringKind::SumProduct;
  else if (semiring == "min-sum")
    net.semiring = SemiringKind::MinSum;
  else
    throw SchemaError(source + ".semiring: expected \"sum-product\" or \"min-sum\"");

  const auto& vars = detail::field(doc, "variables", source);
  if (!vars.is_array()) throw SchemaError(source + ".variables: expected a list");
  std::set<std::string> declared;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto where = source + ".variables[" + std::to_string(i) + "]";
    const auto& name = detail::field(vars[i], "name", where);
    const auto& card = detail::field(vars[i], "cardinality", where);
    if (!name.is_string()) throw SchemaError(where + ".name: expected a string");
    if (!card.is_number_integer())
      throw CardinalityError(where + ".cardinality: expected an integer");
    if (card.get<std::int64_t>() < 1)
      throw CardinalityError(where + ".cardinality: " + card.dump() + " is below 1");
    auto n = name.get<std::string>();
    if (!declared.insert(n).second)
      throw SchemaError(where + ".name: duplicate variable '" + n + "'");
    table->add(std::move(n), card.get<std::size_t>());
  }
  net.variables = table;

  const auto& vals = detail::field(doc, "valuations", source);
  if (!vals.is_array()) throw SchemaError(source + ".valuations: expected a list");
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto where = source + ".valuations[" + std::to_string(i) + "]";
    std::string name = "v" + std::to_string(i);
    if (vals[i].is_object() && vals[i].contains("name")) {
      if (!vals[i]["name"].is_string()) throw SchemaError(where + ".name: expected a string");
      name = vals[i]["name"].get<std::string>();
    }
    const auto& dom = detail::field(vals[i], "domain", where);
    const auto& values = detail::field(vals[i], "values", where);
    Domain d = detail::parse_domain(dom, *table, where + ".domain");
    if (!values.is_array()) throw SchemaError(where + ".values: expected a list of numbers");
    const auto expected = state_space_size(d, *table);
    if (values.size() != expected)
      throw LengthMismatchError(where + " (\"" + name + "\"): " + std::to_string(values.size()) +
                                " values for a domain with " + std::to_string(expected) +
                                " configurations");
    std::vector<double> cells;
    cells.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!values[k].is_number())
        throw SchemaError(where + ".values[" + std::to_string(k) + "]: expected a number");
      cells.push_back(values[k].get<double>());
    }
    try {
      net.valuations.emplace_back(table, std::move(d), std::move(cells), net.semiring);
    } catch (const DomainError& e) {
      throw ValueError(where + " (\"" + name + "\"): " + e.what());
    }
    net.valuation_names.push_back(std::move(name));
  }

  if (doc.contains("queries")) {
    const auto& qs = doc["queries"];
    if (!qs.is_array()) throw SchemaError(source + ".queries: expected a list of domains");
    for (std::size_t i = 0; i < qs.size(); ++i)
      net.queries.push_back(
          detail::parse_domain(qs[i], *table, source + ".queries[" + std::to_string(i) + "]"));
  }
  if (net.queries.empty())
    for (const auto& v : table->entries()) net.queries.push_back(Domain{v.id});
  return net;
}

inline Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), path.string());
}

/// Serializes a network in the format parse_network reads.
inline std::string dump_network(const Network& net) {
  using detail::json;
  json doc;
  doc["semiring"] = std::string(to_string(net.semiring));
  doc["variables"] = json::array();
  for (const auto& v : net.variables->entries())
    doc["variables"].push_back({{"name", v.name}, {"cardinality", v.cardinality}});
  auto names = [&](const Domain& d) {
    json out = json::array();
    for (auto id : d) out.push_back(net.variables->at(id).name);
    return out;
  };
  doc["valuations"] = json::array();
  for (std::size_t i = 0; i < net.valuations.size(); ++i) {
    const auto& p = net.valuations[i];
    const auto name = i < net.valuation_names.size() ? net.valuation_names[i]
                                                     : "v" + std::to_string(i);
    doc["valuations"].push_back({{"name", name},
                                 {"domain", names(p.domain())},
                                 {"values", std::vector<double>(p.values().begin(),
                                                                p.values().end())}});
  }
  doc["queries"] = json::array();
  for (const auto& q : net.queries) doc["queries"].push_back(names(q));
  return doc.dump(2) + "\n";
}

/// Variable names, comma-separated, resolved against `vt` (for --order,
/// --root). Braces and spaces are ignored, so "{D, S4}" works too.
inline std::vector<VariableId> parse_name_list(std::string_view text, const VariableTable& vt) {
  std::vector<VariableId> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      out.push_back(vt.id_of(cur));
    } catch (const DomainError&) {
      throw UnknownNameError("unknown variable '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else if (c != ' ' && c != '{' && c != '}')
      cur += c;
  }
  flush();
  return out;
}

}  // namespace bjt

#endif  // BJT_NETWORK_HPP
