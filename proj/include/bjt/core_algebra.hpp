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

#ifndef BJT_CORE_ALGEBRA_HPP
#define BJT_CORE_ALGEBRA_HPP

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bjt/errors.hpp"

namespace bjt {

using VariableId = std::uint32_t;
using State = std::size_t;

/// A named discrete quantity with a finite state space.
struct Variable {
  VariableId id = 0;
  std::string name;
  std::size_t cardinality = 1;
};

/// The universe of variables a network is defined over. Ids are dense and
/// assigned in insertion order.
class VariableTable {
 public:
  VariableTable() = default;

  VariableTable(std::initializer_list<std::pair<std::string, std::size_t>> vars) {
    for (const auto& [name, card] : vars) add(name, card);
  }

  VariableId add(std::string name, std::size_t cardinality) {
    if (cardinality < 1)
      throw DomainError("variable '" + name + "' has cardinality 0");
    if (by_name_.contains(name))
      throw DomainError("duplicate variable name '" + name + "'");
    const auto id = static_cast<VariableId>(entries_.size());
    by_name_.emplace(name, id);
    entries_.push_back(Variable{id, std::move(name), cardinality});
    return id;
  }

  std::size_t size() const { return entries_.size(); }
  bool contains(VariableId id) const { return id < entries_.size(); }

  const Variable& at(VariableId id) const {
    if (!contains(id))
      throw DomainError("unknown variable id " + std::to_string(id));
    return entries_[id];
  }

  const Variable& at(std::string_view name) const { return at(id_of(name)); }

  VariableId id_of(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
      throw DomainError("unknown variable '" + std::string(name) + "'");
    return it->second;
  }

  std::size_t cardinality(VariableId id) const { return at(id).cardinality; }

  std::span<const Variable> entries() const { return entries_; }

 private:
  std::vector<Variable> entries_;
  std::unordered_map<std::string, VariableId> by_name_;
};

/// A set of variables, held as a strictly ascending id sequence. The empty
/// domain is valid.
class Domain {
 public:
  Domain() = default;
  Domain(std::initializer_list<VariableId> ids) : Domain(std::vector<VariableId>(ids)) {}
  explicit Domain(std::vector<VariableId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::span<const VariableId> members() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  VariableId operator[](std::size_t i) const { return ids_[i]; }

  bool contains(VariableId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  bool subset_of(const Domain& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  /// Position of `id` in the sorted sequence, or size() when absent.
  std::size_t position(VariableId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    return (it != ids_.end() && *it == id) ? static_cast<std::size_t>(it - ids_.begin())
                                           : ids_.size();
  }

  Domain without(VariableId id) const {
    Domain out;
    out.ids_.reserve(ids_.size());
    for (auto v : ids_)
      if (v != id) out.ids_.push_back(v);
    return out;
  }

  friend bool operator==(const Domain&, const Domain&) = default;
  friend auto operator<=>(const Domain& a, const Domain& b) { return a.ids_ <=> b.ids_; }

 private:
  std::vector<VariableId> ids_;
};

inline Domain domain_union(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

inline Domain domain_intersection(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

inline Domain domain_difference(const Domain& a, const Domain& b) {
  std::vector<VariableId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Domain(std::move(out));
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw ResourceError("state space size overflows 64 bits");
  return out;
}

}  // namespace detail

/// Number of configurations of `d`; 1 for the empty domain.
inline std::uint64_t state_space_size(const Domain& d, const VariableTable& vt) {
  std::uint64_t n = 1;
  for (auto id : d) n = detail::checked_mul(n, vt.cardinality(id));
  return n;
}

/// Mixed-radix strides for `d`: the last (highest-id) variable varies fastest.
inline std::vector<std::uint64_t> strides(const Domain& d, const VariableTable& vt) {
  std::vector<std::uint64_t> out(d.size());
  std::uint64_t s = 1;
  for (std::size_t i = d.size(); i-- > 0;) {
    out[i] = s;
    s = detail::checked_mul(s, vt.cardinality(d[i]));
  }
  return out;
}

using Assignment = std::map<VariableId, State>;

/// Dense index of a configuration of `d`.
inline std::uint64_t config_index(const Domain& d, const Assignment& assignment,
                                  const VariableTable& vt) {
  if (assignment.size() != d.size())
    throw DomainError("assignment has " + std::to_string(assignment.size()) +
                      " variables, domain has " + std::to_string(d.size()));
  const auto st = strides(d, vt);
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto it = assignment.find(d[i]);
    if (it == assignment.end())
      throw DomainError("assignment is missing variable '" + vt.at(d[i]).name + "'");
    if (it->second >= vt.cardinality(d[i]))
      throw DomainError("state " + std::to_string(it->second) + " out of range for '" +
                        vt.at(d[i]).name + "'");
    index += it->second * st[i];
  }
  return index;
}

/// Inverse of config_index.
inline Assignment config_of(const Domain& d, std::uint64_t index, const VariableTable& vt) {
  if (index >= state_space_size(d, vt))
    throw DomainError("configuration index " + std::to_string(index) + " out of range");
  Assignment out;
  for (std::size_t i = d.size(); i-- > 0;) {
    const auto card = vt.cardinality(d[i]);
    out.emplace(d[i], static_cast<State>(index % card));
    index /= card;
  }
  return out;
}

// Semirings. Both instances carry doubles; `combine` acts cell-wise and
// `fold` eliminates a variable.

enum class SemiringKind { SumProduct, MinSum };

struct SumProduct {
  static constexpr SemiringKind kind = SemiringKind::SumProduct;
  static constexpr double combine(double a, double b) { return a * b; }
  static constexpr double fold(double a, double b) { return a + b; }
  static constexpr double identity() { return 1.0; }
  static constexpr double fold_identity() { return 0.0; }
  static bool admissible(double v) { return v >= 0.0 && v < std::numeric_limits<double>::infinity(); }
};

struct MinSum {
  static constexpr SemiringKind kind = SemiringKind::MinSum;
  static constexpr double combine(double a, double b) { return a + b; }
  static constexpr double fold(double a, double b) { return a < b ? a : b; }
  static constexpr double identity() { return 0.0; }
  static constexpr double fold_identity() { return std::numeric_limits<double>::infinity(); }
  static bool admissible(double v) {
    return v > -std::numeric_limits<double>::infinity() &&
           v < std::numeric_limits<double>::infinity();
  }
};

template <class S>
concept Semiring = requires(double a, double b) {
  { S::kind } -> std::convertible_to<SemiringKind>;
  { S::combine(a, b) } -> std::same_as<double>;
  { S::fold(a, b) } -> std::same_as<double>;
  { S::identity() } -> std::same_as<double>;
  { S::fold_identity() } -> std::same_as<double>;
  { S::admissible(a) } -> std::same_as<bool>;
};

/// Invokes `f` with the policy object matching `kind`.
template <class F>
decltype(auto) visit_semiring(SemiringKind kind, F&& f) {
  switch (kind) {
    case SemiringKind::SumProduct:
      return std::forward<F>(f)(SumProduct{});
    case SemiringKind::MinSum:
      break;
  }
  return std::forward<F>(f)(MinSum{});
}

inline std::string_view to_string(SemiringKind kind) {
  return kind == SemiringKind::SumProduct ? "sum-product" : "min-sum";
}

inline double semiring_identity(SemiringKind kind) {
  return visit_semiring(kind, [](auto s) { return decltype(s)::identity(); });
}

/// "{W, X}"-style rendering; "{}" for the empty domain.
inline std::string format_domain(const Domain& d, const VariableTable& vt) {
  std::string out = "{";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ", ";
    out += vt.at(d[i]).name;
  }
  return out + "}";
}

}  // namespace bjt

#endif  // BJT_CORE_ALGEBRA_HPP
