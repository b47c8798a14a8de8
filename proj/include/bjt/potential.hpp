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

#ifndef BJT_POTENTIAL_HPP
#define BJT_POTENTIAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/errors.hpp"
#include "bjt/op_counter.hpp"

namespace bjt {

using TablePtr = std::shared_ptr<const VariableTable>;

/// A valuation: a domain plus one semiring value per configuration, laid out
/// in mixed-radix order with the highest-id variable varying fastest.
class Potential {
 public:
  Potential(TablePtr table, Domain domain, std::vector<double> values, SemiringKind kind)
      : table_(std::move(table)), domain_(std::move(domain)), values_(std::move(values)),
        kind_(kind) {
    if (!table_) throw UsageError("potential requires a variable table");
    const auto n = state_space_size(domain_, *table_);
    if (values_.size() != n)
      throw DomainError("table has " + std::to_string(values_.size()) + " values, domain " +
                        format_domain(domain_, *table_) + " has " + std::to_string(n) +
                        " configurations");
    visit_semiring(kind_, [&](auto s) {
      for (double v : values_)
        if (!decltype(s)::admissible(v))
          throw DomainError("value " + std::to_string(v) + " is not admissible for " +
                            std::string(to_string(kind_)));
    });
  }

  /// The combine identity on `domain` (all ones, or all zeros for min-sum).
  static Potential identity(TablePtr table, SemiringKind kind, Domain domain = {}) {
    const auto n = state_space_size(domain, *table);
    return Potential(std::move(table), std::move(domain),
                     std::vector<double>(n, semiring_identity(kind)), kind);
  }

  const TablePtr& table() const { return table_; }
  const VariableTable& variables() const { return *table_; }
  const Domain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  SemiringKind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::uint64_t index) const { return values_[index]; }
  double at(const Assignment& a) const { return values_[config_index(domain_, a, *table_)]; }

  /// Sum of all cells; the total mass of a sum-product potential.
  double total() const {
    double t = 0.0;
    for (double v : values_) t += v;
    return t;
  }

  friend bool operator==(const Potential& a, const Potential& b) {
    return a.table_ == b.table_ && a.kind_ == b.kind_ && a.domain_ == b.domain_ &&
           a.values_ == b.values_;
  }

 private:
  TablePtr table_;
  Domain domain_;
  std::vector<double> values_;
  SemiringKind kind_;
};

namespace detail {

/// For each variable of `outer`, its stride in the layout of `inner`, or 0
/// when `inner` does not contain it. Requires inner ⊆ outer.
inline std::vector<std::uint64_t> embedded_strides(const Domain& outer, const Domain& inner,
                                                   const VariableTable& vt) {
  const auto inner_strides = strides(inner, vt);
  std::vector<std::uint64_t> out(outer.size(), 0);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto p = inner.position(outer[i]);
    if (p < inner.size()) out[i] = inner_strides[p];
  }
  return out;
}

/// Walks every configuration of `outer` in layout order, calling
/// `f(outer_index, offsets)` where offsets[j] is the matching index into the
/// j-th embedded layout.
template <std::size_t N, class F>
void for_each_config(const Domain& outer, const VariableTable& vt,
                     const std::array<std::vector<std::uint64_t>, N>& embedded, F&& f) {
  const auto total = state_space_size(outer, vt);
  std::vector<std::size_t> cards(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) cards[i] = vt.cardinality(outer[i]);
  std::vector<std::size_t> digit(outer.size(), 0);
  std::array<std::uint64_t, N> offset{};
  for (std::uint64_t n = 0; n < total; ++n) {
    f(n, offset);
    for (std::size_t k = outer.size(); k-- > 0;) {
      if (++digit[k] < cards[k]) {
        for (std::size_t j = 0; j < N; ++j) offset[j] += embedded[j][k];
        break;
      }
      for (std::size_t j = 0; j < N; ++j) offset[j] -= embedded[j][k] * (cards[k] - 1);
      digit[k] = 0;
    }
  }
}

inline void require_compatible(const Potential& a, const Potential& b, const char* op) {
  if (a.kind() != b.kind())
    throw UsageError(std::string(op) + ": cannot mix " + std::string(to_string(a.kind())) +
                     " and " + std::string(to_string(b.kind())) + " potentials");
  if (a.table() != b.table())
    throw UsageError(std::string(op) + ": potentials refer to different variable tables");
}

template <Semiring S>
std::vector<double> combine_cells(const Potential& a, const Potential& b, const Domain& u) {
  const auto& vt = a.variables();
  std::vector<double> out(state_space_size(u, vt));
  const std::array<std::vector<std::uint64_t>, 2> emb{embedded_strides(u, a.domain(), vt),
                                                      embedded_strides(u, b.domain(), vt)};
  const auto av = a.values();
  const auto bv = b.values();
  for_each_config<2>(u, vt, emb, [&](std::uint64_t n, const auto& off) {
    out[n] = S::combine(av[off[0]], bv[off[1]]);
  });
  return out;
}

template <Semiring S>
std::vector<double> project_cells(const Potential& p, const Domain& target) {
  const auto& vt = p.variables();
  std::vector<double> out(state_space_size(target, vt), S::fold_identity());
  const std::array<std::vector<std::uint64_t>, 1> emb{
      embedded_strides(p.domain(), target, vt)};
  const auto pv = p.values();
  for_each_config<1>(p.domain(), vt, emb, [&](std::uint64_t n, const auto& off) {
    out[off[0]] = S::fold(out[off[0]], pv[n]);
  });
  return out;
}

}  // namespace detail

/// ρ ⊗ σ on the union of the two domains. Counts one combination costing one
/// cell-op per output cell.
inline Potential combine(const Potential& a, const Potential& b, OpCounter* counter = nullptr) {
  detail::require_compatible(a, b, "combine");
  Domain u = domain_union(a.domain(), b.domain());
  auto cells = visit_semiring(
      a.kind(), [&](auto s) { return detail::combine_cells<decltype(s)>(a, b, u); });
  if (counter) counter->add_combination(cells.size());
  return Potential(a.table(), std::move(u), std::move(cells), a.kind());
}

/// Projects σ onto `target` ⊆ domain(σ) in one pass. Marginalizing onto the
/// potential's own domain is free and returns it unchanged.
inline Potential marginalize_to(const Potential& p, const Domain& target,
                                OpCounter* counter = nullptr) {
  if (!target.subset_of(p.domain()))
    throw UsageError("marginalize_to: " + format_domain(target, p.variables()) +
                     " is not a subset of " + format_domain(p.domain(), p.variables()));
  if (target == p.domain()) return p;
  auto cells = visit_semiring(
      p.kind(), [&](auto s) { return detail::project_cells<decltype(s)>(p, target); });
  if (counter) counter->add_marginalization(p.size());
  return Potential(p.table(), target, std::move(cells), p.kind());
}

/// σ↓(s − {X}).
inline Potential marginalize_out(const Potential& p, VariableId x, OpCounter* counter = nullptr) {
  if (!p.domain().contains(x))
    throw UsageError("marginalize_out: variable " + std::to_string(x) + " not in " +
                     format_domain(p.domain(), p.variables()));
  return marginalize_to(p, p.domain().without(x), counter);
}

/// Vacuous extension of σ to `superset`: each new cell copies the value of
/// its restriction. No semiring operation is performed, so nothing is counted.
inline Potential extend(const Potential& p, const Domain& superset) {
  if (!p.domain().subset_of(superset))
    throw UsageError("extend: " + format_domain(superset, p.variables()) +
                     " does not contain " + format_domain(p.domain(), p.variables()));
  if (superset == p.domain()) return p;
  const auto& vt = p.variables();
  std::vector<double> out(state_space_size(superset, vt));
  const std::array<std::vector<std::uint64_t>, 1> emb{
      detail::embedded_strides(superset, p.domain(), vt)};
  const auto pv = p.values();
  detail::for_each_config<1>(superset, vt, emb,
                             [&](std::uint64_t n, const auto& off) { out[n] = pv[off[0]]; });
  return Potential(p.table(), superset, std::move(out), p.kind());
}

/// Rescales a sum-product potential to unit mass.
inline Potential normalize(const Potential& p) {
  if (p.kind() != SemiringKind::SumProduct)
    throw UsageError("normalize: only sum-product potentials can be normalized");
  const double t = p.total();
  if (!(t > 0.0)) throw DegenerateInputError("normalize: total mass is zero");
  std::vector<double> out(p.values().begin(), p.values().end());
  for (double& v : out) v /= t;
  return Potential(p.table(), p.domain(), std::move(out), p.kind());
}

inline constexpr double kAbsoluteFloor = 1e-15;

inline bool close(double a, double b, double rel_tol) {
  const double diff = std::fabs(a - b);
  return diff <= std::max(rel_tol * std::max(std::fabs(a), std::fabs(b)), kAbsoluteFloor);
}

/// Cell-wise comparison at relative tolerance, with an absolute floor of
/// 1e-15 for cells near zero.
inline bool allclose(const Potential& a, const Potential& b, double rel_tol) {
  if (a.kind() != b.kind()) throw UsageError("allclose: semiring mismatch");
  if (a.domain() != b.domain()) throw UsageError("allclose: domain mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!close(a[i], b[i], rel_tol)) return false;
  return true;
}

}  // namespace bjt

#endif  // BJT_POTENTIAL_HPP
