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

#ifndef BJT_OP_COUNTER_HPP
#define BJT_OP_COUNTER_HPP

#include <atomic>
#include <cstdint>

namespace bjt {

/// Tallies of valuation-algebra work. Increments are atomic so a counter may
/// be shared by concurrent message computations; counts are plain sums, so
/// merge order never matters.
class OpCounter {
 public:
  OpCounter() = default;
  OpCounter(std::uint64_t combinations, std::uint64_t marginalizations, std::uint64_t cell_ops)
      : combinations_(combinations), marginalizations_(marginalizations), cell_ops_(cell_ops) {}
  OpCounter(const OpCounter& other) { *this = other; }
  OpCounter& operator=(const OpCounter& other) {
    combinations_.store(other.combinations(), std::memory_order_relaxed);
    marginalizations_.store(other.marginalizations(), std::memory_order_relaxed);
    cell_ops_.store(other.cell_ops(), std::memory_order_relaxed);
    return *this;
  }

  void add_combination(std::uint64_t cells) {
    combinations_.fetch_add(1, std::memory_order_relaxed);
    cell_ops_.fetch_add(cells, std::memory_order_relaxed);
  }

  void add_marginalization(std::uint64_t cells) {
    marginalizations_.fetch_add(1, std::memory_order_relaxed);
    cell_ops_.fetch_add(cells, std::memory_order_relaxed);
  }

  std::uint64_t combinations() const { return combinations_.load(std::memory_order_relaxed); }
  std::uint64_t marginalizations() const {
    return marginalizations_.load(std::memory_order_relaxed);
  }
  std::uint64_t cell_ops() const { return cell_ops_.load(std::memory_order_relaxed); }

  void reset() { *this = OpCounter{}; }

  OpCounter& operator+=(const OpCounter& other) {
    combinations_.fetch_add(other.combinations(), std::memory_order_relaxed);
    marginalizations_.fetch_add(other.marginalizations(), std::memory_order_relaxed);
    cell_ops_.fetch_add(other.cell_ops(), std::memory_order_relaxed);
    return *this;
  }

  friend bool operator==(const OpCounter& a, const OpCounter& b) {
    return a.combinations() == b.combinations() &&
           a.marginalizations() == b.marginalizations() && a.cell_ops() == b.cell_ops();
  }

 private:
  std::atomic<std::uint64_t> combinations_{0};
  std::atomic<std::uint64_t> marginalizations_{0};
  std::atomic<std::uint64_t> cell_ops_{0};
};

}  // namespace bjt

#endif  // BJT_OP_COUNTER_HPP
