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

#ifndef BJT_REPORT_HPP
#define BJT_REPORT_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bjt/core_algebra.hpp"
#include "bjt/op_counter.hpp"
#include "bjt/potential.hpp"
#include "bjt/propagation.hpp"

namespace bjt {

/// 12 significant digits, "%g" style.
inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_counter(const OpCounter& c) {
  return "combinations: " + std::to_string(c.combinations()) +
         "  marginalizations: " + std::to_string(c.marginalizations()) +
         "  cell-ops: " + std::to_string(c.cell_ops());
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace detail

/// Fixed-width rendering of marginal tables: one block per potential, one
/// row per configuration in layout order, then the counter footer.
inline std::string report_marginals(std::span<const Potential> blocks, const OpCounter& counter,
                                    bool normalize_values = false) {
  std::ostringstream out;
  for (const auto& block : blocks) {
    const Potential shown = normalize_values && block.kind() == SemiringKind::SumProduct
                                ? normalize(block)
                                : block;
    const auto& vt = shown.variables();
    const auto& d = shown.domain();
    out << "marginal " << format_domain(d, vt) << "\n";

    std::vector<std::size_t> width(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      width[i] = std::max(vt.at(d[i]).name.size(),
                          std::to_string(vt.cardinality(d[i]) - 1).size());
    out << " ";
    if (d.empty()) out << " " << detail::pad("()", 2);
    for (std::size_t i = 0; i < d.size(); ++i) out << " " << detail::pad(vt.at(d[i]).name, width[i]);
    out << "  value\n";

    for (std::uint64_t n = 0; n < shown.size(); ++n) {
      out << " ";
      if (d.empty()) out << " ()";
      const auto config = config_of(d, n, vt);
      for (std::size_t i = 0; i < d.size(); ++i)
        out << " " << detail::pad(std::to_string(config.at(d[i])), width[i]);
      out << "  " << format_value(shown[n]) << "\n";
    }
    out << "\n";
  }
  out << format_counter(counter) << "\n";
  return out.str();
}

/// All marginals of a propagation report, in node-id order.
inline std::string report_marginals(const PropagationReport& report, bool normalize_values = false) {
  std::vector<Potential> blocks;
  for (const auto& [id, p] : report.marginals) blocks.push_back(p);
  return report_marginals(blocks, report.counter, normalize_values);
}

/// Side-by-side combination counts per node label for the three modes,
/// followed by CSV rows: mode,node-label,combinations,marginalizations,cell-ops.
inline std::string report_counts(std::span<const CountReport> reports, const VariableTable& vt) {
  std::vector<Domain> labels;
  for (const auto& r : reports)
    for (const auto& [label, c] : r.by_label)
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
  std::sort(labels.begin(), labels.end());

  std::size_t label_width = std::string("node label").size();
  for (const auto& l : labels) label_width = std::max(label_width, format_domain(l, vt).size());
  label_width += 2;

  std::ostringstream out;
  out << detail::pad("node label", label_width);
  for (const auto& r : reports) out << detail::pad(std::string(to_string(r.mode)), 18);
  out << "\n";
  for (const auto& l : labels) {
    out << detail::pad(format_domain(l, vt), label_width);
    for (const auto& r : reports) {
      auto it = r.by_label.find(l);
      out << detail::pad(it == r.by_label.end() ? "-" : std::to_string(it->second.combinations()),
                         18);
    }
    out << "\n";
  }
  out << detail::pad("total", label_width);
  for (const auto& r : reports) out << detail::pad(std::to_string(r.total.combinations()), 18);
  out << "\n\n";

  out << "mode,node-label,combinations,marginalizations,cell-ops\n";
  auto row = [&](const CountReport& r, const std::string& label, const OpCounter& c) {
    out << to_string(r.mode) << ",\"" << label << "\"," << c.combinations() << ","
        << c.marginalizations() << "," << c.cell_ops() << "\n";
  };
  for (const auto& r : reports) {
    for (const auto& [label, c] : r.by_label) row(r, format_domain(label, vt), c);
    row(r, "*", r.total);
  }
  return out.str();
}

}  // namespace bjt

#endif  // BJT_REPORT_HPP
