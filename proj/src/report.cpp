// Copyright 2026 The GeoScene Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geoscene/report.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace geoscene {
namespace {

struct Group {
  std::string title;
  std::vector<std::string> columns;
  bool left_align = false;
};

struct Row {
  std::string label;
  std::vector<std::string> cells;
};

std::string align(const std::string& text, std::size_t width, bool left) {
  const std::string pad(width > text.size() ? width - text.size() : 0, ' ');
  return left ? text + pad : pad + text;
}

std::string center(const std::string& text, std::size_t width) {
  const std::size_t total = width > text.size() ? width - text.size() : 0;
  return std::string(total / 2, ' ') + text + std::string(total - total / 2, ' ');
}

// Pipe table with a group header row and an optional sub-column row.
std::string render_table(const std::string& corner, const std::vector<Group>& groups,
                         const std::vector<Row>& rows) {
  std::size_t label_width = corner.size();
  for (const auto& row : rows) label_width = std::max(label_width, row.label.size());

  std::vector<std::size_t> widths;
  std::vector<bool> left;
  for (const auto& group : groups) {
    for (const auto& column : group.columns) {
      widths.push_back(column.size());
      left.push_back(group.left_align);
    }
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.cells.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], row.cells[c].size());
    }
  }

  std::vector<std::size_t> spans;
  bool has_subheader = false;
  std::size_t first = 0;
  for (const auto& group : groups) {
    const std::size_t n = group.columns.size();
    std::size_t span = 3 * (n - 1);
    for (std::size_t c = 0; c < n; ++c) span += widths[first + c];
    if (group.title.size() > span) {
      widths[first + n - 1] += group.title.size() - span;
      span = group.title.size();
    }
    for (const auto& column : group.columns) has_subheader = has_subheader || !column.empty();
    spans.push_back(span);
    first += n;
  }

  std::string out = "| " + align(corner, label_width, true) + " |";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out += " " + center(groups[g].title, spans[g]) + " |";
  }
  out += "\n";

  if (has_subheader) {
    out += "| " + std::string(label_width, ' ') + " |";
    std::size_t c = 0;
    for (const auto& group : groups) {
      for (const auto& column : group.columns) {
        out += " " + align(column, widths[c], left[c]) + " |";
        ++c;
      }
    }
    out += "\n";
  }

  out += "|" + std::string(label_width + 2, '-') + "|";
  for (std::size_t w : widths) out += std::string(w + 2, '-') + "|";
  out += "\n";

  for (const auto& row : rows) {
    out += "| " + align(row.label, label_width, true) + " |";
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string cell = c < row.cells.size() ? row.cells[c] : std::string();
      out += " " + align(cell, widths[c], left[c]) + " |";
    }
    out += "\n";
  }
  return out;
}

std::string percent(double fraction) { return fmt::format("{:.1f}", fraction * 100.0); }

const EvalReport* find_report(const ReportColumn& column, int k, std::optional<Task> task = {}) {
  for (const auto& report : column.reports) {
    if (report.k == k && (!task || report.task == *task)) return &report;
  }
  return nullptr;
}

std::string human_count(std::size_t n) {
  if (n < 1000) return fmt::format("{}", n);
  return fmt::format("{}k", static_cast<std::size_t>(std::llround(static_cast<double>(n) / 1000.0)));
}

}  // namespace

std::vector<std::string> default_report_predicates() {
  return {"above", "near", "at", "has", "wearing"};
}

std::string per_predicate_report(std::span<const ReportColumn> columns,
                                 std::span<const std::string> predicates,
                                 std::span<const int> ks, const PredicateVocabulary& vocab) {
  if (predicates.empty()) return {};
  std::vector<Group> groups;
  for (const auto& column : columns) {
    Group group{column.title, {}, false};
    for (int k : ks) group.columns.push_back(fmt::format("R@{}", k));
    groups.push_back(std::move(group));
  }

  std::vector<Row> rows;
  for (const auto& name : predicates) {
    const std::string& canonical = vocab.name(vocab.resolve(name));
    Row row{name, {}};
    for (const auto& column : columns) {
      for (int k : ks) {
        std::string cell = "N/A";
        if (const EvalReport* report = find_report(column, k)) {
          auto it = report->per_predicate.find(canonical);
          if (it != report->per_predicate.end()) cell = percent(it->second.recall);
        }
        row.cells.push_back(std::move(cell));
      }
    }
    rows.push_back(std::move(row));
  }
  return render_table("Predicate", groups, rows);
}

std::string recall_summary_table(std::span<const ReportColumn> rows, bool mean_recall) {
  std::set<Task> tasks;
  std::set<int> ks;
  for (const auto& row : rows) {
    for (const auto& report : row.reports) {
      tasks.insert(report.task);
      ks.insert(report.k);
    }
  }
  const char* prefix = mean_recall ? "mR@" : "R@";
  std::vector<Group> groups;
  for (Task task : tasks) {
    Group group{std::string(to_string(task)), {}, false};
    for (int k : ks) group.columns.push_back(fmt::format("{}{}", prefix, k));
    groups.push_back(std::move(group));
  }
  groups.push_back({"Mean", {""}, false});

  std::vector<Row> table_rows;
  for (const auto& row : rows) {
    Row out{row.title, {}};
    double sum = 0.0;
    std::size_t count = 0;
    for (Task task : tasks) {
      for (int k : ks) {
        const EvalReport* report = find_report(row, k, task);
        if (report == nullptr) {
          out.cells.push_back("N/A");
          continue;
        }
        const double value = mean_recall ? report->mean_recall_at_k : report->recall_at_k;
        out.cells.push_back(percent(value));
        sum += value;
        ++count;
      }
    }
    out.cells.push_back(count ? percent(sum / static_cast<double>(count)) : "N/A");
    table_rows.push_back(std::move(out));
  }
  return render_table("Method", groups, table_rows);
}

std::string taxonomy_report(const PredicateVocabulary& vocab,
                            const std::map<PredicateId, std::size_t>* instance_counts) {
  using enum RelationCategory;
  constexpr RelationCategory kOrder[] = {Geometric, Possessive, Semantic, Misc};
  constexpr const char* kTitles[] = {"Geometric", "Possessive", "Semantic", "Misc."};

  std::size_t total = 0;
  if (instance_counts) {
    for (const auto& [id, n] : *instance_counts) total += n;
  }

  std::vector<Row> rows;
  for (std::size_t c = 0; c < 4; ++c) {
    std::vector<std::string> examples;
    std::size_t classes = 0;
    std::size_t instances = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      const auto& entry = vocab.entries()[i];
      if (entry.category != kOrder[c]) continue;
      ++classes;
      if (examples.size() < 3) examples.push_back(entry.name);
      if (instance_counts) {
        auto it = instance_counts->find(predicate_at(i));
        if (it != instance_counts->end()) instances += it->second;
      }
    }
    std::string instance_cell = "-";
    if (instance_counts) {
      const double share =
          total ? 100.0 * static_cast<double>(instances) / static_cast<double>(total) : 0.0;
      instance_cell = fmt::format("{} ({:.1f}%)", human_count(instances), share);
    }
    rows.push_back({kTitles[c],
                    {fmt::format("{}", fmt::join(examples, ",")), fmt::format("{}", classes),
                     instance_cell}});
  }
  const std::vector<Group> groups = {
      {"Examples", {""}, true}, {"#Classes", {""}, false}, {"#Instances", {""}, false}};
  return render_table("Types", groups, rows);
}

std::string reports_to_json(std::span<const EvalReport> reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json per_predicate = nlohmann::json::object();
    for (const auto& [name, entry] : r.per_predicate) {
      per_predicate[name] = {{"gt_instances", entry.gt_instances},
                             {"images", entry.images},
                             {"recall", entry.recall}};
    }
    doc.push_back({{"task", to_string(r.task)},
                   {"k", r.k},
                   {"constrained", r.constrained},
                   {"aggregation", to_string(r.aggregation)},
                   {"images", r.images},
                   {"skipped_images", r.skipped_images},
                   {"recall_at_k", r.recall_at_k},
                   {"mean_recall_at_k", r.mean_recall_at_k},
                   {"per_image_recall", r.per_image_recall},
                   {"per_predicate", per_predicate}});
  }
  return nlohmann::json{{"reports", doc}}.dump(2) + "\n";
}

std::string per_predicate_csv(std::span<const EvalReport> reports) {
  std::set<std::string> names;
  for (const auto& r : reports) {
    for (const auto& [name, entry] : r.per_predicate) names.insert(name);
  }
  std::string out = "predicate,gt_instances";
  for (const auto& r : reports) {
    out += fmt::format(",{}_R@{}", to_string(r.task), r.k);
  }
  out += "\n";
  for (const auto& name : names) {
    std::size_t gt = 0;
    std::string cells;
    for (const auto& r : reports) {
      auto it = r.per_predicate.find(name);
      if (it == r.per_predicate.end()) {
        cells += ",";
        continue;
      }
      gt = it->second.gt_instances;
      cells += fmt::format(",{:.6f}", it->second.recall);
    }
    const bool quote = name.find(',') != std::string::npos;
    out += fmt::format("{}{}{},{}{}\n", quote ? "\"" : "", name, quote ? "\"" : "", gt, cells);
  }
  return out;
}

}  // namespace geoscene
