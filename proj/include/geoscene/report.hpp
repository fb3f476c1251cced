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

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "geoscene/core_model.hpp"
#include "geoscene/metrics.hpp"

namespace geoscene {

/// One column group of a comparison table, e.g. "KERN" with its R@50 and
/// R@100 reports.
struct ReportColumn {
  std::string title;
  std::vector<EvalReport> reports;
};

/// above, near, at, has, wearing.
std::vector<std::string> default_report_predicates();

/// Per-predicate recall table, one column group per ReportColumn and one
/// sub-column per K. Recalls render as percentages with one decimal; a
/// predicate without ground truth renders as N/A. Throws UnknownPredicate for
/// names outside `vocab`.
std::string per_predicate_report(std::span<const ReportColumn> columns,
                                 std::span<const std::string> predicates,
                                 std::span<const int> ks, const PredicateVocabulary& vocab);

/// Task × K recall table with a trailing Mean column; `mean_recall` selects
/// mR@K instead of R@K. One row per ReportColumn.
std::string recall_summary_table(std::span<const ReportColumn> rows, bool mean_recall);

/// Relation-type table: classes per category, example names, and (when
/// counts are given) instance counts with their share.
std::string taxonomy_report(const PredicateVocabulary& vocab,
                            const std::map<PredicateId, std::size_t>* instance_counts = nullptr);

/// Deterministic JSON (sorted keys, 2-space indent).
std::string reports_to_json(std::span<const EvalReport> reports);

/// predicate,gt_instances,R@k... rows sorted by predicate name.
std::string per_predicate_csv(std::span<const EvalReport> reports);

}  // namespace geoscene
