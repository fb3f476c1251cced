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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "geoscene/report.hpp"
#include "support/fixtures.hpp"

namespace geoscene {
namespace {

using testing::vocab;

EvalReport report_with(int k, std::map<std::string, double> recalls) {
  EvalReport r;
  r.k = k;
  for (const auto& [name, value] : recalls) r.per_predicate[name] = {10, 1, value / 100.0};
  return r;
}

std::vector<ReportColumn> kern_and_ours() {
  ReportColumn kern{"KERN",
                    {report_with(50, {{"above", 17.0}, {"near", 38.8}, {"at", 32.2},
                                      {"has", 78.8}, {"wearing", 95.8}}),
                     report_with(100, {{"above", 19.4}, {"near", 45.5}, {"at", 37.3},
                                       {"has", 81.3}, {"wearing", 97.1}})}};
  ReportColumn ours{"Ours",
                    {report_with(50, {{"above", 20.4}, {"near", 42.0}, {"at", 32.2},
                                      {"has", 78.8}, {"wearing", 95.8}}),
                     report_with(100, {{"above", 25.6}, {"near", 51.1}, {"at", 37.3},
                                       {"has", 81.3}, {"wearing", 97.1}})}};
  return {kern, ours};
}

const std::vector<int> kKs = {50, 100};

TEST(PerPredicateReport, MatchesGolden) {
  const auto columns = kern_and_ours();
  const auto predicates = default_report_predicates();
  EXPECT_EQ(per_predicate_report(columns, predicates, kKs, vocab()),
            testing::read_file(testing::source_path("tests/golden/predicate_table.txt")));
}

TEST(PerPredicateReport, AboveRowShape) {
  const auto columns = kern_and_ours();
  const std::vector<std::string> above = {"above"};
  const std::string table = per_predicate_report(columns, above, kKs, vocab());
  EXPECT_NE(table.find("| above     | 17.0 |  19.4 | 20.4 |  25.6 |\n"), std::string::npos);
}

TEST(PerPredicateReport, EmptyAndMissing) {
  const auto columns = kern_and_ours();
  EXPECT_EQ(per_predicate_report(columns, std::vector<std::string>{}, kKs, vocab()), "");
  const std::vector<std::string> riding = {"riding"};
  const std::string table = per_predicate_report(columns, riding, kKs, vocab());
  EXPECT_NE(table.find("| riding    |  N/A |   N/A |  N/A |   N/A |"), std::string::npos) << table;
  // A K without a report is N/A as well.
  const std::vector<int> k20 = {20};
  EXPECT_NE(per_predicate_report(columns, std::vector<std::string>{"near"}, k20, vocab()).find("N/A"),
            std::string::npos);
}

TEST(PerPredicateReport, AliasRowsUseCanonicalRecall) {
  const auto columns = kern_and_ours();
  const std::vector<std::string> top = {"top"};
  EXPECT_NE(per_predicate_report(columns, top, kKs, vocab()).find("| top       | 17.0 |"),
            std::string::npos);
}

TEST(PerPredicateReport, UnknownPredicate) {
  const auto columns = kern_and_ours();
  const std::vector<std::string> bogus = {"levitating"};
  try {
    per_predicate_report(columns, bogus, kKs, vocab());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownPredicate);
  }
}

TEST(RecallSummaryTable, MeanColumn) {
  EvalReport a{.task = Task::PredCls, .k = 50, .recall_at_k = 0.5};
  EvalReport b{.task = Task::PredCls, .k = 100, .recall_at_k = 0.6};
  EvalReport c{.task = Task::SGCls, .k = 50, .recall_at_k = 0.2};
  EvalReport d{.task = Task::SGCls, .k = 100, .recall_at_k = 0.3};
  const std::vector<ReportColumn> rows = {{"Ours", {a, b, c, d}}};
  const std::string expected =
      "| Method |   PredCls    |    SGCls     | Mean |\n"
      "|        | R@50 | R@100 | R@50 | R@100 |      |\n"
      "|--------|------|-------|------|-------|------|\n"
      "| Ours   | 50.0 |  60.0 | 20.0 |  30.0 | 40.0 |\n";
  EXPECT_EQ(recall_summary_table(rows, false), expected);
  EXPECT_NE(recall_summary_table(rows, true).find("mR@50"), std::string::npos);
}

TEST(TaxonomyReport, CountsPerCategory) {
  const std::string plain = taxonomy_report(default_vocabulary());
  EXPECT_NE(plain.find("| Geometric "), std::string::npos);
  EXPECT_NE(plain.find(" 15 |"), std::string::npos);
  EXPECT_NE(plain.find(" 24 |"), std::string::npos);

  std::map<PredicateId, std::size_t> counts = {{default_vocabulary().resolve("on"), 228000},
                                               {default_vocabulary().resolve("has"), 228000}};
  const std::string with_counts = taxonomy_report(default_vocabulary(), &counts);
  EXPECT_NE(with_counts.find("228k (50.0%)"), std::string::npos) << with_counts;
  EXPECT_NE(with_counts.find("0 (0.0%)"), std::string::npos);
}

TEST(ReportsJson, Structure) {
  const auto columns = kern_and_ours();
  const std::string text = reports_to_json(columns[0].reports);
  ASSERT_EQ(text.back(), '\n');
  const auto doc = nlohmann::json::parse(text);
  ASSERT_EQ(doc["reports"].size(), 2u);
  EXPECT_EQ(doc["reports"][1]["k"], 100);
  EXPECT_DOUBLE_EQ(doc["reports"][0]["per_predicate"]["above"]["recall"].get<double>(), 0.17);
  EXPECT_EQ(text, reports_to_json(columns[0].reports));
}

TEST(PerPredicateCsv, Layout) {
  const auto columns = kern_and_ours();
  const std::string csv = per_predicate_csv(columns[0].reports);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "predicate,gt_instances,PredCls_R@50,PredCls_R@100");
  EXPECT_NE(csv.find("above,10,0.170000,0.194000\n"), std::string::npos);
}

}  // namespace
}  // namespace geoscene
