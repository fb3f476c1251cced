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
#include <string_view>
#include <vector>

#include "geoscene/core_model.hpp"

namespace geoscene {

enum class Task { PredCls, SGCls, SGGen };

std::string_view to_string(Task task);
Task parse_task(std::string_view text);

/// How per-image results are pooled into dataset figures.
///   ImageMean: average of per-image recalls (per-predicate: over images that
///              contain the predicate).
///   Pooled:    total matched / total ground truth.
enum class Aggregation { ImageMean, Pooled };

std::string_view to_string(Aggregation aggregation);

struct EvalMode {
  Task task = Task::PredCls;
  int k = 50;
  bool constrained = true;
  double iou_threshold = 0.5;
  Aggregation aggregation = Aggregation::ImageMean;

  void validate() const;
};

double iou(const BoundingBox& a, const BoundingBox& b);

/// Keeps the first triplet of every ordered (subject, object) pair. Input must
/// already be in rank order.
std::vector<Triplet> apply_constraint(std::span<const Triplet> ranked);

/// Rank-sorted predictions after the optional graph constraint, truncated to k.
std::vector<Triplet> select_top_k(const SceneGraph& pred, const EvalMode& mode);

/// Greedy one-to-one matching of `ranked` (taken in the given order) against
/// gt triplets. Returns matched gt triplet indices, ascending.
std::vector<std::size_t> match_ranked(std::span<const Triplet> ranked, const SceneGraph& pred,
                                      const SceneGraph& gt, const EvalMode& mode);

/// match_ranked over all predictions in rank order (no constraint, no cut).
std::vector<std::size_t> match_triplets(const SceneGraph& pred, const SceneGraph& gt,
                                        const EvalMode& mode);

/// Throws EmptyGroundTruth when gt has no triplets.
double recall_at_k(const SceneGraph& pred, const SceneGraph& gt, const EvalMode& mode);

struct PredicateTally {
  std::size_t gt = 0;
  std::size_t matched = 0;

  friend bool operator==(const PredicateTally&, const PredicateTally&) = default;
};

/// Per-image matching outcome; the unit the dataset reduction consumes.
struct ImageEval {
  std::string image_id;
  std::size_t gt_count = 0;
  std::size_t matched = 0;
  std::map<PredicateId, PredicateTally> per_predicate;

  friend bool operator==(const ImageEval&, const ImageEval&) = default;
};

/// `pred` may be null: the image then has no predictions.
struct ImagePair {
  const SceneGraph* pred = nullptr;
  const SceneGraph* gt = nullptr;
};

/// Pairs every gt image with the prediction of the same image_id.
std::vector<ImagePair> pair_images(std::span<const SceneGraph> preds,
                                   std::span<const SceneGraph> gts);

/// Throws ProtocolViolation for PredCls/SGCls predictions that do not carry
/// every object id the gt triplets use.
ImageEval evaluate_image(const ImagePair& pair, const EvalMode& mode);

struct PredicateRecall {
  std::size_t gt_instances = 0;
  std::size_t images = 0;
  double recall = 0.0;

  friend bool operator==(const PredicateRecall&, const PredicateRecall&) = default;
};

struct EvalReport {
  Task task = Task::PredCls;
  int k = 50;
  bool constrained = true;
  Aggregation aggregation = Aggregation::ImageMean;
  std::size_t images = 0;          // images with at least one gt triplet
  std::size_t skipped_images = 0;  // images without gt triplets
  std::map<std::string, double> per_image_recall;
  double recall_at_k = 0.0;
  double mean_recall_at_k = 0.0;
  std::map<std::string, PredicateRecall> per_predicate;  // only predicates seen in gt

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Order-independent reduction of per-image results. Images with no gt
/// triplets are counted in skipped_images and excluded.
EvalReport aggregate_report(std::span<const ImageEval> images, const EvalMode& mode,
                            const PredicateVocabulary& vocab);

/// Serial evaluation; see parallel.hpp for the OpenMP variant.
EvalReport mean_recall_at_k(std::span<const ImagePair> images, const EvalMode& mode,
                            const PredicateVocabulary& vocab);

}  // namespace geoscene
