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

#include "geoscene/metrics.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace geoscene {
namespace {

bool compatible(const Triplet& p, const SceneGraph& pred, const Triplet& g, const SceneGraph& gt,
                const EvalMode& mode) {
  if (p.predicate != g.predicate) return false;
  if (mode.task == Task::PredCls) {
    return p.subject_id == g.subject_id && p.object_id == g.object_id;
  }
  const ObjectInstance* ps = pred.find_object(p.subject_id);
  const ObjectInstance* po = pred.find_object(p.object_id);
  const ObjectInstance* gs = gt.find_object(g.subject_id);
  const ObjectInstance* go = gt.find_object(g.object_id);
  if (ps->label != gs->label || po->label != go->label) return false;
  if (mode.task == Task::SGCls) {
    return p.subject_id == g.subject_id && p.object_id == g.object_id;
  }
  return iou(ps->box, gs->box) >= mode.iou_threshold &&
         iou(po->box, go->box) >= mode.iou_threshold;
}

void check_shared_ids(const SceneGraph& pred, const SceneGraph& gt, const EvalMode& mode) {
  if (mode.task == Task::SGGen) return;
  for (const auto& t : gt.triplets()) {
    for (int id : {t.subject_id, t.object_id}) {
      if (pred.find_object(id) == nullptr) {
        throw Error(ErrorKind::ProtocolViolation,
                    fmt::format("{} prediction lacks ground-truth object id {}",
                                to_string(mode.task), id),
                    gt.image_id());
      }
    }
  }
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::PredCls: return "PredCls";
    case Task::SGCls: return "SGCls";
    case Task::SGGen: return "SGGen";
  }
  return "PredCls";
}

Task parse_task(std::string_view text) {
  std::string key(text);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "predcls") return Task::PredCls;
  if (key == "sgcls") return Task::SGCls;
  if (key == "sggen" || key == "sgdet") return Task::SGGen;
  throw Error(ErrorKind::InvalidConfig, fmt::format("unknown task '{}'", text));
}

std::string_view to_string(Aggregation aggregation) {
  return aggregation == Aggregation::ImageMean ? "image-mean" : "pooled";
}

void EvalMode::validate() const {
  if (k < 1) throw Error(ErrorKind::InvalidConfig, fmt::format("k = {} must be >= 1", k));
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("iou threshold {} outside (0, 1]", iou_threshold));
  }
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x_max(), b.x_max()) - std::max(a.x_min(), b.x_min());
  const double h = std::min(a.y_max(), b.y_max()) - std::max(a.y_min(), b.y_min());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  const double inter = w * h;
  return inter / (a.area() + b.area() - inter);
}

std::vector<Triplet> apply_constraint(std::span<const Triplet> ranked) {
  std::set<std::pair<int, int>> seen;
  std::vector<Triplet> out;
  for (const auto& t : ranked) {
    if (seen.emplace(t.subject_id, t.object_id).second) out.push_back(t);
  }
  return out;
}

std::vector<Triplet> select_top_k(const SceneGraph& pred, const EvalMode& mode) {
  mode.validate();
  std::vector<Triplet> ranked = pred.triplets();
  sort_by_rank(ranked);
  if (mode.constrained) ranked = apply_constraint(ranked);
  if (ranked.size() > static_cast<std::size_t>(mode.k)) ranked.resize(mode.k);
  return ranked;
}

std::vector<std::size_t> match_ranked(std::span<const Triplet> ranked, const SceneGraph& pred,
                                      const SceneGraph& gt, const EvalMode& mode) {
  check_shared_ids(pred, gt, mode);
  const auto& gt_triplets = gt.triplets();
  std::vector<bool> used(gt_triplets.size(), false);
  for (const auto& p : ranked) {
    for (std::size_t g = 0; g < gt_triplets.size(); ++g) {
      if (!used[g] && compatible(p, pred, gt_triplets[g], gt, mode)) {
        used[g] = true;
        break;
      }
    }
  }
  std::vector<std::size_t> matched;
  for (std::size_t g = 0; g < used.size(); ++g) {
    if (used[g]) matched.push_back(g);
  }
  return matched;
}

std::vector<std::size_t> match_triplets(const SceneGraph& pred, const SceneGraph& gt,
                                        const EvalMode& mode) {
  std::vector<Triplet> ranked = pred.triplets();
  sort_by_rank(ranked);
  return match_ranked(ranked, pred, gt, mode);
}

double recall_at_k(const SceneGraph& pred, const SceneGraph& gt, const EvalMode& mode) {
  if (gt.triplets().empty()) {
    throw Error(ErrorKind::EmptyGroundTruth, "ground truth has no triplets", gt.image_id());
  }
  const auto top = select_top_k(pred, mode);
  const auto matched = match_ranked(top, pred, gt, mode);
  return static_cast<double>(matched.size()) / static_cast<double>(gt.triplets().size());
}

std::vector<ImagePair> pair_images(std::span<const SceneGraph> preds,
                                   std::span<const SceneGraph> gts) {
  std::map<std::string_view, const SceneGraph*> by_id;
  for (const auto& p : preds) {
    if (!by_id.emplace(p.image_id(), &p).second) {
      throw Error(ErrorKind::InvalidScene, "duplicate image id in predictions", p.image_id());
    }
  }
  std::set<std::string_view> gt_ids;
  std::vector<ImagePair> out;
  out.reserve(gts.size());
  for (const auto& g : gts) {
    if (!gt_ids.insert(g.image_id()).second) {
      throw Error(ErrorKind::InvalidScene, "duplicate image id in ground truth", g.image_id());
    }
    auto it = by_id.find(g.image_id());
    out.push_back({it == by_id.end() ? nullptr : it->second, &g});
  }
  return out;
}

ImageEval evaluate_image(const ImagePair& pair, const EvalMode& mode) {
  const SceneGraph& gt = *pair.gt;
  ImageEval result;
  result.image_id = gt.image_id();
  result.gt_count = gt.triplets().size();
  for (const auto& t : gt.triplets()) ++result.per_predicate[t.predicate].gt;
  if (result.gt_count == 0 || pair.pred == nullptr) return result;

  const auto top = select_top_k(*pair.pred, mode);
  const auto matched = match_ranked(top, *pair.pred, gt, mode);
  result.matched = matched.size();
  for (std::size_t g : matched) ++result.per_predicate[gt.triplets()[g].predicate].matched;
  return result;
}

EvalReport aggregate_report(std::span<const ImageEval> images, const EvalMode& mode,
                            const PredicateVocabulary& vocab) {
  EvalReport report;
  report.task = mode.task;
  report.k = mode.k;
  report.constrained = mode.constrained;
  report.aggregation = mode.aggregation;

  // Canonical image order keeps floating-point sums independent of input order.
  std::vector<const ImageEval*> ordered;
  for (const auto& image : images) {
    if (image.gt_count == 0) {
      ++report.skipped_images;
      continue;
    }
    ordered.push_back(&image);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const ImageEval* a, const ImageEval* b) { return a->image_id < b->image_id; });
  report.images = ordered.size();
  if (ordered.empty()) return report;

  struct Accumulator {
    PredicateTally tally;
    std::size_t images = 0;
    double recall_sum = 0.0;
  };
  std::map<PredicateId, Accumulator> per_predicate;
  std::size_t total_gt = 0;
  std::size_t total_matched = 0;
  double recall_sum = 0.0;
  for (const ImageEval* image : ordered) {
    const double recall =
        static_cast<double>(image->matched) / static_cast<double>(image->gt_count);
    report.per_image_recall[image->image_id] = recall;
    recall_sum += recall;
    total_gt += image->gt_count;
    total_matched += image->matched;
    for (const auto& [predicate, tally] : image->per_predicate) {
      auto& acc = per_predicate[predicate];
      acc.tally.gt += tally.gt;
      acc.tally.matched += tally.matched;
      acc.images += 1;
      acc.recall_sum += static_cast<double>(tally.matched) / static_cast<double>(tally.gt);
    }
  }

  const bool pooled = mode.aggregation == Aggregation::Pooled;
  report.recall_at_k = pooled ? static_cast<double>(total_matched) / static_cast<double>(total_gt)
                              : recall_sum / static_cast<double>(ordered.size());

  double mean_sum = 0.0;
  for (const auto& [predicate, acc] : per_predicate) {
    PredicateRecall entry;
    entry.gt_instances = acc.tally.gt;
    entry.images = acc.images;
    entry.recall = pooled ? static_cast<double>(acc.tally.matched) / static_cast<double>(acc.tally.gt)
                          : acc.recall_sum / static_cast<double>(acc.images);
    mean_sum += entry.recall;
    report.per_predicate[vocab.name(predicate)] = entry;
  }
  report.mean_recall_at_k = mean_sum / static_cast<double>(per_predicate.size());
  return report;
}

EvalReport mean_recall_at_k(std::span<const ImagePair> images, const EvalMode& mode,
                            const PredicateVocabulary& vocab) {
  mode.validate();
  std::vector<ImageEval> evals;
  evals.reserve(images.size());
  for (const auto& pair : images) evals.push_back(evaluate_image(pair, mode));
  return aggregate_report(evals, mode, vocab);
}

}  // namespace geoscene
