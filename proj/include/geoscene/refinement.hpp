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
#include <optional>
#include <span>
#include <vector>

#include "geoscene/core_model.hpp"
#include "geoscene/geometry.hpp"

namespace geoscene {

/// Knobs of the geometric post-processing pass.
struct RefineConfig {
  /// Geometric triplets score geo_score_factor × (lowest model triplet score).
  double geo_score_factor = 0.5;
  /// A model geometric predicate that disagrees with the computed bucket and
  /// scores below this is replaced.
  double tau_replace = 0.3;
  /// A non-geometric model predicate scoring at or above this suppresses
  /// geometric additions on its pair.
  double tau_keep = 0.7;
  bool emit_direction = true;
  bool emit_proximity = true;
  BucketMode bucket_mode = BucketMode::Corrected;
  RefBoxMode ref_box_mode = RefBoxMode::Subject;

  /// Throws InvalidConfig when a threshold leaves its range or tau_replace > tau_keep.
  void validate() const;
  GeometryOptions geometry() const { return {bucket_mode, ref_box_mode}; }
};

/// Vocabulary ids of the six predicates the refinement emits.
struct GeometricPredicates {
  PredicateId near{};
  PredicateId far{};
  PredicateId above{};
  PredicateId under{};
  PredicateId left{};
  PredicateId right{};

  /// Throws MissingPredicate if any of the six names is absent.
  static GeometricPredicates resolve(const PredicateVocabulary& vocab);

  PredicateId of(Direction direction) const;
  PredicateId of(Proximity proximity) const;
  bool is_proximity(PredicateId id) const { return id == near || id == far; }
  bool is_direction(PredicateId id) const {
    return id == above || id == under || id == left || id == right;
  }
};

struct MergeStats {
  std::size_t added = 0;
  std::size_t replaced = 0;
  std::size_t suppressed = 0;

  MergeStats& operator+=(const MergeStats& other);
  friend bool operator==(const MergeStats&, const MergeStats&) = default;
};

struct MergeResult {
  std::vector<Triplet> triplets;
  MergeStats stats;
};

struct RefineResult {
  SceneGraph scene;
  MergeStats stats;
};

/// Score given to geometric triplets of `scene`.
double geometric_score(const SceneGraph& scene, const RefineConfig& cfg);

/// One proximity and one direction triplet per ordered pair of distinct
/// objects, i-major order. Coincident centroids emit proximity only.
std::vector<Triplet> compute_geo_triplets(const SceneGraph& scene, const RefineConfig& cfg,
                                          const PredicateVocabulary& vocab);

/// Pairwise merge of model and geometric triplets:
///   (a) pair without model triplets: geometric triplets appended;
///   (b) model geometric predicate disagreeing with the computed bucket and
///       scoring below tau_replace: replaced by the computed triplet;
///   (c) non-geometric model predicate scoring >= tau_keep: further geometric
///       additions on that pair suppressed;
///   (d) otherwise model triplets kept, geometric triplets appended.
/// Geometric triplets already present as (subject, predicate, object) are dropped.
/// Throws CrossSceneMerge if a triplet references an id outside `object_ids`.
MergeResult merge_triplets(std::span<const Triplet> model, std::span<const Triplet> geo,
                           const RefineConfig& cfg, const PredicateVocabulary& vocab,
                           std::span<const int> object_ids);

RefineResult refine_scene_graph(const SceneGraph& scene, const RefineConfig& cfg,
                                const PredicateVocabulary& vocab);

}  // namespace geoscene
