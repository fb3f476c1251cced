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

#include <span>
#include <vector>

#include "geoscene/core_model.hpp"
#include "geoscene/geometry.hpp"
#include "geoscene/metrics.hpp"
#include "geoscene/refinement.hpp"

// Data-parallel batch kernels. Every OpenMP kernel has a *_serial twin that
// the tests use as the reference; results are identical for any thread count.
// `threads` <= 0 means the OpenMP default.

namespace geoscene {

int available_workers();

/// Row-major n×n table; entry (i, j) = geometric_relations(boxes[i], boxes[j]).
std::vector<GeoParams> pairwise_params(std::span<const BoundingBox> boxes,
                                       const GeometryOptions& options, int threads = 0);
std::vector<GeoParams> pairwise_params_serial(std::span<const BoundingBox> boxes,
                                              const GeometryOptions& options);

std::vector<RefineResult> refine_scenes(std::span<const SceneGraph> scenes,
                                        const RefineConfig& cfg, const PredicateVocabulary& vocab,
                                        int threads = 0);
std::vector<RefineResult> refine_scenes_serial(std::span<const SceneGraph> scenes,
                                               const RefineConfig& cfg,
                                               const PredicateVocabulary& vocab);

std::vector<ImageEval> evaluate_images(std::span<const ImagePair> images, const EvalMode& mode,
                                       int threads = 0);
std::vector<ImageEval> evaluate_images_serial(std::span<const ImagePair> images,
                                              const EvalMode& mode);

/// mean_recall_at_k with per-image work spread over `threads` workers.
EvalReport mean_recall_at_k_parallel(std::span<const ImagePair> images, const EvalMode& mode,
                                     const PredicateVocabulary& vocab, int threads = 0);

}  // namespace geoscene
