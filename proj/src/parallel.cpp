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

#include "geoscene/parallel.hpp"

#include <cstddef>
#include <exception>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace geoscene {
namespace {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Runs body(i) for i in [0, n) across workers. The exception of the lowest
// failing index is rethrown so failures do not depend on scheduling.
template <typename Body>
void parallel_for(std::ptrdiff_t n, int threads, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace

int available_workers() { return resolve_threads(0); }

std::vector<GeoParams> pairwise_params(std::span<const BoundingBox> boxes,
                                       const GeometryOptions& options, int threads) {
  const std::size_t n = boxes.size();
  std::vector<GeoParams> table(n * n);
  const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto row = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      table[row * n + j] = geometric_relations(boxes[row], boxes[j], options);
    }
  }
  return table;
}

std::vector<GeoParams> pairwise_params_serial(std::span<const BoundingBox> boxes,
                                              const GeometryOptions& options) {
  const std::size_t n = boxes.size();
  std::vector<GeoParams> table;
  table.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table.push_back(geometric_relations(boxes[i], boxes[j], options));
    }
  }
  return table;
}

std::vector<RefineResult> refine_scenes(std::span<const SceneGraph> scenes,
                                        const RefineConfig& cfg, const PredicateVocabulary& vocab,
                                        int threads) {
  std::vector<std::optional<RefineResult>> slots(scenes.size());
  parallel_for(static_cast<std::ptrdiff_t>(scenes.size()), threads, [&](std::ptrdiff_t i) {
    const auto s = static_cast<std::size_t>(i);
    slots[s] = refine_scene_graph(scenes[s], cfg, vocab);
  });
  std::vector<RefineResult> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::vector<RefineResult> refine_scenes_serial(std::span<const SceneGraph> scenes,
                                               const RefineConfig& cfg,
                                               const PredicateVocabulary& vocab) {
  std::vector<RefineResult> out;
  out.reserve(scenes.size());
  for (const auto& scene : scenes) out.push_back(refine_scene_graph(scene, cfg, vocab));
  return out;
}

std::vector<ImageEval> evaluate_images(std::span<const ImagePair> images, const EvalMode& mode,
                                       int threads) {
  mode.validate();
  std::vector<ImageEval> out(images.size());
  parallel_for(static_cast<std::ptrdiff_t>(images.size()), threads, [&](std::ptrdiff_t i) {
    const auto s = static_cast<std::size_t>(i);
    out[s] = evaluate_image(images[s], mode);
  });
  return out;
}

std::vector<ImageEval> evaluate_images_serial(std::span<const ImagePair> images,
                                              const EvalMode& mode) {
  mode.validate();
  std::vector<ImageEval> out;
  out.reserve(images.size());
  for (const auto& pair : images) out.push_back(evaluate_image(pair, mode));
  return out;
}

EvalReport mean_recall_at_k_parallel(std::span<const ImagePair> images, const EvalMode& mode,
                                     const PredicateVocabulary& vocab, int threads) {
  const std::vector<ImageEval> evals = evaluate_images(images, mode, threads);
  return aggregate_report(evals, mode, vocab);
}

}  // namespace geoscene
