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

#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoscene/core_model.hpp"

namespace geoscene {

/// Ground truth and predictions share one schema:
///
///   {"images":[{"image_id":str,"width":int,"height":int,
///               "detections":[{"label":str,"score":float,"box":[x,y,w,h]}],
///               "triplets":[{"s":int,"p":str,"o":int,"score":float}]}]}
///
/// Object ids are detection indices. Triplets may carry "source"
/// ("model" | "geometric", default "model"). In ground truth every score is
/// optional and defaults to 1.0; in predictions the triplet score is required.
enum class DumpKind { Predictions, GroundTruth };

/// Parses images one at a time and hands each to `sink` in file order; the
/// document is never held in memory as a whole. Errors carry the image id and
/// the JSON pointer of the offending record.
void stream_scene_dump(std::istream& in, const PredicateVocabulary& vocab, DumpKind kind,
                       const std::function<void(SceneGraph)>& sink);

std::vector<SceneGraph> parse_scene_dump(std::string_view text, const PredicateVocabulary& vocab,
                                         DumpKind kind);

std::vector<SceneGraph> load_scene_dump(const std::filesystem::path& path,
                                        const PredicateVocabulary& vocab);
std::vector<SceneGraph> load_ground_truth(const std::filesystem::path& path,
                                          const PredicateVocabulary& vocab);

/// Byte-stable rendering: compact, keys sorted, floats with 6 decimals.
std::string serialize_scenes(std::span<const SceneGraph> scenes, const PredicateVocabulary& vocab);

/// serialize_scenes plus a trailing newline. Throws IoError.
void write_refined(std::span<const SceneGraph> scenes, const PredicateVocabulary& vocab,
                   const std::filesystem::path& path);

/// Graphviz digraph of one scene. With `gt`, predicted objects and relations
/// that match ground truth are green and ground truth the scene missed is red.
std::string export_dot(const SceneGraph& scene, const PredicateVocabulary& vocab,
                       const SceneGraph* gt = nullptr);

}  // namespace geoscene
