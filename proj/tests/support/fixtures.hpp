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
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geoscene/core_model.hpp"

namespace geoscene::testing {

/// Default Visual Genome vocabulary plus the six geometric predicates.
inline const PredicateVocabulary& vocab() {
  static const PredicateVocabulary extended = with_geometric_extension(default_vocabulary());
  return extended;
}

inline PredicateId pid(std::string_view name) { return vocab().resolve(name); }

inline ObjectInstance object(int id, std::string label, double x0, double y0, double x1,
                             double y1) {
  return {id, std::move(label), BoundingBox(x0, y0, x1, y1), 1.0};
}

inline Triplet triplet(int s, std::string_view p, int o, double score = 1.0,
                       TripletSource source = TripletSource::Model) {
  return {s, pid(p), o, score, source};
}

inline SceneGraph scene(std::vector<ObjectInstance> objects, std::vector<Triplet> triplets = {},
                        std::string id = "img") {
  return SceneGraph(std::move(id), 640, 480, std::move(objects), std::move(triplets));
}

inline std::filesystem::path source_path(std::string_view relative) {
  return std::filesystem::path(GEOSCENE_SOURCE_DIR) / relative;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::filesystem::path temp_path(std::string_view name) {
  auto dir = std::filesystem::temp_directory_path() / "geoscene_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace geoscene::testing
