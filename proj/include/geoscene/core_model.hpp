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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geoscene/error.hpp"

namespace geoscene {

/// Image-space point, pixels. y grows downward.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned pixel rectangle in corner form. Construction enforces finite,
/// non-negative coordinates and strictly positive extent.
class BoundingBox {
 public:
  BoundingBox(double x_min, double y_min, double x_max, double y_max);

  /// Converts the (x, y, w, h) annotation form. Throws DegenerateBox when w or h <= 0.
  static BoundingBox from_xywh(double x, double y, double w, double h);

  double x_min() const noexcept { return x_min_; }
  double y_min() const noexcept { return y_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_max() const noexcept { return y_max_; }
  double width() const noexcept { return x_max_ - x_min_; }
  double height() const noexcept { return y_max_ - y_min_; }
  double area() const noexcept { return width() * height(); }

  BoundingBox translated(double dx, double dy) const;
  BoundingBox scaled(double factor) const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x_min_;
  double y_min_;
  double x_max_;
  double y_max_;
};

/// Index into a PredicateVocabulary. Stable across vocabulary extension.
enum class PredicateId : std::uint32_t {};

constexpr std::size_t to_index(PredicateId id) noexcept { return static_cast<std::size_t>(id); }
constexpr PredicateId predicate_at(std::size_t index) noexcept {
  return static_cast<PredicateId>(index);
}

enum class RelationCategory { Geometric, Possessive, Semantic, Misc };

std::string_view to_string(RelationCategory category);
RelationCategory parse_category(std::string_view text);

enum class TripletSource { Model, Geometric };

std::string_view to_string(TripletSource source);

struct ObjectInstance {
  int id = 0;
  std::string label;
  BoundingBox box;
  double score = 1.0;

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct Triplet {
  int subject_id = 0;
  PredicateId predicate{};
  int object_id = 0;
  double score = 1.0;
  TripletSource source = TripletSource::Model;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Ranking order: score descending, model before geometric on equal score,
/// then (subject_id, object_id, predicate) ascending.
bool ranks_before(const Triplet& a, const Triplet& b);
void sort_by_rank(std::vector<Triplet>& triplets);

/// Objects plus scored relations for one image. Validated on construction:
/// unique object ids, triplets reference existing objects, no self relations,
/// scores in [0, 1].
class SceneGraph {
 public:
  SceneGraph(std::string image_id, int width, int height, std::vector<ObjectInstance> objects,
             std::vector<Triplet> triplets);

  const std::string& image_id() const noexcept { return image_id_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const std::vector<ObjectInstance>& objects() const noexcept { return objects_; }
  const std::vector<Triplet>& triplets() const noexcept { return triplets_; }

  const ObjectInstance* find_object(int id) const noexcept;
  std::vector<int> object_ids() const;

  SceneGraph with_triplets(std::vector<Triplet> triplets) const;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;

 private:
  std::string image_id_;
  int width_;
  int height_;
  std::vector<ObjectInstance> objects_;
  std::vector<Triplet> triplets_;
};

struct PredicateEntry {
  std::string name;
  RelationCategory category = RelationCategory::Misc;
  std::vector<std::string> aliases;

  friend bool operator==(const PredicateEntry&, const PredicateEntry&) = default;
};

/// Ordered predicate list with a relation-type taxonomy. The index of an entry
/// is its position, so appending never renumbers existing predicates.
class PredicateVocabulary {
 public:
  PredicateVocabulary() = default;
  explicit PredicateVocabulary(std::vector<PredicateEntry> entries);

  /// Parses the vocabulary file format: JSON array of {name, category, aliases[]}.
  static PredicateVocabulary from_json(std::string_view text);
  static PredicateVocabulary load(const std::filesystem::path& path);
  std::string to_json() const;

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<PredicateEntry>& entries() const noexcept { return entries_; }
  const PredicateEntry& entry(PredicateId id) const;
  const std::string& name(PredicateId id) const { return entry(id).name; }
  RelationCategory category(PredicateId id) const { return entry(id).category; }
  bool contains(PredicateId id) const noexcept { return to_index(id) < entries_.size(); }

  /// Resolves a name or alias.
  std::optional<PredicateId> find(std::string_view name) const;
  /// As find(), but throws UnknownPredicate.
  PredicateId resolve(std::string_view name) const;

  friend bool operator==(const PredicateVocabulary& a, const PredicateVocabulary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<PredicateEntry> entries_;
  std::map<std::string, PredicateId, std::less<>> lookup_;
};

RelationCategory categorize_predicate(std::string_view name, const PredicateVocabulary& vocab);

/// Appends predicates not already present (by name or alias). Existing indices
/// are preserved. Aliases of an addition are attached only when the addition is new.
PredicateVocabulary extend_vocabulary(const PredicateVocabulary& vocab,
                                      std::span<const PredicateEntry> additions);

/// near, far, above (alias top), under (alias down), left, right.
std::vector<PredicateEntry> geometric_additions();

/// extend_vocabulary with geometric_additions(), then attaches the top->above
/// and down->under aliases if those names are still free.
PredicateVocabulary with_geometric_extension(const PredicateVocabulary& vocab);

/// The 50-predicate Visual Genome vocabulary shipped in data/vg_predicates.json.
const PredicateVocabulary& default_vocabulary();
std::string_view default_vocabulary_json();

}  // namespace geoscene
