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

#include "geoscene/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace geoscene {
namespace {

bool valid_coordinate(double v) { return std::isfinite(v) && v >= 0.0; }

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

BoundingBox::BoundingBox(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!valid_coordinate(x_min) || !valid_coordinate(y_min) || !valid_coordinate(x_max) ||
      !valid_coordinate(y_max)) {
    throw Error(ErrorKind::InvalidBox,
                fmt::format("box ({}, {}, {}, {}) has a negative or non-finite coordinate", x_min,
                            y_min, x_max, y_max));
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw Error(ErrorKind::DegenerateBox,
                fmt::format("box ({}, {}, {}, {}) has zero or negative extent", x_min, y_min,
                            x_max, y_max));
  }
}

BoundingBox BoundingBox::from_xywh(double x, double y, double w, double h) {
  if (!(w > 0.0) || !(h > 0.0)) {
    throw Error(ErrorKind::DegenerateBox,
                fmt::format("box [x={}, y={}, w={}, h={}] is degenerate", x, y, w, h));
  }
  return BoundingBox(x, y, x + w, y + h);
}

BoundingBox BoundingBox::translated(double dx, double dy) const {
  return BoundingBox(x_min_ + dx, y_min_ + dy, x_max_ + dx, y_max_ + dy);
}

BoundingBox BoundingBox::scaled(double factor) const {
  return BoundingBox(x_min_ * factor, y_min_ * factor, x_max_ * factor, y_max_ * factor);
}

std::string_view to_string(RelationCategory category) {
  switch (category) {
    case RelationCategory::Geometric: return "geometric";
    case RelationCategory::Possessive: return "possessive";
    case RelationCategory::Semantic: return "semantic";
    case RelationCategory::Misc: return "misc";
  }
  return "misc";
}

RelationCategory parse_category(std::string_view text) {
  const std::string key = lowercase(text);
  if (key == "geometric") return RelationCategory::Geometric;
  if (key == "possessive") return RelationCategory::Possessive;
  if (key == "semantic") return RelationCategory::Semantic;
  if (key == "misc" || key == "misc.") return RelationCategory::Misc;
  throw Error(ErrorKind::SchemaError, fmt::format("unknown relation category '{}'", text));
}

std::string_view to_string(TripletSource source) {
  return source == TripletSource::Model ? "model" : "geometric";
}

bool ranks_before(const Triplet& a, const Triplet& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.source != b.source) return a.source == TripletSource::Model;
  return std::tuple(a.subject_id, a.object_id, to_index(a.predicate)) <
         std::tuple(b.subject_id, b.object_id, to_index(b.predicate));
}

void sort_by_rank(std::vector<Triplet>& triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), ranks_before);
}

SceneGraph::SceneGraph(std::string image_id, int width, int height,
                       std::vector<ObjectInstance> objects, std::vector<Triplet> triplets)
    : image_id_(std::move(image_id)),
      width_(width),
      height_(height),
      objects_(std::move(objects)),
      triplets_(std::move(triplets)) {
  if (width_ <= 0 || height_ <= 0) {
    throw Error(ErrorKind::InvalidScene,
                fmt::format("image size {}x{} is not positive", width_, height_), image_id_);
  }
  std::set<int> ids;
  for (const auto& object : objects_) {
    if (!ids.insert(object.id).second) {
      throw Error(ErrorKind::InvalidScene, fmt::format("duplicate object id {}", object.id),
                  image_id_);
    }
    if (!(object.score >= 0.0 && object.score <= 1.0)) {
      throw Error(ErrorKind::InvalidScene,
                  fmt::format("object {} score {} outside [0, 1]", object.id, object.score),
                  image_id_);
    }
  }
  for (const auto& t : triplets_) {
    if (!ids.contains(t.subject_id) || !ids.contains(t.object_id)) {
      throw Error(ErrorKind::InvalidScene,
                  fmt::format("triplet ({}, {}) references a missing object", t.subject_id,
                              t.object_id),
                  image_id_);
    }
    if (t.subject_id == t.object_id) {
      throw Error(ErrorKind::InvalidScene,
                  fmt::format("triplet relates object {} to itself", t.subject_id), image_id_);
    }
    if (!(t.score >= 0.0 && t.score <= 1.0)) {
      throw Error(ErrorKind::InvalidScene,
                  fmt::format("triplet score {} outside [0, 1]", t.score), image_id_);
    }
  }
}

const ObjectInstance* SceneGraph::find_object(int id) const noexcept {
  for (const auto& object : objects_) {
    if (object.id == id) return &object;
  }
  return nullptr;
}

std::vector<int> SceneGraph::object_ids() const {
  std::vector<int> ids;
  ids.reserve(objects_.size());
  for (const auto& object : objects_) ids.push_back(object.id);
  return ids;
}

SceneGraph SceneGraph::with_triplets(std::vector<Triplet> triplets) const {
  return SceneGraph(image_id_, width_, height_, objects_, std::move(triplets));
}

PredicateVocabulary::PredicateVocabulary(std::vector<PredicateEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.name.empty()) {
      throw Error(ErrorKind::SchemaError, fmt::format("predicate {} has an empty name", i));
    }
    auto claim = [&](const std::string& key) {
      if (!lookup_.emplace(key, predicate_at(i)).second) {
        throw Error(ErrorKind::SchemaError,
                    fmt::format("predicate name or alias '{}' is not unique", key));
      }
    };
    claim(e.name);
    for (const auto& alias : e.aliases) claim(alias);
  }
}

PredicateVocabulary PredicateVocabulary::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, fmt::format("vocabulary is not valid JSON: {}", e.what()));
  }
  if (!doc.is_array()) throw Error(ErrorKind::SchemaError, "vocabulary must be a JSON array", {}, "");
  std::vector<PredicateEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = fmt::format("/{}", i);
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      throw Error(ErrorKind::SchemaError, "entry needs a string 'name'", {}, where);
    }
    if (!item.contains("category") || !item["category"].is_string()) {
      throw Error(ErrorKind::SchemaError, "entry needs a string 'category'", {},
                  where + "/category");
    }
    PredicateEntry entry;
    entry.name = item["name"].get<std::string>();
    try {
      entry.category = parse_category(item["category"].get<std::string>());
    } catch (const Error& e) {
      throw e.with_context({}, where + "/category");
    }
    if (item.contains("aliases")) {
      const auto& aliases = item["aliases"];
      if (!aliases.is_array()) {
        throw Error(ErrorKind::SchemaError, "'aliases' must be an array", {}, where + "/aliases");
      }
      for (std::size_t a = 0; a < aliases.size(); ++a) {
        if (!aliases[a].is_string()) {
          throw Error(ErrorKind::SchemaError, "alias must be a string", {},
                      fmt::format("{}/aliases/{}", where, a));
        }
        entry.aliases.push_back(aliases[a].get<std::string>());
      }
    }
    entries.push_back(std::move(entry));
  }
  return PredicateVocabulary(std::move(entries));
}

PredicateVocabulary PredicateVocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::IoError,
                fmt::format("cannot open vocabulary file '{}'", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::string PredicateVocabulary::to_json() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    doc.push_back({{"name", e.name}, {"category", to_string(e.category)}, {"aliases", e.aliases}});
  }
  return doc.dump(2);
}

const PredicateEntry& PredicateVocabulary::entry(PredicateId id) const {
  if (!contains(id)) {
    throw Error(ErrorKind::UnknownPredicate,
                fmt::format("predicate index {} outside vocabulary of {}", to_index(id),
                            entries_.size()));
  }
  return entries_[to_index(id)];
}

std::optional<PredicateId> PredicateVocabulary::find(std::string_view name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

PredicateId PredicateVocabulary::resolve(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorKind::UnknownPredicate, fmt::format("unknown predicate '{}'", name));
}

RelationCategory categorize_predicate(std::string_view name, const PredicateVocabulary& vocab) {
  return vocab.category(vocab.resolve(name));
}

PredicateVocabulary extend_vocabulary(const PredicateVocabulary& vocab,
                                      std::span<const PredicateEntry> additions) {
  std::vector<PredicateEntry> entries = vocab.entries();
  for (const auto& addition : additions) {
    // Re-index after every append so duplicates inside `additions` collapse too.
    PredicateVocabulary current(entries);
    std::optional<PredicateId> existing = current.find(addition.name);
    for (std::size_t a = 0; !existing && a < addition.aliases.size(); ++a) {
      existing = current.find(addition.aliases[a]);
    }
    if (existing) {
      if (current.category(*existing) != addition.category) {
        throw Error(ErrorKind::CategoryConflict,
                    fmt::format("'{}' is already {} but was added as {}", addition.name,
                                to_string(current.category(*existing)),
                                to_string(addition.category)));
      }
      continue;
    }
    PredicateEntry fresh = addition;
    std::erase_if(fresh.aliases,
                  [&](const std::string& alias) { return current.find(alias).has_value(); });
    entries.push_back(std::move(fresh));
  }
  return PredicateVocabulary(std::move(entries));
}

std::vector<PredicateEntry> geometric_additions() {
  using enum RelationCategory;
  return {
      {"near", Geometric, {}},  {"far", Geometric, {}},   {"above", Geometric, {"top"}},
      {"under", Geometric, {"down"}}, {"left", Geometric, {}}, {"right", Geometric, {}},
  };
}

PredicateVocabulary with_geometric_extension(const PredicateVocabulary& vocab) {
  const auto additions = geometric_additions();
  PredicateVocabulary extended = extend_vocabulary(vocab, additions);
  std::vector<PredicateEntry> entries = extended.entries();
  for (const auto& addition : additions) {
    const PredicateId target = extended.resolve(addition.name);
    for (const auto& alias : addition.aliases) {
      if (!extended.find(alias)) entries[to_index(target)].aliases.push_back(alias);
    }
  }
  return PredicateVocabulary(std::move(entries));
}

const PredicateVocabulary& default_vocabulary() {
  static const PredicateVocabulary vocab = PredicateVocabulary::from_json(default_vocabulary_json());
  return vocab;
}

}  // namespace geoscene
