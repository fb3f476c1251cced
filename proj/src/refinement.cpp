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

#include "geoscene/refinement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include <fmt/format.h>

namespace geoscene {
namespace {

using PairKey = std::pair<int, int>;
using TripletKey = std::tuple<int, PredicateId, int>;

TripletKey key_of(const Triplet& t) { return {t.subject_id, t.predicate, t.object_id}; }

void check_fraction(double value, const char* name, bool allow_zero) {
  const bool ok = allow_zero ? (value >= 0.0 && value <= 1.0) : (value > 0.0 && value <= 1.0);
  if (!ok) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("{} = {} outside {}0, 1]", name, value, allow_zero ? "[" : "("));
  }
}

struct PairSlots {
  std::vector<const Triplet*> model;
  std::vector<const Triplet*> geo;
};

}  // namespace

void RefineConfig::validate() const {
  check_fraction(geo_score_factor, "geo_score_factor", false);
  check_fraction(tau_replace, "tau_replace", true);
  check_fraction(tau_keep, "tau_keep", true);
  if (tau_replace > tau_keep) {
    throw Error(ErrorKind::InvalidConfig,
                fmt::format("tau_replace {} exceeds tau_keep {}", tau_replace, tau_keep));
  }
}

GeometricPredicates GeometricPredicates::resolve(const PredicateVocabulary& vocab) {
  auto need = [&](std::string_view name) {
    if (auto id = vocab.find(name)) return *id;
    throw Error(ErrorKind::MissingPredicate,
                fmt::format("vocabulary lacks geometric predicate '{}'", name));
  };
  return {need("near"), need("far"), need("above"), need("under"), need("left"), need("right")};
}

PredicateId GeometricPredicates::of(Direction direction) const {
  switch (direction) {
    case Direction::Right: return right;
    case Direction::Top: return above;
    case Direction::Left: return left;
    case Direction::Down: return under;
    case Direction::None: break;
  }
  throw Error(ErrorKind::OutOfRange, "no predicate for an undefined direction");
}

PredicateId GeometricPredicates::of(Proximity proximity) const {
  return proximity == Proximity::Near ? near : far;
}

MergeStats& MergeStats::operator+=(const MergeStats& other) {
  added += other.added;
  replaced += other.replaced;
  suppressed += other.suppressed;
  return *this;
}

double geometric_score(const SceneGraph& scene, const RefineConfig& cfg) {
  double lowest = 1.0;
  bool any_model = false;
  for (const auto& t : scene.triplets()) {
    if (t.source != TripletSource::Model) continue;
    lowest = any_model ? std::min(lowest, t.score) : t.score;
    any_model = true;
  }
  return cfg.geo_score_factor * (any_model ? lowest : 0.5);
}

std::vector<Triplet> compute_geo_triplets(const SceneGraph& scene, const RefineConfig& cfg,
                                          const PredicateVocabulary& vocab) {
  cfg.validate();
  const GeometricPredicates preds = GeometricPredicates::resolve(vocab);
  const double score = geometric_score(scene, cfg);
  const GeometryOptions options = cfg.geometry();
  const auto& objects = scene.objects();

  std::vector<Triplet> out;
  out.reserve(objects.size() * (objects.size() > 0 ? objects.size() - 1 : 0) * 2);
  for (const auto& subject : objects) {
    for (const auto& object : objects) {
      if (subject.id == object.id) continue;
      const GeoParams params = geometric_relations(subject.box, object.box, options);
      if (cfg.emit_proximity) {
        out.push_back({subject.id, preds.of(params.proximity), object.id, score,
                       TripletSource::Geometric});
      }
      if (cfg.emit_direction && params.direction != Direction::None) {
        out.push_back({subject.id, preds.of(params.direction), object.id, score,
                       TripletSource::Geometric});
      }
    }
  }
  return out;
}

MergeResult merge_triplets(std::span<const Triplet> model, std::span<const Triplet> geo,
                           const RefineConfig& cfg, const PredicateVocabulary& vocab,
                           std::span<const int> object_ids) {
  cfg.validate();
  const GeometricPredicates preds = GeometricPredicates::resolve(vocab);
  const std::set<int> ids(object_ids.begin(), object_ids.end());

  std::map<PairKey, PairSlots> pairs;
  auto enroll = [&](const Triplet& t, bool is_model) {
    if (!ids.contains(t.subject_id) || !ids.contains(t.object_id)) {
      throw Error(ErrorKind::CrossSceneMerge,
                  fmt::format("triplet ({}, {}) references an object outside the scene",
                              t.subject_id, t.object_id));
    }
    auto& slots = pairs[{t.subject_id, t.object_id}];
    (is_model ? slots.model : slots.geo).push_back(&t);
  };
  for (const auto& t : model) enroll(t, true);
  for (const auto& t : geo) enroll(t, false);

  MergeResult result;
  std::set<TripletKey> present;
  auto emit = [&](const Triplet& t) {
    result.triplets.push_back(t);
    present.insert(key_of(t));
  };

  for (const auto& [pair, slots] : pairs) {
    const Triplet* computed_proximity = nullptr;
    const Triplet* computed_direction = nullptr;
    for (const Triplet* g : slots.geo) {
      if (preds.is_proximity(g->predicate)) computed_proximity = g;
      if (preds.is_direction(g->predicate)) computed_direction = g;
    }

    bool suppress = false;
    std::vector<const Triplet*> replacements;
    for (const Triplet* m : slots.model) {
      if (vocab.category(m->predicate) != RelationCategory::Geometric) {
        if (m->score >= cfg.tau_keep) suppress = true;
        emit(*m);
        continue;
      }
      const Triplet* computed = nullptr;
      if (preds.is_proximity(m->predicate)) computed = computed_proximity;
      if (preds.is_direction(m->predicate)) computed = computed_direction;
      const bool conflict = computed != nullptr && computed->predicate != m->predicate;
      if (conflict && m->score < cfg.tau_replace) {
        replacements.push_back(computed);
        ++result.stats.replaced;
      } else {
        emit(*m);
      }
    }

    for (const Triplet* r : replacements) {
      if (!present.contains(key_of(*r))) emit(*r);
    }

    for (const Triplet* g : slots.geo) {
      if (present.contains(key_of(*g))) continue;
      if (!slots.model.empty() && suppress) {
        ++result.stats.suppressed;
        continue;
      }
      emit(*g);
      ++result.stats.added;
    }
  }

  sort_by_rank(result.triplets);
  return result;
}

RefineResult refine_scene_graph(const SceneGraph& scene, const RefineConfig& cfg,
                                const PredicateVocabulary& vocab) {
  const std::vector<Triplet> geo = compute_geo_triplets(scene, cfg, vocab);
  const std::vector<int> ids = scene.object_ids();
  MergeResult merged = merge_triplets(scene.triplets(), geo, cfg, vocab, ids);
  return {scene.with_triplets(std::move(merged.triplets)), merged.stats};
}

}  // namespace geoscene
