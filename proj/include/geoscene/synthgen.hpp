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

#include <cstdint>
#include <string_view>

#include "geoscene/core_model.hpp"
#include "geoscene/geometry.hpp"

namespace geoscene {

/// SplitMix64 (Steele, Lea, Flood 2014; Vigna's reference constants).
/// Seed 1234567 yields 6457827717110365317, 3203168211198807973, ...
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Top 53 bits scaled to [0, 1).
  double next_double() noexcept;
  /// next() % bound; bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

enum class Layout { Grid, UniformRandom };

std::string_view to_string(Layout layout);
Layout parse_layout(std::string_view text);

struct SynthSpec {
  std::uint64_t seed = 1;
  int n_objects = 2;
  int width = 592;
  int height = 592;
  Layout layout = Layout::Grid;
  /// Probability that a true relation is missing from the model dump.
  double drop_rate = 0.0;

  void validate() const;
};

struct SynthScene {
  SceneGraph model_dump;
  SceneGraph ground_truth;
};

/// Grid geometry: 100 px square boxes on a 40 px pitch starting at (8, 8),
/// row-major with ceil(sqrt(n)) columns. Horizontal, vertical and diagonal
/// neighbours are near (40 and 56.6 px against a 70.7 px threshold); cells two
/// steps apart are far (>= 80 px).
inline constexpr double kGridMargin = 8.0;
inline constexpr double kGridPitch = 40.0;
inline constexpr double kGridBox = 100.0;

/// Deterministic scene with analytically known relations.
///
/// Draw order from SplitMix64(seed):
///   1. per object, in id order: Grid draws the label index; UniformRandom
///      draws w, h, x, y and then the label index (all integers via next_below);
///   2. per ground-truth triplet, in order: u_drop then u_score (next_double).
///      The triplet is kept iff u_drop >= drop_rate, with score
///      round(0.5 + 0.5 * u_score, 6 decimals).
/// Ground truth holds, for every ordered pair (i, j) in i-major order, the
/// proximity triplet then the direction triplet (omitted when the centroids
/// coincide), computed with naive::relations under default options.
/// Throws LayoutOverflow when the grid does not fit the canvas.
SynthScene generate_scene(const SynthSpec& spec, const PredicateVocabulary& vocab);

namespace naive {

/// Independent second implementation of the pair relations: direction from
/// sign and magnitude comparisons of the centroid offset, proximity from
/// squared lengths. Used to cross-check geometric_relations.
GeoParams relations(const BoundingBox& box_i, const BoundingBox& box_j,
                    const GeometryOptions& options = {});

}  // namespace naive

}  // namespace geoscene
