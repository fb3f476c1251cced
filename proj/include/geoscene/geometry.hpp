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

#include <optional>
#include <string_view>

#include "geoscene/core_model.hpp"

namespace geoscene {

enum class Direction { Right, Top, Left, Down, None };
enum class Proximity { Near, Far };

/// Corrected: 45 < θ <= 135 is Down, |θ| > 135 is Left (consistent with y-down
/// image coordinates). PaperLiteral swaps those two buckets.
enum class BucketMode { Corrected, PaperLiteral };

/// Which box supplies the near/far diagonal threshold.
enum class RefBoxMode { Subject, Mean };

std::string_view to_string(Direction direction);
std::string_view to_string(Proximity proximity);
std::string_view to_string(BucketMode mode);
std::string_view to_string(RefBoxMode mode);

/// 180° rotation of a direction; None maps to None.
Direction opposite(Direction direction);

struct GeometryOptions {
  BucketMode bucket_mode = BucketMode::Corrected;
  RefBoxMode ref_box_mode = RefBoxMode::Subject;
};

/// Geometric parameters of the ordered pair (i -> j).
struct GeoParams {
  double distance = 0.0;
  std::optional<double> angle;  // degrees in (-180, 180]; empty when centroids coincide
  Direction direction = Direction::None;
  Proximity proximity = Proximity::Near;

  friend bool operator==(const GeoParams&, const GeoParams&) = default;
};

Point centroid(const BoundingBox& box);

double l2_distance(Point a, Point b);

/// Angle of the vector from `from` to `to` in image coordinates, degrees,
/// normalized to (-180, 180]. Axis-aligned and exact-diagonal offsets return
/// exact multiples of 45.
std::optional<double> direction_angle(Point from, Point to);

/// Half-open interval bucketing of θ. Throws OutOfRange outside (-180, 180].
Direction classify_direction(std::optional<double> theta,
                             BucketMode mode = BucketMode::Corrected);

/// Half the box diagonal.
double proximity_threshold(const BoundingBox& box);

Proximity classify_proximity(double distance, double threshold);
Proximity classify_proximity(double distance, const BoundingBox& ref_box);

GeoParams geometric_relations(const BoundingBox& box_i, const BoundingBox& box_j,
                              const GeometryOptions& options = {});

}  // namespace geoscene
