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

#include "geoscene/geometry.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace geoscene {

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::Right: return "right";
    case Direction::Top: return "top";
    case Direction::Left: return "left";
    case Direction::Down: return "down";
    case Direction::None: return "none";
  }
  return "none";
}

std::string_view to_string(Proximity proximity) {
  return proximity == Proximity::Near ? "near" : "far";
}

std::string_view to_string(BucketMode mode) {
  return mode == BucketMode::Corrected ? "corrected" : "paper-literal";
}

std::string_view to_string(RefBoxMode mode) {
  return mode == RefBoxMode::Subject ? "subject" : "mean";
}

Direction opposite(Direction direction) {
  switch (direction) {
    case Direction::Right: return Direction::Left;
    case Direction::Left: return Direction::Right;
    case Direction::Top: return Direction::Down;
    case Direction::Down: return Direction::Top;
    case Direction::None: return Direction::None;
  }
  return Direction::None;
}

Point centroid(const BoundingBox& box) {
  return {(box.x_min() + box.x_max()) / 2.0, (box.y_min() + box.y_max()) / 2.0};
}

double l2_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::optional<double> direction_angle(Point from, Point to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) return std::nullopt;

  // Bucket boundaries sit on multiples of 45°, where atan2 followed by a
  // radian-to-degree product can land one ulp on the wrong side.
  if (dy == 0.0) return dx > 0.0 ? 0.0 : 180.0;
  if (dx == 0.0) return dy > 0.0 ? 90.0 : -90.0;
  if (std::abs(dx) == std::abs(dy)) {
    if (dx > 0.0) return dy > 0.0 ? 45.0 : -45.0;
    return dy > 0.0 ? 135.0 : -135.0;
  }

  double degrees = std::atan2(dy, dx) * (180.0 / std::numbers::pi);
  if (degrees <= -180.0) degrees = 180.0;
  return degrees;
}

Direction classify_direction(std::optional<double> theta, BucketMode mode) {
  if (!theta) return Direction::None;
  const double t = *theta;
  if (!(t > -180.0 && t <= 180.0)) {
    throw Error(ErrorKind::OutOfRange, fmt::format("angle {} outside (-180, 180]", t));
  }
  if (t > -45.0 && t <= 45.0) return Direction::Right;
  if (t > -135.0 && t <= -45.0) return Direction::Top;
  if (t > 45.0 && t <= 135.0) {
    return mode == BucketMode::Corrected ? Direction::Down : Direction::Left;
  }
  return mode == BucketMode::Corrected ? Direction::Left : Direction::Down;
}

// Both sides of the near/far test go through a correctly rounded sqrt of an
// exact sum of squares on pixel grids, so L == threshold ties compare equal.
double proximity_threshold(const BoundingBox& box) {
  const double w = box.width();
  const double h = box.height();
  return std::sqrt(w * w + h * h) / 2.0;
}

Proximity classify_proximity(double distance, double threshold) {
  if (!(distance >= 0.0)) {
    throw Error(ErrorKind::OutOfRange, fmt::format("distance {} is negative", distance));
  }
  return distance < threshold ? Proximity::Near : Proximity::Far;
}

Proximity classify_proximity(double distance, const BoundingBox& ref_box) {
  return classify_proximity(distance, proximity_threshold(ref_box));
}

GeoParams geometric_relations(const BoundingBox& box_i, const BoundingBox& box_j,
                              const GeometryOptions& options) {
  const Point c_i = centroid(box_i);
  const Point c_j = centroid(box_j);

  GeoParams params;
  params.distance = l2_distance(c_i, c_j);
  params.angle = direction_angle(c_i, c_j);
  params.direction = classify_direction(params.angle, options.bucket_mode);

  const double threshold =
      options.ref_box_mode == RefBoxMode::Subject
          ? proximity_threshold(box_i)
          : (proximity_threshold(box_i) + proximity_threshold(box_j)) / 2.0;
  params.proximity = classify_proximity(params.distance, threshold);
  return params;
}

}  // namespace geoscene
