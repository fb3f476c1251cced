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

#include "geoscene/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "geoscene/refinement.hpp"

namespace geoscene {
namespace {

constexpr std::array<std::string_view, 10> kLabels = {
    "person", "car", "dog", "tree", "building", "chair", "table", "cup", "bike", "horse"};

double round6(double value) { return std::round(value * 1e6) / 1e6; }

std::string pick_label(SplitMix64& rng) {
  return std::string(kLabels[rng.next_below(kLabels.size())]);
}

std::vector<ObjectInstance> grid_layout(const SynthSpec& spec, SplitMix64& rng) {
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(spec.n_objects))));
  const int rows = (spec.n_objects + cols - 1) / cols;
  const double need_w = kGridMargin + (cols - 1) * kGridPitch + kGridBox;
  const double need_h = kGridMargin + (rows - 1) * kGridPitch + kGridBox;
  if (need_w > spec.width || need_h > spec.height) {
    throw Error(ErrorKind::LayoutOverflow,
                fmt::format("{} objects need a {}x{} canvas, have {}x{}", spec.n_objects, need_w,
                            need_h, spec.width, spec.height));
  }
  std::vector<ObjectInstance> objects;
  for (int i = 0; i < spec.n_objects; ++i) {
    const double x = kGridMargin + (i % cols) * kGridPitch;
    const double y = kGridMargin + (i / cols) * kGridPitch;
    objects.push_back({i, pick_label(rng), BoundingBox(x, y, x + kGridBox, y + kGridBox), 1.0});
  }
  return objects;
}

std::vector<ObjectInstance> random_layout(const SynthSpec& spec, SplitMix64& rng) {
  const auto max_w = static_cast<std::uint64_t>(std::max(1, spec.width / 4));
  const auto max_h = static_cast<std::uint64_t>(std::max(1, spec.height / 4));
  std::vector<ObjectInstance> objects;
  for (int i = 0; i < spec.n_objects; ++i) {
    const auto w = 1 + rng.next_below(max_w);
    const auto h = 1 + rng.next_below(max_h);
    const auto x = rng.next_below(static_cast<std::uint64_t>(spec.width) - w + 1);
    const auto y = rng.next_below(static_cast<std::uint64_t>(spec.height) - h + 1);
    const auto fx = static_cast<double>(x);
    const auto fy = static_cast<double>(y);
    objects.push_back({i, pick_label(rng),
                       BoundingBox(fx, fy, fx + static_cast<double>(w), fy + static_cast<double>(h)),
                       1.0});
  }
  return objects;
}

}  // namespace

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) noexcept { return next() % bound; }

std::string_view to_string(Layout layout) {
  return layout == Layout::Grid ? "grid" : "random";
}

Layout parse_layout(std::string_view text) {
  if (text == "grid") return Layout::Grid;
  if (text == "random" || text == "uniform") return Layout::UniformRandom;
  throw Error(ErrorKind::InvalidConfig, fmt::format("unknown layout '{}'", text));
}

void SynthSpec::validate() const {
  if (n_objects < 1) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("n_objects = {} must be >= 1", n_objects));
  }
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("canvas {}x{} not positive", width, height));
  }
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("drop_rate {} outside [0, 1]", drop_rate));
  }
}

SynthScene generate_scene(const SynthSpec& spec, const PredicateVocabulary& vocab) {
  spec.validate();
  const GeometricPredicates preds = GeometricPredicates::resolve(vocab);
  SplitMix64 rng(spec.seed);

  std::vector<ObjectInstance> objects =
      spec.layout == Layout::Grid ? grid_layout(spec, rng) : random_layout(spec, rng);

  std::vector<Triplet> truth;
  for (const auto& subject : objects) {
    for (const auto& object : objects) {
      if (subject.id == object.id) continue;
      const GeoParams params = naive::relations(subject.box, object.box);
      truth.push_back({subject.id, preds.of(params.proximity), object.id, 1.0});
      if (params.direction != Direction::None) {
        truth.push_back({subject.id, preds.of(params.direction), object.id, 1.0});
      }
    }
  }

  std::vector<Triplet> predicted;
  for (const auto& t : truth) {
    const double u_drop = rng.next_double();
    const double u_score = rng.next_double();
    if (u_drop < spec.drop_rate) continue;
    Triplet kept = t;
    kept.score = round6(0.5 + 0.5 * u_score);
    predicted.push_back(kept);
  }

  const std::string image_id = fmt::format("synth-{}", spec.seed);
  return {SceneGraph(image_id, spec.width, spec.height, objects, std::move(predicted)),
          SceneGraph(image_id, spec.width, spec.height, std::move(objects), std::move(truth))};
}

namespace naive {

GeoParams relations(const BoundingBox& box_i, const BoundingBox& box_j,
                    const GeometryOptions& options) {
  const double cx_i = (box_i.x_min() + box_i.x_max()) * 0.5;
  const double cy_i = (box_i.y_min() + box_i.y_max()) * 0.5;
  const double cx_j = (box_j.x_min() + box_j.x_max()) * 0.5;
  const double cy_j = (box_j.y_min() + box_j.y_max()) * 0.5;
  const double dx = cx_j - cx_i;
  const double dy = cy_j - cy_i;

  GeoParams out;
  out.distance = std::sqrt(dx * dx + dy * dy);

  if (dx == 0.0 && dy == 0.0) {
    out.direction = Direction::None;
  } else {
    double degrees = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
    if (degrees == -180.0) degrees = 180.0;
    out.angle = degrees;

    Direction sector;
    if (dx > 0.0 && dy > -dx && dy <= dx) {
      sector = Direction::Right;
    } else if (dy < 0.0 && dy < dx && dx <= -dy) {
      sector = Direction::Top;
    } else if (dy > 0.0 && -dy <= dx && dx < dy) {
      sector = Direction::Down;
    } else {
      sector = Direction::Left;
    }
    if (options.bucket_mode == BucketMode::PaperLiteral) {
      if (sector == Direction::Down) {
        sector = Direction::Left;
      } else if (sector == Direction::Left) {
        sector = Direction::Down;
      }
    }
    out.direction = sector;
  }

  const double wi = box_i.width(), hi = box_i.height();
  bool near;
  if (options.ref_box_mode == RefBoxMode::Subject) {
    near = 4.0 * (dx * dx + dy * dy) < wi * wi + hi * hi;
  } else {
    const double wj = box_j.width(), hj = box_j.height();
    near = 4.0 * out.distance < std::sqrt(wi * wi + hi * hi) + std::sqrt(wj * wj + hj * hj);
  }
  out.proximity = near ? Proximity::Near : Proximity::Far;
  return out;
}

}  // namespace naive
}  // namespace geoscene
