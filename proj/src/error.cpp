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

#include "geoscene/error.hpp"

#include <fmt/format.h>

namespace geoscene {
namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& image_id,
                    const std::string& json_path) {
  std::string out = fmt::format("{}: {}", to_string(kind), message);
  if (!image_id.empty()) out += fmt::format(" (image '{}')", image_id);
  if (!json_path.empty()) out += fmt::format(" at {}", json_path);
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBox: return "InvalidBox";
    case ErrorKind::DegenerateBox: return "DegenerateBox";
    case ErrorKind::InvalidScene: return "InvalidScene";
    case ErrorKind::UnknownPredicate: return "UnknownPredicate";
    case ErrorKind::CategoryConflict: return "CategoryConflict";
    case ErrorKind::MissingPredicate: return "MissingPredicate";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::CrossSceneMerge: return "CrossSceneMerge";
    case ErrorKind::ProtocolViolation: return "ProtocolViolation";
    case ErrorKind::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorKind::LayoutOverflow: return "LayoutOverflow";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message, std::string image_id,
             std::string json_path)
    : std::runtime_error(compose(kind, message, image_id, json_path)),
      kind_(kind),
      detail_(message),
      image_id_(std::move(image_id)),
      json_path_(std::move(json_path)) {}

Error Error::with_context(std::string image_id, std::string json_path) const {
  return Error(kind_, detail_, image_id_.empty() ? std::move(image_id) : image_id_,
               json_path_.empty() ? std::move(json_path) : json_path_);
}

}  // namespace geoscene
