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

#include <stdexcept>
#include <string>
#include <string_view>

namespace geoscene {

enum class ErrorKind {
  InvalidBox,
  DegenerateBox,
  InvalidScene,
  UnknownPredicate,
  CategoryConflict,
  MissingPredicate,
  OutOfRange,
  InvalidConfig,
  CrossSceneMerge,
  ProtocolViolation,
  EmptyGroundTruth,
  LayoutOverflow,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. Carries the offending image and JSON pointer when
/// the failure can be traced back to an input record.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string image_id = {},
        std::string json_path = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& image_id() const noexcept { return image_id_; }
  const std::string& json_path() const noexcept { return json_path_; }

  /// Copy of this error with image/path context filled in where still empty.
  Error with_context(std::string image_id, std::string json_path) const;

 private:
  ErrorKind kind_;
  std::string detail_;
  std::string image_id_;
  std::string json_path_;
};

}  // namespace geoscene
