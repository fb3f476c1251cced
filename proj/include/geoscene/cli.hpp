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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "geoscene/metrics.hpp"
#include "geoscene/refinement.hpp"
#include "geoscene/synthgen.hpp"

namespace geoscene::cli {

/// Process exit codes. Input covers unreadable files, schema violations and
/// bad flag values.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

struct RefineArgs {
  std::filesystem::path dump;
  std::filesystem::path vocab;
  std::filesystem::path out;
  RefineConfig config;
  int threads = 0;
};

struct EvalArgs {
  std::filesystem::path pred;
  std::filesystem::path gt;
  std::optional<std::filesystem::path> vocab;
  Task task = Task::PredCls;
  std::vector<int> ks = {50, 100};
  bool constrained = true;
  double iou_threshold = 0.5;
  Aggregation aggregation = Aggregation::ImageMean;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> csv;
  int threads = 0;
};

struct SynthArgs {
  SynthSpec spec;
  int images = 1;
  std::filesystem::path out_pred;
  std::filesystem::path out_gt;
};

struct DotArgs {
  std::filesystem::path dump;
  std::optional<std::filesystem::path> gt;
  std::optional<std::filesystem::path> vocab;
  std::optional<std::string> image;
  std::filesystem::path out;
};

struct TaxonomyArgs {
  std::optional<std::filesystem::path> vocab;
  std::optional<std::filesystem::path> gt;
  bool extend = false;
};

int cmd_refine(const RefineArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);
int cmd_dot(const DotArgs& args, std::ostream& out, std::ostream& err);
int cmd_taxonomy(const TaxonomyArgs& args, std::ostream& out, std::ostream& err);

/// Parses `argv` (argv[0] is the program name) and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoscene::cli
