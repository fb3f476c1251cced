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

#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "geoscene/metrics.hpp"
#include "geoscene/vg_io.hpp"

namespace geoscene {
namespace {

constexpr double kNodeMatchIou = 0.5;

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

// Greedy one-to-one gt object -> predicted object assignment: same label, IoU >= 0.5.
std::map<int, int> match_objects(const SceneGraph& scene, const SceneGraph& gt) {
  std::map<int, int> gt_to_pred;
  std::set<int> taken;
  for (const auto& g : gt.objects()) {
    for (const auto& p : scene.objects()) {
      if (taken.contains(p.id) || p.label != g.label) continue;
      if (iou(p.box, g.box) >= kNodeMatchIou) {
        gt_to_pred[g.id] = p.id;
        taken.insert(p.id);
        break;
      }
    }
  }
  return gt_to_pred;
}

}  // namespace

std::string export_dot(const SceneGraph& scene, const PredicateVocabulary& vocab,
                       const SceneGraph* gt) {
  std::map<int, int> gt_to_pred;
  std::set<int> matched_nodes;
  std::set<std::tuple<int, PredicateId, int>> gt_edges;
  if (gt) {
    gt_to_pred = match_objects(scene, *gt);
    for (const auto& [g, p] : gt_to_pred) matched_nodes.insert(p);
    for (const auto& t : gt->triplets()) {
      auto s = gt_to_pred.find(t.subject_id);
      auto o = gt_to_pred.find(t.object_id);
      if (s != gt_to_pred.end() && o != gt_to_pred.end()) {
        gt_edges.emplace(s->second, t.predicate, o->second);
      }
    }
  }

  std::string out = fmt::format("digraph \"{}\" {{\n", escape(scene.image_id()));
  out += "  node [shape=box];\n";
  for (const auto& o : scene.objects()) {
    out += fmt::format("  n{} [label=\"{}\"{}];\n", o.id, escape(o.label),
                       matched_nodes.contains(o.id) ? ", color=green" : "");
  }
  if (gt) {
    for (const auto& o : gt->objects()) {
      if (gt_to_pred.contains(o.id)) continue;
      out += fmt::format("  gt{} [label=\"{}\", color=red];\n", o.id, escape(o.label));
    }
  }

  std::set<std::tuple<int, PredicateId, int>> drawn_matches;
  for (const auto& t : scene.triplets()) {
    const auto key = std::tuple(t.subject_id, t.predicate, t.object_id);
    const bool matched = gt_edges.contains(key);
    if (matched) drawn_matches.insert(key);
    out += fmt::format("  n{} -> n{} [label=\"{}\"{}];\n", t.subject_id, t.object_id,
                       escape(vocab.name(t.predicate)), matched ? ", color=green" : "");
  }
  if (gt) {
    auto node = [&](int gt_id) {
      auto it = gt_to_pred.find(gt_id);
      return it != gt_to_pred.end() ? fmt::format("n{}", it->second) : fmt::format("gt{}", gt_id);
    };
    for (const auto& t : gt->triplets()) {
      auto s = gt_to_pred.find(t.subject_id);
      auto o = gt_to_pred.find(t.object_id);
      if (s != gt_to_pred.end() && o != gt_to_pred.end() &&
          drawn_matches.contains(std::tuple(s->second, t.predicate, o->second))) {
        continue;
      }
      out += fmt::format("  {} -> {} [label=\"{}\", color=red];\n", node(t.subject_id),
                         node(t.object_id), escape(vocab.name(t.predicate)));
    }
  }
  out += "}\n";
  return out;
}

}  // namespace geoscene
