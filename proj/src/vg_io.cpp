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

#include "geoscene/vg_io.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace geoscene {
namespace {

using json = nlohmann::json;

class ImageReader {
 public:
  ImageReader(const json& image, std::size_t index, const PredicateVocabulary& vocab,
              DumpKind kind)
      : image_(image), base_(fmt::format("/images/{}", index)), vocab_(vocab), kind_(kind) {}

  SceneGraph read() {
    if (!image_.is_object()) fail("image record must be an object", "");
    image_id_ = string_field(image_, "image_id", "");
    const int width = int_field(image_, "width", "");
    const int height = int_field(image_, "height", "");

    const json& detections = array_field(image_, "detections", "");
    std::vector<ObjectInstance> objects;
    objects.reserve(detections.size());
    for (std::size_t i = 0; i < detections.size(); ++i) {
      objects.push_back(read_detection(detections[i], fmt::format("/detections/{}", i),
                                       static_cast<int>(i)));
    }

    const json& triplets = array_field(image_, "triplets", "");
    std::vector<Triplet> relations;
    relations.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size(); ++i) {
      relations.push_back(
          read_triplet(triplets[i], fmt::format("/triplets/{}", i), objects.size()));
    }

    try {
      return SceneGraph(image_id_, width, height, std::move(objects), std::move(relations));
    } catch (const Error& e) {
      throw e.with_context(image_id_, base_);
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message, const std::string& where,
                         ErrorKind kind = ErrorKind::SchemaError) const {
    throw Error(kind, message, image_id_, base_ + where);
  }

  const json& field(const json& record, const char* key, const std::string& where) const {
    if (!record.is_object()) fail("expected an object", where);
    auto it = record.find(key);
    if (it == record.end()) fail(fmt::format("missing field '{}'", key), where + "/" + key);
    return *it;
  }

  std::string string_field(const json& record, const char* key, const std::string& where) const {
    const json& value = field(record, key, where);
    if (!value.is_string()) fail(fmt::format("'{}' must be a string", key), where + "/" + key);
    return value.get<std::string>();
  }

  int int_field(const json& record, const char* key, const std::string& where) const {
    const json& value = field(record, key, where);
    if (!value.is_number_integer()) {
      fail(fmt::format("'{}' must be an integer", key), where + "/" + key);
    }
    const auto v = value.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      fail(fmt::format("'{}' out of range", key), where + "/" + key);
    }
    return static_cast<int>(v);
  }

  double number(const json& value, const std::string& path) const {
    if (!value.is_number()) fail("expected a number", path);
    return value.get<double>();
  }

  double score_field(const json& record, const char* key, const std::string& where,
                     bool required) const {
    auto it = record.find(key);
    if (it == record.end()) {
      if (required) fail(fmt::format("missing field '{}'", key), where + "/" + key);
      return 1.0;
    }
    const double score = number(*it, where + "/" + key);
    if (!(score >= 0.0 && score <= 1.0)) {
      fail(fmt::format("score {} outside [0, 1]", score), where + "/" + key);
    }
    return score;
  }

  const json& array_field(const json& record, const char* key, const std::string& where) const {
    const json& value = field(record, key, where);
    if (!value.is_array()) fail(fmt::format("'{}' must be an array", key), where + "/" + key);
    return value;
  }

  ObjectInstance read_detection(const json& record, const std::string& where, int id) const {
    std::string label = string_field(record, "label", where);
    const double score = score_field(record, "score", where, false);
    const json& box = array_field(record, "box", where);
    if (box.size() != 4) fail("'box' must hold [x, y, w, h]", where + "/box");
    double v[4];
    for (std::size_t i = 0; i < 4; ++i) v[i] = number(box[i], fmt::format("{}/box/{}", where, i));
    try {
      return {id, std::move(label), BoundingBox::from_xywh(v[0], v[1], v[2], v[3]), score};
    } catch (const Error& e) {
      throw e.with_context(image_id_, base_ + where + "/box");
    }
  }

  Triplet read_triplet(const json& record, const std::string& where,
                       std::size_t object_count) const {
    Triplet t;
    t.subject_id = int_field(record, "s", where);
    t.object_id = int_field(record, "o", where);
    for (const char* key : {"s", "o"}) {
      const int index = key[0] == 's' ? t.subject_id : t.object_id;
      if (index < 0 || static_cast<std::size_t>(index) >= object_count) {
        fail(fmt::format("detection index {} out of range", index), where + "/" + key);
      }
    }
    const std::string predicate = string_field(record, "p", where);
    if (auto id = vocab_.find(predicate)) {
      t.predicate = *id;
    } else {
      fail(fmt::format("unknown predicate '{}'", predicate), where + "/p",
           ErrorKind::UnknownPredicate);
    }
    t.score = score_field(record, "score", where, kind_ == DumpKind::Predictions);
    if (auto it = record.find("source"); it != record.end()) {
      if (*it == "model") {
        t.source = TripletSource::Model;
      } else if (*it == "geometric") {
        t.source = TripletSource::Geometric;
      } else {
        fail("'source' must be \"model\" or \"geometric\"", where + "/source");
      }
    }
    return t;
  }

  const json& image_;
  std::string base_;
  const PredicateVocabulary& vocab_;
  DumpKind kind_;
  std::string image_id_;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path.string()));
  return in;
}

std::vector<SceneGraph> load(const std::filesystem::path& path, const PredicateVocabulary& vocab,
                             DumpKind kind) {
  std::ifstream in = open_input(path);
  std::vector<SceneGraph> scenes;
  stream_scene_dump(in, vocab, kind, [&](SceneGraph scene) { scenes.push_back(std::move(scene)); });
  return scenes;
}

std::string quoted(const std::string& text) { return json(text).dump(); }

std::string fixed(double value) { return fmt::format("{:.6f}", value); }

}  // namespace

void stream_scene_dump(std::istream& in, const PredicateVocabulary& vocab, DumpKind kind,
                       const std::function<void(SceneGraph)>& sink) {
  std::string top_key;
  bool saw_images = false;
  std::size_t index = 0;

  auto callback = [&](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) {
      top_key = parsed.get<std::string>();
      if (top_key == "images") saw_images = true;
      return true;
    }
    if (top_key != "images" || depth != 2) return true;
    const bool done = event == json::parse_event_t::object_end ||
                      event == json::parse_event_t::array_end ||
                      event == json::parse_event_t::value;
    if (!done) return true;
    sink(ImageReader(parsed, index++, vocab, kind).read());
    return false;
  };

  json top;
  try {
    top = json::parse(in, callback);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, fmt::format("malformed JSON: {}", e.what()));
  }
  if (!top.is_object()) throw Error(ErrorKind::SchemaError, "top level must be an object", {}, "");
  if (!saw_images || !top["images"].is_array()) {
    throw Error(ErrorKind::SchemaError, "missing 'images' array", {}, "/images");
  }
}

std::vector<SceneGraph> parse_scene_dump(std::string_view text, const PredicateVocabulary& vocab,
                                         DumpKind kind) {
  std::istringstream in{std::string(text)};
  std::vector<SceneGraph> scenes;
  stream_scene_dump(in, vocab, kind, [&](SceneGraph scene) { scenes.push_back(std::move(scene)); });
  return scenes;
}

std::vector<SceneGraph> load_scene_dump(const std::filesystem::path& path,
                                        const PredicateVocabulary& vocab) {
  return load(path, vocab, DumpKind::Predictions);
}

std::vector<SceneGraph> load_ground_truth(const std::filesystem::path& path,
                                          const PredicateVocabulary& vocab) {
  return load(path, vocab, DumpKind::GroundTruth);
}

std::string serialize_scenes(std::span<const SceneGraph> scenes, const PredicateVocabulary& vocab) {
  std::string out = "{\"images\":[";
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const SceneGraph& scene = scenes[s];
    if (s) out += ",";
    std::map<int, std::size_t> position;
    out += "{\"detections\":[";
    for (std::size_t i = 0; i < scene.objects().size(); ++i) {
      const auto& o = scene.objects()[i];
      position[o.id] = i;
      if (i) out += ",";
      out += fmt::format("{{\"box\":[{},{},{},{}],\"label\":{},\"score\":{}}}", fixed(o.box.x_min()),
                         fixed(o.box.y_min()), fixed(o.box.width()), fixed(o.box.height()),
                         quoted(o.label), fixed(o.score));
    }
    out += fmt::format("],\"height\":{},\"image_id\":{},\"triplets\":[", scene.height(),
                       quoted(scene.image_id()));
    for (std::size_t i = 0; i < scene.triplets().size(); ++i) {
      const auto& t = scene.triplets()[i];
      if (i) out += ",";
      out += fmt::format("{{\"o\":{},\"p\":{},\"s\":{},\"score\":{},\"source\":\"{}\"}}",
                         position.at(t.object_id), quoted(vocab.name(t.predicate)),
                         position.at(t.subject_id), fixed(t.score), to_string(t.source));
    }
    out += fmt::format("],\"width\":{}}}", scene.width());
  }
  out += "]}";
  return out;
}

void write_refined(std::span<const SceneGraph> scenes, const PredicateVocabulary& vocab,
                   const std::filesystem::path& path) {
  const std::string text = serialize_scenes(scenes, vocab) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot write '{}'", path.string()));
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace geoscene
