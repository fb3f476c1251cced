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

#include "geoscene/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "geoscene/parallel.hpp"
#include "geoscene/report.hpp"
#include "geoscene/vg_io.hpp"

namespace geoscene::cli {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto log = spdlog::stderr_logger_mt("geoscene");
    log->set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("GEOSCENE_LOG")) level = spdlog::level::from_str(env);
    log->set_level(level);
    return log;
  }();
  return instance;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::IoError:
    case ErrorKind::SchemaError:
    case ErrorKind::UnknownPredicate:
    case ErrorKind::InvalidBox:
    case ErrorKind::DegenerateBox:
    case ErrorKind::InvalidScene:
    case ErrorKind::InvalidConfig:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

// Runs a command body, mapping library errors to exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

PredicateVocabulary load_vocab(const std::optional<std::filesystem::path>& path) {
  PredicateVocabulary base = path ? PredicateVocabulary::load(*path) : default_vocabulary();
  return with_geometric_extension(base);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot write '{}'", path.string()));
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, fmt::format("write to '{}' failed", path.string()));
}

}  // namespace

int cmd_refine(const RefineArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    args.config.validate();
    const PredicateVocabulary vocab = load_vocab(args.vocab);
    const std::vector<SceneGraph> scenes = load_scene_dump(args.dump, vocab);
    logger()->info("refining {} images with {} workers", scenes.size(),
                   args.threads > 0 ? args.threads : available_workers());

    const std::vector<RefineResult> results =
        refine_scenes(scenes, args.config, vocab, args.threads);
    MergeStats total;
    std::vector<SceneGraph> refined;
    refined.reserve(results.size());
    for (const auto& r : results) {
      total += r.stats;
      refined.push_back(r.scene);
    }
    write_refined(refined, vocab, args.out);

    out << fmt::format("images: {}\nadded: {}\nreplaced: {}\nsuppressed: {}\n", refined.size(),
                       total.added, total.replaced, total.suppressed);
    return kExitOk;
  });
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.ks.empty()) throw Error(ErrorKind::InvalidConfig, "at least one --k is required");
    const PredicateVocabulary vocab = load_vocab(args.vocab);
    const std::vector<SceneGraph> preds = load_scene_dump(args.pred, vocab);
    const std::vector<SceneGraph> gts = load_ground_truth(args.gt, vocab);
    const std::vector<ImagePair> pairs = pair_images(preds, gts);

    std::vector<int> ks = args.ks;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::vector<EvalReport> reports;
    for (int k : ks) {
      EvalMode mode{args.task, k, args.constrained, args.iou_threshold, args.aggregation};
      mode.validate();
      reports.push_back(mean_recall_at_k_parallel(pairs, mode, vocab, args.threads));
    }
    logger()->info("evaluated {} images ({} without gt triplets)", reports.front().images,
                   reports.front().skipped_images);

    const std::vector<ReportColumn> rows = {{"Ours", reports}};
    out << (args.constrained ? "Graph constraint: on\n" : "Graph constraint: off\n");
    out << fmt::format("Images: {} evaluated, {} without ground-truth triplets\n\n",
                       reports.front().images, reports.front().skipped_images);
    out << recall_summary_table(rows, false) << "\n" << recall_summary_table(rows, true);

    std::vector<std::string> predicates;
    for (const auto& [name, entry] : reports.front().per_predicate) predicates.push_back(name);
    if (!predicates.empty()) {
      out << "\n" << per_predicate_report(rows, predicates, ks, vocab);
    }

    if (args.report) write_text(*args.report, reports_to_json(reports));
    if (args.csv) write_text(*args.csv, per_predicate_csv(reports));
    return kExitOk;
  });
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.images < 1) throw Error(ErrorKind::InvalidConfig, "--images must be >= 1");
    const PredicateVocabulary vocab = with_geometric_extension(default_vocabulary());
    std::vector<SceneGraph> preds;
    std::vector<SceneGraph> gts;
    std::size_t model_triplets = 0;
    std::size_t gt_triplets = 0;
    for (int i = 0; i < args.images; ++i) {
      SynthSpec spec = args.spec;
      spec.seed += static_cast<std::uint64_t>(i);
      SynthScene scene = generate_scene(spec, vocab);
      model_triplets += scene.model_dump.triplets().size();
      gt_triplets += scene.ground_truth.triplets().size();
      preds.push_back(std::move(scene.model_dump));
      gts.push_back(std::move(scene.ground_truth));
    }
    write_refined(preds, vocab, args.out_pred);
    write_refined(gts, vocab, args.out_gt);
    out << fmt::format("images: {}\nobjects per image: {}\nground-truth triplets: {}\n"
                       "model triplets: {}\n",
                       args.images, args.spec.n_objects, gt_triplets, model_triplets);
    return kExitOk;
  });
}

int cmd_dot(const DotArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PredicateVocabulary vocab = load_vocab(args.vocab);
    const std::vector<SceneGraph> scenes = load_scene_dump(args.dump, vocab);
    std::vector<SceneGraph> gts;
    if (args.gt) gts = load_ground_truth(*args.gt, vocab);
    std::map<std::string, const SceneGraph*> gt_by_id;
    for (const auto& g : gts) gt_by_id[g.image_id()] = &g;

    std::string text;
    std::size_t graphs = 0;
    for (const auto& scene : scenes) {
      if (args.image && scene.image_id() != *args.image) continue;
      auto it = gt_by_id.find(scene.image_id());
      text += export_dot(scene, vocab, it == gt_by_id.end() ? nullptr : it->second);
      ++graphs;
    }
    if (args.image && graphs == 0) {
      throw Error(ErrorKind::IoError, fmt::format("image '{}' not in dump", *args.image));
    }
    write_text(args.out, text);
    out << fmt::format("graphs: {}\n", graphs);
    return kExitOk;
  });
}

int cmd_taxonomy(const TaxonomyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    PredicateVocabulary vocab = args.vocab ? PredicateVocabulary::load(*args.vocab)
                                           : default_vocabulary();
    if (args.extend) vocab = with_geometric_extension(vocab);
    std::map<PredicateId, std::size_t> counts;
    if (args.gt) {
      for (const auto& scene : load_ground_truth(*args.gt, vocab)) {
        for (const auto& t : scene.triplets()) ++counts[t.predicate];
      }
    }
    out << fmt::format("Predicates: {}\n", vocab.size());
    out << taxonomy_report(vocab, args.gt ? &counts : nullptr);
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric scene-graph refinement and evaluation"};
  app.require_subcommand(1);

  RefineArgs refine;
  std::string bucket_flag_help = "Use the literal direction table (45..135 -> left, |theta|>135 -> down)";
  std::string ref_box = "subject";
  bool paper_literal = false;
  auto* refine_cmd = app.add_subcommand("refine", "Add and refine geometric relations in a dump");
  refine_cmd->add_option("--dump", refine.dump, "Model prediction dump")->required();
  refine_cmd->add_option("--vocab", refine.vocab, "Predicate vocabulary file")->required();
  refine_cmd->add_option("--out", refine.out, "Refined dump to write")->required();
  refine_cmd->add_option("--geo-score-factor", refine.config.geo_score_factor);
  refine_cmd->add_option("--tau-replace", refine.config.tau_replace);
  refine_cmd->add_option("--tau-keep", refine.config.tau_keep);
  refine_cmd->add_flag("--paper-literal-buckets", paper_literal, bucket_flag_help);
  refine_cmd->add_option("--ref-box", ref_box, "Near/far reference box")
      ->check(CLI::IsMember({"subject", "mean"}));
  bool no_direction = false;
  bool no_proximity = false;
  refine_cmd->add_flag("--no-direction", no_direction, "Do not emit direction relations");
  refine_cmd->add_flag("--no-proximity", no_proximity, "Do not emit near/far relations");
  refine_cmd->add_option("--threads", refine.threads, "Worker count (0: all processors)");

  EvalArgs eval;
  std::string task = "predcls";
  std::string aggregation = "image";
  bool no_constraint = false;
  std::vector<int> ks;
  std::string report_path, csv_path, eval_vocab;
  auto* eval_cmd = app.add_subcommand("eval", "Recall@K and mean Recall@K of predictions");
  eval_cmd->add_option("--pred", eval.pred, "Prediction dump")->required();
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth dump")->required();
  eval_cmd->add_option("--task", task)->check(CLI::IsMember({"predcls", "sgcls", "sggen"}));
  eval_cmd->add_option("--k", ks, "K (repeatable; default 50 and 100)");
  eval_cmd->add_flag("--no-constraint", no_constraint, "Allow several predicates per pair");
  eval_cmd->add_option("--iou", eval.iou_threshold, "SGGen IoU threshold");
  eval_cmd->add_option("--aggregate", aggregation, "image: mean of per-image recalls; pooled")
      ->check(CLI::IsMember({"image", "pooled"}));
  eval_cmd->add_option("--report", report_path, "JSON report to write");
  eval_cmd->add_option("--csv", csv_path, "Per-predicate CSV to write");
  eval_cmd->add_option("--vocab", eval_vocab, "Predicate vocabulary (default: built-in)");
  eval_cmd->add_option("--threads", eval.threads, "Worker count (0: all processors)");

  SynthArgs synth;
  std::string layout = "grid";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic prediction/gt pair");
  synth_cmd->add_option("--seed", synth.spec.seed)->required();
  synth_cmd->add_option("--objects", synth.spec.n_objects)->required();
  synth_cmd->add_option("--drop", synth.spec.drop_rate, "Probability a relation is dropped");
  synth_cmd->add_option("--out-pred", synth.out_pred)->required();
  synth_cmd->add_option("--out-gt", synth.out_gt)->required();
  synth_cmd->add_option("--layout", layout)->check(CLI::IsMember({"grid", "random"}));
  synth_cmd->add_option("--width", synth.spec.width);
  synth_cmd->add_option("--height", synth.spec.height);
  synth_cmd->add_option("--images", synth.images, "Consecutive seeds to generate");

  DotArgs dot;
  std::string dot_gt, dot_vocab, dot_image;
  auto* dot_cmd = app.add_subcommand("dot", "Render scene graphs as Graphviz DOT");
  dot_cmd->add_option("--dump", dot.dump)->required();
  dot_cmd->add_option("--gt", dot_gt, "Ground truth for green/red highlighting");
  dot_cmd->add_option("--out", dot.out)->required();
  dot_cmd->add_option("--image", dot_image, "Only this image id");
  dot_cmd->add_option("--vocab", dot_vocab, "Predicate vocabulary (default: built-in)");

  TaxonomyArgs taxonomy;
  std::string tax_vocab, tax_gt;
  auto* tax_cmd = app.add_subcommand("taxonomy", "Relation-type breakdown of a vocabulary");
  tax_cmd->add_option("--vocab", tax_vocab, "Predicate vocabulary (default: built-in)");
  tax_cmd->add_option("--gt", tax_gt, "Count instances in this ground-truth dump");
  tax_cmd->add_flag("--extend", taxonomy.extend, "Include the geometric additions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (refine_cmd->parsed()) {
    refine.config.bucket_mode = paper_literal ? BucketMode::PaperLiteral : BucketMode::Corrected;
    refine.config.ref_box_mode = ref_box == "mean" ? RefBoxMode::Mean : RefBoxMode::Subject;
    refine.config.emit_direction = !no_direction;
    refine.config.emit_proximity = !no_proximity;
    return cmd_refine(refine, out, err);
  }
  if (eval_cmd->parsed()) {
    eval.task = parse_task(task);
    if (!ks.empty()) eval.ks = ks;
    eval.constrained = !no_constraint;
    eval.aggregation = aggregation == "pooled" ? Aggregation::Pooled : Aggregation::ImageMean;
    if (!report_path.empty()) eval.report = report_path;
    if (!csv_path.empty()) eval.csv = csv_path;
    if (!eval_vocab.empty()) eval.vocab = eval_vocab;
    return cmd_eval(eval, out, err);
  }
  if (synth_cmd->parsed()) {
    synth.spec.layout = parse_layout(layout);
    return cmd_synth(synth, out, err);
  }
  if (dot_cmd->parsed()) {
    if (!dot_gt.empty()) dot.gt = dot_gt;
    if (!dot_vocab.empty()) dot.vocab = dot_vocab;
    if (!dot_image.empty()) dot.image = dot_image;
    return cmd_dot(dot, out, err);
  }
  if (!tax_vocab.empty()) taxonomy.vocab = tax_vocab;
  if (!tax_gt.empty()) taxonomy.gt = tax_gt;
  return cmd_taxonomy(taxonomy, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace geoscene::cli
