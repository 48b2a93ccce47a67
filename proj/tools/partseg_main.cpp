// partseg: part-aware instance segmentation toolkit for low-solidity objects.
//
// Subcommands: decouple, gen, aggregate, eval, bench, render.
// Exit codes: 0 success, 1 domain error, 2 usage or I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <partseg/aggregate.hpp>
#include <partseg/decouple.hpp>
#include <partseg/eval.hpp>
#include <partseg/png_io.hpp>
#include <partseg/render.hpp>
#include <partseg/scenegen.hpp>
#include <partseg/serialize.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace partseg;

namespace {

constexpr const char* kVersion = "0.1.0";

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_manifest(const std::string& path, const std::string& command,
                    const json& config, std::uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, double wall_ms) {
  const json manifest{{"schema", kSchemaVersion},
                      {"tool", "partseg"},
                      {"version", kVersion},
                      {"command", command},
                      {"config", config},
                      {"seed", seed},
                      {"inputs", inputs},
                      {"outputs", outputs},
                      {"timings", {{"wall_ms", wall_ms}}}};
  write_text_file(path, manifest.dump(2) + "\n");
}

BinaryMask load_mask(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".png")
    return read_mask_png(path);
  const json j = parse_json(read_text_file(path), path);
  if (j.is_object() && j.contains("counts")) return mask_from_rle_json(j);
  if (j.is_object() && j.contains("full"))
    return mask_from_rle_json(j.at("full"));
  raise(ErrorCode::SchemaError, path + ": no mask payload found");
}

std::vector<std::string> json_files_in(const std::string& path) {
  if (!fs::is_directory(path)) return {path};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() == ".json" &&
        name.rfind("manifest", 0) == std::string::npos &&
        name.find(".manifest.") == std::string::npos)
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---------------------------------------------------------------------------
// decouple

struct DecoupleArgs {
  std::string input;
  std::string out;
  std::string render_path;
  std::string template_out;
  std::string name = "object";
  DecoupleConfig cfg;
};

int run_decouple(const DecoupleArgs& args) {
  Stopwatch watch;
  const BinaryMask mask = load_mask(args.input);
  const PartSet parts = make_part_labels(mask, mask, args.cfg);

  json doc = part_set_json(parts);
  doc["schema"] = kSchemaVersion;
  doc["kind"] = "parts";
  doc["size"] = {mask.height(), mask.width()};
  write_text_file(args.out, doc.dump(2) + "\n");

  std::vector<std::string> outputs{args.out};
  if (!args.template_out.empty()) {
    Template tmpl;
    tmpl.name = args.name;
    tmpl.full_mask = mask;
    tmpl.parts = parts;
    tmpl.solidity = solidity(mask);
    write_text_file(args.template_out, template_json(tmpl).dump(2) + "\n");
    outputs.push_back(args.template_out);
  }
  if (!args.render_path.empty()) {
    if (has_suffix(args.render_path, ".svg"))
      write_text_file(args.render_path,
                      svg_parts(parts, mask.width(), mask.height()));
    else
      write_rgb_png(args.render_path,
                    render_parts(parts, mask.width(), mask.height()));
    outputs.push_back(args.render_path);
  }

  write_manifest(args.out + ".manifest.json", "decouple",
                 json{{"input", args.input},
                      {"tau_ratio", args.cfg.tau_ratio},
                      {"lambda_cut", args.cfg.lambda_cut},
                      {"min_part_pixels", args.cfg.min_part_pixels},
                      {"name", args.name}},
                 0, {args.input}, outputs, watch.ms());
  return 0;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string template_path;
  std::string out_dir;
  int scenes = 1;
  int min_count = 20;
  int max_count = 100;
  int width = 512;
  int height = 512;
  std::uint64_t seed = 0;
  bool emit_preds = false;
  double min_visible_frac = 0.1;
  double sigma_center = 0.0;
  double sigma_offset = 0.0;
  double p_drop = 0.0;
  double p_spurious = 0.0;
  int mask_jitter = 0;
};

int run_gen(const GenArgs& args) {
  Stopwatch watch;
  const Template tmpl =
      template_from_json(parse_json(read_text_file(args.template_path),
                                    args.template_path));
  fs::create_directories(args.out_dir);

  std::vector<std::string> outputs;
  json skip_report = json::array();
  for (int s = 0; s < args.scenes; ++s) {
    const std::uint64_t scene_seed = args.seed + static_cast<std::uint64_t>(s);
    const Scene scene = compose_scene(tmpl, args.min_count, args.max_count,
                                      args.width, args.height, scene_seed);
    char name[32];
    std::snprintf(name, sizeof(name), "scene_%04d.json", s);
    const std::string path = (fs::path(args.out_dir) / name).string();
    write_text_file(path, scene_json(scene).dump() + "\n");
    outputs.push_back(path);
    if (!scene.skipped.empty())
      skip_report.push_back(json{{"scene", s}, {"skipped", scene.skipped}});

    if (args.emit_preds) {
      PerturbationConfig noise;
      noise.sigma_center = args.sigma_center;
      noise.sigma_offset = args.sigma_offset;
      noise.p_drop = args.p_drop;
      noise.p_spurious = args.p_spurious;
      noise.mask_jitter = args.mask_jitter;
      noise.min_visible_frac = args.min_visible_frac;
      noise.seed = scene_seed ^ 0x70657274ULL;
      const auto preds = perturb(
          ground_truth_predictions(scene, args.min_visible_frac), noise);
      std::snprintf(name, sizeof(name), "preds_%04d.json", s);
      const std::string ppath = (fs::path(args.out_dir) / name).string();
      write_text_file(ppath, predictions_json(preds).dump() + "\n");
      outputs.push_back(ppath);
    }
  }

  json config{{"template", args.template_path},
              {"scenes", args.scenes},
              {"min", args.min_count},
              {"max", args.max_count},
              {"width", args.width},
              {"height", args.height},
              {"emit_preds", args.emit_preds},
              {"min_visible_frac", args.min_visible_frac},
              {"sigma_center", args.sigma_center},
              {"sigma_offset", args.sigma_offset},
              {"p_drop", args.p_drop},
              {"p_spurious", args.p_spurious},
              {"mask_jitter", args.mask_jitter},
              {"placement_failures", skip_report}};
  write_manifest((fs::path(args.out_dir) / "manifest.json").string(), "gen",
                 config, args.seed, {args.template_path}, outputs, watch.ms());
  return 0;
}

// ---------------------------------------------------------------------------
// aggregate

struct AggregateArgs {
  std::string preds_path;
  std::string out;
  std::string baseline = "bidir";
  double epsilon_ratio = 0.5;
  int refine_radius = 2;
  double lambda = 1.0;
  bool literal_w = false;
  int n_parts = 2;
};

int run_aggregate(const AggregateArgs& args) {
  Stopwatch watch;
  const auto preds = predictions_from_json(
      parse_json(read_text_file(args.preds_path), args.preds_path));

  int width = 0, height = 0;
  if (!preds.empty()) {
    width = preds[0].mask.width();
    height = preds[0].mask.height();
  }

  AggregationResult result;
  if (preds.empty()) {
    // nothing to do; emit an empty document
  } else if (args.baseline == "hungarian") {
    const int n_parts = preds[0].v.empty()
                            ? 1
                            : static_cast<int>(preds[0].v.size()) + 1;
    result.instances = hungarian_baseline(preds, args.lambda, n_parts,
                                          args.literal_w);
  } else {
    AggregateConfig cfg;
    cfg.epsilon_ratio = args.epsilon_ratio;
    cfg.refine_radius = args.refine_radius;
    result = aggregate(preds, cfg);
  }
  for (auto& inst : result.instances)
    inst.merged_mask = refine_mask(inst, args.refine_radius);

  write_text_file(args.out,
                  instances_json(result, width, height).dump() + "\n");
  write_manifest(args.out + ".manifest.json", "aggregate",
                 json{{"preds", args.preds_path},
                      {"baseline", args.baseline},
                      {"epsilon_ratio", args.epsilon_ratio},
                      {"refine_radius", args.refine_radius},
                      {"lambda", args.lambda},
                      {"literal_w", args.literal_w}},
                 0, {args.preds_path}, {args.out}, watch.ms());
  return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string pred_instances;
  std::string gt_scene;
  double iou = 0.5;
  std::string out;
};

int run_eval(const EvalArgs& args) {
  Stopwatch watch;
  const auto pred_files = json_files_in(args.pred_instances);
  const auto gt_files = json_files_in(args.gt_scene);
  if (pred_files.size() != gt_files.size())
    raise(ErrorCode::SchemaError,
          "eval: prediction and scene file counts differ");

  std::vector<EvalScene> scenes;
  for (std::size_t i = 0; i < pred_files.size(); ++i) {
    EvalScene es;
    const AggregationResult result = instances_from_json(
        parse_json(read_text_file(pred_files[i]), pred_files[i]));
    for (const auto& inst : result.instances)
      es.preds.push_back({inst.merged_mask, inst.score});
    const Scene scene = scene_from_json(
        parse_json(read_text_file(gt_files[i]), gt_files[i]));
    for (const auto& inst : scene.instances)
      if (!inst.visible_mask.empty()) es.gts.push_back(inst.visible_mask);
    for (const auto& p : es.preds)
      if (!es.gts.empty() && !p.mask.same_size(es.gts[0]))
        raise(ErrorCode::DimensionMismatch, "eval: canvas size mismatch");
    scenes.push_back(std::move(es));
  }

  const Metrics metrics = evaluate_dataset(scenes, args.iou);
  write_text_file(args.out, metrics_json(metrics).dump(2) + "\n");
  write_manifest(args.out + ".manifest.json", "eval",
                 json{{"pred_instances", args.pred_instances},
                      {"gt_scene", args.gt_scene},
                      {"iou", args.iou}},
                 0, {args.pred_instances, args.gt_scene}, {args.out},
                 watch.ms());
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<int> counts{100, 400, 1600, 6400};
  std::string algo = "both";
  std::uint64_t seed = 7;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  Stopwatch watch;
  std::string csv = "n,algo,wall_ms\n";
  for (int n : args.counts) {
    const auto feats = bench_features(n, args.seed);
    if (args.algo == "both" || args.algo == "bidir") {
      const AggregateConfig cfg;
      // repeat until the clock has something to chew on
      int reps = 0;
      Stopwatch t;
      do {
        volatile std::size_t sink =
            aggregate_features(feats, cfg).groups.size();
        (void)sink;
        ++reps;
      } while (t.ms() < 200.0 && reps < 1000);
      csv += std::to_string(n) + ",bidir," + std::to_string(t.ms() / reps) +
             "\n";
      std::cout << "bench bidir n=" << n << " " << t.ms() / reps << " ms\n";
    }
    if (args.algo == "both" || args.algo == "hungarian") {
      Stopwatch t;
      volatile std::size_t sink =
          hungarian_features(feats, 1.0, 2).groups.size();
      (void)sink;
      csv += std::to_string(n) + ",hungarian," + std::to_string(t.ms()) + "\n";
      std::cout << "bench hungarian n=" << n << " " << t.ms() << " ms\n";
    }
  }
  write_text_file(args.out, csv);
  write_manifest(args.out + ".manifest.json", "bench",
                 json{{"parts_counts", args.counts}, {"algo", args.algo}},
                 args.seed, {}, {args.out}, watch.ms());
  return 0;
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
  std::string scene;
  std::string parts;
  std::string instances;
  std::string preds;
  std::string out;
};

int run_render(const RenderArgs& args) {
  Stopwatch watch;
  const bool svg = has_suffix(args.out, ".svg");
  std::vector<std::string> inputs;

  if (!args.scene.empty()) {
    inputs.push_back(args.scene);
    const Scene scene =
        scene_from_json(parse_json(read_text_file(args.scene), args.scene));
    if (svg)
      write_text_file(args.out, svg_scene(scene));
    else
      write_rgb_png(args.out, render_scene(scene));
  } else if (!args.parts.empty()) {
    inputs.push_back(args.parts);
    const json j = parse_json(read_text_file(args.parts), args.parts);
    const PartSet parts = part_set_from_json(j);
    int w = 256, h = 256;
    if (j.contains("size")) {
      h = j.at("size")[0].get<int>();
      w = j.at("size")[1].get<int>();
    } else if (!parts.parts.empty()) {
      w = parts.parts[0].full_mask.width();
      h = parts.parts[0].full_mask.height();
    }
    if (svg)
      write_text_file(args.out, svg_parts(parts, w, h));
    else
      write_rgb_png(args.out, render_parts(parts, w, h));
  } else if (!args.instances.empty()) {
    inputs.push_back(args.instances);
    int w = 256, h = 256;
    const AggregationResult result = instances_from_json(
        parse_json(read_text_file(args.instances), args.instances), &w, &h);
    std::vector<PartPrediction> preds;
    const std::vector<PartPrediction>* preds_ptr = nullptr;
    if (!args.preds.empty()) {
      inputs.push_back(args.preds);
      preds = predictions_from_json(
          parse_json(read_text_file(args.preds), args.preds));
      preds_ptr = &preds;
    }
    if (svg)
      write_text_file(args.out, svg_instances(result, w, h, preds_ptr));
    else
      write_rgb_png(args.out, render_instances(result, w, h, preds_ptr));
  } else {
    raise(ErrorCode::IoError, "render: pass one of --scene/--parts/--instances");
  }

  write_manifest(args.out + ".manifest.json", "render",
                 json{{"scene", args.scene},
                      {"parts", args.parts},
                      {"instances", args.instances},
                      {"preds", args.preds}},
                 0, inputs, {args.out}, watch.ms());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"part-aware instance segmentation pipeline for low-solidity "
               "objects"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  DecoupleArgs dec;
  auto* cmd_dec = app.add_subcommand(
      "decouple", "split an instance mask into high-solidity parts");
  cmd_dec->add_option("--input", dec.input, "mask PNG or JSON")->required();
  cmd_dec->add_option("--out", dec.out, "part-set JSON")->required();
  cmd_dec->add_option("--tau-ratio", dec.cfg.tau_ratio);
  cmd_dec->add_option("--lambda-cut", dec.cfg.lambda_cut);
  cmd_dec->add_option("--min-part-pixels", dec.cfg.min_part_pixels);
  cmd_dec->add_option("--render", dec.render_path, "optional PNG/SVG view");
  cmd_dec->add_option("--template-out", dec.template_out,
                      "also write a template JSON for gen");
  cmd_dec->add_option("--name", dec.name, "template name");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand(
      "gen", "compose synthetic cluttered scenes from a template");
  cmd_gen->add_option("--template", gen.template_path)->required();
  cmd_gen->add_option("--out-dir", gen.out_dir)->required();
  cmd_gen->add_option("--scenes", gen.scenes);
  cmd_gen->add_option("--min", gen.min_count);
  cmd_gen->add_option("--max", gen.max_count);
  cmd_gen->add_option("--width", gen.width);
  cmd_gen->add_option("--height", gen.height);
  cmd_gen->add_option("--seed", gen.seed);
  cmd_gen->add_flag("--emit-preds", gen.emit_preds,
                    "also write simulated predictions per scene");
  cmd_gen->add_option("--min-visible-frac", gen.min_visible_frac);
  cmd_gen->add_option("--sigma-center", gen.sigma_center);
  cmd_gen->add_option("--sigma-offset", gen.sigma_offset);
  cmd_gen->add_option("--p-drop", gen.p_drop);
  cmd_gen->add_option("--p-spurious", gen.p_spurious);
  cmd_gen->add_option("--mask-jitter", gen.mask_jitter);

  AggregateArgs agg;
  auto* cmd_agg = app.add_subcommand(
      "aggregate", "assemble part predictions into instances");
  cmd_agg->add_option("--preds", agg.preds_path)->required();
  cmd_agg->add_option("--out", agg.out)->required();
  cmd_agg->add_option("--epsilon-ratio", agg.epsilon_ratio);
  cmd_agg->add_option("--refine-radius", agg.refine_radius);
  cmd_agg->add_option("--baseline", agg.baseline)
      ->check(CLI::IsMember({"bidir", "hungarian"}));
  cmd_agg->add_option("--lambda", agg.lambda);
  cmd_agg->add_flag("--literal-w", agg.literal_w,
                    "maximize dist + lambda*IoU instead");

  EvalArgs eva;
  auto* cmd_eval = app.add_subcommand("eval", "score instances against a scene");
  cmd_eval->add_option("--pred-instances", eva.pred_instances)->required();
  cmd_eval->add_option("--gt-scene", eva.gt_scene)->required();
  cmd_eval->add_option("--iou", eva.iou)->check(CLI::Range(0.0, 1.0));
  cmd_eval->add_option("--out", eva.out)->required();

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand(
      "bench", "time bidirectional aggregation against the Hungarian baseline");
  cmd_bench->add_option("--parts-counts", bench.counts)->delimiter(',');
  cmd_bench->add_option("--algo", bench.algo)
      ->check(CLI::IsMember({"both", "bidir", "hungarian"}));
  cmd_bench->add_option("--seed", bench.seed);
  cmd_bench->add_option("--out", bench.out)->required();

  RenderArgs ren;
  auto* cmd_render = app.add_subcommand("render", "draw masks to PNG or SVG");
  cmd_render->add_option("--scene", ren.scene);
  cmd_render->add_option("--parts", ren.parts);
  cmd_render->add_option("--instances", ren.instances);
  cmd_render->add_option("--preds", ren.preds,
                         "predictions JSON, for hatching discarded parts");
  cmd_render->add_option("--out", ren.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_dec->parsed()) return run_decouple(dec);
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_agg->parsed()) return run_aggregate(agg);
    if (cmd_eval->parsed()) return run_eval(eva);
    if (cmd_bench->parsed()) return run_bench(bench);
    if (cmd_render->parsed()) return run_render(ren);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
