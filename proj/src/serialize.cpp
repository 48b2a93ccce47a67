#include "partseg/serialize.hpp"

#include <fstream>
#include <sstream>

namespace partseg {

using nlohmann::json;

namespace {

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    raise(ErrorCode::SchemaError, "expected [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

void expect(bool ok, const std::string& what) {
  if (!ok) raise(ErrorCode::SchemaError, what);
}

}  // namespace

json rle_json(const BinaryMask& mask) {
  return json{{"size", {mask.height(), mask.width()}},
              {"counts", rle_encode(mask)}};
}

BinaryMask mask_from_rle_json(const json& j) {
  expect(j.is_object() && j.contains("size") && j.contains("counts"),
         "RLE object needs size and counts");
  const auto& size = j.at("size");
  expect(size.is_array() && size.size() == 2, "RLE size must be [H, W]");
  const int h = size[0].get<int>();
  const int w = size[1].get<int>();
  return rle_decode(w, h, j.at("counts").get<std::vector<std::int64_t>>());
}

json part_label_json(const PartLabel& label) {
  json j{{"full", rle_json(label.full_mask)},
         {"visible", rle_json(label.visible_mask)},
         {"phi", point_json(label.center_full)},
         {"occluded", label.occluded}};
  j["phi_hat"] =
      label.center_visible ? point_json(*label.center_visible) : json(nullptr);
  j["u"] = label.u ? point_json(*label.u) : json(nullptr);
  json v = json::array();
  for (const Point2& off : label.v) v.push_back(point_json(off));
  j["v"] = std::move(v);
  return j;
}

PartLabel part_label_from_json(const json& j) {
  PartLabel label;
  label.full_mask = mask_from_rle_json(j.at("full"));
  label.visible_mask = mask_from_rle_json(j.at("visible"));
  label.center_full = point_from_json(j.at("phi"));
  label.occluded = j.at("occluded").get<bool>();
  if (!j.at("phi_hat").is_null())
    label.center_visible = point_from_json(j.at("phi_hat"));
  if (!j.at("u").is_null()) label.u = point_from_json(j.at("u"));
  for (const auto& off : j.at("v")) label.v.push_back(point_from_json(off));
  return label;
}

json part_set_json(const PartSet& set) {
  json parts = json::array();
  for (const PartLabel& p : set.parts) parts.push_back(part_label_json(p));
  return json{{"n_parts", set.n_parts}, {"parts", std::move(parts)}};
}

PartSet part_set_from_json(const json& j) {
  PartSet set;
  set.n_parts = j.at("n_parts").get<int>();
  for (const auto& p : j.at("parts"))
    set.parts.push_back(part_label_from_json(p));
  expect(static_cast<int>(set.parts.size()) == set.n_parts,
         "part set length disagrees with n_parts");
  return set;
}

json template_json(const Template& tmpl) {
  return json{{"schema", kSchemaVersion},
              {"kind", "template"},
              {"name", tmpl.name},
              {"full", rle_json(tmpl.full_mask)},
              {"parts", part_set_json(tmpl.parts)},
              {"solidity", tmpl.solidity}};
}

Template template_from_json(const json& j) {
  expect(j.value("kind", "template") == std::string("template"),
         "not a template document");
  Template tmpl;
  tmpl.name = j.at("name").get<std::string>();
  tmpl.full_mask = mask_from_rle_json(j.at("full"));
  tmpl.parts = part_set_from_json(j.at("parts"));
  tmpl.solidity = j.at("solidity").get<double>();
  return tmpl;
}

json scene_json(const Scene& scene) {
  json instances = json::array();
  for (const SceneInstance& inst : scene.instances) {
    instances.push_back(
        json{{"pose", {inst.pose.tx, inst.pose.ty, inst.pose.theta}},
             {"full", rle_json(inst.full_mask)},
             {"visible", rle_json(inst.visible_mask)},
             {"parts", part_set_json(inst.parts)}});
  }
  return json{{"schema", kSchemaVersion},
              {"kind", "scene"},
              {"size", {scene.height, scene.width}},
              {"z_order", scene.z_order},
              {"skipped", scene.skipped},
              {"instances", std::move(instances)}};
}

Scene scene_from_json(const json& j) {
  expect(j.value("kind", "scene") == std::string("scene"),
         "not a scene document");
  Scene scene;
  const auto& size = j.at("size");
  scene.height = size[0].get<int>();
  scene.width = size[1].get<int>();
  scene.z_order = j.at("z_order").get<std::vector<int>>();
  scene.skipped = j.at("skipped").get<std::vector<int>>();
  for (const auto& ij : j.at("instances")) {
    SceneInstance inst;
    const auto& pose = ij.at("pose");
    inst.pose.tx = pose[0].get<int>();
    inst.pose.ty = pose[1].get<int>();
    inst.pose.theta = pose[2].get<double>();
    inst.full_mask = mask_from_rle_json(ij.at("full"));
    inst.visible_mask = mask_from_rle_json(ij.at("visible"));
    inst.parts = part_set_from_json(ij.at("parts"));
    scene.instances.push_back(std::move(inst));
  }
  return scene;
}

json predictions_json(const std::vector<PartPrediction>& preds) {
  json arr = json::array();
  for (const PartPrediction& p : preds) {
    json v = json::array();
    for (const Point2& off : p.v) v.push_back(point_json(off));
    arr.push_back(json{{"mask", rle_json(p.mask)},
                       {"score", p.score},
                       {"u", point_json(p.u)},
                       {"v", std::move(v)}});
  }
  return arr;
}

std::vector<PartPrediction> predictions_from_json(const json& j) {
  const json& arr = j.is_array() ? j : j.at("preds");
  expect(arr.is_array(), "predictions document must be an array");
  std::vector<PartPrediction> preds;
  for (const auto& pj : arr) {
    PartPrediction p;
    p.mask = mask_from_rle_json(pj.at("mask"));
    p.score = pj.at("score").get<double>();
    p.u = point_from_json(pj.at("u"));
    for (const auto& off : pj.at("v")) p.v.push_back(point_from_json(off));
    preds.push_back(std::move(p));
  }
  return preds;
}

json instances_json(const AggregationResult& result, int width, int height) {
  json instances = json::array();
  for (const AssembledInstance& inst : result.instances) {
    instances.push_back(json{{"parts", inst.part_indices},
                             {"mask", rle_json(inst.merged_mask)},
                             {"complete", inst.complete},
                             {"score", inst.score}});
  }
  return json{{"schema", kSchemaVersion},
              {"kind", "instances"},
              {"size", {height, width}},
              {"instances", std::move(instances)},
              {"discarded", result.discarded}};
}

AggregationResult instances_from_json(const json& j, int* width, int* height) {
  expect(j.value("kind", "instances") == std::string("instances"),
         "not an instances document");
  AggregationResult result;
  if (j.contains("size")) {
    if (height) *height = j.at("size")[0].get<int>();
    if (width) *width = j.at("size")[1].get<int>();
  }
  result.discarded = j.at("discarded").get<std::vector<int>>();
  for (const auto& ij : j.at("instances")) {
    AssembledInstance inst;
    inst.part_indices = ij.at("parts").get<std::vector<int>>();
    inst.merged_mask = mask_from_rle_json(ij.at("mask"));
    inst.complete = ij.at("complete").get<bool>();
    inst.score = ij.value("score", 0.0);
    result.instances.push_back(std::move(inst));
  }
  return result;
}

json metrics_json(const Metrics& metrics) {
  return json{{"schema", kSchemaVersion}, {"ap50", metrics.ap50},
              {"ap75", metrics.ap75},     {"miou", metrics.miou},
              {"n_tp", metrics.n_tp},     {"n_fp", metrics.n_fp},
              {"n_fn", metrics.n_fn}};
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::SchemaError, origin + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) raise(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace partseg
