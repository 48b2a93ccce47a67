#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "partseg/aggregate.hpp"
#include "partseg/decouple.hpp"
#include "partseg/eval.hpp"
#include "partseg/mask.hpp"
#include "partseg/scenegen.hpp"

namespace partseg {

/// All documents carry {"schema": 1}. Masks travel as row-major RLE objects
/// {"size": [H, W], "counts": [...]} whose first count is background.
inline constexpr int kSchemaVersion = 1;

nlohmann::json rle_json(const BinaryMask& mask);
BinaryMask mask_from_rle_json(const nlohmann::json& j);

nlohmann::json part_label_json(const PartLabel& label);
PartLabel part_label_from_json(const nlohmann::json& j);

nlohmann::json part_set_json(const PartSet& set);
PartSet part_set_from_json(const nlohmann::json& j);

nlohmann::json template_json(const Template& tmpl);
Template template_from_json(const nlohmann::json& j);

nlohmann::json scene_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& j);

/// Bare array per the wire format: [{"mask": RLE, "score", "u", "v"}].
nlohmann::json predictions_json(const std::vector<PartPrediction>& preds);
std::vector<PartPrediction> predictions_from_json(const nlohmann::json& j);

nlohmann::json instances_json(const AggregationResult& result, int width,
                              int height);
AggregationResult instances_from_json(const nlohmann::json& j, int* width = nullptr,
                                      int* height = nullptr);

nlohmann::json metrics_json(const Metrics& metrics);

/// Parses text, wrapping parse failures in SchemaError with position info.
nlohmann::json parse_json(const std::string& text, const std::string& origin);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace partseg
