#pragma once

#include <string>
#include <vector>

#include "partseg/aggregate.hpp"
#include "partseg/decouple.hpp"
#include "partseg/png_io.hpp"
#include "partseg/scenegen.hpp"

namespace partseg {

/// Deterministic distinct color for an index (golden-angle hue walk).
void instance_color(int index, std::uint8_t& r, std::uint8_t& g,
                    std::uint8_t& b);

RgbImage render_scene(const Scene& scene);
RgbImage render_parts(const PartSet& parts, int width, int height);
/// Discarded predictions render gray-hatched when preds are supplied.
RgbImage render_instances(const AggregationResult& result, int width,
                          int height,
                          const std::vector<PartPrediction>* preds = nullptr);

std::string svg_scene(const Scene& scene);
std::string svg_parts(const PartSet& parts, int width, int height);
std::string svg_instances(const AggregationResult& result, int width,
                          int height,
                          const std::vector<PartPrediction>* preds = nullptr);

}  // namespace partseg
