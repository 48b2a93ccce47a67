#include "partseg/render.hpp"

#include <cmath>
#include <sstream>

#include "partseg/contour.hpp"

namespace partseg {

namespace {

void hsv_to_rgb(double h, double s, double v, std::uint8_t& r, std::uint8_t& g,
                std::uint8_t& b) {
  const double c = v * s;
  const double hh = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hh, 2.0) - 1.0));
  double rr = 0, gg = 0, bb = 0;
  if (hh < 1) rr = c, gg = x;
  else if (hh < 2) rr = x, gg = c;
  else if (hh < 3) gg = c, bb = x;
  else if (hh < 4) gg = x, bb = c;
  else if (hh < 5) rr = x, bb = c;
  else rr = c, bb = x;
  const double m = v - c;
  r = static_cast<std::uint8_t>(255.0 * (rr + m));
  g = static_cast<std::uint8_t>(255.0 * (gg + m));
  b = static_cast<std::uint8_t>(255.0 * (bb + m));
}

bool is_boundary(const BinaryMask& m, int x, int y) {
  if (!m.at(x, y)) return false;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      const int nx = x + dx, ny = y + dy;
      if (!m.in_bounds(nx, ny) || !m.at(nx, ny)) return true;
    }
  return false;
}

void fill_mask(RgbImage& img, const BinaryMask& m, std::uint8_t r,
               std::uint8_t g, std::uint8_t b, bool outline) {
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) continue;
      if (outline && is_boundary(m, x, y))
        img.put(x, y, r / 3, g / 3, b / 3);
      else
        img.put(x, y, r, g, b);
    }
}

void fill_hatched(RgbImage& img, const BinaryMask& m) {
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) continue;
      const bool stripe = ((x + y) / 3) % 2 == 0;
      const std::uint8_t v = stripe ? 150 : 90;
      img.put(x, y, v, v, v);
    }
}

std::string svg_header(int width, int height) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n"
     << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
        "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
        "<rect width=\"6\" height=\"6\" fill=\"#999\"/>"
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555\" "
        "stroke-width=\"3\"/></pattern></defs>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#202020\"/>\n";
  return os.str();
}

std::string color_hex(int index) {
  std::uint8_t r, g, b;
  instance_color(index, r, g, b);
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

// Each connected component becomes one closed path through its boundary
// pixel centers.
void svg_mask_paths(std::ostringstream& os, const BinaryMask& m,
                    const std::string& fill) {
  for (const BinaryMask& comp : connected_components(m)) {
    const Contour contour = trace_contour(comp);
    os << "<path d=\"M";
    for (std::size_t i = 0; i < contour.size(); ++i) {
      if (i) os << " L";
      os << contour[i].x + 0.5 << ' ' << contour[i].y + 0.5;
    }
    os << " Z\" fill=\"" << fill
       << "\" stroke=\"#101010\" stroke-width=\"0.75\"/>\n";
  }
}

}  // namespace

void instance_color(int index, std::uint8_t& r, std::uint8_t& g,
                    std::uint8_t& b) {
  const double hue = std::fmod(index * 137.50776405, 360.0);
  hsv_to_rgb(hue, 0.72, 0.95, r, g, b);
}

RgbImage render_scene(const Scene& scene) {
  RgbImage img(scene.width, scene.height);
  for (auto& p : img.pixels) p = 32;
  for (int i = 0; i < static_cast<int>(scene.instances.size()); ++i) {
    const SceneInstance& inst = scene.instances[i];
    std::uint8_t r, g, b;
    instance_color(i, r, g, b);
    fill_mask(img, inst.visible_mask, r, g, b, false);
    for (const PartLabel& part : inst.parts.parts)
      for (int y = 0; y < part.visible_mask.height(); ++y)
        for (int x = 0; x < part.visible_mask.width(); ++x)
          if (part.visible_mask.at(x, y) && is_boundary(part.visible_mask, x, y))
            img.put(x, y, r / 3, g / 3, b / 3);
  }
  return img;
}

RgbImage render_parts(const PartSet& parts, int width, int height) {
  RgbImage img(width, height);
  for (auto& p : img.pixels) p = 32;
  for (int i = 0; i < static_cast<int>(parts.parts.size()); ++i) {
    std::uint8_t r, g, b;
    instance_color(i, r, g, b);
    const BinaryMask& m = parts.parts[i].occluded ? parts.parts[i].full_mask
                                                  : parts.parts[i].visible_mask;
    fill_mask(img, m, parts.parts[i].occluded ? r / 2 : r,
              parts.parts[i].occluded ? g / 2 : g,
              parts.parts[i].occluded ? b / 2 : b, true);
  }
  return img;
}

RgbImage render_instances(const AggregationResult& result, int width,
                          int height,
                          const std::vector<PartPrediction>* preds) {
  RgbImage img(width, height);
  for (auto& p : img.pixels) p = 32;
  for (int i = 0; i < static_cast<int>(result.instances.size()); ++i) {
    std::uint8_t r, g, b;
    instance_color(i, r, g, b);
    fill_mask(img, result.instances[i].merged_mask, r, g, b, true);
  }
  if (preds) {
    for (int idx : result.discarded)
      if (idx >= 0 && idx < static_cast<int>(preds->size()))
        fill_hatched(img, (*preds)[idx].mask);
  }
  return img;
}

std::string svg_scene(const Scene& scene) {
  std::ostringstream os;
  os << svg_header(scene.width, scene.height);
  for (int i = static_cast<int>(scene.instances.size()) - 1; i >= 0; --i) {
    if (scene.instances[i].visible_mask.empty()) continue;
    svg_mask_paths(os, scene.instances[i].visible_mask, color_hex(i));
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_parts(const PartSet& parts, int width, int height) {
  std::ostringstream os;
  os << svg_header(width, height);
  for (int i = 0; i < static_cast<int>(parts.parts.size()); ++i) {
    const BinaryMask& m = parts.parts[i].occluded ? parts.parts[i].full_mask
                                                  : parts.parts[i].visible_mask;
    if (m.empty()) continue;
    svg_mask_paths(os, m, color_hex(i));
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_instances(const AggregationResult& result, int width,
                          int height,
                          const std::vector<PartPrediction>* preds) {
  std::ostringstream os;
  os << svg_header(width, height);
  for (int i = 0; i < static_cast<int>(result.instances.size()); ++i) {
    if (result.instances[i].merged_mask.empty()) continue;
    svg_mask_paths(os, result.instances[i].merged_mask, color_hex(i));
  }
  if (preds) {
    for (int idx : result.discarded)
      if (idx >= 0 && idx < static_cast<int>(preds->size()) &&
          !(*preds)[idx].mask.empty())
        svg_mask_paths(os, (*preds)[idx].mask, "url(#hatch)");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace partseg
