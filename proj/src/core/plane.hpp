#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"

namespace salvis {

/// Single-channel float raster, row-major. The substrate for every map in
/// the pipeline (intensity, depth, conspicuity, saliency, polar frames).
struct ScenePlane {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  ScenePlane() = default;
  ScenePlane(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

  // clamp-to-edge fetch
  float at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return at(x, y);
  }

  size_t size() const { return data.size(); }
  bool same_size(const ScenePlane& o) const { return width == o.width && height == o.height; }
};

/// RGB image as three aligned planes, samples in [0,1].
struct RgbImage {
  ScenePlane r, g, b;

  RgbImage() = default;
  RgbImage(int w, int h) : r(w, h), g(w, h), b(w, h) {}

  int width() const { return r.width; }
  int height() const { return r.height; }
};

/// Depth raster in meters. The +inf "no geometry" sentinel is resolved at
/// load time; a validated DepthMap holds finite samples only.
struct DepthMap {
  ScenePlane plane;

  int width() const { return plane.width; }
  int height() const { return plane.height; }
};

/// Per-pixel element IDs. 0 = sky, 1 = ground, catalog elements are > 1.
struct LabelMask {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> ids;

  LabelMask() = default;
  LabelMask(int w, int h, uint16_t fill = 0)
      : width(w), height(h), ids(static_cast<size_t>(w) * h, fill) {}

  uint16_t at(int x, int y) const { return ids[static_cast<size_t>(y) * width + x]; }
  uint16_t& at(int x, int y) { return ids[static_cast<size_t>(y) * width + x]; }
};

std::pair<float, float> min_max(const ScenePlane& p);

/// Linear rescale to [0,1]; a constant plane maps to all-zero.
ScenePlane rescale01(const ScenePlane& p);

/// Bilinear sample with clamp-to-edge; coordinates are pixel centers.
float bilinear_sample(const ScenePlane& p, double x, double y);

/// Bilinear resize to (w,h), pixel-center convention, clamp-to-edge.
ScenePlane resize_bilinear(const ScenePlane& p, int w, int h);

/// I = (R+G+B)/3
ScenePlane luminance(const RgbImage& img);

}  // namespace salvis
