#include "plane.hpp"

#include <cmath>

namespace salvis {

std::pair<float, float> min_max(const ScenePlane& p) {
  float lo = p.data.empty() ? 0.0f : p.data[0];
  float hi = lo;
  for (float v : p.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

ScenePlane rescale01(const ScenePlane& p) {
  auto [lo, hi] = min_max(p);
  ScenePlane out(p.width, p.height);
  if (hi <= lo) return out;
  const float inv = 1.0f / (hi - lo);
  for (size_t i = 0; i < p.data.size(); ++i) out.data[i] = (p.data[i] - lo) * inv;
  return out;
}

float bilinear_sample(const ScenePlane& p, double x, double y) {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const double v00 = p.at_clamped(x0, y0);
  const double v10 = p.at_clamped(x0 + 1, y0);
  const double v01 = p.at_clamped(x0, y0 + 1);
  const double v11 = p.at_clamped(x0 + 1, y0 + 1);
  const double top = v00 + (v10 - v00) * fx;
  const double bot = v01 + (v11 - v01) * fx;
  return static_cast<float>(top + (bot - top) * fy);
}

ScenePlane resize_bilinear(const ScenePlane& p, int w, int h) {
  ScenePlane out(w, h);
  const double sx = static_cast<double>(p.width) / w;
  const double sy = static_cast<double>(p.height) / h;
  for (int y = 0; y < h; ++y) {
    const double srcy = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < w; ++x) {
      const double srcx = (x + 0.5) * sx - 0.5;
      out.at(x, y) = bilinear_sample(p, srcx, srcy);
    }
  }
  return out;
}

ScenePlane luminance(const RgbImage& img) {
  ScenePlane out(img.width(), img.height());
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = (img.r.data[i] + img.g.data[i] + img.b.data[i]) / 3.0f;
  return out;
}

}  // namespace salvis
