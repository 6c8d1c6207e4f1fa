#include "attention.hpp"

#include <array>
#include <cmath>

namespace salvis {

namespace {

constexpr int kMaxLevels = 9;
constexpr std::array<std::pair<int, int>, 6> kScalePairs = {
    {{2, 5}, {2, 6}, {3, 6}, {3, 7}, {4, 7}, {4, 8}}};
constexpr int kGridCells = 16;

void blur_pass_h(const ScenePlane& src, ScenePlane& dst) {
  const int w = src.width, h = src.height;
  for (int y = 0; y < h; ++y) {
    const float* row = &src.data[static_cast<size_t>(y) * w];
    float* out = &dst.data[static_cast<size_t>(y) * w];
    for (int x = 0; x < w; ++x) {
      const int xm2 = std::max(x - 2, 0), xm1 = std::max(x - 1, 0);
      const int xp1 = std::min(x + 1, w - 1), xp2 = std::min(x + 2, w - 1);
      out[x] = (row[xm2] + 4.0f * row[xm1] + 6.0f * row[x] + 4.0f * row[xp1] + row[xp2]) *
               (1.0f / 16.0f);
    }
  }
}

void blur_pass_v(const ScenePlane& src, ScenePlane& dst) {
  const int w = src.width, h = src.height;
  for (int y = 0; y < h; ++y) {
    const int ym2 = std::max(y - 2, 0), ym1 = std::max(y - 1, 0);
    const int yp1 = std::min(y + 1, h - 1), yp2 = std::min(y + 2, h - 1);
    const float* r0 = &src.data[static_cast<size_t>(ym2) * w];
    const float* r1 = &src.data[static_cast<size_t>(ym1) * w];
    const float* r2 = &src.data[static_cast<size_t>(y) * w];
    const float* r3 = &src.data[static_cast<size_t>(yp1) * w];
    const float* r4 = &src.data[static_cast<size_t>(yp2) * w];
    float* out = &dst.data[static_cast<size_t>(y) * w];
    for (int x = 0; x < w; ++x)
      out[x] = (r0[x] + 4.0f * r1[x] + 6.0f * r2[x] + 4.0f * r3[x] + r4[x]) * (1.0f / 16.0f);
  }
}

// Grid cell boundaries: round(i * extent / 16). Rounding (not floor) keeps
// the partition symmetric under axis reversal.
int cell_boundary(int i, int extent) {
  return static_cast<int>(std::lround(static_cast<double>(i) * extent / kGridCells));
}

}  // namespace

ScenePlane binomial_blur(const ScenePlane& plane) {
  ScenePlane tmp(plane.width, plane.height);
  ScenePlane out(plane.width, plane.height);
  blur_pass_h(plane, tmp);
  blur_pass_v(tmp, out);
  return out;
}

Pyramid gaussian_pyramid(const ScenePlane& plane) {
  Pyramid pyr;
  pyr.levels.push_back(plane);
  while (pyr.level_count() < kMaxLevels) {
    const ScenePlane& prev = pyr.levels.back();
    const int nw = prev.width / 2, nh = prev.height / 2;
    if (nw < 1 || nh < 1) break;
    ScenePlane blurred = binomial_blur(prev);
    ScenePlane next(nw, nh);
    for (int y = 0; y < nh; ++y)
      for (int x = 0; x < nw; ++x) next.at(x, y) = blurred.at(2 * x, 2 * y);
    pyr.levels.push_back(std::move(next));
  }
  return pyr;
}

ScenePlane center_surround(const Pyramid& pyr, int c, int s) {
  if (c < 2 || c > 4 || (s - c != 3 && s - c != 4) || s >= pyr.level_count())
    throw Error(Errc::invalid_scale_pair,
                "(c=" + std::to_string(c) + ", s=" + std::to_string(s) + ") with " +
                    std::to_string(pyr.level_count()) + " levels");
  const ScenePlane& center = pyr.levels[c];
  ScenePlane surround = resize_bilinear(pyr.levels[s], center.width, center.height);
  ScenePlane out(center.width, center.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::fabs(center.data[i] - surround.data[i]);
  return out;
}

ScenePlane normalize_map(const ScenePlane& plane) {
  ScenePlane scaled = rescale01(plane);
  auto [lo, hi] = min_max(scaled);
  (void)lo;
  if (hi <= 0.0f) return scaled;  // constant input

  // Locate the global maximum (first hit, row-major) and its grid cell.
  size_t peak_idx = 0;
  for (size_t i = 0; i < scaled.data.size(); ++i) {
    if (scaled.data[i] == hi) {
      peak_idx = i;
      break;
    }
  }
  const int peak_x = static_cast<int>(peak_idx % scaled.width);
  const int peak_y = static_cast<int>(peak_idx / scaled.width);

  // Mean of the per-cell local maxima; cells with no structure (constant
  // content) hold no local maximum and are skipped, as is the peak cell.
  double sum = 0.0;
  int count = 0;
  for (int cy = 0; cy < kGridCells; ++cy) {
    const int y0 = cell_boundary(cy, scaled.height), y1 = cell_boundary(cy + 1, scaled.height);
    if (y0 >= y1) continue;
    for (int cx = 0; cx < kGridCells; ++cx) {
      const int x0 = cell_boundary(cx, scaled.width), x1 = cell_boundary(cx + 1, scaled.width);
      if (x0 >= x1) continue;
      if (peak_x >= x0 && peak_x < x1 && peak_y >= y0 && peak_y < y1) continue;
      float cmax = scaled.at(x0, y0), cmin = cmax;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
          const float v = scaled.at(x, y);
          cmax = std::max(cmax, v);
          cmin = std::min(cmin, v);
        }
      if (cmax > cmin) {
        sum += cmax;
        ++count;
      }
    }
  }
  const double mbar = count > 0 ? sum / count : 0.0;
  const float factor = static_cast<float>((1.0 - mbar) * (1.0 - mbar));
  for (float& v : scaled.data) v *= factor;
  return scaled;
}

std::vector<std::pair<int, int>> usable_scale_pairs(int level_count) {
  std::vector<std::pair<int, int>> out;
  for (const auto& [c, s] : kScalePairs)
    if (s < level_count) out.emplace_back(c, s);
  return out;
}

ScenePlane across_scale_channel(const std::vector<const ScenePlane*>& features, int out_w,
                                int out_h) {
  ScenePlane sum(out_w, out_h);
  for (const ScenePlane* feature : features) {
    Pyramid pyr = gaussian_pyramid(*feature);
    for (const auto& [c, s] : usable_scale_pairs(pyr.level_count())) {
      ScenePlane n = normalize_map(center_surround(pyr, c, s));
      ScenePlane up = resize_bilinear(n, out_w, out_h);
      for (size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += up.data[i];
    }
  }
  return rescale01(sum);
}

ScenePlane intensity_conspicuity(const RgbImage& img) {
  ScenePlane lum = luminance(img);
  return across_scale_channel({&lum}, img.width(), img.height());
}

ScenePlane color_conspicuity(const RgbImage& img) {
  const int w = img.width(), h = img.height();
  ScenePlane lum = luminance(img);
  auto [ignored, max_i] = min_max(lum);
  (void)ignored;
  const float gate = 0.1f * max_i;

  // Broadly tuned channels with low-luminance gating, then RG / BY opponent
  // planes. The planes are signed; center_surround takes the magnitude.
  ScenePlane rg(w, h), by(w, h);
  for (size_t i = 0; i < lum.data.size(); ++i) {
    if (lum.data[i] < gate) continue;  // gated pixels stay 0 in both planes
    const float r = img.r.data[i], g = img.g.data[i], b = img.b.data[i];
    const float rr = std::max(0.0f, r - (g + b) * 0.5f);
    const float gg = std::max(0.0f, g - (r + b) * 0.5f);
    const float bb = std::max(0.0f, b - (r + g) * 0.5f);
    const float yy = std::max(0.0f, (r + g) * 0.5f - std::fabs(r - g) * 0.5f - b);
    rg.data[i] = rr - gg;
    by.data[i] = bb - yy;
  }
  return across_scale_channel({&rg, &by}, w, h);
}

ScenePlane depth_conspicuity(const DepthMap& depth) {
  // Invert so near = 1; the affine rescale also removes any global scale.
  auto [lo, hi] = min_max(depth.plane);
  ScenePlane inv(depth.width(), depth.height());
  if (hi > lo) {
    const float span = hi - lo;
    for (size_t i = 0; i < inv.data.size(); ++i)
      inv.data[i] = (hi - depth.plane.data[i]) / span;
  }
  return across_scale_channel({&inv}, depth.width(), depth.height());
}

}  // namespace salvis
