#include "perspective.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace salvis {

namespace {

constexpr int kAngularBins = 720;
constexpr int kMinImageDim = 64;
constexpr int kThetaBins = 180;        // 1 degree Hough resolution
constexpr int kHoughVoteThreshold = 30;
constexpr int kHoughMaxGap = 3;
constexpr double kAxisExclusionDeg = 5.0;
constexpr double kMinSegments = 10;
constexpr double kPeakShare = 0.05;
constexpr double kAccumCell = 4.0;  // px per accumulator cell
constexpr double kPi = std::numbers::pi;

ScenePlane sobel_magnitude(const ScenePlane& p) {
  ScenePlane mag(p.width, p.height);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      const float a = p.at_clamped(x - 1, y - 1), b = p.at_clamped(x, y - 1),
                  c = p.at_clamped(x + 1, y - 1);
      const float d = p.at_clamped(x - 1, y), f = p.at_clamped(x + 1, y);
      const float g = p.at_clamped(x - 1, y + 1), h = p.at_clamped(x, y + 1),
                  i = p.at_clamped(x + 1, y + 1);
      const float gx = (c + 2.0f * f + i) - (a + 2.0f * d + g);
      const float gy = (g + 2.0f * h + i) - (a + 2.0f * b + c);
      mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return mag;
}

struct HoughState {
  int width, height;
  std::vector<uint8_t> present;  // still-unconsumed edge pixel
  std::vector<uint8_t> voted;
  std::vector<int> accum;  // kThetaBins x rho bins
  int rho_bins;
  std::vector<float> cos_t, sin_t;

  HoughState(int w, int h) : width(w), height(h) {
    present.assign(static_cast<size_t>(w) * h, 0);
    voted.assign(static_cast<size_t>(w) * h, 0);
    rho_bins = 2 * (static_cast<int>(std::ceil(std::hypot(w, h))) + 1);
    accum.assign(static_cast<size_t>(kThetaBins) * rho_bins, 0);
    cos_t.resize(kThetaBins);
    sin_t.resize(kThetaBins);
    for (int t = 0; t < kThetaBins; ++t) {
      cos_t[t] = static_cast<float>(std::cos(t * kPi / kThetaBins));
      sin_t[t] = static_cast<float>(std::sin(t * kPi / kThetaBins));
    }
  }

  int rho_index(int x, int y, int t) const {
    const int r = static_cast<int>(std::lround(x * cos_t[t] + y * sin_t[t]));
    return r + rho_bins / 2;
  }

  void cast_votes(int x, int y, int dir) {
    for (int t = 0; t < kThetaBins; ++t)
      accum[static_cast<size_t>(t) * rho_bins + rho_index(x, y, t)] += dir;
  }

  int best_theta(int x, int y) const {
    int best = 0, best_votes = -1;
    for (int t = 0; t < kThetaBins; ++t) {
      const int v = accum[static_cast<size_t>(t) * rho_bins + rho_index(x, y, t)];
      if (v > best_votes) {
        best_votes = v;
        best = t;
      }
    }
    return best;
  }
};

}  // namespace

double LineSegment::length() const { return std::hypot(x1 - x0, y1 - y0); }

double LineSegment::orientation_deg() const {
  double deg = std::atan2(y1 - y0, x1 - x0) * 180.0 / kPi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  return deg;
}

std::vector<LineSegment> detect_line_segments(const ScenePlane& lum) {
  const int w = lum.width, h = lum.height;
  ScenePlane mag = sobel_magnitude(lum);

  // Threshold at the 90th percentile of all gradient magnitudes. The cut is
  // scale-relative, so uniform brightness scaling leaves the edge set alone.
  std::vector<float> sorted = mag.data;
  const size_t idx = static_cast<size_t>(0.9 * sorted.size());
  std::nth_element(sorted.begin(), sorted.begin() + idx, sorted.end());
  const float threshold = sorted[idx];

  HoughState st(w, h);
  std::vector<std::pair<int, int>> points;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (mag.at(x, y) > threshold) {
        st.present[static_cast<size_t>(y) * w + x] = 1;
        points.emplace_back(x, y);
      }

  const double min_len = 0.05 * std::hypot(w, h);

  // Fixed-seed shuffle keeps the probabilistic Hough deterministic.
  std::mt19937 rng(0x5a11e57u);
  for (size_t i = points.size(); i > 1; --i) {
    const size_t j = rng() % i;
    std::swap(points[i - 1], points[j]);
  }

  std::vector<LineSegment> segments;
  for (const auto& [px, py] : points) {
    if (!st.present[static_cast<size_t>(py) * w + px]) continue;
    st.cast_votes(px, py, +1);
    st.voted[static_cast<size_t>(py) * w + px] = 1;

    const int theta = st.best_theta(px, py);
    if (st.accum[static_cast<size_t>(theta) * st.rho_bins + st.rho_index(px, py, theta)] <
        kHoughVoteThreshold)
      continue;

    // Walk the candidate line both ways, tolerating small gaps.
    const double dirx = -st.sin_t[theta], diry = st.cos_t[theta];
    std::array<std::pair<int, int>, 2> ends{};
    for (int sense = 0; sense < 2; ++sense) {
      const double sx = sense == 0 ? dirx : -dirx;
      const double sy = sense == 0 ? diry : -diry;
      int gap = 0;
      int lx = px, ly = py;
      for (int step = 1;; ++step) {
        const int cx = static_cast<int>(std::lround(px + sx * step));
        const int cy = static_cast<int>(std::lround(py + sy * step));
        if (cx < 0 || cy < 0 || cx >= w || cy >= h) break;
        if (st.present[static_cast<size_t>(cy) * w + cx]) {
          gap = 0;
          lx = cx;
          ly = cy;
        } else if (++gap > kHoughMaxGap) {
          break;
        }
      }
      ends[sense] = {lx, ly};
    }

    // Consume the walked pixels whether or not the segment qualifies, and
    // cancel the votes of those that had voted.
    const double seg_len = std::hypot(ends[1].first - ends[0].first,
                                      ends[1].second - ends[0].second);
    for (int sense = 0; sense < 2; ++sense) {
      const double sx = sense == 0 ? dirx : -dirx;
      const double sy = sense == 0 ? diry : -diry;
      const int nsteps = static_cast<int>(std::lround(
          std::hypot(ends[sense].first - px, ends[sense].second - py)));
      for (int step = sense == 0 ? 0 : 1; step <= nsteps; ++step) {
        const int cx = static_cast<int>(std::lround(px + sx * step));
        const int cy = static_cast<int>(std::lround(py + sy * step));
        if (cx < 0 || cy < 0 || cx >= w || cy >= h) break;
        const size_t at = static_cast<size_t>(cy) * w + cx;
        if (st.present[at]) {
          st.present[at] = 0;
          if (st.voted[at]) st.cast_votes(cx, cy, -1);
        }
      }
    }

    if (seg_len >= min_len)
      segments.push_back({static_cast<double>(ends[0].first), static_cast<double>(ends[0].second),
                          static_cast<double>(ends[1].first),
                          static_cast<double>(ends[1].second)});
  }
  return segments;
}

VanishingPoint detect_vanishing_point(const RgbImage& img) {
  const int w = img.width(), h = img.height();
  if (std::min(w, h) < kMinImageDim)
    throw Error(Errc::image_too_small, "vanishing point detection needs >= 64 px per side");

  const std::vector<LineSegment> segments = detect_line_segments(luminance(img));
  VanishingPoint vp;
  if (segments.size() < kMinSegments) return vp;

  // Axis-aligned segments meet at infinity, not at the VP; drop them.
  std::vector<const LineSegment*> voting;
  for (const auto& s : segments) {
    const double deg = s.orientation_deg();
    const double horiz = std::min(deg, 180.0 - deg);
    const double vert = std::fabs(deg - 90.0);
    if (horiz < kAxisExclusionDeg || vert < kAxisExclusionDeg) continue;
    voting.push_back(&s);
  }

  // Accumulate pairwise line intersections over 3x the image extent.
  const int cells_x = static_cast<int>(std::ceil(3.0 * w / kAccumCell));
  const int cells_y = static_cast<int>(std::ceil(3.0 * h / kAccumCell));
  std::vector<double> accum(static_cast<size_t>(cells_x) * cells_y, 0.0);
  double total = 0.0;
  for (size_t i = 0; i < voting.size(); ++i) {
    const LineSegment& a = *voting[i];
    const double adx = a.x1 - a.x0, ady = a.y1 - a.y0;
    for (size_t j = i + 1; j < voting.size(); ++j) {
      const LineSegment& b = *voting[j];
      const double bdx = b.x1 - b.x0, bdy = b.y1 - b.y0;
      const double denom = adx * bdy - ady * bdx;
      if (std::fabs(denom) < 1e-9) continue;
      const double t = ((b.x0 - a.x0) * bdy - (b.y0 - a.y0) * bdx) / denom;
      const double ix = a.x0 + t * adx;
      const double iy = a.y0 + t * ady;
      const int cx = static_cast<int>(std::floor((ix + w) / kAccumCell));
      const int cy = static_cast<int>(std::floor((iy + h) / kAccumCell));
      if (cx < 0 || cy < 0 || cx >= cells_x || cy >= cells_y) continue;
      const double weight = a.length() * b.length();
      accum[static_cast<size_t>(cy) * cells_x + cx] += weight;
      total += weight;
    }
  }
  if (total <= 0.0) return vp;

  size_t peak = 0;
  for (size_t i = 1; i < accum.size(); ++i)
    if (accum[i] > accum[peak]) peak = i;
  if (accum[peak] < kPeakShare * total) return vp;

  // Refine to subpixel by the vote centroid of the 3x3 neighborhood.
  const int pcx = static_cast<int>(peak % cells_x);
  const int pcy = static_cast<int>(peak / cells_x);
  double wsum = 0.0, xsum = 0.0, ysum = 0.0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const int cx = pcx + dx, cy = pcy + dy;
      if (cx < 0 || cy < 0 || cx >= cells_x || cy >= cells_y) continue;
      const double v = accum[static_cast<size_t>(cy) * cells_x + cx];
      wsum += v;
      xsum += v * ((cx + 0.5) * kAccumCell - w);
      ysum += v * ((cy + 0.5) * kAccumCell - h);
    }
  }
  vp.found = true;
  vp.x = xsum / wsum;
  vp.y = ysum / wsum;
  vp.score = accum[peak];
  return vp;
}

PolarFrame polar_project(const ScenePlane& plane, const VanishingPoint& vp) {
  if (!vp.found) throw Error(Errc::no_vanishing_point, "polar projection needs a vanishing point");
  const int w = plane.width, h = plane.height;
  double max_dist = 0.0;
  for (const auto& [cx, cy] : {std::pair<double, double>{0, 0},
                               {static_cast<double>(w - 1), 0.0},
                               {0.0, static_cast<double>(h - 1)},
                               {static_cast<double>(w - 1), static_cast<double>(h - 1)}})
    max_dist = std::max(max_dist, std::hypot(cx - vp.x, cy - vp.y));

  PolarFrame frame;
  frame.angular_bins = kAngularBins;
  frame.radial_bins = std::max(1, static_cast<int>(std::ceil(max_dist)));
  frame.origin = vp;
  frame.plane = ScenePlane(frame.radial_bins, frame.angular_bins);
  frame.valid = ScenePlane(frame.radial_bins, frame.angular_bins);
  for (int a = 0; a < frame.angular_bins; ++a) {
    const double theta = a * (2.0 * kPi / kAngularBins);
    const double ct = std::cos(theta), stt = std::sin(theta);
    for (int r = 0; r < frame.radial_bins; ++r) {
      const double px = vp.x + r * ct;
      const double py = vp.y + r * stt;
      if (px < 0.0 || py < 0.0 || px > w - 1.0 || py > h - 1.0) continue;
      frame.plane.at(r, a) = bilinear_sample(plane, px, py);
      frame.valid.at(r, a) = 1.0f;
    }
  }
  return frame;
}

ScenePlane polar_unproject(const PolarFrame& frame, int width, int height) {
  ScenePlane out(width, height);
  const int rb = frame.radial_bins, ab = frame.angular_bins;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x - frame.origin.x, dy = y - frame.origin.y;
      const double radius = std::hypot(dx, dy);
      if (radius > rb - 1.0) continue;
      double theta = std::atan2(dy, dx);
      if (theta < 0.0) theta += 2.0 * kPi;
      const double row = theta * ab / (2.0 * kPi);
      const int a0 = static_cast<int>(std::floor(row)) % ab;
      const int a1 = (a0 + 1) % ab;
      const double fa = row - std::floor(row);
      const int r0 = std::min(static_cast<int>(std::floor(radius)), rb - 1);
      const int r1 = std::min(r0 + 1, rb - 1);
      const double fr = radius - r0;

      // Weighted bilinear over the valid taps only.
      const std::array<std::tuple<int, int, double>, 4> taps{
          std::tuple<int, int, double>{r0, a0, (1 - fr) * (1 - fa)},
          {r1, a0, fr * (1 - fa)},
          {r0, a1, (1 - fr) * fa},
          {r1, a1, fr * fa}};
      double acc = 0.0, wacc = 0.0;
      for (const auto& [r, a, tw] : taps) {
        if (frame.valid.at(r, a) <= 0.0f || tw <= 0.0) continue;
        acc += tw * frame.plane.at(r, a);
        wacc += tw;
      }
      if (wacc > 0.0) out.at(x, y) = static_cast<float>(acc / wacc);
    }
  }
  return out;
}

namespace {

// Pyramid over the angle axis only: rows halve, columns stay. Values are
// carried with a weight plane (normalized convolution) so that invalid polar
// samples never create fake contrast. The angle axis wraps.
struct AnglePyramid {
  std::vector<ScenePlane> value;
  std::vector<ScenePlane> weight;
};

void blur_angle_wrap(const ScenePlane& src, ScenePlane& dst) {
  const int w = src.width, h = src.height;
  for (int y = 0; y < h; ++y) {
    const int ym2 = (y - 2 + h) % h, ym1 = (y - 1 + h) % h;
    const int yp1 = (y + 1) % h, yp2 = (y + 2) % h;
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

constexpr float kWeightEps = 1e-6f;

AnglePyramid angle_pyramid(const ScenePlane& plane, const ScenePlane& valid) {
  AnglePyramid pyr;
  ScenePlane v(plane.width, plane.height);
  for (size_t i = 0; i < v.data.size(); ++i) v.data[i] = plane.data[i] * valid.data[i];
  ScenePlane m = valid;
  // Level 0 stores the normalized value (= plane where valid).
  pyr.value.push_back(plane);
  pyr.weight.push_back(valid);
  int rows = plane.height;
  while (static_cast<int>(pyr.value.size()) < 9 && rows / 2 >= 1) {
    ScenePlane bv(v.width, v.height), bm(m.width, m.height);
    blur_angle_wrap(v, bv);
    blur_angle_wrap(m, bm);
    rows /= 2;
    ScenePlane nv(v.width, rows), nm(v.width, rows), nvr(v.width, rows);
    for (int y = 0; y < rows; ++y) {
      for (int x = 0; x < v.width; ++x) {
        const float wv = bm.at(x, 2 * y);
        nm.at(x, y) = wv;
        nv.at(x, y) = bv.at(x, 2 * y);
        nvr.at(x, y) = wv > kWeightEps ? bv.at(x, 2 * y) / wv : 0.0f;
      }
    }
    pyr.value.push_back(nvr);
    pyr.weight.push_back(nm);
    v = std::move(nv);
    m = std::move(nm);
  }
  return pyr;
}

// Linear interpolation along the (wrapping) angle axis onto `rows` rows.
ScenePlane upsample_angle(const ScenePlane& src, int rows) {
  ScenePlane out(src.width, rows);
  for (int y = 0; y < rows; ++y) {
    double u = (y + 0.5) * src.height / rows - 0.5;
    u = std::fmod(u, static_cast<double>(src.height));
    if (u < 0.0) u += src.height;
    const int i0 = static_cast<int>(std::floor(u)) % src.height;
    const int i1 = (i0 + 1) % src.height;
    const float f = static_cast<float>(u - std::floor(u));
    const float* a = &src.data[static_cast<size_t>(i0) * src.width];
    const float* b = &src.data[static_cast<size_t>(i1) * src.width];
    float* o = &out.data[static_cast<size_t>(y) * src.width];
    for (int x = 0; x < src.width; ++x) o[x] = a[x] + (b[x] - a[x]) * f;
  }
  return out;
}

}  // namespace

ScenePlane perspective_orientation_conspicuity(const RgbImage& img, const VanishingPoint& vp) {
  if (!vp.found) return gabor_orientation_conspicuity(img);

  const ScenePlane lum = luminance(img);
  const PolarFrame frame = polar_project(lum, vp);
  const AnglePyramid pyr = angle_pyramid(frame.plane, frame.valid);
  const int levels = static_cast<int>(pyr.value.size());

  ScenePlane sum(frame.radial_bins, frame.angular_bins);
  for (const auto& [c, s] : usable_scale_pairs(levels)) {
    const ScenePlane& center = pyr.value[c];
    const ScenePlane surround = upsample_angle(pyr.value[s], center.height);
    const ScenePlane sweight = upsample_angle(pyr.weight[s], center.height);
    ScenePlane cs(center.width, center.height);
    for (size_t i = 0; i < cs.data.size(); ++i) {
      if (pyr.weight[c].data[i] > kWeightEps && sweight.data[i] > kWeightEps)
        cs.data[i] = std::fabs(center.data[i] - surround.data[i]);
    }
    const ScenePlane n = upsample_angle(normalize_map(cs), frame.angular_bins);
    for (size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += n.data[i];
  }

  // The final N(.) already leaves the map in [0,1]; its suppressed scale is
  // kept (a corridor of purely perspective-aligned edges stays near zero).
  PolarFrame result;
  result.radial_bins = frame.radial_bins;
  result.angular_bins = frame.angular_bins;
  result.origin = vp;
  result.plane = normalize_map(sum);
  result.valid = frame.valid;
  ScenePlane out = polar_unproject(result, img.width(), img.height());
  for (float& v : out.data) v = std::clamp(v, 0.0f, 1.0f);
  return out;
}

namespace {

// 19x19 zero-mean Gabor kernels, wavelength 8 px, aspect 0.5, phase 0.
// Exact direction cosines keep the four kernels rotations of one another.
struct GaborBank {
  static constexpr int kRadius = 9;
  std::array<std::vector<float>, 4> kernels;

  GaborBank() {
    const double lambda = 8.0, gamma = 0.5;
    const double sigma = 0.56 * lambda;
    const double rt2 = std::sqrt(0.5);
    const std::array<std::pair<double, double>, 4> dirs{
        std::pair<double, double>{1.0, 0.0}, {rt2, rt2}, {0.0, 1.0}, {-rt2, rt2}};
    for (int k = 0; k < 4; ++k) {
      auto& kern = kernels[k];
      kern.resize((2 * kRadius + 1) * (2 * kRadius + 1));
      const auto [ct, st] = dirs[k];
      double mean = 0.0;
      for (int y = -kRadius; y <= kRadius; ++y) {
        for (int x = -kRadius; x <= kRadius; ++x) {
          const double xp = x * ct + y * st;
          const double yp = -x * st + y * ct;
          const double g = std::exp(-(xp * xp + gamma * gamma * yp * yp) / (2.0 * sigma * sigma)) *
                           std::cos(2.0 * kPi * xp / lambda);
          kern[(y + kRadius) * (2 * kRadius + 1) + (x + kRadius)] = static_cast<float>(g);
          mean += g;
        }
      }
      mean /= kern.size();
      for (float& v : kern) v -= static_cast<float>(mean);
    }
  }
};

ScenePlane gabor_energy(const ScenePlane& lum, const std::vector<float>& kernel, int radius) {
  const int w = lum.width, h = lum.height;
  ScenePlane out(w, h);
  const int kw = 2 * radius + 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      if (x >= radius && y >= radius && x + radius < w && y + radius < h) {
        for (int ky = -radius; ky <= radius; ++ky) {
          const float* row = &lum.data[static_cast<size_t>(y + ky) * w + x];
          const float* kr = &kernel[static_cast<size_t>(ky + radius) * kw + radius];
          for (int kx = -radius; kx <= radius; ++kx) acc += row[kx] * kr[kx];
        }
      } else {
        for (int ky = -radius; ky <= radius; ++ky)
          for (int kx = -radius; kx <= radius; ++kx)
            acc += lum.at_clamped(x + kx, y + ky) *
                   kernel[static_cast<size_t>(ky + radius) * kw + (kx + radius)];
      }
      out.at(x, y) = static_cast<float>(std::fabs(acc));
    }
  }
  return out;
}

}  // namespace

ScenePlane gabor_orientation_conspicuity(const RgbImage& img) {
  static const GaborBank bank;
  const ScenePlane lum = luminance(img);
  std::array<ScenePlane, 4> responses;
  for (int k = 0; k < 4; ++k) responses[k] = gabor_energy(lum, bank.kernels[k], GaborBank::kRadius);
  return across_scale_channel({&responses[0], &responses[1], &responses[2], &responses[3]},
                              img.width(), img.height());
}

}  // namespace salvis
