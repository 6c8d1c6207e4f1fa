#include "hsv.hpp"

#include <algorithm>
#include <cmath>

namespace salvis {

Hsv rgb_to_hsv(float r, float g, float b) {
  const float mx = std::max({r, g, b});
  const float mn = std::min({r, g, b});
  const float d = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0f ? d / mx : 0.0f;
  if (d <= 0.0f) {
    out.h = 0.0f;
    return out;
  }
  float h;
  if (mx == r)
    h = 60.0f * ((g - b) / d);
  else if (mx == g)
    h = 60.0f * ((b - r) / d + 2.0f);
  else
    h = 60.0f * ((r - g) / d + 4.0f);
  if (h < 0.0f) h += 360.0f;
  if (h >= 360.0f) h -= 360.0f;
  out.h = h;
  return out;
}

void hsv_to_rgb(const Hsv& c, float& r, float& g, float& b) {
  const float v = c.v;
  if (c.s <= 0.0f) {
    r = g = b = v;
    return;
  }
  float h = c.h / 60.0f;
  if (h >= 6.0f) h -= 6.0f;
  if (h < 0.0f) h += 6.0f;
  const int sector = static_cast<int>(h);
  const float f = h - sector;
  const float p = v * (1.0f - c.s);
  const float q = v * (1.0f - c.s * f);
  const float t = v * (1.0f - c.s * (1.0f - f));
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
}

double hue_delta(double from_deg, double to_deg) {
  double d = std::fmod(to_deg - from_deg, 360.0);
  if (d <= -180.0) d += 360.0;
  if (d > 180.0) d -= 360.0;
  return d;
}

double wrap_hue(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) h += 360.0;
  return h;
}

}  // namespace salvis
