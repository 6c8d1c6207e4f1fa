#pragma once

namespace salvis {

/// Hue in degrees [0,360), saturation and value in [0,1].
struct Hsv {
  float h = 0.0f;
  float s = 0.0f;
  float v = 0.0f;
};

Hsv rgb_to_hsv(float r, float g, float b);
void hsv_to_rgb(const Hsv& c, float& r, float& g, float& b);

/// Signed shortest-arc hue difference (to - from), in (-180, 180].
double hue_delta(double from_deg, double to_deg);

/// Wrap an angle in degrees into [0, 360).
double wrap_hue(double deg);

}  // namespace salvis
