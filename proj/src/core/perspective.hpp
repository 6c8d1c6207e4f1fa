#pragma once

#include <vector>

#include "attention.hpp"
#include "plane.hpp"

namespace salvis {

/// Dominant vanishing point in subpixel image coordinates. May lie outside
/// the frame (the vote accumulator covers 3x the image extent).
struct VanishingPoint {
  double x = 0.0;
  double y = 0.0;
  double score = 0.0;  // accumulated votes in the peak cell
  bool found = false;
};

/// Image resampled around a vanishing point: rows = angle (720 bins over
/// [0, 2pi)), columns = radius (1 px per bin). Samples that fall outside the
/// source image are invalid, not zero.
struct PolarFrame {
  int radial_bins = 0;
  int angular_bins = 0;
  VanishingPoint origin;
  ScenePlane plane;  // angular_bins rows x radial_bins columns
  ScenePlane valid;  // 1 = sample inside the source image
};

struct LineSegment {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double length() const;
  /// Orientation in degrees, folded into [0, 180).
  double orientation_deg() const;
};

/// Line segments from a luminance plane: Sobel gradients, edges above the
/// 90th-percentile magnitude, probabilistic Hough with a fixed seed so the
/// result is deterministic.
std::vector<LineSegment> detect_line_segments(const ScenePlane& lum);

VanishingPoint detect_vanishing_point(const RgbImage& img);

PolarFrame polar_project(const ScenePlane& plane, const VanishingPoint& vp);
ScenePlane polar_unproject(const PolarFrame& frame, int width, int height);

/// Orientation conspicuity from the angle-axis contrast of the polar frame;
/// falls back to the fixed-angle Gabor channel when no VP was found.
ScenePlane perspective_orientation_conspicuity(const RgbImage& img, const VanishingPoint& vp);

/// Baseline Itti orientation channel: Gabor energy at 0/45/90/135 degrees.
ScenePlane gabor_orientation_conspicuity(const RgbImage& img);

}  // namespace salvis
