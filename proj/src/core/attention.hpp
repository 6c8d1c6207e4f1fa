#pragma once

#include <vector>

#include "bundle.hpp"
#include "plane.hpp"

namespace salvis {

/// Dyadic Gaussian pyramid. Level 0 is full resolution; each level is the
/// previous one blurred with the separable binomial [1,4,6,4,1]/16
/// (clamp-to-edge) and decimated 2x. At most 9 levels.
struct Pyramid {
  std::vector<ScenePlane> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
};

/// The four normalized conspicuity maps, full resolution, samples in [0,1].
struct ConspicuitySet {
  ScenePlane intensity;
  ScenePlane color;
  ScenePlane orientation;
  ScenePlane depth;
};

Pyramid gaussian_pyramid(const ScenePlane& plane);

/// Across-scale difference |upsample(level s) - level c| at level-c
/// resolution. Requires c in {2,3,4}, s = c + {3,4}, s < level count.
ScenePlane center_surround(const Pyramid& pyr, int c, int s);

/// Itti's N(.): rescale to [0,1], then multiply by (M - mbar)^2 where M = 1
/// and mbar is the mean of the local maxima found on a 16x16-cell grid,
/// excluding the cell that holds the global maximum. Constant planes map to
/// all-zero.
ScenePlane normalize_map(const ScenePlane& plane);

/// The (c,s) pairs usable with a pyramid of `level_count` levels, from the
/// canonical set c in {2,3,4}, delta in {3,4}.
std::vector<std::pair<int, int>> usable_scale_pairs(int level_count);

/// Shared channel pipeline: for every feature plane, sum N(center_surround)
/// over the usable (c,s) pairs, upsampled to (out_w, out_h); rescale the sum
/// to [0,1].
ScenePlane across_scale_channel(const std::vector<const ScenePlane*>& features, int out_w,
                                int out_h);

ScenePlane intensity_conspicuity(const RgbImage& img);
ScenePlane color_conspicuity(const RgbImage& img);
ScenePlane depth_conspicuity(const DepthMap& depth);

/// Separable binomial blur [1,4,6,4,1]/16 with clamp-to-edge borders.
ScenePlane binomial_blur(const ScenePlane& plane);

}  // namespace salvis
