#pragma once

#include <string>
#include <vector>

#include "profiles.hpp"
#include "saliency.hpp"

namespace salvis {

/// Mean saliency and mean HSV statistics of the relevant / irrelevant pixel
/// sets. `ge` is the saliency gain s_r / (s_r + s_i).
struct RegionStats {
  double s_r = 0.0;
  double s_i = 0.0;
  double ge = 0.0;
  double mean_hue_r = 0.0;  // circular mean, degrees [0,360); meaningless if !hue_defined
  bool hue_defined = false;
  double mean_sat_r = 0.0;
  double mean_val_r = 0.0;
};

/// One of the four opponent target hues.
struct TargetColor {
  enum class Name { Red, Yellow, Green, Blue };

  Name name = Name::Green;
  double hue = 120.0;

  const char* name_str() const;
  static TargetColor from_name(Name n);
};

struct EnhancementReport {
  struct Iteration {
    int index = 0;
    double ge = 0.0;
  };

  std::vector<Iteration> iterations;  // ge before each recolor pass, plus the final value
  TargetColor target;
  bool converged = false;
  std::string profile;
};

/// Wall-clock stage totals for one enhance run, in milliseconds.
struct StageTimes {
  double vp_ms = 0.0;
  double channels_ms = 0.0;
  double combine_ms = 0.0;
  double recolor_loop_ms = 0.0;
  double total_ms = 0.0;
};

struct EnhanceOutput {
  RgbImage image;
  EnhancementReport report;
  ConspicuitySet maps;     // from the final saliency evaluation
  SaliencyMap saliency;    // ditto
  VanishingPoint vp;       // found=false in baseline mode or when none was detected
};

/// Throws EmptyRelevantRegion when the relevant set has no pixels.
RegionStats region_stats(const SaliencyMap& saliency, const RgbImage& img,
                         const PixelPartition& partition);

/// Quantizes the mean relevant hue to the nearest of red/yellow/green/blue
/// (ties toward the smaller hue) and returns its opponent. Achromatic
/// relevant regions map to green.
TargetColor pick_target(const RegionStats& stats);

/// One Eq.-2 pass: shifts irrelevant pixel hues toward the target by `ge`
/// along the short arc, injects the target hue into achromatic pixels
/// (saturation lifted toward 0.8), and leaves value untouched. Relevant
/// pixels are returned bit-identical.
RgbImage recolor_pass(const RgbImage& img, const PixelPartition& partition,
                      const TargetColor& target, double ge);

constexpr int kDefaultMaxIters = 10;
constexpr double kGainThreshold = 0.5;
constexpr double kStallDelta = 1e-3;

/// Full enhancement loop: saliency, gain, then recolor passes until the
/// relevant set holds the majority of the saliency, the gain stalls, or
/// max_iters passes ran.
EnhanceOutput enhance(const SceneBundle& bundle, const Profile& profile, SaliencyMode mode,
                      int max_iters = kDefaultMaxIters, StageTimes* timing = nullptr);

}  // namespace salvis
