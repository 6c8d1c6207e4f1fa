#include "enhancer.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "hsv.hpp"

namespace salvis {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr float kAchromaticSat = 0.1f;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

const char* TargetColor::name_str() const {
  switch (name) {
    case Name::Red: return "Red";
    case Name::Yellow: return "Yellow";
    case Name::Green: return "Green";
    case Name::Blue: return "Blue";
  }
  return "Green";
}

TargetColor TargetColor::from_name(Name n) {
  switch (n) {
    case Name::Red: return {Name::Red, 0.0};
    case Name::Yellow: return {Name::Yellow, 60.0};
    case Name::Green: return {Name::Green, 120.0};
    case Name::Blue: return {Name::Blue, 240.0};
  }
  return {Name::Green, 120.0};
}

RegionStats region_stats(const SaliencyMap& saliency, const RgbImage& img,
                         const PixelPartition& partition) {
  if (partition.relevant_count == 0)
    throw Error(Errc::empty_relevant_region, "no relevant pixels for this profile in this view");

  RegionStats st;
  double sal_r = 0.0, sal_i = 0.0;
  double sat_sum = 0.0, val_sum = 0.0;
  double hue_cos = 0.0, hue_sin = 0.0;
  size_t chromatic = 0;
  for (size_t i = 0; i < partition.relevant.size(); ++i) {
    if (partition.relevant[i]) {
      sal_r += saliency.plane.data[i];
      const Hsv hsv = rgb_to_hsv(img.r.data[i], img.g.data[i], img.b.data[i]);
      sat_sum += hsv.s;
      val_sum += hsv.v;
      if (hsv.s >= kAchromaticSat) {
        hue_cos += std::cos(hsv.h * kDeg);
        hue_sin += std::sin(hsv.h * kDeg);
        ++chromatic;
      }
    } else {
      sal_i += saliency.plane.data[i];
    }
  }
  st.s_r = sal_r / partition.relevant_count;
  st.s_i = partition.irrelevant_count > 0 ? sal_i / partition.irrelevant_count : 0.0;
  // Neither set is salient: treat as balanced, nothing to enhance.
  st.ge = (st.s_r + st.s_i) > 0.0 ? st.s_r / (st.s_r + st.s_i) : 0.5;
  st.mean_sat_r = sat_sum / partition.relevant_count;
  st.mean_val_r = val_sum / partition.relevant_count;
  st.hue_defined = chromatic > 0;
  if (st.hue_defined)
    st.mean_hue_r = wrap_hue(std::atan2(hue_sin, hue_cos) / kDeg);
  return st;
}

TargetColor pick_target(const RegionStats& stats) {
  if (!stats.hue_defined) return TargetColor::from_name(TargetColor::Name::Green);

  constexpr double hues[4] = {0.0, 60.0, 120.0, 240.0};
  constexpr TargetColor::Name opposites[4] = {
      TargetColor::Name::Green,   // red ->
      TargetColor::Name::Blue,    // yellow ->
      TargetColor::Name::Red,     // green ->
      TargetColor::Name::Yellow,  // blue ->
  };
  int best = 0;
  double best_dist = 1e9;
  for (int i = 0; i < 4; ++i) {
    const double d = std::fabs(hue_delta(stats.mean_hue_r, hues[i]));
    if (d < best_dist - 1e-12) {  // ties keep the smaller hue
      best_dist = d;
      best = i;
    }
  }
  return TargetColor::from_name(opposites[best]);
}

RgbImage recolor_pass(const RgbImage& img, const PixelPartition& partition,
                      const TargetColor& target, double ge) {
  RgbImage out = img;
  const float gain = static_cast<float>(ge);
  for (size_t i = 0; i < partition.relevant.size(); ++i) {
    if (partition.relevant[i]) continue;
    Hsv hsv = rgb_to_hsv(img.r.data[i], img.g.data[i], img.b.data[i]);
    if (hsv.s < kAchromaticSat) {
      // Black/white filter: inject the target hue directly.
      hsv.h = static_cast<float>(target.hue);
      hsv.s = hsv.s + gain * (0.8f - hsv.s);
    } else {
      hsv.h = static_cast<float>(wrap_hue(hsv.h + ge * hue_delta(hsv.h, target.hue)));
    }
    hsv_to_rgb(hsv, out.r.data[i], out.g.data[i], out.b.data[i]);
  }
  return out;
}

EnhanceOutput enhance(const SceneBundle& bundle, const Profile& profile, SaliencyMode mode,
                      int max_iters, StageTimes* timing) {
  if (max_iters < 1) throw Error(Errc::invalid_argument, "max_iters must be >= 1");

  const auto t_start = Clock::now();
  StageTimes local{};
  StageTimes& times = timing ? *timing : local;
  times = StageTimes{};

  const RelevanceMap relevance = classify(bundle.catalog, profile);
  const PixelPartition partition = relevance_masks(bundle.labels, relevance);

  // The VP depends on scene geometry, which recoloring does not move, so it
  // is detected once on the input image and reused across iterations.
  VanishingPoint vp;
  if (mode == SaliencyMode::perspective) {
    const auto t0 = Clock::now();
    vp = detect_vanishing_point(bundle.image);
    times.vp_ms = ms_since(t0);
  }

  auto evaluate = [&](const SceneBundle& b, bool first) {
    const auto t0 = Clock::now();
    ConspicuitySet maps;
    maps.intensity = intensity_conspicuity(b.image);
    maps.color = color_conspicuity(b.image);
    maps.depth = depth_conspicuity(b.depth);
    maps.orientation = mode == SaliencyMode::baseline
                           ? gabor_orientation_conspicuity(b.image)
                           : perspective_orientation_conspicuity(b.image, vp);
    const double ch_ms = ms_since(t0);
    const auto t1 = Clock::now();
    SaliencyMap sal = combine(maps);
    if (first) {
      times.channels_ms = ch_ms;
      times.combine_ms = ms_since(t1);
    }
    return std::make_pair(std::move(sal), std::move(maps));
  };

  SceneBundle current = bundle;
  auto [saliency, maps] = evaluate(current, true);
  RegionStats stats = region_stats(saliency, current.image, partition);

  EnhanceOutput out;
  out.report.profile = profile.name;
  out.report.target = pick_target(stats);
  out.report.iterations.push_back({0, stats.ge});

  const auto t_loop = Clock::now();
  if (stats.ge < kGainThreshold) {
    for (int pass = 0; pass < max_iters; ++pass) {
      current.image = recolor_pass(current.image, partition, out.report.target, stats.ge);
      auto evaluated = evaluate(current, false);
      saliency = std::move(evaluated.first);
      maps = std::move(evaluated.second);
      const double prev_ge = stats.ge;
      stats = region_stats(saliency, current.image, partition);
      out.report.iterations.push_back({pass + 1, stats.ge});
      if (stats.ge >= kGainThreshold) break;
      if (std::fabs(stats.ge - prev_ge) < kStallDelta) break;  // stalled
    }
  }
  times.recolor_loop_ms = ms_since(t_loop);

  out.report.converged = stats.ge >= kGainThreshold;
  out.image = std::move(current.image);
  out.maps = std::move(maps);
  out.saliency = std::move(saliency);
  out.vp = vp;
  times.total_ms = ms_since(t_start);
  return out;
}

}  // namespace salvis
