#include "saliency.hpp"

namespace salvis {

SaliencyMap combine(const ConspicuitySet& maps) {
  if (!maps.intensity.same_size(maps.color) || !maps.intensity.same_size(maps.orientation) ||
      !maps.intensity.same_size(maps.depth))
    throw Error(Errc::dimension_mismatch, "conspicuity maps disagree on size");

  ScenePlane sum(maps.intensity.width, maps.intensity.height);
  for (const ScenePlane* m : {&maps.intensity, &maps.color, &maps.orientation, &maps.depth}) {
    ScenePlane n = normalize_map(*m);
    for (size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += 0.25f * n.data[i];
  }
  return SaliencyMap{rescale01(sum)};
}

std::pair<SaliencyMap, ConspicuitySet> compute_saliency(const SceneBundle& bundle,
                                                        SaliencyMode mode,
                                                        const VanishingPoint* vp) {
  ConspicuitySet maps;
  maps.intensity = intensity_conspicuity(bundle.image);
  maps.color = color_conspicuity(bundle.image);
  maps.depth = depth_conspicuity(bundle.depth);
  if (mode == SaliencyMode::baseline) {
    maps.orientation = gabor_orientation_conspicuity(bundle.image);
  } else {
    VanishingPoint detected;
    if (!vp) {
      detected = detect_vanishing_point(bundle.image);
      vp = &detected;
    }
    maps.orientation = perspective_orientation_conspicuity(bundle.image, *vp);
  }
  return {combine(maps), std::move(maps)};
}

}  // namespace salvis
