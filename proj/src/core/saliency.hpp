#pragma once

#include <utility>

#include "attention.hpp"
#include "bundle.hpp"
#include "perspective.hpp"

namespace salvis {

struct SaliencyMap {
  ScenePlane plane;  // [0,1], max 1 unless identically 0
};

enum class SaliencyMode { perspective, baseline };

/// S = (N(intensity) + N(color) + N(orientation) + N(depth)) / 4, rescaled so
/// the maximum is 1 (or all-zero).
SaliencyMap combine(const ConspicuitySet& maps);

/// Runs the four channels and combines them. In perspective mode the
/// orientation channel uses the vanishing-point projection (`vp` when the
/// caller already detected it, otherwise detected here); baseline mode uses
/// the fixed-angle Gabor bank.
std::pair<SaliencyMap, ConspicuitySet> compute_saliency(const SceneBundle& bundle,
                                                        SaliencyMode mode,
                                                        const VanishingPoint* vp = nullptr);

}  // namespace salvis
