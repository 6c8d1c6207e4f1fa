#pragma once

#include <filesystem>

#include "attention.hpp"
#include "bundle.hpp"
#include "enhancer.hpp"

namespace salvis {

/// Bundle directory layout: image.png (8-bit RGB), depth.pfm (float meters,
/// +inf = no geometry), labels.png (16-bit grayscale element IDs),
/// elements.json (catalog). All rasters must be pixel-aligned.
SceneBundle load_bundle(const std::filesystem::path& directory);

/// Writes an 8-bit grayscale PNG. With normalize the samples are mapped
/// min -> 0, max -> 255 (constant planes to 0); otherwise they are clamped
/// to [0,1] and scaled by 255. Rounding is half-up.
void save_plane(const ScenePlane& plane, const std::filesystem::path& path, bool normalize);

void save_rgb(const RgbImage& img, const std::filesystem::path& path);

/// Writes enhanced.png, saliency.png, the four conspicuity PNGs, and
/// report.json into out_dir (created if needed).
void save_bundle_outputs(const EnhancementReport& report, const RgbImage& enhanced,
                         const ConspicuitySet& maps, const SaliencyMap& saliency,
                         const std::filesystem::path& out_dir);

ElementCatalog load_catalog(const std::filesystem::path& path);

std::string report_to_json(const EnhancementReport& report);

}  // namespace salvis
