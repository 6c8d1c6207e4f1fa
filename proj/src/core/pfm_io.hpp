#pragma once

#include <filesystem>

#include "plane.hpp"

namespace salvis {

/// Single-channel PFM, little-endian (scale line "-1.0"), rows bottom-to-top
/// as the format specifies. Samples may be +inf (the "no geometry" sentinel).
void write_pfm(const std::filesystem::path& path, const ScenePlane& plane);
ScenePlane read_pfm(const std::filesystem::path& path);

}  // namespace salvis
