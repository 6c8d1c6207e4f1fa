#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "plane.hpp"

namespace salvis {

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<uint8_t>& pixels);
void write_png_gray16(const std::filesystem::path& path, int width, int height,
                      const std::vector<uint16_t>& pixels);
void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::vector<uint8_t>& interleaved);

/// Reads an 8-bit PNG as RGB in [0,1] (palette expanded, alpha stripped,
/// grayscale promoted).
RgbImage read_png_rgb8(const std::filesystem::path& path);

/// Reads a PNG that must be 16-bit single-channel grayscale.
LabelMask read_png_gray16(const std::filesystem::path& path);

/// Reads an 8-bit grayscale PNG as floats in [0,1].
ScenePlane read_png_gray8(const std::filesystem::path& path);

}  // namespace salvis
