#pragma once

// Test-only oracles, independent of the library's pyramid path: dense
// (undecimated) binomial blurs and direct Gabor convolution.

#include <filesystem>
#include <vector>

#include "core/plane.hpp"

namespace salvis::test {

/// Dense equivalent of pyramid level k: the binomial kernel applied with
/// dilation 1, 2, ..., 2^(k-1), no decimation. At interior points
/// dense_level(p,k)(2^k x, 2^k y) equals gaussian_pyramid(p).levels[k](x,y).
ScenePlane dense_level(const ScenePlane& plane, int k);

/// |dense_level(c) - dense_level(s)| at full resolution: a brute-force
/// center-surround field for locating expected response bands.
ScenePlane dense_dog(const ScenePlane& plane, int c, int s);

/// Direct (full-image) convolution with the same Gabor parameterization the
/// library pins: wavelength 8, aspect 0.5, phase 0, zero-mean, |response|.
ScenePlane direct_gabor(const ScenePlane& plane, double dir_cos, double dir_sin);

/// Fresh unique directory under the system temp dir.
std::filesystem::path fresh_temp_dir(const std::string& tag);

/// Row-major argmax index.
size_t argmax(const ScenePlane& plane);

}  // namespace salvis::test
