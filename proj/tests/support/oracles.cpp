#include "support/oracles.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace salvis::test {

namespace {

ScenePlane dilated_blur(const ScenePlane& src, int dilation) {
  const int w = src.width, h = src.height;
  ScenePlane tmp(w, h), out(w, h);
  const float k[5] = {1.0f / 16, 4.0f / 16, 6.0f / 16, 4.0f / 16, 1.0f / 16};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int t = -2; t <= 2; ++t) acc += k[t + 2] * src.at_clamped(x + t * dilation, y);
      tmp.at(x, y) = acc;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int t = -2; t <= 2; ++t) acc += k[t + 2] * tmp.at_clamped(x, y + t * dilation);
      out.at(x, y) = acc;
    }
  return out;
}

}  // namespace

ScenePlane dense_level(const ScenePlane& plane, int k) {
  ScenePlane out = plane;
  for (int j = 0; j < k; ++j) out = dilated_blur(out, 1 << j);
  return out;
}

ScenePlane dense_dog(const ScenePlane& plane, int c, int s) {
  const ScenePlane center = dense_level(plane, c);
  const ScenePlane surround = dense_level(plane, s);
  ScenePlane out(plane.width, plane.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::fabs(center.data[i] - surround.data[i]);
  return out;
}

ScenePlane direct_gabor(const ScenePlane& plane, double dir_cos, double dir_sin) {
  const int radius = 9;
  const double lambda = 8.0, gamma = 0.5, sigma = 0.56 * lambda;
  std::vector<double> kernel((2 * radius + 1) * (2 * radius + 1));
  double mean = 0.0;
  for (int y = -radius; y <= radius; ++y)
    for (int x = -radius; x <= radius; ++x) {
      const double xp = x * dir_cos + y * dir_sin;
      const double yp = -x * dir_sin + y * dir_cos;
      const double g =
          std::exp(-(xp * xp + gamma * gamma * yp * yp) / (2.0 * sigma * sigma)) *
          std::cos(2.0 * std::numbers::pi * xp / lambda);
      kernel[(y + radius) * (2 * radius + 1) + (x + radius)] = g;
      mean += g;
    }
  mean /= kernel.size();
  for (double& v : kernel) v -= mean;

  ScenePlane out(plane.width, plane.height);
  for (int y = 0; y < plane.height; ++y)
    for (int x = 0; x < plane.width; ++x) {
      double acc = 0.0;
      for (int ky = -radius; ky <= radius; ++ky)
        for (int kx = -radius; kx <= radius; ++kx)
          acc += plane.at_clamped(x + kx, y + ky) *
                 kernel[(ky + radius) * (2 * radius + 1) + (kx + radius)];
      out.at(x, y) = static_cast<float>(std::fabs(acc));
    }
  return out;
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("salvis_test_" + tag + "_" + std::to_string(counter++) + "_" +
                    std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

size_t argmax(const ScenePlane& plane) {
  size_t best = 0;
  for (size_t i = 1; i < plane.data.size(); ++i)
    if (plane.data[i] > plane.data[best]) best = i;
  return best;
}

}  // namespace salvis::test
