#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bundle.hpp"

namespace salvis {

/// Run-length encoded pixel set over row-major indices: (start, length).
using PixelRuns = std::vector<std::pair<uint32_t, uint32_t>>;

struct SynthObject {
  enum class Shape { box, bar };

  Shape shape = Shape::box;
  std::string color = "gray";  // Red | Yellow | Green | Blue | gray
  double depth = 5.0;          // meters
  bool relevant = false;
  bool off_perspective = true;

  // Optional overrides; negative values mean "derive from the seed".
  double rect_x = -1, rect_y = -1, rect_w = -1, rect_h = -1;
  double hue = -1;    // overrides the named hue
  double sat = -1;
  double value = -1;
  std::string name, category, material;  // catalog overrides
};

/// Scene description for the generator. Radial lines converge on the
/// vanishing point; depth falls off linearly with the distance from it.
struct SynthSpec {
  int width = 320;
  int height = 240;
  double vp_x = 160.0;
  double vp_y = 120.0;
  int n_radial_lines = 30;
  uint32_t seed = 1;
  double bg_value = 0.45;
  double bg_hue = 0.0;
  double bg_sat = 0.0;  // 0 = gray walls
  double line_contrast = 0.35;
  double line_hue = 0.0;
  double line_sat = 0.0;    // 0 = gray lines
  double line_extent = 1.0; // fraction of the VP-to-corner distance the lines span
  int n_sectors = 0;        // >0 shades the walls in radial sectors (step edges at the VP)
  double sector_amp = 0.08; // value amplitude of the sector shading
  double bg_depth = -1.0;   // >0 replaces the corridor gradient with a constant depth
  bool sky_band = false;     // top 12% labeled sky (+inf depth)
  bool ground_band = false;  // bottom 12% labeled ground
  std::vector<SynthObject> objects;
};

struct SynthTruth {
  double vp_x = 0.0, vp_y = 0.0;
  uint32_t seed = 0;
  PixelRuns radial_line_pixels;  // visible (uncovered) line pixels
  struct Object {
    uint16_t id = 0;
    bool relevant = false;
    bool off_perspective = true;
    std::string shape;
    std::string color;
    double depth = 0.0;
    PixelRuns pixels;  // visible pixels after compositing
  };
  std::vector<Object> objects;
};

SynthSpec parse_synth_spec(const std::string& json_text);
SynthSpec load_synth_spec(const std::filesystem::path& path);

/// Renders the scene in memory. The image is quantized to 8-bit precision so
/// it matches what a saved-then-loaded bundle holds.
SceneBundle generate_scene_bundle(const SynthSpec& spec, SynthTruth* truth = nullptr);

/// Renders and writes the full bundle plus truth.json into out_dir.
SynthTruth generate_scene(const SynthSpec& spec, const std::filesystem::path& out_dir);

PixelRuns runs_from_flags(const std::vector<uint8_t>& flags);
size_t runs_pixel_count(const PixelRuns& runs);
bool runs_contain(const PixelRuns& runs, uint32_t index);

}  // namespace salvis
