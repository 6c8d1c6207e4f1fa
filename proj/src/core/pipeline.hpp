#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "enhancer.hpp"
#include "scene_io.hpp"

namespace salvis {

struct RunConfig {
  std::string profile;
  SaliencyMode mode = SaliencyMode::perspective;
  int max_iters = kDefaultMaxIters;
  std::optional<std::filesystem::path> rule_pack;
};

struct PipelineResult {
  EnhanceOutput output;
  std::string profile;
};

PipelineResult run_enhancement(const SceneBundle& bundle, const RunConfig& config,
                               StageTimes* timing = nullptr);

/// Writes the standard seven outputs; with emit_intermediates also a
/// intermediates/ subdirectory (vp.json, polar.png when a VP was found).
void write_outputs(const PipelineResult& result, const std::filesystem::path& out_dir,
                   bool emit_intermediates);

/// Per-stage wall-clock medians over `repeats` runs, as a JSON object.
std::string benchmark_json(const SceneBundle& bundle, const RunConfig& config, int repeats);

}  // namespace salvis
