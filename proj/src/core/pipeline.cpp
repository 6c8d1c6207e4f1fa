#include "pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "perspective.hpp"

namespace salvis {

PipelineResult run_enhancement(const SceneBundle& bundle, const RunConfig& config,
                               StageTimes* timing) {
  const Profile profile = resolve_profile(config.profile, config.rule_pack);
  PipelineResult result;
  result.profile = profile.name;
  result.output = enhance(bundle, profile, config.mode, config.max_iters, timing);
  return result;
}

void write_outputs(const PipelineResult& result, const std::filesystem::path& out_dir,
                   bool emit_intermediates) {
  save_bundle_outputs(result.output.report, result.output.image, result.output.maps,
                      result.output.saliency, out_dir);
  if (!emit_intermediates) return;

  const auto dir = out_dir / "intermediates";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw Error(Errc::io, "cannot create " + dir.string());

  nlohmann::json vj;
  vj["found"] = result.output.vp.found;
  if (result.output.vp.found) {
    vj["x"] = result.output.vp.x;
    vj["y"] = result.output.vp.y;
    vj["score"] = result.output.vp.score;
  }
  std::ofstream vf(dir / "vp.json");
  vf << vj.dump(2) << "\n";
  if (!vf) throw Error(Errc::io, "cannot write vp.json");

  if (result.output.vp.found) {
    const PolarFrame frame = polar_project(luminance(result.output.image), result.output.vp);
    save_plane(frame.plane, dir / "polar.png", true);
  }
}

std::string benchmark_json(const SceneBundle& bundle, const RunConfig& config, int repeats) {
  if (repeats < 1) throw Error(Errc::invalid_argument, "repeats must be >= 1");

  std::vector<StageTimes> samples(repeats);
  for (int i = 0; i < repeats; ++i) run_enhancement(bundle, config, &samples[i]);

  auto median_of = [&](double StageTimes::* member) {
    std::vector<double> v(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) v[i] = samples[i].*member;
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };

  nlohmann::json doc;
  doc["repeats"] = repeats;
  doc["stages_ms"] = {{"channels", median_of(&StageTimes::channels_ms)},
                      {"vp", median_of(&StageTimes::vp_ms)},
                      {"combine", median_of(&StageTimes::combine_ms)},
                      {"recolor_loop", median_of(&StageTimes::recolor_loop_ms)}};
  doc["total_ms"] = median_of(&StageTimes::total_ms);
  return doc.dump(2) + "\n";
}

}  // namespace salvis
