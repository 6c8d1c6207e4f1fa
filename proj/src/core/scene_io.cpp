#include "scene_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "pfm_io.hpp"
#include "png_io.hpp"

namespace salvis {

namespace {

void require_file(const std::filesystem::path& p) {
  if (!std::filesystem::exists(p)) throw Error(Errc::missing_file, p.string());
}

uint8_t to_byte(float v) {
  const float clamped = std::clamp(v, 0.0f, 1.0f);
  return static_cast<uint8_t>(std::floor(clamped * 255.0f + 0.5f));
}

}  // namespace

ElementCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::missing_file, path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_catalog, path.string() + ": " + e.what());
  }
  ElementCatalog catalog;
  std::set<int> seen;
  try {
    for (const auto& je : doc.at("elements")) {
      ElementCatalog::Element e;
      const int id = je.at("id").get<int>();
      if (id <= 1 || id > 65535)
        throw Error(Errc::malformed_catalog,
                    "element id " + std::to_string(id) + " outside (1, 65535]");
      if (!seen.insert(id).second)
        throw Error(Errc::malformed_catalog, "duplicate element id " + std::to_string(id));
      e.id = static_cast<uint16_t>(id);
      e.name = je.at("name").get<std::string>();
      e.category = je.at("category").get<std::string>();
      e.material = je.at("material").get<std::string>();
      catalog.elements.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_catalog, path.string() + ": " + e.what());
  }
  return catalog;
}

SceneBundle load_bundle(const std::filesystem::path& directory) {
  const auto image_path = directory / "image.png";
  const auto depth_path = directory / "depth.pfm";
  const auto labels_path = directory / "labels.png";
  const auto catalog_path = directory / "elements.json";
  for (const auto& p : {image_path, depth_path, labels_path, catalog_path}) require_file(p);

  SceneBundle bundle;
  bundle.image = read_png_rgb8(image_path);
  ScenePlane depth = read_pfm(depth_path);
  bundle.labels = read_png_gray16(labels_path);
  bundle.catalog = load_catalog(catalog_path);

  const int w = bundle.image.width(), h = bundle.image.height();
  if (depth.width != w || depth.height != h)
    throw Error(Errc::dimension_mismatch,
                "depth.pfm is " + std::to_string(depth.width) + "x" + std::to_string(depth.height) +
                    ", image.png is " + std::to_string(w) + "x" + std::to_string(h));
  if (bundle.labels.width != w || bundle.labels.height != h)
    throw Error(Errc::dimension_mismatch,
                "labels.png is " + std::to_string(bundle.labels.width) + "x" +
                    std::to_string(bundle.labels.height) + ", image.png is " + std::to_string(w) +
                    "x" + std::to_string(h));

  // Every non-reserved ID in the mask must exist in the catalog.
  std::set<uint16_t> mask_ids(bundle.labels.ids.begin(), bundle.labels.ids.end());
  for (uint16_t id : mask_ids) {
    if (id == kSkyId || id == kGroundId) continue;
    if (!bundle.catalog.find(id))
      throw Error(Errc::unknown_element_id,
                  "mask id " + std::to_string(id) + " missing from elements.json");
  }

  // Depth validation: finite samples must be >= 0, sky must carry the +inf
  // sentinel. The sentinel is then replaced by 2x the largest finite depth
  // so every downstream pyramid stays finite.
  float max_finite = 0.0f;
  for (size_t i = 0; i < depth.data.size(); ++i) {
    const float d = depth.data[i];
    if (std::isnan(d)) throw Error(Errc::validation, "NaN depth sample");
    if (std::isinf(d)) continue;
    if (d < 0.0f) throw Error(Errc::validation, "negative depth sample");
    max_finite = std::max(max_finite, d);
  }
  const float sentinel_depth = max_finite > 0.0f ? 2.0f * max_finite : 1.0f;
  for (size_t i = 0; i < depth.data.size(); ++i) {
    const bool is_sky = bundle.labels.ids[i] == kSkyId;
    const bool is_inf = std::isinf(depth.data[i]);
    if (is_sky && !is_inf)
      throw Error(Errc::validation, "sky pixel without the no-geometry depth sentinel");
    if (is_inf) depth.data[i] = sentinel_depth;
  }
  bundle.depth.plane = std::move(depth);
  return bundle;
}

void save_plane(const ScenePlane& plane, const std::filesystem::path& path, bool normalize) {
  std::vector<uint8_t> bytes(plane.data.size());
  if (normalize) {
    auto [lo, hi] = min_max(plane);
    if (hi > lo) {
      const float inv = 1.0f / (hi - lo);
      for (size_t i = 0; i < bytes.size(); ++i) bytes[i] = to_byte((plane.data[i] - lo) * inv);
    }
    // constant planes stay all-zero
  } else {
    for (size_t i = 0; i < bytes.size(); ++i) bytes[i] = to_byte(plane.data[i]);
  }
  write_png_gray8(path, plane.width, plane.height, bytes);
}

void save_rgb(const RgbImage& img, const std::filesystem::path& path) {
  std::vector<uint8_t> bytes(static_cast<size_t>(img.width()) * img.height() * 3);
  for (size_t i = 0; i < static_cast<size_t>(img.width()) * img.height(); ++i) {
    bytes[i * 3 + 0] = to_byte(img.r.data[i]);
    bytes[i * 3 + 1] = to_byte(img.g.data[i]);
    bytes[i * 3 + 2] = to_byte(img.b.data[i]);
  }
  write_png_rgb8(path, img.width(), img.height(), bytes);
}

std::string report_to_json(const EnhancementReport& report) {
  nlohmann::json doc;
  doc["profile"] = report.profile;
  doc["target_color"] = report.target.name_str();
  doc["converged"] = report.converged;
  doc["iterations"] = nlohmann::json::array();
  for (const auto& it : report.iterations)
    doc["iterations"].push_back({{"index", it.index}, {"ge", it.ge}});
  return doc.dump(2) + "\n";
}

void save_bundle_outputs(const EnhancementReport& report, const RgbImage& enhanced,
                         const ConspicuitySet& maps, const SaliencyMap& saliency,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir))
    throw Error(Errc::io, "cannot create " + out_dir.string());

  save_rgb(enhanced, out_dir / "enhanced.png");
  save_plane(saliency.plane, out_dir / "saliency.png", true);
  save_plane(maps.intensity, out_dir / "conspicuity_intensity.png", true);
  save_plane(maps.color, out_dir / "conspicuity_color.png", true);
  save_plane(maps.orientation, out_dir / "conspicuity_orientation.png", true);
  save_plane(maps.depth, out_dir / "conspicuity_depth.png", true);

  std::ofstream out(out_dir / "report.json");
  if (!out) throw Error(Errc::io, "cannot write report.json");
  out << report_to_json(report);
  if (!out) throw Error(Errc::io, "short write to report.json");
}

}  // namespace salvis
