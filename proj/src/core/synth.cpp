#include "synth.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include <json.hpp>

#include "hsv.hpp"
#include "pfm_io.hpp"
#include "png_io.hpp"
#include "scene_io.hpp"

namespace salvis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDepthNear = 2.0;
constexpr double kDepthFar = 40.0;
constexpr double kAxisMarginDeg = 7.0;  // keep generated lines clear of the detector's axis filter

double unit_real(std::mt19937& rng) { return rng() * (1.0 / 4294967296.0); }

double named_hue(const std::string& color) {
  if (color == "Red") return 0.0;
  if (color == "Yellow") return 60.0;
  if (color == "Green") return 120.0;
  if (color == "Blue") return 240.0;
  if (color == "gray") return 0.0;
  throw Error(Errc::invalid_argument, "unknown color '" + color + "'");
}

float quantize8(float v) {
  return std::floor(std::clamp(v, 0.0f, 1.0f) * 255.0f + 0.5f) / 255.0f;
}

struct Painter {
  RgbImage& img;
  LabelMask& labels;
  ScenePlane& depth;

  void set(int x, int y, float r, float g, float b, uint16_t id, float d) {
    if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return;
    img.r.at(x, y) = r;
    img.g.at(x, y) = g;
    img.b.at(x, y) = b;
    labels.at(x, y) = id;
    depth.at(x, y) = d;
  }
};

}  // namespace

PixelRuns runs_from_flags(const std::vector<uint8_t>& flags) {
  PixelRuns runs;
  size_t i = 0;
  while (i < flags.size()) {
    if (!flags[i]) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < flags.size() && flags[i]) ++i;
    runs.emplace_back(static_cast<uint32_t>(start), static_cast<uint32_t>(i - start));
  }
  return runs;
}

size_t runs_pixel_count(const PixelRuns& runs) {
  size_t n = 0;
  for (const auto& [start, len] : runs) n += len;
  return n;
}

bool runs_contain(const PixelRuns& runs, uint32_t index) {
  for (const auto& [start, len] : runs)
    if (index >= start && index < start + len) return true;
  return false;
}

SynthSpec parse_synth_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad scene spec: ") + e.what());
  }
  SynthSpec spec;
  try {
    spec.width = doc.at("width").get<int>();
    spec.height = doc.at("height").get<int>();
    spec.vp_x = doc.at("vp").at(0).get<double>();
    spec.vp_y = doc.at("vp").at(1).get<double>();
    spec.n_radial_lines = doc.at("n_radial_lines").get<int>();
    spec.seed = doc.value("seed", 1u);
    spec.bg_value = doc.value("bg_value", 0.45);
    spec.bg_hue = doc.value("bg_hue", 0.0);
    spec.bg_sat = doc.value("bg_sat", 0.0);
    spec.line_contrast = doc.value("line_contrast", 0.35);
    spec.line_hue = doc.value("line_hue", 0.0);
    spec.line_sat = doc.value("line_sat", 0.0);
    spec.line_extent = doc.value("line_extent", 1.0);
    spec.n_sectors = doc.value("n_sectors", 0);
    spec.sector_amp = doc.value("sector_amp", 0.08);
    spec.bg_depth = doc.value("bg_depth", -1.0);
    spec.sky_band = doc.value("sky_band", false);
    spec.ground_band = doc.value("ground_band", false);
    for (const auto& jo : doc.value("objects", nlohmann::json::array())) {
      SynthObject o;
      const std::string shape = jo.value("shape", "box");
      if (shape == "box")
        o.shape = SynthObject::Shape::box;
      else if (shape == "bar")
        o.shape = SynthObject::Shape::bar;
      else
        throw Error(Errc::invalid_argument, "unknown shape '" + shape + "'");
      o.color = jo.value("color", "gray");
      named_hue(o.color);  // validate
      o.depth = jo.value("depth", 5.0);
      o.relevant = jo.value("relevant", false);
      o.off_perspective = jo.value("off_perspective", true);
      if (jo.contains("rect")) {
        o.rect_x = jo["rect"].at(0).get<double>();
        o.rect_y = jo["rect"].at(1).get<double>();
        o.rect_w = jo["rect"].at(2).get<double>();
        o.rect_h = jo["rect"].at(3).get<double>();
      }
      o.hue = jo.value("hue", -1.0);
      o.sat = jo.value("sat", -1.0);
      o.value = jo.value("value", -1.0);
      o.name = jo.value("name", "");
      o.category = jo.value("category", "");
      o.material = jo.value("material", "");
      spec.objects.push_back(std::move(o));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad scene spec: ") + e.what());
  }
  if (spec.width < 8 || spec.height < 8)
    throw Error(Errc::invalid_argument, "scene too small");
  return spec;
}

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::missing_file, path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_synth_spec(text);
}

SceneBundle generate_scene_bundle(const SynthSpec& spec, SynthTruth* truth) {
  const int w = spec.width, h = spec.height;
  const size_t n = static_cast<size_t>(w) * h;
  std::mt19937 rng(spec.seed);

  SceneBundle bundle;
  bundle.image = RgbImage(w, h);
  bundle.labels = LabelMask(w, h, 2);  // background element
  ScenePlane depth(w, h);
  Painter paint{bundle.image, bundle.labels, depth};

  const double rmax = std::max({std::hypot(spec.vp_x, spec.vp_y),
                                std::hypot(w - 1 - spec.vp_x, spec.vp_y),
                                std::hypot(spec.vp_x, h - 1 - spec.vp_y),
                                std::hypot(w - 1 - spec.vp_x, h - 1 - spec.vp_y)});
  auto corridor_depth = [&](double x, double y) {
    if (spec.bg_depth > 0.0) return static_cast<float>(spec.bg_depth);
    const double r = std::hypot(x - spec.vp_x, y - spec.vp_y);
    return static_cast<float>(kDepthFar - (kDepthFar - kDepthNear) * std::min(r / rmax, 1.0));
  };

  // Background walls with the corridor depth gradient.
  float bg_r, bg_g, bg_b;
  hsv_to_rgb({static_cast<float>(spec.bg_hue), static_cast<float>(spec.bg_sat),
              static_cast<float>(spec.bg_value)},
             bg_r, bg_g, bg_b);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) paint.set(x, y, bg_r, bg_g, bg_b, 2, corridor_depth(x, y));

  // Optional radial sector shading: wall facets meeting at the VP, a step
  // edge in angle at every facet boundary. The boundary fan is rotated so no
  // boundary comes near the horizontal or vertical.
  if (spec.n_sectors > 0) {
    const double sector_width = 2.0 * kPi / spec.n_sectors;
    // First fan rotation (1 degree steps) that keeps every boundary at least
    // 6 degrees away from the horizontal and vertical axes.
    double offset = 0.0;
    for (int deg = 10; deg < 100; ++deg) {
      bool ok = true;
      for (int k = 0; k < spec.n_sectors && ok; ++k) {
        const double bdeg = std::fmod(deg + k * 360.0 / spec.n_sectors, 90.0);
        ok = std::min(bdeg, 90.0 - bdeg) >= 6.0;
      }
      if (ok) {
        offset = deg * kPi / 180.0;
        break;
      }
    }
    std::vector<float> shade(spec.n_sectors);
    for (int i = 0; i < spec.n_sectors; ++i)
      shade[i] = static_cast<float>(spec.bg_value +
                                    spec.sector_amp * (2.0 * unit_real(rng) - 1.0));
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double theta = std::atan2(y - spec.vp_y, x - spec.vp_x) - offset;
        theta = std::fmod(theta, 2.0 * kPi);
        if (theta < 0.0) theta += 2.0 * kPi;
        const int sector = std::min(static_cast<int>(theta / sector_width), spec.n_sectors - 1);
        Hsv hsv{static_cast<float>(spec.bg_hue), static_cast<float>(spec.bg_sat), shade[sector]};
        float sr, sg, sb;
        hsv_to_rgb(hsv, sr, sg, sb);
        paint.set(x, y, sr, sg, sb, 2, depth.at(x, y));
      }
    }
  }

  const int sky_rows = spec.sky_band ? std::max(1, h / 8) : 0;
  for (int y = 0; y < sky_rows; ++y)
    for (int x = 0; x < w; ++x)
      paint.set(x, y, 0.9f, 0.9f, 0.9f, kSkyId, std::numeric_limits<float>::infinity());
  const int ground_rows = spec.ground_band ? std::max(1, h / 8) : 0;
  for (int y = h - ground_rows; y < h; ++y)
    for (int x = 0; x < w; ++x) paint.set(x, y, 0.35f, 0.35f, 0.35f, kGroundId, corridor_depth(x, y));

  // Radial lines through the VP. Angles stay clear of the horizontal and
  // vertical so the detector's axis filter never drops them.
  // Radial lines are drawn antialiased (bilinear coverage splats) so every
  // line carries the same amplitude regardless of its angle against the
  // pixel grid.
  std::vector<float> line_cover(n, 0.0f);
  float line_r, line_g, line_b;
  hsv_to_rgb({static_cast<float>(spec.line_hue), static_cast<float>(spec.line_sat),
              static_cast<float>(std::min(spec.bg_value + spec.line_contrast, 1.0))},
             line_r, line_g, line_b);
  for (int i = 0; i < spec.n_radial_lines; ++i) {
    double theta;
    do {
      theta = unit_real(rng) * 2.0 * kPi;
      const double deg = std::fmod(theta * 180.0 / kPi, 90.0);
      const double off_axis = std::min(deg, 90.0 - deg);
      if (off_axis >= kAxisMarginDeg) break;
    } while (true);
    const double ct = std::cos(theta), st = std::sin(theta);
    for (double r = std::max(12.0, 0.08 * rmax); r <= spec.line_extent * rmax; r += 0.5) {
      const double fx = spec.vp_x + r * ct;
      const double fy = spec.vp_y + r * st;
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      if (x0 < -1 || y0 < -1 || x0 >= w || y0 >= h) break;
      for (int dy = 0; dy <= 1; ++dy)
        for (int dx = 0; dx <= 1; ++dx) {
          const int x = x0 + dx, y = y0 + dy;
          if (x < 0 || y < 0 || x >= w || y >= h) continue;
          const float wgt = static_cast<float>((dx ? fx - x0 : 1.0 - (fx - x0)) *
                                               (dy ? fy - y0 : 1.0 - (fy - y0)));
          auto& cover = line_cover[static_cast<size_t>(y) * w + x];
          cover = std::max(cover, wgt);
        }
    }
  }
  std::vector<uint8_t> line_flags(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (line_cover[i] <= 0.0f || bundle.labels.ids[i] != 2) continue;
    const float c = line_cover[i];
    bundle.image.r.data[i] += c * (line_r - bundle.image.r.data[i]);
    bundle.image.g.data[i] += c * (line_g - bundle.image.g.data[i]);
    bundle.image.b.data[i] += c * (line_b - bundle.image.b.data[i]);
    if (c > 0.5f) line_flags[i] = 1;
  }

  // Objects, in spec order; later objects paint over earlier ones. Seeded
  // placement retries a few times to avoid overlaps.
  SynthTruth local_truth;
  std::vector<std::array<double, 4>> placed;
  uint16_t next_id = 3;
  for (const auto& obj : spec.objects) {
    double rx = obj.rect_x, ry = obj.rect_y, rw = obj.rect_w, rh = obj.rect_h;
    if (rw < 0 || rh < 0) {
      const double side = 0.14 * std::min(w, h);
      rw = obj.shape == SynthObject::Shape::bar ? std::max(6.0, side * 0.35) : side;
      rh = obj.shape == SynthObject::Shape::bar ? 0.5 * h : side;
    }
    if (rx < 0 || ry < 0) {
      for (int attempt = 0; attempt < 40; ++attempt) {
        rx = 0.08 * w + unit_real(rng) * (0.84 * w - rw);
        ry = 0.08 * h + unit_real(rng) * (0.84 * h - rh);
        bool clear = true;
        for (const auto& [px, py, pw, ph] : placed)
          if (rx < px + pw + 6 && px < rx + rw + 6 && ry < py + ph + 6 && py < ry + rh + 6) {
            clear = false;
            break;
          }
        if (clear) break;
      }
    }
    placed.push_back({rx, ry, rw, rh});

    Hsv hsv;
    hsv.h = static_cast<float>(obj.hue >= 0 ? obj.hue : named_hue(obj.color));
    hsv.s = static_cast<float>(obj.sat >= 0 ? obj.sat : (obj.color == "gray" ? 0.0 : 0.85));
    hsv.v = static_cast<float>(obj.value >= 0 ? obj.value : (obj.color == "gray" ? 0.75 : 0.9));
    float cr, cg, cb;
    hsv_to_rgb(hsv, cr, cg, cb);
    const float od = static_cast<float>(obj.depth);

    if (obj.shape == SynthObject::Shape::bar && !obj.off_perspective) {
      // Perspective-aligned bar: a thick radial streak through the VP on the
      // side of the requested rect.
      const double cx = rx + rw / 2, cy = ry + rh / 2;
      const double theta = std::atan2(cy - spec.vp_y, cx - spec.vp_x);
      const double ct = std::cos(theta), st = std::sin(theta);
      const double r0 = std::hypot(cx - spec.vp_x, cy - spec.vp_y);
      const double half_len = std::max(rh, rw) / 2, half_w = std::min(rw, rh) / 2;
      for (double r = r0 - half_len; r <= r0 + half_len; r += 0.5) {
        for (double o = -half_w; o <= half_w; o += 0.5) {
          const int x = static_cast<int>(std::lround(spec.vp_x + r * ct - o * st));
          const int y = static_cast<int>(std::lround(spec.vp_y + r * st + o * ct));
          paint.set(x, y, cr, cg, cb, next_id, od);
        }
      }
    } else {
      const int x0 = static_cast<int>(std::lround(rx)), y0 = static_cast<int>(std::lround(ry));
      const int x1 = static_cast<int>(std::lround(rx + rw)), y1 = static_cast<int>(std::lround(ry + rh));
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) paint.set(x, y, cr, cg, cb, next_id, od);
    }

    SynthTruth::Object to;
    to.id = next_id;
    to.relevant = obj.relevant;
    to.off_perspective = obj.off_perspective;
    to.shape = obj.shape == SynthObject::Shape::bar ? "bar" : "box";
    to.color = obj.color;
    to.depth = obj.depth;
    local_truth.objects.push_back(std::move(to));
    ++next_id;
  }

  // Pixel sets from the final composite: exact bookkeeping.
  for (auto& to : local_truth.objects) {
    std::vector<uint8_t> flags(n, 0);
    for (size_t i = 0; i < n; ++i) flags[i] = bundle.labels.ids[i] == to.id;
    to.pixels = runs_from_flags(flags);
  }
  for (size_t i = 0; i < n; ++i)
    if (line_flags[i] && bundle.labels.ids[i] != 2) line_flags[i] = 0;
  local_truth.radial_line_pixels = runs_from_flags(line_flags);
  local_truth.vp_x = spec.vp_x;
  local_truth.vp_y = spec.vp_y;
  local_truth.seed = spec.seed;

  // Catalog: background plus one element per object, named so the built-in
  // method profile sees `relevant` objects as cranes and the rest as walls.
  bundle.catalog.elements.push_back({2, "wall panel", "wall", "concrete"});
  next_id = 3;
  for (const auto& obj : spec.objects) {
    ElementCatalog::Element e;
    e.id = next_id;
    const std::string idx = std::to_string(next_id - 2);
    if (obj.relevant) {
      e.name = obj.name.empty() ? "crane " + idx : obj.name;
      e.category = obj.category.empty() ? "crane" : obj.category;
      e.material = obj.material.empty() ? "metal" : obj.material;
    } else {
      e.name = obj.name.empty() ? "wall unit " + idx : obj.name;
      e.category = obj.category.empty() ? "wall" : obj.category;
      e.material = obj.material.empty() ? "concrete" : obj.material;
    }
    bundle.catalog.elements.push_back(std::move(e));
    ++next_id;
  }

  // Match the 8-bit precision of a saved-then-loaded bundle.
  for (auto* plane : {&bundle.image.r, &bundle.image.g, &bundle.image.b})
    for (float& v : plane->data) v = quantize8(v);

  bundle.depth.plane = std::move(depth);
  if (truth) *truth = std::move(local_truth);
  return bundle;
}

namespace {

nlohmann::json runs_to_json(const PixelRuns& runs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [start, len] : runs) arr.push_back({start, len});
  return arr;
}

}  // namespace

SynthTruth generate_scene(const SynthSpec& spec, const std::filesystem::path& out_dir) {
  SynthTruth truth;
  SceneBundle bundle = generate_scene_bundle(spec, &truth);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec && !std::filesystem::is_directory(out_dir))
    throw Error(Errc::io, "cannot create " + out_dir.string());

  save_rgb(bundle.image, out_dir / "image.png");
  write_pfm(out_dir / "depth.pfm", bundle.depth.plane);
  write_png_gray16(out_dir / "labels.png", bundle.labels.width, bundle.labels.height,
                   bundle.labels.ids);

  nlohmann::json catalog;
  catalog["elements"] = nlohmann::json::array();
  for (const auto& e : bundle.catalog.elements)
    catalog["elements"].push_back({{"id", e.id},
                                   {"name", e.name},
                                   {"category", e.category},
                                   {"material", e.material}});
  std::ofstream cat(out_dir / "elements.json");
  cat << catalog.dump(2) << "\n";

  nlohmann::json tj;
  tj["vp"] = {truth.vp_x, truth.vp_y};
  tj["seed"] = truth.seed;
  tj["radial_line_pixels"] = runs_to_json(truth.radial_line_pixels);
  tj["objects"] = nlohmann::json::array();
  for (const auto& o : truth.objects)
    tj["objects"].push_back({{"id", o.id},
                             {"relevant", o.relevant},
                             {"off_perspective", o.off_perspective},
                             {"shape", o.shape},
                             {"color", o.color},
                             {"depth", o.depth},
                             {"pixels", runs_to_json(o.pixels)}});
  std::ofstream tf(out_dir / "truth.json");
  tf << tj.dump(2) << "\n";
  if (!tf) throw Error(Errc::io, "cannot write truth.json");
  return truth;
}

}  // namespace salvis
