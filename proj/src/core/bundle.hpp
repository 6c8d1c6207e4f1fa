#pragma once

#include <string>
#include <vector>

#include "plane.hpp"

namespace salvis {

constexpr uint16_t kSkyId = 0;
constexpr uint16_t kGroundId = 1;

/// Scene element metadata as exported alongside a render. IDs are unique
/// and > 1 (0/1 are the reserved sky/ground labels).
struct ElementCatalog {
  struct Element {
    uint16_t id = 0;
    std::string name;
    std::string category;
    std::string material;
  };

  std::vector<Element> elements;

  const Element* find(uint16_t id) const {
    for (const auto& e : elements)
      if (e.id == id) return &e;
    return nullptr;
  }
};

/// Pixel-aligned view of one scene: render, depth, element labels, catalog.
struct SceneBundle {
  RgbImage image;
  DepthMap depth;
  LabelMask labels;
  ElementCatalog catalog;

  int width() const { return image.width(); }
  int height() const { return image.height(); }
};

}  // namespace salvis
