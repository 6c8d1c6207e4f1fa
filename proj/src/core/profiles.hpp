#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bundle.hpp"

namespace salvis {

enum class Verdict { relevant, irrelevant };

/// Case-insensitive substring rule against one catalog field.
struct Rule {
  enum class Field { name, category, material };

  Field field = Field::name;
  std::string pattern;  // non-empty, matched case-insensitively
  Verdict verdict = Verdict::relevant;
};

struct Profile {
  std::string name;
  std::vector<Rule> rules;  // first match wins
};

/// Element-ID -> verdict, total over the catalog plus the reserved sky and
/// ground IDs (always irrelevant).
struct RelevanceMap {
  std::map<uint16_t, Verdict> mapping;

  Verdict at(uint16_t id) const;
  bool contains(uint16_t id) const { return mapping.count(id) > 0; }
};

/// Pixel partition induced by a label mask and a relevance map. `relevant`
/// holds one flag per pixel, row-major.
struct PixelPartition {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> relevant;
  size_t relevant_count = 0;
  size_t irrelevant_count = 0;
};

/// Built-in rule packs for the structure, method, and plumbing profiles.
std::vector<Profile> default_profiles();

RelevanceMap classify(const ElementCatalog& catalog, const Profile& profile);

PixelPartition relevance_masks(const LabelMask& mask, const RelevanceMap& relevance);

/// Loads a profiles.json rule pack.
std::vector<Profile> load_rule_pack(const std::filesystem::path& path);

/// Looks up `name` among the built-ins, overridden/extended by the optional
/// rule pack. Throws UnknownProfile if the name resolves nowhere.
Profile resolve_profile(const std::string& name,
                        const std::optional<std::filesystem::path>& rule_pack);

}  // namespace salvis
