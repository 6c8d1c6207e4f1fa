#include "profiles.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

namespace salvis {

namespace {

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool matches(const Rule& rule, const ElementCatalog::Element& e) {
  const std::string* field = nullptr;
  switch (rule.field) {
    case Rule::Field::name: field = &e.name; break;
    case Rule::Field::category: field = &e.category; break;
    case Rule::Field::material: field = &e.material; break;
  }
  return to_lower(*field).find(to_lower(rule.pattern)) != std::string::npos;
}

Profile keyword_profile(const std::string& name, const std::vector<std::string>& keywords) {
  Profile p;
  p.name = name;
  for (const auto& kw : keywords) {
    p.rules.push_back({Rule::Field::name, kw, Verdict::relevant});
    p.rules.push_back({Rule::Field::category, kw, Verdict::relevant});
  }
  return p;
}

Rule::Field parse_field(const std::string& s) {
  if (s == "name") return Rule::Field::name;
  if (s == "category") return Rule::Field::category;
  if (s == "material") return Rule::Field::material;
  throw Error(Errc::malformed_catalog, "unknown rule field '" + s + "'");
}

}  // namespace

Verdict RelevanceMap::at(uint16_t id) const {
  auto it = mapping.find(id);
  if (it == mapping.end())
    throw Error(Errc::unknown_element_id, "element " + std::to_string(id) + " not classified");
  return it->second;
}

std::vector<Profile> default_profiles() {
  return {
      keyword_profile("structure",
                      {"wall", "roof", "beam", "slab", "column", "frame", "concrete", "metal"}),
      keyword_profile("method", {"crane", "scaffold", "formwork", "fence", "access"}),
      keyword_profile("plumbing", {"pipe", "duct", "valve", "pump"}),
  };
}

RelevanceMap classify(const ElementCatalog& catalog, const Profile& profile) {
  RelevanceMap out;
  out.mapping[kSkyId] = Verdict::irrelevant;
  out.mapping[kGroundId] = Verdict::irrelevant;
  for (const auto& e : catalog.elements) {
    Verdict v = Verdict::irrelevant;  // unmatched elements stay irrelevant
    for (const auto& rule : profile.rules) {
      if (matches(rule, e)) {
        v = rule.verdict;
        break;
      }
    }
    out.mapping[e.id] = v;
  }
  return out;
}

PixelPartition relevance_masks(const LabelMask& mask, const RelevanceMap& relevance) {
  PixelPartition part;
  part.width = mask.width;
  part.height = mask.height;
  part.relevant.assign(mask.ids.size(), 0);

  // Per-ID verdicts resolved once; the mask is then a single pass.
  std::map<uint16_t, bool> verdicts;
  for (size_t i = 0; i < mask.ids.size(); ++i) {
    const uint16_t id = mask.ids[i];
    auto it = verdicts.find(id);
    if (it == verdicts.end())
      it = verdicts.emplace(id, relevance.at(id) == Verdict::relevant).first;
    if (it->second) {
      part.relevant[i] = 1;
      ++part.relevant_count;
    } else {
      ++part.irrelevant_count;
    }
  }
  return part;
}

std::vector<Profile> load_rule_pack(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::missing_file, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_catalog, path.string() + ": " + e.what());
  }
  std::vector<Profile> out;
  try {
    for (const auto& jp : doc.at("profiles")) {
      Profile p;
      p.name = jp.at("name").get<std::string>();
      for (const auto& jr : jp.at("rules")) {
        Rule r;
        r.field = parse_field(jr.at("field").get<std::string>());
        r.pattern = jr.at("pattern").get<std::string>();
        if (r.pattern.empty())
          throw Error(Errc::malformed_catalog, path.string() + ": empty rule pattern");
        const std::string verdict = jr.at("verdict").get<std::string>();
        if (verdict == "relevant")
          r.verdict = Verdict::relevant;
        else if (verdict == "irrelevant")
          r.verdict = Verdict::irrelevant;
        else
          throw Error(Errc::malformed_catalog, path.string() + ": bad verdict '" + verdict + "'");
        p.rules.push_back(std::move(r));
      }
      if (p.rules.empty())
        throw Error(Errc::malformed_catalog, path.string() + ": profile '" + p.name +
                                                 "' has no rules");
      out.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_catalog, path.string() + ": " + e.what());
  }
  return out;
}

Profile resolve_profile(const std::string& name,
                        const std::optional<std::filesystem::path>& rule_pack) {
  std::vector<Profile> profiles = default_profiles();
  if (rule_pack) {
    for (auto& loaded : load_rule_pack(*rule_pack)) {
      auto it = std::find_if(profiles.begin(), profiles.end(),
                             [&](const Profile& p) { return p.name == loaded.name; });
      if (it != profiles.end())
        *it = std::move(loaded);  // pack overrides the built-in by name
      else
        profiles.push_back(std::move(loaded));
    }
  }
  for (auto& p : profiles)
    if (p.name == name) return std::move(p);
  throw Error(Errc::unknown_profile, "no profile named '" + name + "'");
}

}  // namespace salvis
