#pragma once

#include <stdexcept>
#include <string>

namespace salvis {

enum class Errc {
  io,
  missing_file,
  dimension_mismatch,
  unknown_element_id,
  malformed_catalog,
  empty_relevant_region,
  image_too_small,
  invalid_scale_pair,
  no_vanishing_point,
  unknown_profile,
  invalid_argument,
  validation,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::io: return "IoError";
    case Errc::missing_file: return "MissingFile";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::unknown_element_id: return "UnknownElementId";
    case Errc::malformed_catalog: return "MalformedCatalog";
    case Errc::empty_relevant_region: return "EmptyRelevantRegion";
    case Errc::image_too_small: return "ImageTooSmall";
    case Errc::invalid_scale_pair: return "InvalidScalePair";
    case Errc::no_vanishing_point: return "NoVanishingPoint";
    case Errc::unknown_profile: return "UnknownProfile";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::validation: return "ValidationError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace salvis
