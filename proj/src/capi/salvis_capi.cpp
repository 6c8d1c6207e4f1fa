#include "salvis.h"

#include <cstring>
#include <new>
#include <string>

#include "core/pipeline.hpp"
#include "core/synth.hpp"

namespace {

thread_local std::string g_last_error;

salvis_status map_code(salvis::Errc code) {
  using salvis::Errc;
  switch (code) {
    case Errc::io: return SALVIS_ERR_IO;
    case Errc::missing_file: return SALVIS_ERR_MISSING_FILE;
    case Errc::dimension_mismatch: return SALVIS_ERR_DIMENSION_MISMATCH;
    case Errc::unknown_element_id: return SALVIS_ERR_UNKNOWN_ELEMENT_ID;
    case Errc::malformed_catalog: return SALVIS_ERR_MALFORMED_CATALOG;
    case Errc::empty_relevant_region: return SALVIS_ERR_EMPTY_RELEVANT_REGION;
    case Errc::image_too_small: return SALVIS_ERR_IMAGE_TOO_SMALL;
    case Errc::invalid_scale_pair: return SALVIS_ERR_INVALID_SCALE_PAIR;
    case Errc::no_vanishing_point: return SALVIS_ERR_NO_VANISHING_POINT;
    case Errc::unknown_profile: return SALVIS_ERR_UNKNOWN_PROFILE;
    case Errc::invalid_argument: return SALVIS_ERR_INVALID_ARGUMENT;
    case Errc::validation: return SALVIS_ERR_VALIDATION;
  }
  return SALVIS_ERR_INTERNAL;
}

template <typename Fn>
salvis_status guarded(Fn&& fn) {
  try {
    fn();
    return SALVIS_OK;
  } catch (const salvis::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SALVIS_ERR_INTERNAL;
  }
}

salvis::RunConfig make_config(const salvis_options* options) {
  salvis::RunConfig config;
  if (!options || !options->profile)
    throw salvis::Error(salvis::Errc::invalid_argument, "options.profile is required");
  config.profile = options->profile;
  if (options->rule_pack) config.rule_pack = std::filesystem::path(options->rule_pack);
  config.mode = options->baseline ? salvis::SaliencyMode::baseline
                                  : salvis::SaliencyMode::perspective;
  config.max_iters = options->max_iters > 0 ? options->max_iters : salvis::kDefaultMaxIters;
  return config;
}

}  // namespace

struct salvis_bundle {
  salvis::SceneBundle bundle;
};

struct salvis_result {
  salvis::PipelineResult result;
};

extern "C" {

const char* salvis_status_name(salvis_status status) {
  switch (status) {
    case SALVIS_OK: return "Ok";
    case SALVIS_ERR_IO: return "IoError";
    case SALVIS_ERR_MISSING_FILE: return "MissingFile";
    case SALVIS_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SALVIS_ERR_UNKNOWN_ELEMENT_ID: return "UnknownElementId";
    case SALVIS_ERR_MALFORMED_CATALOG: return "MalformedCatalog";
    case SALVIS_ERR_EMPTY_RELEVANT_REGION: return "EmptyRelevantRegion";
    case SALVIS_ERR_IMAGE_TOO_SMALL: return "ImageTooSmall";
    case SALVIS_ERR_INVALID_SCALE_PAIR: return "InvalidScalePair";
    case SALVIS_ERR_NO_VANISHING_POINT: return "NoVanishingPoint";
    case SALVIS_ERR_UNKNOWN_PROFILE: return "UnknownProfile";
    case SALVIS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SALVIS_ERR_VALIDATION: return "ValidationError";
    case SALVIS_ERR_INTERNAL: return "InternalError";
  }
  return "UnknownError";
}

const char* salvis_last_error(void) { return g_last_error.c_str(); }

salvis_status salvis_bundle_open(const char* directory, salvis_bundle** out) {
  if (!directory || !out) {
    g_last_error = "directory and out must be non-null";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<salvis_bundle>();
    handle->bundle = salvis::load_bundle(directory);
    *out = handle.release();
  });
}

void salvis_bundle_close(salvis_bundle* bundle) { delete bundle; }

salvis_status salvis_bundle_dims(const salvis_bundle* bundle, int* width, int* height) {
  if (!bundle) {
    g_last_error = "null bundle";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  if (width) *width = bundle->bundle.width();
  if (height) *height = bundle->bundle.height();
  return SALVIS_OK;
}

salvis_status salvis_enhance(const salvis_bundle* bundle, const salvis_options* options,
                             salvis_result** out) {
  if (!bundle || !out) {
    g_last_error = "bundle and out must be non-null";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<salvis_result>();
    handle->result = salvis::run_enhancement(bundle->bundle, make_config(options));
    *out = handle.release();
  });
}

void salvis_result_close(salvis_result* result) { delete result; }

int salvis_result_converged(const salvis_result* result) {
  return result && result->result.output.report.converged ? 1 : 0;
}

int salvis_result_iterations(const salvis_result* result) {
  return result ? static_cast<int>(result->result.output.report.iterations.size()) : 0;
}

double salvis_result_ge(const salvis_result* result, int index) {
  if (!result || index < 0 ||
      index >= static_cast<int>(result->result.output.report.iterations.size()))
    return -1.0;
  return result->result.output.report.iterations[static_cast<size_t>(index)].ge;
}

const char* salvis_result_target_color(const salvis_result* result) {
  return result ? result->result.output.report.target.name_str() : "";
}

const char* salvis_result_profile(const salvis_result* result) {
  return result ? result->result.output.report.profile.c_str() : "";
}

int salvis_result_vp_found(const salvis_result* result) {
  return result && result->result.output.vp.found ? 1 : 0;
}

salvis_status salvis_result_vp(const salvis_result* result, double* x, double* y) {
  if (!result || !result->result.output.vp.found) {
    g_last_error = "no vanishing point in this result";
    return SALVIS_ERR_NO_VANISHING_POINT;
  }
  if (x) *x = result->result.output.vp.x;
  if (y) *y = result->result.output.vp.y;
  return SALVIS_OK;
}

salvis_status salvis_result_write(const salvis_result* result, const char* out_dir,
                                  int emit_intermediates) {
  if (!result || !out_dir) {
    g_last_error = "result and out_dir must be non-null";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { salvis::write_outputs(result->result, out_dir, emit_intermediates != 0); });
}

salvis_status salvis_generate_scene(const char* spec_json_path, const char* out_dir) {
  if (!spec_json_path || !out_dir) {
    g_last_error = "spec_json_path and out_dir must be non-null";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const salvis::SynthSpec spec = salvis::load_synth_spec(spec_json_path);
    salvis::generate_scene(spec, out_dir);
  });
}

salvis_status salvis_benchmark(const salvis_bundle* bundle, const salvis_options* options,
                               int repeats, char** json_out) {
  if (!bundle || !json_out) {
    g_last_error = "bundle and json_out must be non-null";
    return SALVIS_ERR_INVALID_ARGUMENT;
  }
  *json_out = nullptr;
  return guarded([&] {
    const std::string json = salvis::benchmark_json(bundle->bundle, make_config(options), repeats);
    char* copy = new char[json.size() + 1];
    std::memcpy(copy, json.c_str(), json.size() + 1);
    *json_out = copy;
  });
}

void salvis_string_free(char* text) { delete[] text; }

}  // extern "C"
