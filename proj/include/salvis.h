/* salvis — saliency-guided recoloring of architectural renders.
 *
 * C interface to the shared library. All objects are opaque handles; every
 * fallible call returns a salvis_status and leaves a human-readable message
 * in salvis_last_error() (thread-local) on failure.
 */
#ifndef SALVIS_H
#define SALVIS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum salvis_status {
  SALVIS_OK = 0,
  SALVIS_ERR_IO = 1,
  SALVIS_ERR_MISSING_FILE = 2,
  SALVIS_ERR_DIMENSION_MISMATCH = 3,
  SALVIS_ERR_UNKNOWN_ELEMENT_ID = 4,
  SALVIS_ERR_MALFORMED_CATALOG = 5,
  SALVIS_ERR_EMPTY_RELEVANT_REGION = 6,
  SALVIS_ERR_IMAGE_TOO_SMALL = 7,
  SALVIS_ERR_INVALID_SCALE_PAIR = 8,
  SALVIS_ERR_NO_VANISHING_POINT = 9,
  SALVIS_ERR_UNKNOWN_PROFILE = 10,
  SALVIS_ERR_INVALID_ARGUMENT = 11,
  SALVIS_ERR_VALIDATION = 12,
  SALVIS_ERR_INTERNAL = 13
} salvis_status;

typedef struct salvis_bundle salvis_bundle;
typedef struct salvis_result salvis_result;

typedef struct salvis_options {
  const char* profile;   /* "structure", "method", "plumbing", or a rule-pack name */
  const char* rule_pack; /* optional path to a profiles.json, NULL for built-ins */
  int baseline;          /* 0 = perspective orientation channel, 1 = fixed-angle Gabor */
  int max_iters;         /* recolor pass budget; 0 selects the default (10) */
} salvis_options;

/* Stable name of a status code, e.g. "DimensionMismatch". */
const char* salvis_status_name(salvis_status status);

/* Message describing the most recent failure on this thread. */
const char* salvis_last_error(void);

/* Scene bundle directory: image.png, depth.pfm, labels.png, elements.json. */
salvis_status salvis_bundle_open(const char* directory, salvis_bundle** out);
void salvis_bundle_close(salvis_bundle* bundle);
salvis_status salvis_bundle_dims(const salvis_bundle* bundle, int* width, int* height);

/* Runs the full enhancement loop. */
salvis_status salvis_enhance(const salvis_bundle* bundle, const salvis_options* options,
                             salvis_result** out);
void salvis_result_close(salvis_result* result);

int salvis_result_converged(const salvis_result* result);
/* Number of recorded gain evaluations (>= 1). */
int salvis_result_iterations(const salvis_result* result);
/* Gain value at evaluation `index` in [0, iterations). Returns -1 when out of range. */
double salvis_result_ge(const salvis_result* result, int index);
const char* salvis_result_target_color(const salvis_result* result);
const char* salvis_result_profile(const salvis_result* result);
/* 1 when a vanishing point drove the orientation channel. */
int salvis_result_vp_found(const salvis_result* result);
salvis_status salvis_result_vp(const salvis_result* result, double* x, double* y);

/* Writes enhanced.png, saliency.png, four conspicuity maps, report.json. */
salvis_status salvis_result_write(const salvis_result* result, const char* out_dir,
                                  int emit_intermediates);

/* Renders a synthetic scene bundle (plus truth.json) from a JSON spec file. */
salvis_status salvis_generate_scene(const char* spec_json_path, const char* out_dir);

/* Per-stage wall-clock medians over `repeats` runs, as a JSON document.
 * The returned string must be released with salvis_string_free. */
salvis_status salvis_benchmark(const salvis_bundle* bundle, const salvis_options* options,
                               int repeats, char** json_out);
void salvis_string_free(char* text);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SALVIS_H */
