// Command-line front end. Talks to the library exclusively through the
// C API in salvis.h.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "salvis.h"

namespace {

int fail(const char* stage, salvis_status status) {
  std::fprintf(stderr, "salvis: %s failed: %s\n", stage, salvis_last_error());
  std::fprintf(stderr, "salvis: status=%s\n", salvis_status_name(status));
  return 1;
}

struct BundleGuard {
  salvis_bundle* handle = nullptr;
  ~BundleGuard() { salvis_bundle_close(handle); }
};

struct ResultGuard {
  salvis_result* handle = nullptr;
  ~ResultGuard() { salvis_result_close(handle); }
};

int cmd_enhance(const std::string& bundle_dir, const std::string& out_dir,
                const std::string& profile, const std::string& mode, int max_iters,
                const std::string& rules, bool emit_intermediates) {
  BundleGuard bundle;
  salvis_status st = salvis_bundle_open(bundle_dir.c_str(), &bundle.handle);
  if (st != SALVIS_OK) return fail("load", st);

  salvis_options options{};
  options.profile = profile.c_str();
  options.rule_pack = rules.empty() ? nullptr : rules.c_str();
  options.baseline = mode == "baseline" ? 1 : 0;
  options.max_iters = max_iters;

  ResultGuard result;
  st = salvis_enhance(bundle.handle, &options, &result.handle);
  if (st != SALVIS_OK) return fail("enhance", st);

  st = salvis_result_write(result.handle, out_dir.c_str(), emit_intermediates ? 1 : 0);
  if (st != SALVIS_OK) return fail("write", st);

  const int evals = salvis_result_iterations(result.handle);
  const bool converged = salvis_result_converged(result.handle) != 0;
  std::printf("profile: %s\n", salvis_result_profile(result.handle));
  std::printf("mode: %s\n", options.baseline ? "baseline" : "perspective");
  if (salvis_result_vp_found(result.handle)) {
    double vx = 0, vy = 0;
    salvis_result_vp(result.handle, &vx, &vy);
    std::printf("vanishing point: (%.1f, %.1f)\n", vx, vy);
  } else {
    std::printf("vanishing point: none (Gabor orientation fallback)\n");
  }
  std::printf("target color: %s\n", salvis_result_target_color(result.handle));
  std::printf("ge:");
  for (int i = 0; i < evals; ++i) std::printf(" %.4f", salvis_result_ge(result.handle, i));
  std::printf("\n");
  std::printf("recolor passes: %d\n", evals - 1);
  std::printf("converged: %s\n", converged ? "yes" : "no");
  std::printf("outputs: %s\n", out_dir.c_str());
  return converged ? 0 : 2;
}

int cmd_synth(const std::string& spec, const std::string& out_dir) {
  const salvis_status st = salvis_generate_scene(spec.c_str(), out_dir.c_str());
  if (st != SALVIS_OK) return fail("synth", st);
  std::printf("scene bundle written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_bench(const std::string& bundle_dir, const std::string& profile, const std::string& mode,
              int repeats) {
  BundleGuard bundle;
  salvis_status st = salvis_bundle_open(bundle_dir.c_str(), &bundle.handle);
  if (st != SALVIS_OK) return fail("load", st);

  salvis_options options{};
  options.profile = profile.c_str();
  options.baseline = mode == "baseline" ? 1 : 0;
  options.max_iters = 0;

  char* json = nullptr;
  st = salvis_benchmark(bundle.handle, &options, repeats, &json);
  if (st != SALVIS_OK) return fail("bench", st);
  std::fputs(json, stdout);
  salvis_string_free(json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saliency-guided recoloring of architectural scene bundles"};
  app.require_subcommand(1);

  std::string bundle_dir, out_dir, profile, rules, spec;
  std::string mode = "perspective";
  int max_iters = 0;
  int repeats = 0;
  bool emit_intermediates = false;

  CLI::App* enhance = app.add_subcommand("enhance", "Recolor a bundle for a user profile");
  enhance->add_option("--bundle", bundle_dir, "Scene bundle directory")->required();
  enhance->add_option("--out", out_dir, "Output directory")->required();
  enhance->add_option("--profile", profile, "structure | method | plumbing")->required();
  enhance->add_option("--mode", mode, "perspective (default) or baseline")
      ->check(CLI::IsMember({"perspective", "baseline"}));
  enhance->add_option("--max-iters", max_iters, "Recolor pass budget (default 10)");
  enhance->add_option("--rules", rules, "profiles.json rule pack");
  enhance->add_flag("--emit-intermediates", emit_intermediates, "Also write intermediates/");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic scene bundle");
  synth->add_option("--spec", spec, "Scene spec JSON")->required();
  synth->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* bench = app.add_subcommand("bench", "Time the pipeline stages");
  bench->add_option("--bundle", bundle_dir, "Scene bundle directory")->required();
  bench->add_option("--profile", profile, "User profile")->required();
  bench->add_option("--repeats", repeats, "Number of timed runs")->required();
  bench->add_option("--mode", mode, "perspective (default) or baseline")
      ->check(CLI::IsMember({"perspective", "baseline"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) != 0 ? 1 : 0;
  }

  if (enhance->parsed())
    return cmd_enhance(bundle_dir, out_dir, profile, mode, max_iters, rules, emit_intermediates);
  if (synth->parsed()) return cmd_synth(spec, out_dir);
  if (bench->parsed()) {
    if (repeats < 1) {
      std::fprintf(stderr, "salvis: bench failed: repeats must be >= 1\n");
      return 1;
    }
    return cmd_bench(bundle_dir, profile, mode, repeats);
  }
  return 1;
}
