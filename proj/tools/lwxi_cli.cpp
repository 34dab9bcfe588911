// Batch front end: parses a scenario file and drives the shared library
// through its C interface only.
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "lwxi.h"

namespace {

struct ScenarioHandle {
  lwxi_scenario* sc = nullptr;
  ~ScenarioHandle() { lwxi_scenario_close(sc); }
};

int open_or_fail(const std::string& file, ScenarioHandle& h) {
  h.sc = lwxi_scenario_open(file.c_str());
  if (!h.sc) {
    std::fprintf(stderr, "error: %s\n", lwxi_last_error());
    return LWXI_E_CONFIG;
  }
  return LWXI_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xi-reparametrized charged-particle dynamics in travelling waves"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  unsigned threads = 0;
  double rtol = 0.0, atol = 0.0;
  if (const char* env = std::getenv("LWXI_OUT_DIR")) out_dir = env;

  auto* run = app.add_subcommand("run", "run a scenario file and write artifacts");
  run->add_option("file", file, "scenario config file")->required();
  run->add_option("--out-dir", out_dir, "output root (default: $LWXI_OUT_DIR or .)");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_option("--rtol", rtol, "override relative tolerance");
  run->add_option("--atol", atol, "override absolute tolerance");

  auto* validate = app.add_subcommand("validate", "check a scenario file without running");
  validate->add_option("file", file, "scenario config file")->required();

  app.add_subcommand("list-scenarios", "list the bundled scenario configs");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-scenarios")) {
    for (size_t i = 0; i < lwxi_bundled_count(); ++i)
      std::printf("%s\n", lwxi_bundled_name(i));
    return 0;
  }

  ScenarioHandle h;
  if (int rc = open_or_fail(file, h)) return rc;

  if (app.got_subcommand("validate")) {
    char* warnings = nullptr;
    const int rc = lwxi_scenario_validate(h.sc, &warnings);
    if (rc != LWXI_OK) {
      std::fprintf(stderr, "error: %s\n", lwxi_last_error());
      return rc;
    }
    std::printf("%s: ok (kind %s)\n", lwxi_scenario_name(h.sc), lwxi_scenario_kind(h.sc));
    if (warnings && warnings[0]) std::printf("warnings:\n%s\n", warnings);
    lwxi_free(warnings);
    return 0;
  }

  lwxi_run_options opts{};
  opts.out_dir = out_dir.empty() ? "." : out_dir.c_str();
  opts.threads = threads;
  opts.rtol = rtol;
  opts.atol = atol;

  char* summary = nullptr;
  const int rc = lwxi_scenario_run(h.sc, &opts, &summary);
  if (rc != LWXI_OK) {
    std::fprintf(stderr, "error: %s\n", lwxi_last_error());
    return rc;
  }
  if (summary) std::printf("%s", summary);
  lwxi_free(summary);
  return 0;
}
