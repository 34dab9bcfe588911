#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "lwxi.h"

namespace fs = std::filesystem;

namespace {

const char* kVacuum = R"(
[scenario]
kind = vacuum-general
name = capi_smoke

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 1
sigma_um2 = 20

[init]
xi_um = -45

[numerics]
xi_end_um = 45
samples = 16
)";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "lwxi_capi_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("version string") {
  const char* v = lwxi_version();
  REQUIRE(v);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("open, validate, run through the C interface") {
  lwxi_scenario* sc = lwxi_scenario_open_text(kVacuum, nullptr);
  REQUIRE(sc);
  CHECK(std::string(lwxi_scenario_kind(sc)) == "vacuum-general");
  CHECK(std::string(lwxi_scenario_name(sc)) == "capi_smoke");

  char* warnings = nullptr;
  CHECK(lwxi_scenario_validate(sc, &warnings) == LWXI_OK);
  REQUIRE(warnings);
  CHECK(warnings[0] == '\0');
  lwxi_free(warnings);

  TempDir dir;
  lwxi_run_options opts{};
  const std::string out = dir.path.string();
  opts.out_dir = out.c_str();
  char* summary = nullptr;
  CHECK(lwxi_scenario_run(sc, &opts, &summary) == LWXI_OK);
  REQUIRE(summary);
  CHECK(std::string(summary).find("\"gamma\"") != std::string::npos);
  lwxi_free(summary);
  CHECK(fs::exists(dir.path / "capi_smoke" / "trajectory.csv"));
  CHECK(fs::exists(dir.path / "capi_smoke" / "manifest.json"));
  lwxi_scenario_close(sc);
}

TEST_CASE("config errors surface as status 2 with a message") {
  lwxi_scenario* sc = lwxi_scenario_open_text("[scenario]\nkind = banana\n", nullptr);
  CHECK(sc == nullptr);
  CHECK(std::strlen(lwxi_last_error()) > 0);

  sc = lwxi_scenario_open("/nonexistent/path/to.cfg");
  CHECK(sc == nullptr);
}

TEST_CASE("null arguments give status 4") {
  CHECK(lwxi_scenario_validate(nullptr, nullptr) == LWXI_E_ARG);
  CHECK(lwxi_scenario_run(nullptr, nullptr, nullptr) == LWXI_E_ARG);
  CHECK(lwxi_scenario_open(nullptr) == nullptr);
  CHECK(lwxi_scenario_open_text(nullptr, nullptr) == nullptr);
}

TEST_CASE("numerical failures surface as status 3") {
  // residual horizon beyond the solved span triggers a numerical error
  const char* bad = R"(
[scenario]
kind = plasma-step
name = capi_numeric

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 15
sigma_um2 = 20
center_um = 22.5
support_start_um = 0
support_end_um = 45

[density]
n0_per_cm3 = 2e18

[numerics]
xi_end_um = 60
samples = 64

[residual]
enabled = true
ct_max_um = 10000
)";
  lwxi_scenario* sc = lwxi_scenario_open_text(bad, nullptr);
  REQUIRE(sc);
  TempDir dir;
  lwxi_run_options opts{};
  const std::string out = dir.path.string();
  opts.out_dir = out.c_str();
  CHECK(lwxi_scenario_run(sc, &opts, nullptr) == LWXI_E_NUMERIC);
  CHECK(std::strlen(lwxi_last_error()) > 0);
  lwxi_scenario_close(sc);
}

TEST_CASE("bundled scenario registry") {
  const size_t n = lwxi_bundled_count();
  CHECK(n >= 7);
  bool has_fig2 = false;
  for (size_t i = 0; i < n; ++i) {
    const char* name = lwxi_bundled_name(i);
    const char* text = lwxi_bundled_text(i);
    REQUIRE(name);
    REQUIRE(text);
    if (std::string(name) == "fig2_left") has_fig2 = true;
    lwxi_scenario* sc = lwxi_scenario_open_text(text, name);
    REQUIRE(sc);
    CHECK(lwxi_scenario_validate(sc, nullptr) == LWXI_OK);
    lwxi_scenario_close(sc);
  }
  CHECK(has_fig2);
  CHECK(lwxi_bundled_name(n) == nullptr);
  CHECK(lwxi_bundled_text(n) == nullptr);
}
