#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lwxi/errors.hpp"
#include "lwxi/scenario.hpp"

using namespace lwxi;
namespace fs = std::filesystem;

namespace {

const char* kMinimalVacuum = R"(
[scenario]
kind = vacuum-general
name = t

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

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("lwxi_test_") + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal scenario parses") {
  const Scenario sc = Scenario::from_text(kMinimalVacuum, "t");
  CHECK(sc.kind() == "vacuum-general");
  CHECK(sc.name() == "t");
  CHECK(sc.validate().empty());
  CHECK_FALSE(sc.build_pump().is_zero());
}

TEST_CASE("unknown keys and sections are rejected with line numbers") {
  const std::string bad_key = std::string(kMinimalVacuum) + "\n[numerics]\nbogus = 1\n";
  CHECK_THROWS_AS(Scenario::from_text(bad_key, "t"), ConfigError);
  try {
    Scenario::from_text("[scenario]\nkind = vacuum-general\nwat = 1\n", "t");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(e.line_no == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(Scenario::from_text("[nonsense]\nx = 1\n", "t"), ConfigError);
}

TEST_CASE("malformed values are rejected") {
  std::string neg_sigma(kMinimalVacuum);
  const auto pos = neg_sigma.find("sigma_um2 = 20");
  neg_sigma.replace(pos, 14, "sigma_um2 = -3");
  CHECK_THROWS_AS(Scenario::from_text(neg_sigma, "t"), ConfigError);

  std::string not_a_number(kMinimalVacuum);
  const auto pos2 = not_a_number.find("a0 = 1");
  not_a_number.replace(pos2, 6, "a0 = x");
  CHECK_THROWS_AS(Scenario::from_text(not_a_number, "t"), ConfigError);

  CHECK_THROWS_AS(Scenario::from_text("[scenario]\nkind = banana\nname = t\n", "t"),
                  ConfigError);
  // duplicate key
  CHECK_THROWS_AS(Scenario::from_text(std::string(kMinimalVacuum) + "\n[init]\nxi_um = 0\n", "t"),
                  ConfigError);
}

TEST_CASE("positive kappa near its singularity warns") {
  const char* cfg = R"(
[scenario]
kind = vacuum-exact
name = t

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 1
sigma_um2 = 20

[static_field]
kappa_per_um = 0.05

[init]
xi_um = 0

[numerics]
xi_end_um = 30
samples = 16
)";
  const Scenario sc = Scenario::from_text(cfg, "t");
  const auto warnings = sc.validate();
  REQUIRE(!warnings.empty());
  bool found = false;
  for (const auto& w : warnings)
    if (w.find("singular") != std::string::npos || w.find("collaps") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("bundled scenarios validate and mirror the checked-in files") {
  const auto& bundled = bundled_scenarios();
  CHECK(bundled.size() >= 7);
  for (const auto& b : bundled) {
    const Scenario sc = Scenario::from_text(b.text, b.name);
    CHECK(sc.name() == b.name);
    sc.validate();
    const fs::path on_disk = fs::path(LWXI_SOURCE_DIR) / "scenarios" / (std::string(b.name) + ".cfg");
    REQUIRE(fs::exists(on_disk));
    CHECK(read_file(on_disk) == b.text);
  }
}

TEST_CASE("runs are deterministic") {
  const auto& bundled = bundled_scenarios();
  const BundledScenario* fig2 = nullptr;
  for (const auto& b : bundled)
    if (std::string(b.name) == "fig2_left") fig2 = &b;
  REQUIRE(fig2);
  const Scenario sc = Scenario::from_text(fig2->text, fig2->name);
  TempDir d1("det1"), d2("det2");
  RunOptions o1, o2;
  o1.out_dir = d1.path.string();
  o2.out_dir = d2.path.string();
  const RunResult r1 = sc.run(o1);
  const RunResult r2 = sc.run(o2);
  CHECK(r1.summary_json == r2.summary_json);
  const std::string csv1 = read_file(d1.path / "fig2_left" / "trajectory.csv");
  const std::string csv2 = read_file(d2.path / "fig2_left" / "trajectory.csv");
  CHECK(!csv1.empty());
  CHECK(csv1 == csv2);
}

TEST_CASE("a run writes its manifest and artifacts") {
  const Scenario sc = Scenario::from_text(kMinimalVacuum, "t");
  TempDir dir("manifest");
  RunOptions opts;
  opts.out_dir = dir.path.string();
  const RunResult res = sc.run(opts);
  CHECK(!res.summary_json.empty());
  bool has_manifest = false;
  for (const auto& a : res.artifacts) {
    CHECK(fs::exists(dir.path / a));
    if (a.find("manifest.json") != std::string::npos) has_manifest = true;
  }
  CHECK(has_manifest);
}
