#ifndef LWXI_SCENARIO_HPP
#define LWXI_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

#include "lwxi/plasma.hpp"
#include "lwxi/pump.hpp"
#include "lwxi/static_field.hpp"

namespace lwxi {

// Batch-run options supplied by the front end; zeros/empties mean "use the
// scenario's own values".
struct RunOptions {
  std::string out_dir = ".";
  unsigned threads = 0;
  double rtol = 0.0;
  double atol = 0.0;
};

struct RunResult {
  std::vector<std::string> artifacts;  // paths written, relative to out_dir
  std::vector<std::string> warnings;
  std::string summary_json;
};

// One configured simulation, parsed from the flat sectioned key = value
// format. Parsing validates the schema eagerly (unknown keys are rejected
// with line numbers); `validate` additionally reports soft warnings.
class Scenario {
 public:
  static Scenario from_file(const std::string& path);
  static Scenario from_text(const std::string& text, const std::string& name);

  const std::string& kind() const { return kind_; }
  const std::string& name() const { return name_; }

  std::vector<std::string> validate() const;
  RunResult run(const RunOptions& opts) const;

  // physics objects realized from the config (also used by tests)
  Pump build_pump() const;
  StaticField build_static_field() const;
  XiState build_init() const;

 private:
  using Section = std::map<std::string, std::pair<std::string, int>>;  // key -> (value, line)

  const Section* section(const std::string& name) const;
  std::string get_str(const std::string& sec, const std::string& key,
                      const std::string& fallback) const;
  double get_num(const std::string& sec, const std::string& key, double fallback) const;
  double require_num(const std::string& sec, const std::string& key) const;
  bool has(const std::string& sec, const std::string& key) const;
  void check_schema() const;

  RunResult run_vacuum(const RunOptions& opts, bool exact) const;
  RunResult run_oracle(const RunOptions& opts) const;
  RunResult run_kappa_scan(const RunOptions& opts) const;
  RunResult run_autoresonance(const RunOptions& opts) const;
  RunResult run_plasma_step(const RunOptions& opts) const;
  RunResult run_plasma_family(const RunOptions& opts) const;

  std::string kind_;
  std::string name_;
  std::string base_dir_;  // for resolving samples-file paths
  std::map<std::string, Section> sections_;
};

// Scenario texts compiled into the library, mirrored by scenarios/*.cfg.
struct BundledScenario {
  const char* name;
  const char* text;
};
const std::vector<BundledScenario>& bundled_scenarios();

const char* library_version();

}  // namespace lwxi

#endif
