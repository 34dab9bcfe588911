#include "lwxi.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "lwxi/errors.hpp"
#include "lwxi/scenario.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return LWXI_OK;
  } catch (const lwxi::ConfigError& e) {
    set_error(e.what());
    return LWXI_E_CONFIG;
  } catch (const lwxi::NumericalError& e) {
    set_error(e.what());
    return LWXI_E_NUMERIC;
  } catch (const std::exception& e) {
    set_error(e.what());
    return LWXI_E_IO;
  }
}

}  // namespace

struct lwxi_scenario {
  lwxi::Scenario sc;
};

extern "C" {

const char* lwxi_version(void) { return lwxi::library_version(); }

const char* lwxi_last_error(void) { return g_last_error.c_str(); }

lwxi_scenario* lwxi_scenario_open(const char* path) {
  if (!path) {
    set_error("path is null");
    return nullptr;
  }
  lwxi_scenario* out = nullptr;
  guarded([&] { out = new lwxi_scenario{lwxi::Scenario::from_file(path)}; });
  return out;
}

lwxi_scenario* lwxi_scenario_open_text(const char* text, const char* name) {
  if (!text) {
    set_error("text is null");
    return nullptr;
  }
  lwxi_scenario* out = nullptr;
  guarded([&] {
    out = new lwxi_scenario{
        lwxi::Scenario::from_text(text, name ? name : "scenario")};
  });
  return out;
}

void lwxi_scenario_close(lwxi_scenario* sc) { delete sc; }

const char* lwxi_scenario_kind(const lwxi_scenario* sc) {
  return sc ? sc->sc.kind().c_str() : nullptr;
}

const char* lwxi_scenario_name(const lwxi_scenario* sc) {
  return sc ? sc->sc.name().c_str() : nullptr;
}

int lwxi_scenario_validate(const lwxi_scenario* sc, char** warnings) {
  if (!sc) {
    set_error("scenario is null");
    return LWXI_E_ARG;
  }
  return guarded([&] {
    const auto w = sc->sc.validate();
    if (warnings) {
      std::string joined;
      for (const auto& msg : w) {
        if (!joined.empty()) joined += '\n';
        joined += msg;
      }
      *warnings = dup_string(joined);
    }
  });
}

int lwxi_scenario_run(const lwxi_scenario* sc, const lwxi_run_options* options,
                      char** summary_json) {
  if (!sc) {
    set_error("scenario is null");
    return LWXI_E_ARG;
  }
  return guarded([&] {
    lwxi::RunOptions ro;
    if (options) {
      if (options->out_dir) ro.out_dir = options->out_dir;
      ro.threads = options->threads;
      ro.rtol = options->rtol;
      ro.atol = options->atol;
    }
    const lwxi::RunResult res = sc->sc.run(ro);
    if (summary_json) *summary_json = dup_string(res.summary_json);
  });
}

size_t lwxi_bundled_count(void) { return lwxi::bundled_scenarios().size(); }

const char* lwxi_bundled_name(size_t index) {
  const auto& list = lwxi::bundled_scenarios();
  return index < list.size() ? list[index].name : nullptr;
}

const char* lwxi_bundled_text(size_t index) {
  const auto& list = lwxi::bundled_scenarios();
  return index < list.size() ? list[index].text : nullptr;
}

void lwxi_free(char* p) { std::free(p); }

}  // extern "C"
