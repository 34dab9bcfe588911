/* C interface to the xi-reparametrized particle/plasma solver.
 *
 * All functions returning int use the lwxi_status codes below. Functions
 * returning pointers return NULL on failure; call lwxi_last_error() for a
 * thread-local description of the most recent failure.
 */
#ifndef LWXI_H
#define LWXI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lwxi_status {
  LWXI_OK = 0,
  LWXI_E_CONFIG = 2,  /* malformed or inconsistent scenario */
  LWXI_E_NUMERIC = 3, /* integration / quadrature / collapse failure */
  LWXI_E_ARG = 4,     /* null pointer or invalid argument */
  LWXI_E_IO = 5       /* file system failure */
} lwxi_status;

/* Opaque parsed scenario. */
typedef struct lwxi_scenario lwxi_scenario;

typedef struct lwxi_run_options {
  const char* out_dir; /* NULL -> current directory */
  unsigned threads;    /* 0 -> hardware concurrency */
  double rtol;         /* 0 -> scenario default */
  double atol;         /* 0 -> scenario default */
} lwxi_run_options;

const char* lwxi_version(void);

/* Thread-local message for the last failed call in this thread. */
const char* lwxi_last_error(void);

/* Parse a scenario from a file or from memory. Returns NULL on failure. */
lwxi_scenario* lwxi_scenario_open(const char* path);
lwxi_scenario* lwxi_scenario_open_text(const char* text, const char* name);
void lwxi_scenario_close(lwxi_scenario* sc);

/* Scenario kind string, owned by the scenario. */
const char* lwxi_scenario_kind(const lwxi_scenario* sc);
const char* lwxi_scenario_name(const lwxi_scenario* sc);

/* Validate without running. On success *warnings (if non-NULL) receives a
 * newline-separated list (may be empty); free with lwxi_free. */
int lwxi_scenario_validate(const lwxi_scenario* sc, char** warnings);

/* Run and write artifacts. On success *summary_json (if non-NULL) receives
 * the summary document; free with lwxi_free. */
int lwxi_scenario_run(const lwxi_scenario* sc, const lwxi_run_options* options,
                      char** summary_json);

/* Bundled scenario registry. */
size_t lwxi_bundled_count(void);
const char* lwxi_bundled_name(size_t index);
const char* lwxi_bundled_text(size_t index);

void lwxi_free(char* p);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LWXI_H */
