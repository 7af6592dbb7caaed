/* ccqme.h: C interface to the open-system dynamics engine.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a status; on failure ccqme_last_error() describes it (per
 * thread, valid until the next call on that thread). Strings handed out
 * through char** parameters are owned by the caller and released with
 * ccqme_string_free.
 */
#ifndef CCQME_CCQME_H
#define CCQME_CCQME_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CCQME_BUILDING_LIBRARY)
#define CCQME_API __attribute__((visibility("default")))
#else
#define CCQME_API
#endif

typedef enum ccqme_status {
    CCQME_OK = 0,
    CCQME_ERR_ARGUMENT = 1,      /* null handle, bad buffer size */
    CCQME_ERR_INVALID_INPUT = 2, /* physically or structurally invalid data */
    CCQME_ERR_NUMERICAL = 3,     /* solver failure, non-finite state */
    CCQME_ERR_CONFIG = 4,        /* configuration rejected */
    CCQME_ERR_IO = 5,
    CCQME_ERR_NOT_AVAILABLE = 6, /* quantity undefined for these inputs */
    CCQME_ERR_INTERNAL = 7
} ccqme_status;

typedef struct ccqme_config ccqme_config;
typedef struct ccqme_system ccqme_system;

CCQME_API const char* ccqme_version(void);
CCQME_API const char* ccqme_status_name(ccqme_status status);
CCQME_API const char* ccqme_last_error(void);
CCQME_API void ccqme_string_free(char* s);

/* On CCQME_ERR_CONFIG, *diagnostics (if non-null) receives every problem,
 * one per line. */
CCQME_API ccqme_status ccqme_config_load(const char* path, ccqme_config** out, char** diagnostics);
CCQME_API ccqme_status ccqme_config_parse(const char* json_text, ccqme_config** out, char** diagnostics);
CCQME_API void ccqme_config_free(ccqme_config* cfg);

/* Runs every (method, coupling) task and writes the artifacts. output_dir may
 * be null to use the configured directory. *report receives a JSON object
 * with the written files, warnings and failures. A run with failed tasks
 * returns CCQME_ERR_NUMERICAL after writing whatever completed. */
CCQME_API ccqme_status ccqme_run(const ccqme_config* cfg, const char* output_dir, int threads, int seedless,
                                 char** report);

/* Newline-separated "kind name description" lines. */
CCQME_API ccqme_status ccqme_list_builtins(char** text);

CCQME_API ccqme_status ccqme_system_builtin(const char* name, ccqme_system** out);
CCQME_API ccqme_status ccqme_system_load(const char* path, ccqme_system** out);
CCQME_API void ccqme_system_free(ccqme_system* sys);
CCQME_API ccqme_status ccqme_system_size(const ccqme_system* sys, int* n);
CCQME_API ccqme_status ccqme_system_energies(const ccqme_system* sys, double* out, int capacity);

/* Ground-to-top populations of the Gibbs and second-order mean-force states
 * of the renormalized system (capacity >= N each). */
CCQME_API ccqme_status ccqme_equilibrium_populations(const ccqme_system* sys, double coupling, double cutoff,
                                                     double temperature_kelvin, double* gibbs, double* mean_force,
                                                     int capacity);

#ifdef __cplusplus
}
#endif

#endif
