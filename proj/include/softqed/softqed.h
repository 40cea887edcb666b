#ifndef SOFTQED_SOFTQED_H
#define SOFTQED_SOFTQED_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SOFTQED_BUILDING)
#    define SQ_API __declspec(dllexport)
#  else
#    define SQ_API __declspec(dllimport)
#  endif
#else
#  define SQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 1..13 mirror the library's internal error codes. */
typedef enum sq_status {
    SQ_OK = 0,
    SQ_ERR_INVALID_ARGUMENT = 1,
    SQ_ERR_SINGULAR_MATRIX = 2,
    SQ_ERR_DEGENERATE_POLES = 3,
    SQ_ERR_QUADRATURE_TOLERANCE = 4,
    SQ_ERR_ON_SHELL_CROSSING = 5,
    SQ_ERR_STEP_TOO_SMALL = 6,
    SQ_ERR_FIT_FAILURE = 7,
    SQ_ERR_SOFT_COLLINEAR = 8,
    SQ_ERR_TRUNCATION_INSUFFICIENT = 9,
    SQ_ERR_NON_CONVERGENT = 10,
    SQ_ERR_INVALID_LOOP = 11,
    SQ_ERR_CONFIG_PARSE = 12,
    SQ_ERR_IO = 13,
    SQ_ERR_INTERNAL = 99
} sq_status;

typedef enum sq_command {
    SQ_CMD_VERIFY = 0,
    SQ_CMD_CURRENT = 1,
    SQ_CMD_DECOMPOSE = 2,
    SQ_CMD_COHERENT = 3,
    SQ_CMD_ACTION = 4
} sq_command;

typedef struct sq_config sq_config;
typedef struct sq_buffer sq_buffer;
typedef struct sq_loop sq_loop;

SQ_API const char* sq_version(void);
SQ_API const char* sq_status_name(sq_status status);
/* Message of the most recent failure on the calling thread; "" if none. */
SQ_API const char* sq_last_error(void);

/* ---- configuration ---- */

/* Strict JSON; unknown keys fail with SQ_ERR_CONFIG_PARSE. */
SQ_API sq_status sq_config_parse(const char* json, size_t length, sq_config** out);
SQ_API sq_status sq_config_load(const char* path, sq_config** out);
SQ_API sq_status sq_config_default(sq_config** out);
SQ_API void sq_config_free(sq_config* config);
SQ_API sq_status sq_config_set_seed(sq_config* config, uint64_t seed);
/* The config's output_path, "" when unset. Owned by the config. */
SQ_API const char* sq_config_output_path(const sq_config* config);

/* ---- subcommands ---- */

/* Runs one subcommand. `passed` (may be NULL) receives 1 when every check
   passed (verify) or the action extrapolation converged (action), else 0;
   other commands report 1. The document is returned in *out even when
   passed is 0. */
SQ_API sq_status sq_run(const sq_config* config, sq_command command, sq_buffer** out, int* passed);

/* Runs one registered check. Any output pointer may be NULL. */
SQ_API sq_status sq_run_check(const sq_config* config, const char* name, double* residual, double* tolerance,
                              int* passed);

/* Newline-separated names of the registered verify checks. */
SQ_API sq_status sq_check_names(sq_buffer** out);

SQ_API const char* sq_buffer_data(const sq_buffer* buffer);
SQ_API size_t sq_buffer_size(const sq_buffer* buffer);
SQ_API void sq_buffer_free(sq_buffer* buffer);

/* ---- direct numerics ---- */

/* vertices: n_vertices rows of (x0, x1, x2, x3). */
SQ_API sq_status sq_loop_create(const double* vertices, size_t n_vertices, sq_loop** out);
SQ_API void sq_loop_free(sq_loop* loop);
/* Classical current J^mu(k) of the closed loop, per unit charge. */
SQ_API sq_status sq_loop_current(const sq_loop* loop, const double k[4], double re[4], double im[4]);
/* eta-extrapolated cross-edge action for charge e, with its error estimate. */
SQ_API sq_status sq_loop_action(const sq_loop* loop, double charge, double* value, double* error);

#ifdef __cplusplus
}
#endif

#endif
