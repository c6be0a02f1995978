/* Public C interface of the rough-path toolkit. All state lives behind
 * opaque handles; every call that can fail returns a status code (or NULL
 * for constructors) and stores a message retrievable with rp_last_error().
 * Handles are not thread-safe individually; distinct handles may be used
 * from distinct threads.
 */
#ifndef ROUGHPATH_H
#define ROUGHPATH_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32
#define RP_API __declspec(dllexport)
#else
#define RP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rp_status {
    RP_OK = 0,
    RP_ERR_INVALID_ARGUMENT = 1,
    RP_ERR_DIMENSION = 2,
    RP_ERR_NUMERICAL = 3,
    RP_ERR_CONVERGENCE = 4,
    RP_ERR_IO = 5,
    RP_ERR_INTERNAL = 6
} rp_status;

/* Message for the most recent failure on this thread. */
RP_API const char* rp_last_error(void);
RP_API const char* rp_version(void);

/* ------------------------------------------------------------- configuration */
typedef struct rp_config rp_config;

RP_API rp_config* rp_config_create(void);                 /* built-in defaults */
RP_API rp_config* rp_config_load(const char* file);       /* key = value file  */
RP_API rp_status rp_config_set(rp_config*, const char* key, const char* value);
RP_API rp_status rp_config_get(const rp_config*, const char* key, char* buf, size_t buflen);
RP_API void rp_config_free(rp_config*);

/* Run one pipeline stage, writing CSV/SVG artifacts into out_dir. Stages:
 * lift | control | integrate | solve | translate | tail | moments. */
RP_API rp_status rp_run_stage(const rp_config*, const char* stage, const char* out_dir);

/* ----------------------------------------------------------------- sampling */
typedef struct rp_path rp_path;

RP_API rp_path* rp_path_sample_fbm(const rp_config*, uint64_t sample_index);
RP_API rp_path* rp_path_read_csv(const char* file);
RP_API rp_status rp_path_write_csv(const rp_path*, const char* file);
RP_API int rp_path_points(const rp_path*);
RP_API int rp_path_dim(const rp_path*);
RP_API double rp_path_time(const rp_path*, int i);
RP_API double rp_path_value(const rp_path*, int i, int component);
RP_API void rp_path_free(rp_path*);

/* ------------------------------------------------------------------- lifts */
typedef struct rp_lift rp_lift;

RP_API rp_lift* rp_lift_create(const rp_path*, int level);
/* Flat level block of the increment over [t_i, t_k]; out must hold dim^level
 * doubles. */
RP_API rp_status rp_lift_increment(const rp_lift*, int i, int k, int level, double* out,
                                   size_t out_len);
/* Max Chen defect over `trials` random triples. Negative on error. */
RP_API double rp_lift_chen_residual(const rp_lift*, int trials, uint64_t seed);
RP_API void rp_lift_free(rp_lift*);

/* -------------------------------------------------------- control functions */
typedef struct rp_table rp_table;

/* Summed rough-path control W_{X,gamma,p} over the lift's grid. */
RP_API rp_table* rp_table_create(const rp_lift*, double gamma, double p);
RP_API double rp_table_value(const rp_table*, int i, int k);
RP_API int rp_table_points(const rp_table*);
/* Number of greedy steps covering the whole grid at budget chi on
 * W^{gamma-p}; negative on error. */
RP_API int rp_table_greedy_count(const rp_table*, double chi);
RP_API void rp_table_free(rp_table*);

/* ------------------------------------------------------------------ solving */
typedef struct rp_solution rp_solution;

/* Sample the configured driver (sample_index) and solve the rough PDE from
 * the configured initial datum. */
RP_API rp_solution* rp_solve(const rp_config*, uint64_t sample_index);
RP_API int rp_solution_points(const rp_solution*);
RP_API int rp_solution_modes(const rp_solution*);
RP_API double rp_solution_time(const rp_solution*, int i);
RP_API double rp_solution_coef(const rp_solution*, int i, int mode);
RP_API double rp_solution_sup_norm(const rp_solution*);
RP_API int rp_solution_greedy_count(const rp_solution*);
RP_API void rp_solution_free(rp_solution*);

#ifdef __cplusplus
}
#endif

#endif /* ROUGHPATH_H */
