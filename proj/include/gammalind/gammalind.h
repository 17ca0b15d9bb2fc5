/* C interface to the gammalind library.
 *
 * Handles are opaque; every call returns a gl_status and, on failure, leaves
 * a message retrievable with gl_last_error() on the calling thread. Strings
 * returned through char** are allocated by the library and released with
 * gl_string_free.
 */
#ifndef GAMMALIND_H
#define GAMMALIND_H

#include <stddef.h>
#include <stdint.h>

#if defined(GAMMALIND_BUILDING)
#define GL_API __attribute__((visibility("default")))
#else
#define GL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gl_status {
    GL_OK = 0,
    GL_INVALID_ARGUMENT = 1,
    GL_PARSE = 2,
    GL_INCONSISTENT_FLUX = 3,
    GL_MODE_MISMATCH = 4,
    GL_NUMERICAL = 5,
    GL_TOO_LARGE = 6,
    GL_IO = 7,
    GL_INTERNAL = 8
} gl_status;

typedef struct gl_graph gl_graph;
typedef struct gl_sector gl_sector;

typedef struct gl_graph_info {
    int vertices;
    int edges;
    int plaquettes;
    int loops;
    int colors;
    int max_valence;
    int strong_fluxes; /* E - N + C */
    int weak_fluxes;   /* E */
} gl_graph_info;

GL_API const char* gl_version(void);
GL_API const char* gl_last_error(void);
GL_API void gl_string_free(char* s);

/* kind: "honeycomb", "square" or "triangular". */
GL_API gl_status gl_graph_from_lattice(const char* kind, int nx, int ny, int periodic, gl_graph** out);
GL_API gl_status gl_graph_from_file(const char* path, gl_graph** out);
GL_API void gl_graph_free(gl_graph* g);
GL_API gl_status gl_graph_info_get(const gl_graph* g, gl_graph_info* out);
/* Sets *ok to 1 when every structural check passes; *report lists them. */
GL_API gl_status gl_graph_validate(const gl_graph* g, int* ok, char** report);
GL_API gl_status gl_graph_set_coupling(gl_graph* g, int edge, double j);
/* Every coupling drawn uniformly from [lo, hi]. */
GL_API gl_status gl_graph_randomize_couplings(gl_graph* g, double lo, double hi, uint64_t seed);

/* The uniform sector: "0" (u = +1 reference), "pi", "+pi/2" or "-pi/2". */
GL_API gl_status gl_sector_uniform(const gl_graph* g, const char* flux, gl_sector** out);
GL_API gl_status gl_sector_random(const gl_graph* g, uint64_t seed, gl_sector** out);
GL_API gl_status gl_sector_from_file(const gl_graph* g, const char* path, gl_sector** out);
GL_API void gl_sector_free(gl_sector* s);
/* Replaces the flip sets: edges with u_tilde = -u and sites with v = +1. */
GL_API gl_status gl_sector_set_flips(gl_sector* s, const int* edges, size_t n_edges, const int* sites,
                                     size_t n_sites);
/* JSON with fluxes, flip sets, inert sign and the automatic mode. */
GL_API gl_status gl_sector_describe(const gl_sector* s, char** json);

typedef enum gl_mode { GL_MODE_AUTO = 0, GL_MODE_PARITY = 1, GL_MODE_NUMBER = 2 } gl_mode;

typedef struct gl_sweep_params {
    double gamma_min;
    double gamma_max;
    int points;
    int log_spacing; /* nonzero: logarithmic grid */
    gl_mode mode;
    int n_max;           /* number mode, -1 for the default */
    double gamma_spread; /* per-site disorder X_j in [1 - s, 1 + s] */
    uint64_t gamma_seed;
    int threads; /* 0: all cores, capped by GAMMALIND_THREADS */
    int allow_zero_modes;
} gl_sweep_params;

typedef struct gl_gap_row {
    double gamma;
    int n; /* -1 in parity mode */
    double gap;
    double bound_lower; /* number mode */
    double bound_upper;
    int vacuum_physical; /* parity mode, -1 otherwise */
    int pf_sign;         /* parity mode, 0 otherwise */
    int exceptional;
    double wall_time_ms;
    int number_mode;
} gl_gap_row;

GL_API void gl_sweep_params_default(gl_sweep_params* p);
GL_API gl_status gl_sweep_run(const gl_graph* g, const gl_sector* s, const gl_sweep_params* p, gl_gap_row** rows,
                              size_t* count);
GL_API gl_status gl_rows_write_csv(const gl_gap_row* rows, size_t count, const char* path, int with_timing);
GL_API void gl_rows_free(gl_gap_row* rows);

typedef enum gl_verify_level { GL_VERIFY_FAST = 0, GL_VERIFY_FULL = 1 } gl_verify_level;

typedef void (*gl_criterion_callback)(int id, const char* name, int passed, const char* detail, double seconds,
                                      void* user);

/* Runs the acceptance suite; *failures receives the number of failed criteria. */
GL_API gl_status gl_verify(gl_verify_level level, gl_criterion_callback callback, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
