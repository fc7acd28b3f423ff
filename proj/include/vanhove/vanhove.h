/* vanhove.h - C interface to the vanhove library */

#ifndef VANHOVE_H
#define VANHOVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(VH_BUILDING_LIBRARY)
#define VH_API __attribute__((visibility("default")))
#else
#define VH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vh_status {
    VH_OK = 0,
    VH_PROPERTY_FAILED = 1, /* a checked property failed; results are still returned */
    VH_ERR_PARSE = 2,
    VH_ERR_CONFIG = 3,
    VH_ERR_DIMENSION = 4,
    VH_ERR_PRECONDITION = 5,
    VH_ERR_CAPABILITY = 6,
    VH_ERR_ASSUMPTION = 7,
    VH_ERR_NUMERIC = 8,
    VH_ERR_INVALID_ARGUMENT = 9,
    VH_ERR_INTERNAL = 10
} vh_status;

typedef enum vh_kn_mode { VH_KN_BRUTE = 0, VH_KN_DIAGRAM = 1, VH_KN_BOTH = 2 } vh_kn_mode;

typedef enum vh_bounds_which {
    VH_BOUNDS_LEMMA_A = 0,
    VH_BOUNDS_XI = 1,
    VH_BOUNDS_KN = 2,
    VH_BOUNDS_CONSTANTS = 3
} vh_bounds_which;

typedef struct vh_config vh_config;
typedef struct vh_model vh_model;
typedef struct vh_superop vh_superop;
typedef struct vh_result vh_result;

VH_API const char* vh_version(void);
VH_API const char* vh_status_name(vh_status status);
/* Message of the last error on the calling thread; empty when none. */
VH_API const char* vh_last_error(void);

/* Strings returned through char** are owned by the caller. */
VH_API void vh_string_free(char* s);

VH_API vh_status vh_config_load(const char* path, vh_config** out);
VH_API vh_status vh_config_parse(const char* yaml_text, vh_config** out);
VH_API vh_status vh_config_output_dir(const vh_config* cfg, char** out);
VH_API int vh_config_long_format(const vh_config* cfg);
VH_API void vh_config_free(vh_config* cfg);

VH_API vh_status vh_model_preset(const char* name, uint64_t seed, int bath_levels, double lambda, vh_model** out);
VH_API vh_status vh_model_from_config(const vh_config* cfg, vh_model** out);
VH_API vh_status vh_model_dims(const vh_model* model, int* d_system, int* d_bath);
/* VH_OK when every assumption holds, VH_PROPERTY_FAILED otherwise. */
VH_API vh_status vh_model_validate(const vh_model* model);
VH_API void vh_model_free(vh_model* model);

/* Reduced K_n(t) (d_S^2 x d_S^2) with `nodes` Gauss points per simplex axis. */
VH_API vh_status vh_kn(const vh_model* model, int n, double t, int nodes, vh_kn_mode mode, vh_superop** out);
/* Spectrally averaged generator for a model with an analytic correlation preset. */
VH_API vh_status vh_davies_averaged(const vh_model* model, vh_superop** out);
VH_API int vh_superop_size(const vh_superop* op);
VH_API vh_status vh_superop_entry(const vh_superop* op, int row, int col, double* re, double* im);
VH_API double vh_superop_norm_estimate(const vh_superop* op, int n_probe, uint64_t seed);
VH_API void vh_superop_free(vh_superop* op);

/* Subcommands. A result is produced for VH_OK and VH_PROPERTY_FAILED. */
VH_API vh_status vh_cmd_validate(const vh_config* cfg, vh_result** out);
VH_API vh_status vh_cmd_kn(const vh_config* cfg, int n, double t, vh_kn_mode mode, vh_result** out);
VH_API vh_status vh_cmd_converge(const vh_config* cfg, vh_result** out);
VH_API vh_status vh_cmd_bounds(const vh_config* cfg, vh_bounds_which which, vh_result** out);
VH_API vh_status vh_cmd_diagram(int n, const char* a_spec, const char* d_spec, char** out);

VH_API vh_status vh_parse_kn_mode(const char* s, vh_kn_mode* out);
VH_API vh_status vh_parse_bounds_which(const char* s, vh_bounds_which* out);

VH_API size_t vh_result_rows(const vh_result* r);
VH_API size_t vh_result_cols(const vh_result* r);
VH_API const char* vh_result_header(const vh_result* r, size_t col);
VH_API const char* vh_result_cell(const vh_result* r, size_t row, size_t col);
VH_API const char* vh_result_message(const vh_result* r);
VH_API size_t vh_result_warning_count(const vh_result* r);
VH_API const char* vh_result_warning(const vh_result* r, size_t k);
VH_API vh_status vh_result_csv(const vh_result* r, char** out);
VH_API vh_status vh_result_text(const vh_result* r, char** out);
/* Plot-ready long format; VH_ERR_CAPABILITY when the command produced none. */
VH_API vh_status vh_result_long_csv(const vh_result* r, char** out);
VH_API void vh_result_free(vh_result* r);

#ifdef __cplusplus
}
#endif

#endif
