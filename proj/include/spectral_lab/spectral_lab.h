/*
 * Copyright 2026 The Spectral Lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to spectral_lab. Handles are opaque; every fallible call
 * returns a slab_status and leaves a message for slab_last_error(). */

#ifndef SPECTRAL_LAB_H
#define SPECTRAL_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLAB_API __declspec(dllexport)
#else
#define SLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slab_status {
    SLAB_OK = 0,
    SLAB_ERROR_CONFIG = 1,
    SLAB_ERROR_NUMERIC = 2,
    SLAB_ERROR_SIZE = 3,
    SLAB_ERROR_IO = 4,
    SLAB_ERROR_LATTICE = 5,
    SLAB_ERROR_DOMAIN = 6,
    SLAB_ERROR_INTERNAL = 7
} slab_status;

SLAB_API const char *slab_version(void);
SLAB_API const char *slab_status_string(slab_status status);
/* Process exit code: config, lattice and domain 2; numeric 3; size 4; io 5. */
SLAB_API int slab_exit_code(slab_status status);
/* Message of the last failed call on this thread; "" if none. */
SLAB_API const char *slab_last_error(void);

/* Strings returned through char ** are owned by the caller. */
SLAB_API void slab_string_free(char *s);

/* ---- run configuration ---- */

typedef struct slab_config slab_config;

/* "desk" or "full". */
SLAB_API slab_status slab_config_from_profile(const char *profile, slab_config **out);
/* On a schema error the message lists every violation, one per line. */
SLAB_API slab_status slab_config_from_file(const char *path, slab_config **out);
SLAB_API slab_status slab_config_from_json(const char *text, slab_config **out);
SLAB_API slab_status slab_config_to_json(const slab_config *config, char **out);
/* 64 lowercase hex digits plus a terminating NUL. */
SLAB_API slab_status slab_config_hash(const slab_config *config, char out[65]);
/* Subcommand name, e.g. "train" or "entangle-sweep". */
SLAB_API slab_status slab_config_set_experiment(slab_config *config, const char *kind);
SLAB_API slab_status slab_config_set_seeds(slab_config *config, const uint64_t *seeds, size_t count);
SLAB_API slab_status slab_config_set_output_directory(slab_config *config, const char *directory);
SLAB_API void slab_config_free(slab_config *config);

typedef void (*slab_log_fn)(const char *line, void *user);

/* Runs the configured experiment and writes its artifacts and manifest. log may be NULL. */
SLAB_API slab_status slab_run(const slab_config *config, slab_log_fn log, void *user);

/* SVG heatmap (epoch x frequency) of a trace CSV. */
SLAB_API slab_status slab_plot_trace(const char *csv_path, const char *svg_path);

/* ---- circuits ---- */

typedef struct slab_circuit slab_circuit;

SLAB_API slab_status slab_circuit_from_config(const slab_config *config, slab_circuit **out);
SLAB_API size_t slab_circuit_parameter_count(const slab_circuit *circuit);
SLAB_API double slab_circuit_max_frequency(const slab_circuit *circuit);
/* theta ~ N(0, sigma^2); out holds parameter_count values. */
SLAB_API slab_status slab_circuit_init_params(const slab_circuit *circuit, double sigma, uint64_t seed,
                                              double *out, size_t count);
/* out[i] = f(xs[i]). */
SLAB_API slab_status slab_circuit_evaluate(const slab_circuit *circuit, const double *params, size_t count,
                                           const double *xs, double *out, size_t points);
/* Parameter-shift gradient of f(x); out holds parameter_count values. */
SLAB_API slab_status slab_circuit_gradient(const slab_circuit *circuit, const double *params, size_t count,
                                           double x, double *out);
/* Fourier coefficients c_omega for omega = 0 .. omega_max from grid_size
 * samples; re and im hold omega_max + 1 values. */
SLAB_API slab_status slab_circuit_coefficients(const slab_circuit *circuit, const double *params, size_t count,
                                               size_t grid_size, int omega_max, double *re, double *im);
SLAB_API void slab_circuit_free(slab_circuit *circuit);

/* ---- frequency spectrum ---- */

typedef struct slab_spectrum slab_spectrum;

/* Redundancy profile of the configured encoding and depth. */
SLAB_API slab_status slab_spectrum_from_config(const slab_config *config, slab_spectrum **out);
/* Number of frequencies in the support, both signs. */
SLAB_API size_t slab_spectrum_size(const slab_spectrum *spectrum);
/* Frequency and count at position index (ascending). The exact count is
 * written as a decimal string; count_double may be NULL. */
SLAB_API slab_status slab_spectrum_entry(const slab_spectrum *spectrum, size_t index, double *omega,
                                         char **count_decimal, double *count_double);
SLAB_API void slab_spectrum_free(slab_spectrum *spectrum);

/* ---- parameter checkpoints (little-endian float64) ---- */

SLAB_API slab_status slab_params_write(const char *path, const double *params, size_t count);
/* *out is owned by the caller; release with slab_params_free. */
SLAB_API slab_status slab_params_read(const char *path, double **out, size_t *count);
SLAB_API void slab_params_free(double *params);

#ifdef __cplusplus
}
#endif

#endif /* SPECTRAL_LAB_H */
