/* SPDX-License-Identifier: Apache-2.0
 *
 * hmwn - wavenumber-domain channel analysis for holographic MIMO
 * Copyright (C) 2026 the hmwn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * Public C interface of the hmwn shared library. All state lives behind
 * opaque handles; every function returns an hmwn_status. On failure a
 * human-readable message is available from hmwn_last_error() on the same
 * thread until the next library call.
 */

#ifndef HMWN_H
#define HMWN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C"
{
#endif

    typedef enum hmwn_status
    {
        HMWN_OK = 0,
        HMWN_ERROR_INVALID_ARGUMENT = 1,
        HMWN_ERROR_CONFIG = 2,
        HMWN_ERROR_IO = 3,
        HMWN_ERROR_NUMERIC = 4,
        HMWN_ERROR_INTERNAL = 5
    } hmwn_status;

    /* Library version string, e.g. "0.1.0". */
    const char *hmwn_version(void);

    /* Message for the most recent failure on the calling thread ("" if none). */
    const char *hmwn_last_error(void);

    /* Frees strings returned through char** out-parameters. */
    void hmwn_string_free(char *s);

    /* ------------------------------------------------------------------ scene
     * A scene bundles carrier, planar array geometry, and the spatial-frequency
     * lattice derived from them.
     */
    typedef struct hmwn_scene hmwn_scene;

    hmwn_status hmwn_scene_create(double frequency_hz, int n_x, int n_y, double spacing_wavelengths,
                                  int evanescent_margin, hmwn_scene **out_scene);
    void hmwn_scene_destroy(hmwn_scene *scene);

    hmwn_status hmwn_scene_lattice_size(const hmwn_scene *scene, int *out_size);
    hmwn_status hmwn_scene_propagating_count(const hmwn_scene *scene, int *out_count);
    hmwn_status hmwn_scene_rayleigh_distance(const hmwn_scene *scene, double *out_meters);

    typedef struct hmwn_lattice_point
    {
        int l;
        int m;
        double kappa_x;
        double kappa_y;
        double gamma_re;
        double gamma_im;
        int is_propagating;
    } hmwn_lattice_point;

    hmwn_status hmwn_scene_lattice_point(const hmwn_scene *scene, int index, hmwn_lattice_point *out_point);

    /* Physical arrival angle of a lattice point. For evanescent points the call
     * succeeds with *out_has_direction = 0 (no angle exists). */
    hmwn_status hmwn_scene_point_direction(const hmwn_scene *scene, int index, int *out_has_direction,
                                           double *out_theta_rad, double *out_phi_rad);

    /* ------------------------------------------------------------- experiment
     * Config-driven experiment runner; this is the surface the CLI uses. The
     * configuration is a JSON document (NULL or "" selects built-in defaults);
     * unknown keys are rejected.
     */
    typedef struct hmwn_experiment hmwn_experiment;

    hmwn_status hmwn_experiment_create(const char *config_json, hmwn_experiment **out_experiment);
    void hmwn_experiment_destroy(hmwn_experiment *experiment);

    /* Dotted-path override, e.g. ("geometry.n_x", "64") or
     * ("spectrum.far_generator", "greens"). Values parse as JSON when possible,
     * else as strings. The merged document is re-validated. */
    hmwn_status hmwn_experiment_set(hmwn_experiment *experiment, const char *dotted_key, const char *value);

    /* Worker-thread count for Monte-Carlo loops. Outputs are byte-identical for
     * any thread count. */
    hmwn_status hmwn_experiment_set_threads(hmwn_experiment *experiment, int threads);

    /* Full resolved configuration as JSON; free with hmwn_string_free. */
    hmwn_status hmwn_experiment_resolved_config(const hmwn_experiment *experiment, char **out_json);

    /* Runs one subcommand: "lattice", "spectrum", "estimate", or "codebook".
     * Data files plus ".meta.json" sidecars are written under out_dir; partial
     * outputs are removed on failure. */
    hmwn_status hmwn_experiment_run(hmwn_experiment *experiment, const char *subcommand, const char *out_dir);

    /* Runs the built-in invariant suite, printing one PASS/FAIL line per check
     * and writing a report under out_dir. *out_checks_failed receives the number
     * of failed checks (0 on full success). */
    hmwn_status hmwn_experiment_validate(hmwn_experiment *experiment, const char *out_dir,
                                         int *out_checks_failed);

#ifdef __cplusplus
}
#endif

#endif /* HMWN_H */
