// SPDX-License-Identifier: Apache-2.0
//
// hmwn - wavenumber-domain channel analysis for holographic MIMO
// Copyright (C) 2026 the hmwn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hmwn.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/lattice.hpp"
#include "sim/config.hpp"
#include "sim/experiments.hpp"

namespace
{
    thread_local std::string g_last_error;

    void clear_error()
    {
        g_last_error.clear();
    }

    hmwn_status fail(hmwn_status code, const std::string &message)
    {
        g_last_error = message;
        return code;
    }

    // Maps core exceptions onto the stable error-code surface.
    template <typename Fn>
    hmwn_status guarded(Fn &&fn)
    {
        clear_error();
        try
        {
            return fn();
        }
        catch (const std::invalid_argument &e)
        {
            return fail(HMWN_ERROR_INVALID_ARGUMENT, e.what());
        }
        catch (const hmwn::config_error &e)
        {
            return fail(HMWN_ERROR_CONFIG, e.what());
        }
        catch (const hmwn::io_error &e)
        {
            return fail(HMWN_ERROR_IO, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(HMWN_ERROR_INTERNAL, "out of memory");
        }
        catch (const std::runtime_error &e)
        {
            return fail(HMWN_ERROR_NUMERIC, e.what());
        }
        catch (const std::exception &e)
        {
            return fail(HMWN_ERROR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(HMWN_ERROR_INTERNAL, "unknown error");
        }
    }
}

struct hmwn_scene
{
    hmwn::CarrierConfig carrier;
    hmwn::PlanarArrayGeometry geometry;
    hmwn::WavenumberLattice lattice;
};

struct hmwn_experiment
{
    std::string config_text; // last accepted JSON document
    hmwn::ExperimentConfig parsed;
    int threads = 1;
};

extern "C"
{
    const char *hmwn_version(void)
    {
        return hmwn::artifact_version();
    }

    const char *hmwn_last_error(void)
    {
        return g_last_error.c_str();
    }

    void hmwn_string_free(char *s)
    {
        delete[] s;
    }

    hmwn_status hmwn_scene_create(double frequency_hz, int n_x, int n_y, double spacing_wavelengths,
                                  int evanescent_margin, hmwn_scene **out_scene)
    {
        return guarded([&]() -> hmwn_status {
            if (out_scene == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "out_scene is null");
            *out_scene = nullptr;
            auto scene = std::make_unique<hmwn_scene>();
            scene->carrier = hmwn::carrier_from_frequency(frequency_hz);
            scene->geometry = hmwn::make_planar_array(n_x, n_y, spacing_wavelengths * scene->carrier.wavelength_m);
            scene->lattice = hmwn::build_lattice(scene->geometry, scene->carrier, evanescent_margin);
            *out_scene = scene.release();
            return HMWN_OK;
        });
    }

    void hmwn_scene_destroy(hmwn_scene *scene)
    {
        delete scene;
    }

    hmwn_status hmwn_scene_lattice_size(const hmwn_scene *scene, int *out_size)
    {
        return guarded([&]() -> hmwn_status {
            if (scene == nullptr || out_size == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            *out_size = static_cast<int>(scene->lattice.points.size());
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_scene_propagating_count(const hmwn_scene *scene, int *out_count)
    {
        return guarded([&]() -> hmwn_status {
            if (scene == nullptr || out_count == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            *out_count = scene->lattice.propagating_count;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_scene_rayleigh_distance(const hmwn_scene *scene, double *out_meters)
    {
        return guarded([&]() -> hmwn_status {
            if (scene == nullptr || out_meters == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            *out_meters = hmwn::rayleigh_distance(scene->geometry, scene->carrier);
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_scene_lattice_point(const hmwn_scene *scene, int index, hmwn_lattice_point *out_point)
    {
        return guarded([&]() -> hmwn_status {
            if (scene == nullptr || out_point == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            if (index < 0 || static_cast<std::size_t>(index) >= scene->lattice.points.size())
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "lattice index out of range");
            const auto &p = scene->lattice.points[static_cast<std::size_t>(index)];
            out_point->l = p.l;
            out_point->m = p.m;
            out_point->kappa_x = p.kappa_x;
            out_point->kappa_y = p.kappa_y;
            out_point->gamma_re = p.gamma.real();
            out_point->gamma_im = p.gamma.imag();
            out_point->is_propagating = p.is_propagating ? 1 : 0;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_scene_point_direction(const hmwn_scene *scene, int index, int *out_has_direction,
                                           double *out_theta_rad, double *out_phi_rad)
    {
        return guarded([&]() -> hmwn_status {
            if (scene == nullptr || out_has_direction == nullptr || out_theta_rad == nullptr ||
                out_phi_rad == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            if (index < 0 || static_cast<std::size_t>(index) >= scene->lattice.points.size())
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "lattice index out of range");
            const auto dir = hmwn::wavenumber_to_direction(scene->lattice.points[static_cast<std::size_t>(index)],
                                                           scene->carrier);
            *out_has_direction = dir.has_value() ? 1 : 0;
            *out_theta_rad = dir ? dir->theta_rad : 0.0;
            *out_phi_rad = dir ? dir->phi_rad : 0.0;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_experiment_create(const char *config_json, hmwn_experiment **out_experiment)
    {
        return guarded([&]() -> hmwn_status {
            if (out_experiment == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "out_experiment is null");
            *out_experiment = nullptr;
            auto exp = std::make_unique<hmwn_experiment>();
            exp->config_text = config_json ? config_json : "";
            exp->parsed = hmwn::parse_config(exp->config_text);
            *out_experiment = exp.release();
            return HMWN_OK;
        });
    }

    void hmwn_experiment_destroy(hmwn_experiment *experiment)
    {
        delete experiment;
    }

    hmwn_status hmwn_experiment_set(hmwn_experiment *experiment, const char *dotted_key, const char *value)
    {
        return guarded([&]() -> hmwn_status {
            if (experiment == nullptr || dotted_key == nullptr || value == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            const std::string merged = hmwn::apply_config_override(experiment->config_text, dotted_key, value);
            experiment->parsed = hmwn::parse_config(merged); // validate before accepting
            experiment->config_text = merged;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_experiment_set_threads(hmwn_experiment *experiment, int threads)
    {
        return guarded([&]() -> hmwn_status {
            if (experiment == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            if (threads < 1)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "thread count must be positive");
            experiment->threads = threads;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_experiment_resolved_config(const hmwn_experiment *experiment, char **out_json)
    {
        return guarded([&]() -> hmwn_status {
            if (experiment == nullptr || out_json == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            const std::string text = hmwn::resolved_config_json(experiment->parsed);
            char *buf = new char[text.size() + 1];
            std::memcpy(buf, text.c_str(), text.size() + 1);
            *out_json = buf;
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_experiment_run(hmwn_experiment *experiment, const char *subcommand, const char *out_dir)
    {
        return guarded([&]() -> hmwn_status {
            if (experiment == nullptr || subcommand == nullptr || out_dir == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            const std::string sub = subcommand;
            if (sub == "lattice")
                hmwn::run_lattice(experiment->parsed, out_dir, experiment->threads);
            else if (sub == "spectrum")
                hmwn::run_spectrum(experiment->parsed, out_dir, experiment->threads);
            else if (sub == "estimate")
                hmwn::run_estimate(experiment->parsed, out_dir, experiment->threads);
            else if (sub == "codebook")
                hmwn::run_codebook(experiment->parsed, out_dir, experiment->threads);
            else
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "unknown subcommand: " + sub);
            return HMWN_OK;
        });
    }

    hmwn_status hmwn_experiment_validate(hmwn_experiment *experiment, const char *out_dir,
                                         int *out_checks_failed)
    {
        return guarded([&]() -> hmwn_status {
            if (experiment == nullptr || out_dir == nullptr || out_checks_failed == nullptr)
                return fail(HMWN_ERROR_INVALID_ARGUMENT, "null argument");
            *out_checks_failed = hmwn::run_validate(experiment->parsed, out_dir, experiment->threads);
            return HMWN_OK;
        });
    }
}
