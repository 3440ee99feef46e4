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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel/scatterers.hpp"
#include "channel/spectrum.hpp"
#include "core/carrier.hpp"
#include "core/geometry.hpp"
#include "estimation/mrf.hpp"

namespace hmwn
{
    struct ClusterConfig
    {
        double theta_deg = 0.0;
        double phi_deg = 0.0;
        double concentration = 100.0;
        double weight = 1.0;
    };

    struct VarianceOverrideEntry
    {
        int l = 0;
        int m = 0;
        double variance = 0.0;
    };

    struct SpectrumRunConfig
    {
        double far_distance_rayleigh = 10.0;
        double near_distance_rayleigh = 0.3;
        int near_evanescent_margin = 2;
        std::string far_generator = "greens"; // or "fourier_series"
        int scatterers_per_cluster = 20;
        double shell_relative_halfwidth = 0.1;
        std::vector<VarianceOverrideEntry> variance_override; // empty = use the VMF map
        std::optional<int> trials;
    };

    struct OmpRunConfig
    {
        std::optional<double> power_threshold; // absent = noise-floor rule 1.1 M sigma^2 / ||y||^2
        std::optional<int> max_atoms;          // absent = M / 4
    };

    struct EstimationRunConfig
    {
        std::vector<std::string> bases{"fh", "dft"};
        double compression_ratio = 0.25;
        std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0, 20.0};
        OmpRunConfig omp;
        MrfPrior mrf;
        std::optional<int> trials = 50; // the combined-basis sweep is the most expensive run
    };

    struct CodebookRunConfig
    {
        std::vector<ClusterConfig> clusters{{20.0, 45.0, 100.0, 1.0}};
        double distance_min_m = 0.5;
        double distance_max_m = 30.0;
        int distance_points = 12;
        std::vector<double> distances_m; // explicit grid overrides min/max/points
        double csi_error_std = 0.3;
        double snr_db = 10.0;
        int evanescent_margin = 0; // harmonic codebook margin
        int scatterers_per_cluster = 20;
        double shell_relative_halfwidth = 0.1;
        std::optional<int> trials;
    };

    struct ExperimentConfig
    {
        double carrier_frequency_hz = 30e9;
        int n_x = 32;
        int n_y = 32;
        double spacing_wavelengths = 0.25;
        int evanescent_margin = 0;
        std::vector<ClusterConfig> clusters{
            {25.0, 45.0, 100.0, 0.25},
            {35.0, 160.0, 100.0, 0.25},
            {20.0, 250.0, 100.0, 0.25},
            {45.0, 330.0, 100.0, 0.25},
        };
        SpectrumRunConfig spectrum;
        EstimationRunConfig estimation;
        CodebookRunConfig codebook;
        int trials = 100;
        std::uint64_t base_seed = 20260811;
        std::string output_dir = "out";

        CarrierConfig carrier() const;
        PlanarArrayGeometry geometry() const;
        // Normalization target is E||h||^2 = element count.
        AngularPowerSpectrum spectrum_model(const std::vector<ClusterConfig> &cl) const;
        std::vector<double> codebook_distances() const;

        int spectrum_trials() const { return spectrum.trials.value_or(trials); }
        int estimation_trials() const { return estimation.trials.value_or(trials); }
        int codebook_trials() const { return codebook.trials.value_or(trials); }
    };

    // Parses and validates a JSON config. Unknown keys anywhere in the tree are
    // rejected. An empty or all-whitespace string yields the defaults. A document
    // whose root carries "resolved_config" (a sidecar) is unwrapped first.
    // Throws config_error with a dotted-path message on any problem.
    ExperimentConfig parse_config(const std::string &json_text);

    // Full resolved config (defaults filled in) as a deterministic JSON string.
    std::string resolved_config_json(const ExperimentConfig &cfg);

    // Applies one dotted-path override, e.g. ("geometry.n_x", "64"), onto the
    // JSON text and returns the merged document. Values parse as JSON when
    // possible, else as strings.
    std::string apply_config_override(const std::string &json_text, const std::string &dotted_key,
                                      const std::string &value);
}
