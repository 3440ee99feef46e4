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

#include <complex>
#include <cstdint>
#include <vector>

#include <armadillo>

#include "channel/spectrum.hpp"
#include "core/rng.hpp"

namespace hmwn
{
    struct Scatterer
    {
        arma::vec3 position;               // meters, z > 0 (in front of the array)
        std::complex<double> gain;         // drawn CN(0, gain_variance)
        double gain_variance = 0.0;
        int cluster = 0;
    };

    struct ClusterScattererSet
    {
        std::vector<Scatterer> scatterers;
        std::uint64_t rng_seed = 0;
    };

    struct ScattererDrawConfig
    {
        int per_cluster = 20;
        double shell_relative_halfwidth = 0.1; // radii uniform in distance * (1 +- halfwidth)
    };

    // Unit vector with VMF density around mu; alpha 0 degenerates to the uniform
    // sphere. Used for scatterer directions.
    arma::vec3 vmf_sample(const arma::vec3 &mu, double alpha_vmf, Rng &rng);

    // Places per_cluster scatterers for every cluster: directions drawn from the
    // cluster VMF (rejecting z <= 0), radii uniform in the shell around
    // centroid_distance_m. Gains are i.i.d. CN(0, weight_c / per_cluster), so the
    // total mean gain power is 1 and cluster powers follow the spectrum weights.
    ClusterScattererSet draw_scatterers(const AngularPowerSpectrum &spectrum,
                                        double centroid_distance_m,
                                        const ScattererDrawConfig &cfg,
                                        std::uint64_t seed);
}
