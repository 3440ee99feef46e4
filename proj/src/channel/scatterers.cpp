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

#include "channel/scatterers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmwn
{
    arma::vec3 vmf_sample(const arma::vec3 &mu, double alpha_vmf, Rng &rng)
    {
        const double u = rng.uniform();
        double w;
        if (alpha_vmf < 1e-8)
        {
            w = 2.0 * u - 1.0; // uniform sphere
        }
        else if (alpha_vmf > 350.0)
        {
            // exp(-2 alpha) underflows; the sampled CDF collapses to this branch.
            w = 1.0 + std::log(std::max(u, std::numeric_limits<double>::min())) / alpha_vmf;
        }
        else
        {
            w = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * alpha_vmf)) / alpha_vmf;
        }
        w = std::clamp(w, -1.0, 1.0);

        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
        const arma::vec3 local{s * std::cos(phi), s * std::sin(phi), w};

        // Rotate the z axis onto mu via the axis-angle construction.
        const double c = mu[2];
        if (c > 1.0 - 1e-12)
            return local;
        if (c < -1.0 + 1e-12)
            return {local[0], -local[1], -local[2]};
        const arma::vec3 axis = arma::normalise(arma::vec3{-mu[1], mu[0], 0.0});
        const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
        const arma::vec3 rotated = local * c + arma::cross(axis, local) * st + axis * arma::dot(axis, local) * (1.0 - c);
        return rotated;
    }

    ClusterScattererSet draw_scatterers(const AngularPowerSpectrum &spectrum,
                                        double centroid_distance_m,
                                        const ScattererDrawConfig &cfg,
                                        std::uint64_t seed)
    {
        validate_spectrum(spectrum);
        if (cfg.per_cluster < 1)
            throw std::invalid_argument("need at least one scatterer per cluster");
        if (!(centroid_distance_m > 0.0))
            throw std::invalid_argument("centroid distance must be positive");
        if (cfg.shell_relative_halfwidth < 0.0 || cfg.shell_relative_halfwidth >= 1.0)
            throw std::invalid_argument("shell half-width must lie in [0, 1)");

        Rng rng(seed);
        ClusterScattererSet set;
        set.rng_seed = seed;
        set.scatterers.reserve(spectrum.clusters.size() * cfg.per_cluster);

        for (std::size_t c = 0; c < spectrum.clusters.size(); c++)
        {
            const auto &cl = spectrum.clusters[c];
            const double var = cl.weight / cfg.per_cluster;
            for (int s = 0; s < cfg.per_cluster; s++)
            {
                arma::vec3 dir;
                int tries = 0;
                do
                {
                    dir = vmf_sample(cl.mean_direction, cl.alpha_vmf, rng);
                    if (++tries > 1000)
                        throw std::invalid_argument("cluster direction distribution has no upper-hemisphere mass");
                } while (!(dir[2] > 0.0));

                const double radius = centroid_distance_m *
                                      (1.0 + cfg.shell_relative_halfwidth * (2.0 * rng.uniform() - 1.0));
                Scatterer sc;
                sc.position = dir * radius;
                sc.gain_variance = var;
                sc.gain = std::sqrt(var) * rng.cgaussian();
                sc.cluster = static_cast<int>(c);
                set.scatterers.push_back(sc);
            }
        }
        return set;
    }
}
