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

#include <utility>
#include <vector>

#include <armadillo>

#include "core/carrier.hpp"
#include "core/lattice.hpp"

namespace hmwn
{
    // One von Mises-Fisher component of the angular power spectrum. The
    // concentration parameter is named to avoid any clash with the carrier
    // wavenumber k.
    struct VmfCluster
    {
        arma::vec3 mean_direction; // unit norm, positive z component
        double alpha_vmf = 0.0;    // concentration, >= 0 (0 = isotropic)
        double weight = 0.0;       // positive, weights sum to 1
    };

    struct AngularPowerSpectrum
    {
        std::vector<VmfCluster> clusters;
        double normalization = 0.0; // target total power E||h||^2
    };

    VmfCluster make_vmf_cluster(double theta_rad, double phi_rad, double alpha_vmf, double weight);

    // Throws std::invalid_argument on empty cluster list, non-unit or
    // lower-hemisphere mean directions, negative concentrations, or weights that
    // do not sum to 1.
    void validate_spectrum(const AngularPowerSpectrum &spectrum);

    // Per-lattice-point variances of the harmonic coefficients, index-aligned
    // with the lattice the map was built from.
    struct LatticeVariances
    {
        std::vector<std::pair<int, int>> index; // (l, m) per entry
        arma::vec variance;                     // non-negative, zero on evanescent points

        double total() const { return arma::accu(variance); }
    };

    // Maps the VMF mixture onto the lattice:
    //   sigma^2(l, m)  proportional to  (1 / Re gamma) * sum_c w_c exp(alpha_c mu_c . d(l, m)),
    // normalized so the variances sum to spectrum.normalization. Evanescent
    // points get zero. Points exactly on the visible-region rim have Re gamma = 0
    // where the density is integrable but the pointwise factor diverges; those
    // cells are assigned the mean of the integrand over the lattice cell instead
    // (midpoint subgrid restricted to the visible region).
    LatticeVariances build_vmf_spectrum(const AngularPowerSpectrum &spectrum,
                                        const WavenumberLattice &lattice,
                                        const CarrierConfig &carrier);
}
