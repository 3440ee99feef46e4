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

#include <armadillo>

#include "bases/basis.hpp"
#include "channel/scatterers.hpp"
#include "channel/spectrum.hpp"
#include "core/carrier.hpp"
#include "core/geometry.hpp"

namespace hmwn
{
    enum class Provenance
    {
        exact_greens,   // spherical-wave sum over scatterers
        fourier_series, // superposition of harmonic atoms with random coefficients
        fraunhofer,     // linear-phase approximation
        fresnel         // quadratic-phase approximation
    };

    struct ChannelVector
    {
        arma::cx_vec samples; // one entry per receive element
        Provenance provenance = Provenance::exact_greens;
        std::uint64_t rng_seed = 0;
    };

    const char *provenance_name(Provenance p);

    // h = sum_a x_a a_a with x_a independent CN(0, sigma^2_a). The variance map
    // must be index-aligned with the harmonic basis (same (l, m) sequence);
    // deterministic given the seed. E||h||^2 equals the variance total.
    ChannelVector synthesize_farfield(const LatticeVariances &variances, const Basis &fh_basis,
                                      std::uint64_t seed);

    // Spherical-wave reference:
    //   h_n = sum_s gain_s * exp(-j k ||p_s - r_n||) / (4 pi ||p_s - r_n||).
    // With a normalization target the result is scaled by a deterministic factor
    // so that E||h||^2 (expectation over the scatterer gains) meets the target.
    // Rejects scatterers closer than lambda/100 to any element.
    ChannelVector synthesize_nearfield_greens(const ClusterScattererSet &scatterers,
                                              const PlanarArrayGeometry &geometry,
                                              const CarrierConfig &carrier,
                                              std::optional<double> normalize_target = std::nullopt);

    // First-order phase expansion about the array center, amplitude frozen at the
    // per-scatterer center distance:  exp(-j k (r_c - d . r_n)) / (4 pi r_c).
    ChannelVector fraunhofer_channel(const ClusterScattererSet &scatterers,
                                     const PlanarArrayGeometry &geometry,
                                     const CarrierConfig &carrier,
                                     std::optional<double> normalize_target = std::nullopt);

    // Second-order phase expansion about the array center, amplitude frozen at
    // the per-scatterer center distance.
    ChannelVector fresnel_channel(const ClusterScattererSet &scatterers,
                                  const PlanarArrayGeometry &geometry,
                                  const CarrierConfig &carrier,
                                  std::optional<double> normalize_target = std::nullopt);

    // left * coefficients * right^H, a pure linear sandwich for externally
    // supplied impairment matrices (coupling, efficiency, pattern distortion).
    arma::cx_mat apply_impairment_matrices(const arma::cx_mat &coefficients,
                                           const arma::cx_mat &left,
                                           const arma::cx_mat &right);
}
