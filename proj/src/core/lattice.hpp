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
#include <optional>
#include <vector>

#include <armadillo>

#include "core/carrier.hpp"
#include "core/geometry.hpp"

namespace hmwn
{
    // One spatial-frequency sample of the plane-wave expansion.
    //
    // Index pair (l, m) maps to kappa_x = 2*pi*l / L_x, kappa_y = 2*pi*m / L_y.
    // gamma = sqrt(k^2 - kappa_x^2 - kappa_y^2) is the longitudinal wavenumber:
    // purely real for propagating points, purely imaginary for evanescent ones.
    struct LatticePoint
    {
        int l = 0;
        int m = 0;
        double kappa_x = 0.0;
        double kappa_y = 0.0;
        std::complex<double> gamma{0.0, 0.0};
        bool is_propagating = false;
    };

    // All integer (l, m) with (l*lambda/L_x)^2 + (m*lambda/L_y)^2 <= 1, plus an
    // optional ring of evanescent points obtained by inflating both ellipse
    // semi-axes by `evanescent_margin` index units. Points are sorted
    // lexicographically by (l, m) and contain no duplicates.
    struct WavenumberLattice
    {
        std::vector<LatticePoint> points;
        int propagating_count = 0;
        int evanescent_margin = 0;
        double cell_kappa_x = 0.0; // kappa-space cell width 2*pi / L_x
        double cell_kappa_y = 0.0; // 2*pi / L_y
    };

    struct Direction
    {
        double theta_rad = 0.0; // elevation from broadside (z axis), [0, pi/2]
        double phi_rad = 0.0;   // azimuth in the array plane, atan2 convention
    };

    // Throws std::invalid_argument on invalid geometry or negative margin.
    WavenumberLattice build_lattice(const PlanarArrayGeometry &geometry,
                                    const CarrierConfig &carrier,
                                    int evanescent_margin);

    // 2 D^2 / lambda with D the aperture diagonal sqrt(L_x^2 + L_y^2).
    double rayleigh_distance(const PlanarArrayGeometry &geometry, const CarrierConfig &carrier);

    // Physical arrival angle of a propagating point; absent for evanescent points,
    // whose spatial frequency lies outside the visible region.
    std::optional<Direction> wavenumber_to_direction(const LatticePoint &point, const CarrierConfig &carrier);

    // Unit propagation vector (kappa_x/k, kappa_y/k, Re gamma/k). Only meaningful
    // for propagating points.
    arma::vec3 unit_direction(const LatticePoint &point, const CarrierConfig &carrier);

    arma::vec3 unit_direction(const Direction &dir);

    // Inverse of wavenumber_to_direction on the visible region:
    // kappa_x = k sin(theta) cos(phi), kappa_y = k sin(theta) sin(phi).
    std::pair<double, double> direction_to_wavenumber(const Direction &dir, const CarrierConfig &carrier);
}
