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

#include "core/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmwn
{
    // Relative slack when classifying integer indices against the ellipse rim.
    // Integer lattices step in whole index units, so this only absorbs rounding
    // of points that lie exactly on the rim.
    static constexpr double rim_tol = 1e-9;

    WavenumberLattice build_lattice(const PlanarArrayGeometry &geometry,
                                    const CarrierConfig &carrier,
                                    int evanescent_margin)
    {
        if (!(geometry.aperture_x_m > 0.0) || !(geometry.aperture_y_m > 0.0))
            throw std::invalid_argument("array aperture must be positive");
        if (evanescent_margin < 0)
            throw std::invalid_argument("evanescent margin must be non-negative");

        const double k = carrier.wavenumber_rad_per_m;
        const double ax = geometry.aperture_x_m / carrier.wavelength_m; // ellipse semi-axis in index units
        const double ay = geometry.aperture_y_m / carrier.wavelength_m;
        const double bx = ax + evanescent_margin;
        const double by = ay + evanescent_margin;

        const int l_max = static_cast<int>(std::floor(bx + rim_tol));
        const int m_max = static_cast<int>(std::floor(by + rim_tol));

        WavenumberLattice lat;
        lat.evanescent_margin = evanescent_margin;
        lat.cell_kappa_x = 2.0 * std::numbers::pi / geometry.aperture_x_m;
        lat.cell_kappa_y = 2.0 * std::numbers::pi / geometry.aperture_y_m;

        for (int l = -l_max; l <= l_max; l++)
            for (int m = -m_max; m <= m_max; m++)
            {
                const double rr_prop = (l / ax) * (l / ax) + (m / ay) * (m / ay);
                const double rr_ring = (l / bx) * (l / bx) + (m / by) * (m / by);
                const bool prop = rr_prop <= 1.0 + rim_tol;
                if (!prop && rr_ring > 1.0 + rim_tol)
                    continue;

                LatticePoint p;
                p.l = l;
                p.m = m;
                p.kappa_x = 2.0 * std::numbers::pi * l / geometry.aperture_x_m;
                p.kappa_y = 2.0 * std::numbers::pi * m / geometry.aperture_y_m;
                p.is_propagating = prop;
                const double g2 = k * k - p.kappa_x * p.kappa_x - p.kappa_y * p.kappa_y;
                if (prop)
                    p.gamma = std::complex<double>(std::sqrt(std::max(0.0, g2)), 0.0);
                else
                    p.gamma = std::complex<double>(0.0, std::sqrt(-g2));
                lat.points.push_back(p);
                if (prop)
                    lat.propagating_count++;
            }
        return lat; // loop order already yields lexicographic (l, m)
    }

    double rayleigh_distance(const PlanarArrayGeometry &geometry, const CarrierConfig &carrier)
    {
        const double d2 = geometry.aperture_x_m * geometry.aperture_x_m +
                          geometry.aperture_y_m * geometry.aperture_y_m;
        return 2.0 * d2 / carrier.wavelength_m;
    }

    std::optional<Direction> wavenumber_to_direction(const LatticePoint &point, const CarrierConfig &carrier)
    {
        if (!point.is_propagating)
            return std::nullopt;
        const double k = carrier.wavenumber_rad_per_m;
        const double kt = std::hypot(point.kappa_x, point.kappa_y);
        Direction d;
        d.theta_rad = std::asin(std::min(1.0, kt / k));
        d.phi_rad = (kt > 0.0) ? std::atan2(point.kappa_y, point.kappa_x) : 0.0;
        return d;
    }

    arma::vec3 unit_direction(const LatticePoint &point, const CarrierConfig &carrier)
    {
        const double k = carrier.wavenumber_rad_per_m;
        arma::vec3 d;
        d[0] = point.kappa_x / k;
        d[1] = point.kappa_y / k;
        const double z2 = 1.0 - d[0] * d[0] - d[1] * d[1];
        d[2] = std::sqrt(std::max(0.0, z2));
        return d;
    }

    arma::vec3 unit_direction(const Direction &dir)
    {
        arma::vec3 d;
        d[0] = std::sin(dir.theta_rad) * std::cos(dir.phi_rad);
        d[1] = std::sin(dir.theta_rad) * std::sin(dir.phi_rad);
        d[2] = std::cos(dir.theta_rad);
        return d;
    }

    std::pair<double, double> direction_to_wavenumber(const Direction &dir, const CarrierConfig &carrier)
    {
        const double k = carrier.wavenumber_rad_per_m;
        return {k * std::sin(dir.theta_rad) * std::cos(dir.phi_rad),
                k * std::sin(dir.theta_rad) * std::sin(dir.phi_rad)};
    }
}
