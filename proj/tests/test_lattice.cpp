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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "core/carrier.hpp"
#include "core/geometry.hpp"
#include "core/lattice.hpp"

using namespace hmwn;

namespace
{
    // Independent brute-force enumeration of the propagating set over a generous
    // index box; the production builder must match it exactly.
    std::set<std::pair<int, int>> enumerate_disk(const PlanarArrayGeometry &g, const CarrierConfig &c)
    {
        const double ax = g.aperture_x_m / c.wavelength_m;
        const double ay = g.aperture_y_m / c.wavelength_m;
        const int box = static_cast<int>(std::ceil(std::max(ax, ay))) + 3;
        std::set<std::pair<int, int>> pts;
        for (int l = -box; l <= box; l++)
            for (int m = -box; m <= box; m++)
            {
                const double lx = l * c.wavelength_m / g.aperture_x_m;
                const double my = m * c.wavelength_m / g.aperture_y_m;
                if (lx * lx + my * my <= 1.0 + 1e-9)
                    pts.insert({l, m});
            }
        return pts;
    }

    PlanarArrayGeometry square_array(int n, double spacing_wavelengths, const CarrierConfig &c)
    {
        return make_planar_array(n, n, spacing_wavelengths * c.wavelength_m);
    }
}

TEST_CASE("carrier fields stay mutually consistent")
{
    const auto c = carrier_from_frequency(30e9);
    CHECK(c.wavelength_m == doctest::Approx(speed_of_light_m_s / 30e9).epsilon(1e-15));
    CHECK(std::abs(c.wavenumber_rad_per_m * c.wavelength_m - 2.0 * std::numbers::pi) <
          1e-12 * 2.0 * std::numbers::pi);
    CHECK_THROWS_AS(carrier_from_frequency(0.0), std::invalid_argument);
    CHECK_THROWS_AS(carrier_from_frequency(-1.0), std::invalid_argument);
}

TEST_CASE("planar array geometry and element ordering")
{
    const auto c = carrier_from_frequency(30e9);
    const auto g = make_planar_array(3, 2, 0.5 * c.wavelength_m);
    CHECK(g.element_count() == 6);
    CHECK(g.aperture_x_m == doctest::Approx(1.5 * c.wavelength_m));
    CHECK(g.aperture_y_m == doctest::Approx(1.0 * c.wavelength_m));

    // y outer, x inner; centered at the origin; all z = 0.
    CHECK(g.element_positions(0, 0) == doctest::Approx(-0.5 * c.wavelength_m));
    CHECK(g.element_positions(1, 0) == doctest::Approx(-0.25 * c.wavelength_m));
    CHECK(g.element_positions(0, 1) == doctest::Approx(0.0));
    CHECK(g.element_positions(0, 3) == doctest::Approx(-0.5 * c.wavelength_m));
    CHECK(g.element_positions(1, 3) == doctest::Approx(0.25 * c.wavelength_m));
    CHECK(arma::abs(g.element_positions.row(2)).max() == 0.0);

    // max pairwise distances are (N - 1) * spacing per axis
    CHECK(g.element_positions.row(0).max() - g.element_positions.row(0).min() ==
          doctest::Approx(2 * 0.5 * c.wavelength_m));

    CHECK_THROWS_AS(make_planar_array(0, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_planar_array(4, 4, 0.0), std::invalid_argument);
}

TEST_CASE("lattice counts match independent enumeration")
{
    const auto c = carrier_from_frequency(30e9);

    SUBCASE("4x4 at half-wavelength spacing has 13 propagating points")
    {
        const auto g = square_array(4, 0.5, c);
        const auto lat = build_lattice(g, c, 0);
        CHECK(lat.propagating_count == 13);
        CHECK(lat.points.size() == 13);

        const auto expected = enumerate_disk(g, c);
        CHECK(expected.size() == 13);
        std::set<std::pair<int, int>> got;
        for (const auto &p : lat.points)
            got.insert({p.l, p.m});
        CHECK(got == expected);
    }

    SUBCASE("2x2 at quarter-wavelength spacing keeps only the origin")
    {
        const auto g = square_array(2, 0.25, c);
        const auto lat = build_lattice(g, c, 0);
        REQUIRE(lat.points.size() == 1);
        CHECK(lat.points[0].l == 0);
        CHECK(lat.points[0].m == 0);
        CHECK(lat.points[0].is_propagating);
    }

    SUBCASE("32x32 at quarter-wavelength spacing has 197 propagating points")
    {
        const auto g = square_array(32, 0.25, c);
        const auto lat = build_lattice(g, c, 0);
        CHECK(lat.propagating_count == 197);
        CHECK(enumerate_disk(g, c).size() == 197);
    }
}

TEST_CASE("lattice ordering, uniqueness, and point invariants")
{
    const auto c = carrier_from_frequency(30e9);
    const auto g = square_array(32, 0.25, c);
    const auto lat = build_lattice(g, c, 2);

    std::set<std::pair<int, int>> seen;
    std::pair<int, int> prev{-1000000, -1000000};
    for (const auto &p : lat.points)
    {
        const std::pair<int, int> cur{p.l, p.m};
        CHECK(cur > prev); // strict lexicographic order implies no duplicates
        prev = cur;
        seen.insert(cur);

        // kappa^2 + gamma^2 = k^2 as a complex identity
        const std::complex<double> lhs =
            std::complex<double>(p.kappa_x * p.kappa_x + p.kappa_y * p.kappa_y, 0.0) + p.gamma * p.gamma;
        const double k2 = c.wavenumber_rad_per_m * c.wavenumber_rad_per_m;
        CHECK(std::abs(lhs - k2) <= 1e-9 * k2);

        const bool inside = p.kappa_x * p.kappa_x + p.kappa_y * p.kappa_y <= k2 * (1.0 + 1e-9);
        CHECK(p.is_propagating == inside);
        if (p.is_propagating)
            CHECK(p.gamma.imag() == 0.0);
        else
            CHECK(p.gamma.real() == 0.0);
    }
    CHECK(seen.size() == lat.points.size());

    SUBCASE("margin adds an evanescent ring only")
    {
        const auto lat0 = build_lattice(g, c, 0);
        CHECK(lat.propagating_count == lat0.propagating_count);
        CHECK(lat.points.size() > lat0.points.size());
        int evanescent = 0;
        for (const auto &p : lat.points)
            if (!p.is_propagating)
            {
                evanescent++;
                // inside the inflated ellipse
                const double a = g.aperture_x_m / c.wavelength_m + 2;
                CHECK((p.l / a) * (p.l / a) + (p.m / a) * (p.m / a) <= 1.0 + 1e-9);
            }
        CHECK(evanescent == static_cast<int>(lat.points.size()) - lat.propagating_count);
    }

    SUBCASE("deterministic rebuild")
    {
        const auto again = build_lattice(g, c, 2);
        REQUIRE(again.points.size() == lat.points.size());
        for (std::size_t i = 0; i < lat.points.size(); i++)
        {
            CHECK(again.points[i].l == lat.points[i].l);
            CHECK(again.points[i].m == lat.points[i].m);
            CHECK(again.points[i].kappa_x == lat.points[i].kappa_x);
            CHECK(again.points[i].gamma == lat.points[i].gamma);
        }
    }

    SUBCASE("rejects invalid inputs")
    {
        CHECK_THROWS_AS(build_lattice(g, c, -1), std::invalid_argument);
        PlanarArrayGeometry broken = g;
        broken.aperture_x_m = 0.0;
        CHECK_THROWS_AS(build_lattice(broken, c, 0), std::invalid_argument);
    }
}

TEST_CASE("lattice cardinality tracks the ellipse area")
{
    const auto c = carrier_from_frequency(30e9);
    for (int n : {32, 64, 128}) // L = 8, 16, 32 wavelengths at quarter-wavelength spacing
    {
        const auto g = square_array(n, 0.25, c);
        const auto lat = build_lattice(g, c, 0);
        const double l_wl = g.aperture_x_m / c.wavelength_m;
        const double ratio = lat.propagating_count / (std::numbers::pi * l_wl * l_wl);
        CHECK(ratio >= 0.9);
        CHECK(ratio <= 1.1);

        // quarter-wavelength fill factor approaches pi/16
        const double fill = static_cast<double>(lat.propagating_count) / (n * n);
        CHECK(fill >= 0.15);
        CHECK(fill <= 0.25);
    }

    // half-wavelength fill factor approaches pi/4
    const auto g = square_array(32, 0.5, c);
    const auto lat = build_lattice(g, c, 0);
    const double fill = static_cast<double>(lat.propagating_count) / (32.0 * 32.0);
    CHECK(fill >= 0.70);
    CHECK(fill <= 0.87);
}

TEST_CASE("rayleigh distance")
{
    const auto c = carrier_from_frequency(30e9);

    SUBCASE("desk-scale 32x32 quarter-wavelength array")
    {
        const auto g = square_array(32, 0.25, c);
        // D = sqrt(2) * 8 lambda, so 2 D^2 / lambda = 256 lambda exactly.
        CHECK(rayleigh_distance(g, c) == doctest::Approx(256.0 * c.wavelength_m).epsilon(1e-12));
    }

    SUBCASE("large 129x65 quarter-wavelength array is near 26.85 m")
    {
        const auto g = make_planar_array(129, 65, 0.25 * c.wavelength_m);
        const double r = rayleigh_distance(g, c);
        CHECK(std::abs(r - 26.85) / 26.85 < 0.06);
    }

    SUBCASE("degenerate single-element array is tiny")
    {
        const auto g = make_planar_array(1, 1, 0.25 * c.wavelength_m);
        CHECK(rayleigh_distance(g, c) < 1e-2); // far below any link distance
        CHECK(rayleigh_distance(g, c) == doctest::Approx(2.0 * 2.0 * 0.0625 * c.wavelength_m).epsilon(1e-12));
    }
}

TEST_CASE("wavenumber to direction mapping")
{
    const auto c = carrier_from_frequency(30e9);
    const double k = c.wavenumber_rad_per_m;

    SUBCASE("broadside and endfire")
    {
        LatticePoint p;
        p.is_propagating = true;
        auto d = wavenumber_to_direction(p, c);
        REQUIRE(d.has_value());
        CHECK(d->theta_rad == 0.0);
        CHECK(d->phi_rad == 0.0);

        p.kappa_x = k;
        d = wavenumber_to_direction(p, c);
        REQUIRE(d.has_value());
        CHECK(d->theta_rad == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
        CHECK(d->phi_rad == doctest::Approx(0.0));
    }

    SUBCASE("evanescent points have no angle")
    {
        LatticePoint p;
        p.kappa_x = 1.5 * k;
        p.is_propagating = false;
        p.gamma = {0.0, k * std::sqrt(1.25)};
        CHECK_FALSE(wavenumber_to_direction(p, c).has_value());
    }

    SUBCASE("round trip over the visible region")
    {
        for (double theta_deg = 0.0; theta_deg <= 89.0; theta_deg += 8.9)
            for (double phi_deg = -170.0; phi_deg <= 170.0; phi_deg += 42.5)
            {
                const Direction dir{theta_deg * std::numbers::pi / 180.0, phi_deg * std::numbers::pi / 180.0};
                const auto [kx, ky] = direction_to_wavenumber(dir, c);
                LatticePoint p;
                p.kappa_x = kx;
                p.kappa_y = ky;
                p.is_propagating = true;
                const auto back = wavenumber_to_direction(p, c);
                REQUIRE(back.has_value());
                CHECK(std::abs(back->theta_rad - dir.theta_rad) < 1e-9);
                if (theta_deg > 0.0)
                {
                    double dphi = std::abs(back->phi_rad - dir.phi_rad);
                    dphi = std::min(dphi, 2.0 * std::numbers::pi - dphi);
                    CHECK(dphi < 1e-9);
                }
            }
    }
}
