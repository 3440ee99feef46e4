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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codebook/codebook.hpp"
#include "sim/experiments.hpp"

using namespace hmwn;

namespace
{
    const CarrierConfig carrier = carrier_from_frequency(30e9);
    const double deg = std::numbers::pi / 180.0;

    PlanarArrayGeometry square_array(int n, double spacing_wl)
    {
        return make_planar_array(n, n, spacing_wl * carrier.wavelength_m);
    }

    AngularPowerSpectrum one_cluster(double target)
    {
        AngularPowerSpectrum aps;
        aps.normalization = target;
        aps.clusters = {make_vmf_cluster(20 * deg, 45 * deg, 100.0, 1.0)};
        return aps;
    }
}

TEST_CASE("beam selection")
{
    const auto g = square_array(16, 0.25);
    const auto lat = build_lattice(g, carrier, 0);
    const auto fh = build_fh_basis(lat, g);

    SUBCASE("a codeword channel selects itself without estimation error")
    {
        const arma::cx_vec h = fh.atoms.col(17) * 2.5;
        CHECK(select_beam(h, fh, 0.0, 1) == 17);
    }

    SUBCASE("orthogonality to all but one codeword forces that codeword")
    {
        // harmonic atoms are orthonormal here, so atom 5 is orthogonal to the rest
        const arma::cx_vec h = fh.atoms.col(5);
        CHECK(select_beam(h, fh, 0.0, 1) == 5);
    }

    SUBCASE("ties break toward the lowest index")
    {
        Basis tiny;
        tiny.kind = AtomKind::fh;
        tiny.atoms.set_size(4, 3);
        tiny.atoms.col(0) = arma::cx_vec(4, arma::fill::value(std::complex<double>(0.5, 0.0)));
        tiny.atoms.col(1) = tiny.atoms.col(0); // identical metric by construction
        tiny.atoms.col(2) = tiny.atoms.col(0);
        tiny.meta.resize(3);
        arma::cx_vec h(4, arma::fill::ones);
        CHECK(select_beam_from_estimate(h, tiny) == 0);
    }

    SUBCASE("empty codebook throws")
    {
        Basis empty;
        empty.atoms.set_size(16, 0);
        arma::cx_vec h(16, arma::fill::ones);
        CHECK_THROWS_AS(select_beam_from_estimate(h, empty), std::invalid_argument);
    }

    SUBCASE("noiseless selection equals an order-shuffled exhaustive re-scan")
    {
        Rng rng(derive_seed(71, "test.select", 0));
        arma::cx_vec h(g.element_count());
        for (auto &v : h)
            v = rng.cgaussian();
        const arma::uword sel = select_beam(h, fh, 0.0, 5);

        // independent scan in reversed order with >= comparison
        arma::uword best = fh.atom_count() - 1;
        double metric = -1.0;
        for (arma::uword w = fh.atom_count(); w-- > 0;)
        {
            const double m = std::abs(arma::cdot(fh.atoms.col(w), h));
            if (m >= metric)
            {
                metric = m;
                best = w;
            }
        }
        CHECK(sel == best);
    }

    SUBCASE("estimation error can select non-physical beams on near-field channels")
    {
        const auto g32 = square_array(32, 0.25);
        const auto lat32 = build_lattice(g32, carrier, 0);
        const auto fh32 = build_fh_basis(lat32, g32);
        const auto dft32 = build_dft_basis(g32, carrier);
        const double rayleigh = rayleigh_distance(g32, carrier);
        const auto aps = one_cluster(g32.element_count());

        int invalid_dft = 0;
        const int trials = 60;
        for (int t = 0; t < trials; t++)
        {
            const auto set = draw_scatterers(aps, 0.3 * rayleigh, {20, 0.1},
                                             derive_seed(72, "test.invalid", t));
            const auto ch = synthesize_nearfield_greens(set, g32, carrier, aps.normalization);
            const arma::uword sd = select_beam(ch.samples, dft32, 0.3, derive_seed(73, "test.invalid.csi", t));
            if (!dft32.meta[sd].is_propagating)
                invalid_dft++;
            const arma::uword sf = select_beam(ch.samples, fh32, 0.3, derive_seed(73, "test.invalid.csi", t));
            CHECK(fh32.meta[sf].is_propagating); // margin-0 codebook has only physical beams
        }
        CHECK(invalid_dft > 0);
        CHECK(invalid_dft < trials);
        MESSAGE("non-physical DFT selections: ", invalid_dft, " of ", trials);
    }
}

TEST_CASE("achievable rate")
{
    const auto g = square_array(16, 0.25);
    const auto lat = build_lattice(g, carrier, 0);
    const auto fh = build_fh_basis(lat, g);

    SUBCASE("orthogonal codeword yields zero rate")
    {
        const arma::cx_vec h = fh.atoms.col(3);
        CHECK(achievable_rate(h, fh.atoms.col(4), 100.0) == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("matched filter reaches the upper bound")
    {
        Rng rng(derive_seed(74, "test.rate", 0));
        arma::cx_vec h(g.element_count());
        for (auto &v : h)
            v = rng.cgaussian();
        const arma::cx_vec w = arma::normalise(h);
        const double h2 = arma::accu(arma::square(arma::abs(h)));
        CHECK(achievable_rate(h, w, 10.0) == doctest::Approx(std::log2(1.0 + 10.0 * h2)).epsilon(1e-12));
    }

    SUBCASE("invariant to a global phase rotation of the channel")
    {
        Rng rng(derive_seed(75, "test.rate.phase", 0));
        arma::cx_vec h(g.element_count());
        for (auto &v : h)
            v = rng.cgaussian();
        for (double phase : {0.3, 1.7, -2.2})
        {
            const double a = achievable_rate(h, fh.atoms.col(6), 10.0);
            const double b = achievable_rate(h * std::polar(1.0, phase), fh.atoms.col(6), 10.0);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }

    SUBCASE("monotone in snr")
    {
        Rng rng(derive_seed(76, "test.rate.snr", 0));
        arma::cx_vec h(g.element_count());
        for (auto &v : h)
            v = rng.cgaussian();
        double prev = -1.0;
        for (double snr : {0.1, 1.0, 10.0, 100.0})
        {
            const double r = achievable_rate(h, fh.atoms.col(2), snr);
            CHECK(r >= prev);
            prev = r;
        }
    }

    SUBCASE("seeded 5 m near-field selection anchor")
    {
        // regression anchor, frozen from the first verified run of this scenario
        const auto g32 = square_array(32, 0.25);
        const auto lat32 = build_lattice(g32, carrier, 0);
        const auto fh32 = build_fh_basis(lat32, g32);
        const auto aps = one_cluster(g32.element_count());
        const auto cl = draw_scatterers(aps, 5.0, {20, 0.1}, derive_seed(20260811, "anchor.rate", 0));
        const auto ch = synthesize_nearfield_greens(cl, g32, carrier, aps.normalization);
        const arma::uword sel = select_beam(ch.samples, fh32, 0.0, 1);
        CHECK(sel == 131);
        CHECK(achievable_rate(ch.samples, fh32.atoms.col(sel), 10.0) ==
              doctest::Approx(11.7423683346968).epsilon(1e-6));
    }
}

TEST_CASE("distance sweep")
{
    const auto g = square_array(32, 0.25);
    const auto lat = build_lattice(g, carrier, 0);
    const auto fh = build_fh_basis(lat, g);
    const auto dft = build_dft_basis(g, carrier);
    const double rayleigh = rayleigh_distance(g, carrier);

    SUBCASE("far point with perfect estimates: both codebooks agree")
    {
        DistanceSweepConfig cfg;
        cfg.spectrum = one_cluster(g.element_count());
        cfg.distances_m = {100.0 * rayleigh};
        cfg.snr_linear = 10.0;
        cfg.csi_error_std = 0.0;
        cfg.trials = 10;
        cfg.base_seed = 81;
        const auto pts = distance_sweep(cfg, g, carrier, {&fh, &dft});
        const auto rows = summarize_rate_points(pts);
        REQUIRE(rows.size() == 2);
        CHECK(std::abs(rows[0].mean_rate - rows[1].mean_rate) < 0.1);
        CHECK(rows[0].invalid_beam_fraction == 0.0);
        CHECK(rows[1].invalid_beam_fraction == 0.0);
    }

    SUBCASE("ordering and output layout on a small sweep")
    {
        DistanceSweepConfig cfg;
        cfg.spectrum = one_cluster(g.element_count());
        cfg.distances_m = {0.3 * rayleigh, 2.0 * rayleigh, 20.0 * rayleigh};
        cfg.snr_linear = 10.0;
        cfg.csi_error_std = 0.3;
        cfg.trials = 30;
        cfg.base_seed = 82;
        cfg.threads = 2;
        const auto pts = distance_sweep(cfg, g, carrier, {&fh, &dft});
        REQUIRE(pts.size() == 3 * 30 * 2);

        // layout: distance-major, trial, then codebook order
        CHECK(pts[0].codebook_kind == AtomKind::fh);
        CHECK(pts[1].codebook_kind == AtomKind::dft);
        CHECK(pts[0].distance_m == doctest::Approx(0.3 * rayleigh));
        CHECK(pts[1 * 30 * 2].distance_m == doctest::Approx(2.0 * rayleigh)); // second distance block

        // paired trials: whenever the DFT pick is a physical beam it is the same
        // beam the harmonic codebook picked, so the rates coincide
        for (std::size_t i = 0; i < pts.size(); i += 2)
            if (pts[i + 1].selected_propagating)
                CHECK(pts[i].rate_bps_hz == doctest::Approx(pts[i + 1].rate_bps_hz).epsilon(1e-9));

        // medians per distance keep the same ordering
        for (std::size_t d = 0; d < 3; d++)
        {
            std::vector<double> fh_rates, dft_rates;
            for (int t = 0; t < 30; t++)
            {
                fh_rates.push_back(pts[(d * 30 + t) * 2].rate_bps_hz);
                dft_rates.push_back(pts[(d * 30 + t) * 2 + 1].rate_bps_hz);
            }
            CHECK(median_of(fh_rates) >= median_of(dft_rates));
        }
    }

    SUBCASE("thread count does not change the result")
    {
        DistanceSweepConfig cfg;
        cfg.spectrum = one_cluster(g.element_count());
        cfg.distances_m = {rayleigh};
        cfg.snr_linear = 10.0;
        cfg.csi_error_std = 0.3;
        cfg.trials = 12;
        cfg.base_seed = 83;
        cfg.threads = 1;
        const auto a = distance_sweep(cfg, g, carrier, {&fh, &dft});
        cfg.threads = 2;
        const auto b = distance_sweep(cfg, g, carrier, {&fh, &dft});
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); i++)
        {
            CHECK(a[i].rate_bps_hz == b[i].rate_bps_hz);
            CHECK(a[i].selected_codeword_index == b[i].selected_codeword_index);
        }
    }

    SUBCASE("rejects bad inputs")
    {
        DistanceSweepConfig cfg;
        cfg.spectrum = one_cluster(g.element_count());
        cfg.distances_m = {-1.0};
        CHECK_THROWS_AS(distance_sweep(cfg, g, carrier, {&fh}), std::invalid_argument);
        cfg.distances_m = {1.0};
        CHECK_THROWS_AS(distance_sweep(cfg, g, carrier, {}), std::invalid_argument);
    }
}
