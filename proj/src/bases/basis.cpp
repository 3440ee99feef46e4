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

#include "bases/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hmwn
{
    static std::optional<Direction> bin_direction(double kappa_x, double kappa_y, const CarrierConfig &carrier,
                                                  bool is_propagating)
    {
        if (!is_propagating)
            return std::nullopt;
        LatticePoint p;
        p.kappa_x = kappa_x;
        p.kappa_y = kappa_y;
        p.is_propagating = true;
        return wavenumber_to_direction(p, carrier);
    }

    Basis build_dft_basis(const PlanarArrayGeometry &geometry, const CarrierConfig &carrier)
    {
        const int nx = geometry.n_x;
        const int ny = geometry.n_y;
        const arma::uword n = static_cast<arma::uword>(nx) * ny;
        const double k = carrier.wavenumber_rad_per_m;
        const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
        const double two_pi = 2.0 * std::numbers::pi;

        Basis b;
        b.kind = AtomKind::dft;
        b.atoms.set_size(n, n);
        b.meta.reserve(n);

        const int p0 = -(nx / 2);
        const int q0 = -(ny / 2);
        arma::uword col = 0;
        for (int p = p0; p < p0 + nx; p++)
            for (int q = q0; q < q0 + ny; q++, col++)
            {
                arma::uword row = 0;
                for (int j = 0; j < ny; j++)
                    for (int i = 0; i < nx; i++, row++)
                    {
                        const double phase = two_pi * (static_cast<double>(p) * i / nx +
                                                       static_cast<double>(q) * j / ny);
                        b.atoms(row, col) = std::polar(inv_sqrt_n, phase);
                    }

                AtomMeta m;
                m.kind = AtomKind::dft;
                m.u = p;
                m.v = q;
                m.kappa_x = two_pi * p / geometry.aperture_x_m;
                m.kappa_y = two_pi * q / geometry.aperture_y_m;
                m.is_propagating = m.kappa_x * m.kappa_x + m.kappa_y * m.kappa_y <= k * k * (1.0 + 1e-9);
                m.direction = bin_direction(m.kappa_x, m.kappa_y, carrier, m.is_propagating);
                b.meta.push_back(m);
            }
        return b;
    }

    Basis build_fh_basis(const WavenumberLattice &lattice, const PlanarArrayGeometry &geometry)
    {
        const int nx = geometry.n_x;
        const int ny = geometry.n_y;
        const arma::uword n = static_cast<arma::uword>(nx) * ny;
        const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

        // Indices congruent modulo (n_x, n_y) sample to the same atom; keep the
        // first representative in lattice order.
        std::set<std::pair<int, int>> seen;
        std::vector<const LatticePoint *> kept;
        kept.reserve(lattice.points.size());
        for (const auto &pt : lattice.points)
        {
            const std::pair<int, int> key{((pt.l % nx) + nx) % nx, ((pt.m % ny) + ny) % ny};
            if (seen.insert(key).second)
                kept.push_back(&pt);
        }

        Basis b;
        b.kind = AtomKind::fh;
        b.atoms.set_size(n, kept.size());
        b.meta.reserve(kept.size());

        arma::uword col = 0;
        for (const LatticePoint *pt : kept)
        {
            for (arma::uword row = 0; row < n; row++)
            {
                const double phase = pt->kappa_x * geometry.element_positions(0, row) +
                                     pt->kappa_y * geometry.element_positions(1, row);
                b.atoms(row, col) = std::polar(inv_sqrt_n, phase);
            }
            AtomMeta m;
            m.kind = AtomKind::fh;
            m.u = pt->l;
            m.v = pt->m;
            m.kappa_x = pt->kappa_x;
            m.kappa_y = pt->kappa_y;
            m.is_propagating = pt->is_propagating;
            if (pt->is_propagating)
            {
                // k is recoverable from the point itself: k^2 = kappa^2 + gamma^2.
                const double kt = std::hypot(pt->kappa_x, pt->kappa_y);
                const double k = std::hypot(kt, pt->gamma.real());
                Direction d;
                d.theta_rad = (k > 0.0) ? std::asin(std::min(1.0, kt / k)) : 0.0;
                d.phi_rad = (kt > 0.0) ? std::atan2(pt->kappa_y, pt->kappa_x) : 0.0;
                m.direction = d;
            }
            b.meta.push_back(m);
            col++;
        }
        return b;
    }

    SpectrumResult project(const Basis &basis, const arma::cx_vec &channel, ProjectionMode mode)
    {
        if (channel.n_elem != basis.atoms.n_rows)
            throw std::invalid_argument("channel length does not match basis rows");

        SpectrumResult r;
        if (mode == ProjectionMode::adjoint)
        {
            r.coefficients = basis.atoms.t() * channel;
        }
        else
        {
            arma::cx_mat Q, R;
            if (!arma::qr_econ(Q, R, basis.atoms))
                throw std::runtime_error("QR factorization failed");
            const arma::vec d = arma::abs(R.diag());
            if (d.min() <= 1e-10 * d.max())
                throw std::runtime_error("basis is rank-deficient in least-squares projection");
            r.coefficients = arma::solve(arma::trimatu(R), Q.t() * channel);
        }

        r.power = arma::square(arma::abs(r.coefficients));
        const double total = arma::accu(r.power);

        if (total > 0.0)
        {
            arma::vec sorted = arma::sort(r.power, "descend");
            double cum = 0.0;
            arma::uword count = 0;
            for (arma::uword i = 0; i < sorted.n_elem; i++)
            {
                cum += sorted[i];
                count++;
                if (cum >= 0.95 * total)
                    break;
            }
            r.n95 = count;
        }

        const double h_energy = arma::accu(arma::square(arma::abs(channel)));
        if (h_energy > 0.0)
        {
            const arma::cx_vec resid = channel - basis.atoms * r.coefficients;
            r.residual_energy_fraction = arma::accu(arma::square(arma::abs(resid))) / h_energy;
        }
        return r;
    }

    LeakageSummary leakage_n95(const SpectrumResult &spectrum)
    {
        if (!(arma::accu(spectrum.power) > 0.0))
            throw std::invalid_argument("zero-energy spectrum has no support size");
        LeakageSummary s;
        s.n95 = spectrum.n95;
        s.normalized = static_cast<double>(spectrum.n95) / static_cast<double>(spectrum.power.n_elem);
        return s;
    }

    double dirichlet_probe(const PlanarArrayGeometry &geometry, double probe_kappa_x, double atom_kappa_x)
    {
        const double n = geometry.n_x;
        const double u = (probe_kappa_x - atom_kappa_x) * geometry.spacing_m;
        const double s = std::sin(0.5 * u);
        if (std::abs(s) < 1e-12)
            return 1.0; // peak, including aliased peaks at u = 2 pi m
        return std::abs(std::sin(0.5 * n * u) / (n * s));
    }
}
