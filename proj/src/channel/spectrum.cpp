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

#include "channel/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmwn
{
    VmfCluster make_vmf_cluster(double theta_rad, double phi_rad, double alpha_vmf, double weight)
    {
        VmfCluster c;
        c.mean_direction = unit_direction(Direction{theta_rad, phi_rad});
        c.alpha_vmf = alpha_vmf;
        c.weight = weight;
        return c;
    }

    void validate_spectrum(const AngularPowerSpectrum &spectrum)
    {
        if (spectrum.clusters.empty())
            throw std::invalid_argument("angular power spectrum needs at least one cluster");
        if (!(spectrum.normalization > 0.0))
            throw std::invalid_argument("power normalization target must be positive");

        double wsum = 0.0;
        for (const auto &c : spectrum.clusters)
        {
            if (std::abs(arma::norm(c.mean_direction) - 1.0) > 1e-9)
                throw std::invalid_argument("cluster mean direction must be unit norm");
            if (!(c.mean_direction[2] > 0.0))
                throw std::invalid_argument("cluster mean direction must lie in the upper hemisphere");
            if (c.alpha_vmf < 0.0)
                throw std::invalid_argument("cluster concentration must be non-negative");
            if (!(c.weight > 0.0))
                throw std::invalid_argument("cluster weight must be positive");
            wsum += c.weight;
        }
        if (std::abs(wsum - 1.0) > 1e-9)
            throw std::invalid_argument("cluster weights must sum to 1");
    }

    LatticeVariances build_vmf_spectrum(const AngularPowerSpectrum &spectrum,
                                        const WavenumberLattice &lattice,
                                        const CarrierConfig &carrier)
    {
        validate_spectrum(spectrum);
        if (lattice.propagating_count < 1)
            throw std::invalid_argument("lattice has no propagating points");

        const double k = carrier.wavenumber_rad_per_m;

        // Shift all cluster exponents by the largest concentration so the relative
        // weighting is preserved exactly while exp() stays in range.
        double alpha_shift = 0.0;
        for (const auto &c : spectrum.clusters)
            alpha_shift = std::max(alpha_shift, c.alpha_vmf);

        // Mixture density over the longitudinal wavenumber; zero outside the disk.
        auto integrand = [&](double kx, double ky) -> double {
            const double g2 = k * k - kx * kx - ky * ky;
            if (!(g2 > 0.0))
                return 0.0;
            const double g = std::sqrt(g2);
            const arma::vec3 d{kx / k, ky / k, g / k};
            double acc = 0.0;
            for (const auto &cl : spectrum.clusters)
                acc += cl.weight * std::exp(cl.alpha_vmf * arma::dot(cl.mean_direction, d) - alpha_shift);
            return acc / g;
        };

        LatticeVariances out;
        out.index.reserve(lattice.points.size());
        out.variance.set_size(lattice.points.size());

        constexpr int sub = 8; // midpoint subgrid for rim cells

        for (arma::uword i = 0; i < lattice.points.size(); i++)
        {
            const auto &pt = lattice.points[i];
            out.index.emplace_back(pt.l, pt.m);
            if (!pt.is_propagating)
            {
                out.variance[i] = 0.0;
                continue;
            }
            if (pt.gamma.real() > 1e-6 * k)
            {
                out.variance[i] = integrand(pt.kappa_x, pt.kappa_y);
            }
            else
            {
                // Rim cell: 1/gamma diverges at the cell center but its cell
                // integral is finite, so use the cell mean instead. Subcell
                // midpoints outside the disk contribute zero.
                double acc = 0.0;
                for (int sx = 0; sx < sub; sx++)
                    for (int sy = 0; sy < sub; sy++)
                    {
                        const double fx = (sx + 0.5) / sub - 0.5;
                        const double fy = (sy + 0.5) / sub - 0.5;
                        acc += integrand(pt.kappa_x + fx * lattice.cell_kappa_x,
                                         pt.kappa_y + fy * lattice.cell_kappa_y);
                    }
                out.variance[i] = acc / (sub * sub);
            }
        }

        const double total = arma::accu(out.variance);
        if (!(total > 0.0) || !std::isfinite(total))
            throw std::invalid_argument("angular power spectrum maps to zero or non-finite power on this lattice");
        out.variance *= spectrum.normalization / total;
        return out;
    }
}
