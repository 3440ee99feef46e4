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

#include "channel/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmwn
{
    const char *provenance_name(Provenance p)
    {
        switch (p)
        {
        case Provenance::exact_greens:
            return "exact_greens";
        case Provenance::fourier_series:
            return "fourier_series";
        case Provenance::fraunhofer:
            return "fraunhofer";
        case Provenance::fresnel:
            return "fresnel";
        }
        return "unknown";
    }

    ChannelVector synthesize_farfield(const LatticeVariances &variances, const Basis &fh_basis,
                                      std::uint64_t seed)
    {
        if (fh_basis.kind != AtomKind::fh)
            throw std::invalid_argument("far-field synthesis requires a harmonic basis");
        if (fh_basis.atom_count() != variances.variance.n_elem)
            throw std::invalid_argument("variance map and basis atom counts differ");
        for (arma::uword a = 0; a < fh_basis.atom_count(); a++)
            if (fh_basis.meta[a].u != variances.index[a].first || fh_basis.meta[a].v != variances.index[a].second)
                throw std::invalid_argument("variance map and basis index sequences differ");

        Rng rng(seed);
        arma::cx_vec coeff(fh_basis.atom_count());
        for (arma::uword a = 0; a < coeff.n_elem; a++)
            coeff[a] = std::sqrt(variances.variance[a]) * rng.cgaussian();

        ChannelVector ch;
        ch.samples = fh_basis.atoms * coeff;
        ch.provenance = Provenance::fourier_series;
        ch.rng_seed = seed;
        return ch;
    }

    // Shared scatterer-sum kernel. phase_fn returns the propagation distance used
    // in the phase, amp_fn the amplitude distance; both per (scatterer, element).
    template <typename PhaseFn, typename AmpFn>
    static ChannelVector scatterer_sum(const ClusterScattererSet &set,
                                       const PlanarArrayGeometry &geometry,
                                       const CarrierConfig &carrier,
                                       std::optional<double> normalize_target,
                                       Provenance prov, PhaseFn phase_fn, AmpFn amp_fn)
    {
        if (set.scatterers.empty())
            throw std::invalid_argument("scatterer set is empty");
        const double k = carrier.wavenumber_rad_per_m;
        const double min_dist = carrier.wavelength_m / 100.0;
        const arma::uword n = geometry.element_positions.n_cols;
        const double four_pi = 4.0 * std::numbers::pi;

        ChannelVector ch;
        ch.samples.zeros(n);
        ch.provenance = prov;
        ch.rng_seed = set.rng_seed;

        double expected_power = 0.0; // E||h||^2 over the gain distribution
        for (const auto &sc : set.scatterers)
        {
            if (!(sc.position[2] > 0.0))
                throw std::invalid_argument("scatterers must lie in front of the array (z > 0)");
            for (arma::uword e = 0; e < n; e++)
            {
                const arma::vec3 r{geometry.element_positions(0, e),
                                   geometry.element_positions(1, e),
                                   geometry.element_positions(2, e)};
                const double exact = arma::norm(sc.position - r);
                if (exact < min_dist)
                    throw std::invalid_argument("scatterer coincides with an array element");
                const double amp = 1.0 / (four_pi * amp_fn(sc, r, exact));
                ch.samples[e] += sc.gain * std::polar(amp, -k * phase_fn(sc, r, exact));
                expected_power += sc.gain_variance * amp * amp;
            }
        }

        if (normalize_target)
        {
            if (!(expected_power > 0.0))
                throw std::invalid_argument("cannot normalize a zero-power channel");
            ch.samples *= std::sqrt(*normalize_target / expected_power);
        }
        return ch;
    }

    ChannelVector synthesize_nearfield_greens(const ClusterScattererSet &scatterers,
                                              const PlanarArrayGeometry &geometry,
                                              const CarrierConfig &carrier,
                                              std::optional<double> normalize_target)
    {
        return scatterer_sum(
            scatterers, geometry, carrier, normalize_target, Provenance::exact_greens,
            [](const Scatterer &, const arma::vec3 &, double exact) { return exact; },
            [](const Scatterer &, const arma::vec3 &, double exact) { return exact; });
    }

    ChannelVector fraunhofer_channel(const ClusterScattererSet &scatterers,
                                     const PlanarArrayGeometry &geometry,
                                     const CarrierConfig &carrier,
                                     std::optional<double> normalize_target)
    {
        return scatterer_sum(
            scatterers, geometry, carrier, normalize_target, Provenance::fraunhofer,
            [](const Scatterer &sc, const arma::vec3 &r, double) {
                const double rc = arma::norm(sc.position);
                return rc - arma::dot(sc.position / rc, r);
            },
            [](const Scatterer &sc, const arma::vec3 &, double) { return arma::norm(sc.position); });
    }

    ChannelVector fresnel_channel(const ClusterScattererSet &scatterers,
                                  const PlanarArrayGeometry &geometry,
                                  const CarrierConfig &carrier,
                                  std::optional<double> normalize_target)
    {
        return scatterer_sum(
            scatterers, geometry, carrier, normalize_target, Provenance::fresnel,
            [](const Scatterer &sc, const arma::vec3 &r, double) {
                const double rc = arma::norm(sc.position);
                const double along = arma::dot(sc.position / rc, r);
                return rc - along + (arma::dot(r, r) - along * along) / (2.0 * rc);
            },
            [](const Scatterer &sc, const arma::vec3 &, double) { return arma::norm(sc.position); });
    }

    arma::cx_mat apply_impairment_matrices(const arma::cx_mat &coefficients,
                                           const arma::cx_mat &left,
                                           const arma::cx_mat &right)
    {
        if (left.n_cols != coefficients.n_rows)
            throw std::invalid_argument("left matrix columns must match coefficient rows");
        if (right.n_cols != coefficients.n_cols)
            throw std::invalid_argument("right matrix columns must match coefficient columns");
        return left * coefficients * right.t(); // .t() is the conjugate transpose for complex types
    }
}
