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

#include "estimation/measurement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmwn
{
    namespace detail
    {
        arma::cx_mat random_phase_matrix(arma::uword n_rows, arma::uword n_cols, Rng &rng, bool zero_phase)
        {
            const double amp = 1.0 / std::sqrt(static_cast<double>(n_cols));
            arma::cx_mat a(n_rows, n_cols);
            for (arma::uword r = 0; r < n_rows; r++)
                for (arma::uword c = 0; c < n_cols; c++)
                {
                    const double phase = zero_phase ? 0.0 : 2.0 * std::numbers::pi * rng.uniform();
                    a(r, c) = std::polar(amp, phase);
                }
            return a;
        }
    }

    double noise_variance_for(double channel_power, arma::uword n_elements, double snr_db)
    {
        if (std::isinf(snr_db))
            return 0.0;
        return channel_power / (static_cast<double>(n_elements) * std::pow(10.0, snr_db / 10.0));
    }

    MeasurementModel build_measurement(const PlanarArrayGeometry &geometry, const Basis &basis,
                                       double compression_ratio, double snr_db, double channel_power,
                                       std::uint64_t seed, bool zero_phase)
    {
        if (!(compression_ratio > 0.0) || compression_ratio > 1.0)
            throw std::invalid_argument("compression ratio must lie in (0, 1]");
        if (!(channel_power > 0.0))
            throw std::invalid_argument("channel power must be positive");

        const arma::uword n = static_cast<arma::uword>(geometry.element_count());
        if (basis.atoms.n_rows != n)
            throw std::invalid_argument("basis does not match the array size");
        const arma::uword m = static_cast<arma::uword>(std::ceil(compression_ratio * n));
        if (m < 1)
            throw std::invalid_argument("compression ratio yields zero measurements");

        Rng rng(seed);
        MeasurementModel model;
        model.rng_seed = seed;
        model.sensing = detail::random_phase_matrix(m, n, rng, zero_phase);
        model.dictionary = model.sensing * basis.atoms;
        // E||A h||^2 = M * E||h||^2 / N for unit-modulus rows, which makes this
        // per-entry variance deliver E||A h||^2 / (M sigma^2) = snr.
        model.noise_variance = noise_variance_for(channel_power, n, snr_db);
        return model;
    }

    arma::cx_vec apply_measurement(const MeasurementModel &model, const arma::cx_vec &h,
                                   std::uint64_t noise_seed)
    {
        if (h.n_elem != model.sensing.n_cols)
            throw std::invalid_argument("channel length does not match the sensing matrix");
        arma::cx_vec y = model.sensing * h;
        if (model.noise_variance > 0.0)
        {
            Rng rng(noise_seed);
            const double s = std::sqrt(model.noise_variance);
            for (auto &v : y)
                v += s * rng.cgaussian();
        }
        return y;
    }

    double nmse(const arma::cx_vec &h_hat, const arma::cx_vec &h_true)
    {
        if (h_hat.n_elem != h_true.n_elem)
            throw std::invalid_argument("vectors must have equal length");
        const double ref = arma::accu(arma::square(arma::abs(h_true)));
        if (!(ref > 0.0))
            throw std::invalid_argument("true channel has zero norm");
        return arma::accu(arma::square(arma::abs(h_hat - h_true))) / ref;
    }

    double to_db(double x)
    {
        return 10.0 * std::log10(x);
    }
}
