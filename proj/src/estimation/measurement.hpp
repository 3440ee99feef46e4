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

#include <armadillo>

#include "bases/basis.hpp"
#include "core/geometry.hpp"
#include "core/rng.hpp"

namespace hmwn
{
    // Compressive pilot model y = A h + n. The sensing matrix A has unit-modulus
    // entries scaled by 1/sqrt(N) (analog phase combining); the combined
    // dictionary is A * B for the chosen sparsifying basis B.
    struct MeasurementModel
    {
        arma::cx_mat sensing;         // M x N
        double noise_variance = 0.0;  // per measurement entry
        arma::cx_mat dictionary;      // M x A
        std::uint64_t rng_seed = 0;
    };

    namespace detail
    {
        // Unit-modulus rows scaled by 1/sqrt(n_cols). zero_phase fixes every
        // phase to 0 (deterministic all-ones structure used by tests).
        arma::cx_mat random_phase_matrix(arma::uword n_rows, arma::uword n_cols, Rng &rng, bool zero_phase);
    }

    // Per-entry noise variance making E||A h||^2 / (M sigma^2) the linear SNR
    // when E||h||^2 equals channel_power: sigma^2 = channel_power / (N * snr).
    // snr_db may be +inf for a noiseless model.
    double noise_variance_for(double channel_power, arma::uword n_elements, double snr_db);

    // M = ceil(ratio * N) rows, noise variance per noise_variance_for. Throws
    // std::invalid_argument for ratio outside (0, 1].
    MeasurementModel build_measurement(const PlanarArrayGeometry &geometry, const Basis &basis,
                                       double compression_ratio, double snr_db, double channel_power,
                                       std::uint64_t seed, bool zero_phase = false);

    // y = A h + n with n i.i.d. CN(0, noise_variance), seeded independently of
    // the sensing matrix.
    arma::cx_vec apply_measurement(const MeasurementModel &model, const arma::cx_vec &h,
                                   std::uint64_t noise_seed);

    // Shared result type for the sparse estimators. nmse is not computed by the
    // estimators themselves (they never see the true channel); the evaluation
    // harness fills it in.
    struct EstimationResult
    {
        arma::cx_vec coefficients;
        arma::uvec support;            // 0/1 per atom
        double nmse = arma::datum::nan;
        arma::uword iterations = 0;
        bool converged = false;
        arma::vec support_probability; // posterior activity per atom (estimator-specific)
    };

    // ||h_hat - h_true||^2 / ||h_true||^2. Throws on zero-norm truth.
    double nmse(const arma::cx_vec &h_hat, const arma::cx_vec &h_true);

    double to_db(double x);
}
