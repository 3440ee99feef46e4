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
#include <vector>

#include "bases/basis.hpp"
#include "channel/generators.hpp"
#include "core/rng.hpp"

namespace hmwn
{
    // Beam selection against a basis used as a codebook. The channel estimate is
    // h + e with e i.i.d. complex Gaussian of per-entry standard deviation
    // csi_error_std * ||h||, i.e. csi_error_std expresses the estimation error
    // relative to the per-beam correlation scale (|h^H w| <= ||h|| for unit-norm
    // codewords). Returns the argmax of |h_noisy^H w|; ties break to the lowest
    // index.
    arma::uword select_beam(const arma::cx_vec &h, const Basis &codebook, double csi_error_std,
                            std::uint64_t seed);

    // Deterministic argmax part, reusable with a shared noisy estimate.
    arma::uword select_beam_from_estimate(const arma::cx_vec &h_noisy, const Basis &codebook);

    arma::cx_vec noisy_channel_estimate(const arma::cx_vec &h, double csi_error_std, Rng &rng);

    // log2(1 + snr * |h^H w|^2) for a unit-norm codeword w.
    double achievable_rate(const arma::cx_vec &h, const arma::cx_vec &codeword, double snr_linear);

    struct RatePoint
    {
        double distance_m = 0.0;
        double rate_bps_hz = 0.0;
        arma::uword selected_codeword_index = 0;
        AtomKind codebook_kind = AtomKind::fh;
        arma::uword trial = 0;
        bool selected_propagating = true;
    };

    struct DistanceSweepConfig
    {
        AngularPowerSpectrum spectrum;      // cluster directions and weights for the scatterers
        std::vector<double> distances_m;
        double snr_linear = 10.0;
        double csi_error_std = 0.0;
        int trials = 100;
        ScattererDrawConfig scatterer;
        std::uint64_t base_seed = 1;
        int threads = 1;
    };

    // For every distance and trial: draw scatterers at that distance, synthesize
    // the spherical-wave channel (normalized to the spectrum target), draw one
    // shared channel-estimate error, then select a beam and record the rate for
    // every codebook. Output order is fixed: distance-major, then trial, then
    // codebook order as passed in. Trials use counter-derived seeds, so the
    // result is independent of the thread count.
    std::vector<RatePoint> distance_sweep(const DistanceSweepConfig &cfg,
                                          const PlanarArrayGeometry &geometry,
                                          const CarrierConfig &carrier,
                                          const std::vector<const Basis *> &codebooks);

    struct RateSummaryRow
    {
        double distance_m = 0.0;
        AtomKind codebook_kind = AtomKind::fh;
        double mean_rate = 0.0;
        double std_rate = 0.0;            // sample standard deviation over trials
        double invalid_beam_fraction = 0.0; // trials that selected a non-propagating codeword
    };

    std::vector<RateSummaryRow> summarize_rate_points(const std::vector<RatePoint> &points);
}
