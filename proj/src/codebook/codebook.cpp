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

#include "codebook/codebook.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "sim/parallel.hpp"

namespace hmwn
{
    arma::cx_vec noisy_channel_estimate(const arma::cx_vec &h, double csi_error_std, Rng &rng)
    {
        arma::cx_vec noisy = h;
        if (csi_error_std > 0.0)
        {
            const double s = csi_error_std * arma::norm(h);
            for (auto &v : noisy)
                v += s * rng.cgaussian();
        }
        return noisy;
    }

    arma::uword select_beam_from_estimate(const arma::cx_vec &h_noisy, const Basis &codebook)
    {
        if (codebook.atom_count() == 0)
            throw std::invalid_argument("codebook is empty");
        if (h_noisy.n_elem != codebook.atoms.n_rows)
            throw std::invalid_argument("channel length does not match the codebook");

        arma::uword best = 0;
        double best_metric = -1.0;
        for (arma::uword w = 0; w < codebook.atom_count(); w++)
        {
            const double metric = std::abs(arma::cdot(codebook.atoms.col(w), h_noisy));
            if (metric > best_metric) // strict: ties keep the lowest index
            {
                best_metric = metric;
                best = w;
            }
        }
        return best;
    }

    arma::uword select_beam(const arma::cx_vec &h, const Basis &codebook, double csi_error_std,
                            std::uint64_t seed)
    {
        Rng rng(seed);
        const arma::cx_vec noisy = noisy_channel_estimate(h, csi_error_std, rng);
        return select_beam_from_estimate(noisy, codebook);
    }

    double achievable_rate(const arma::cx_vec &h, const arma::cx_vec &codeword, double snr_linear)
    {
        const double g = std::norm(arma::cdot(h, codeword));
        return std::log2(1.0 + snr_linear * g);
    }

    std::vector<RatePoint> distance_sweep(const DistanceSweepConfig &cfg,
                                          const PlanarArrayGeometry &geometry,
                                          const CarrierConfig &carrier,
                                          const std::vector<const Basis *> &codebooks)
    {
        if (codebooks.empty())
            throw std::invalid_argument("need at least one codebook");
        for (double d : cfg.distances_m)
            if (!(d > 0.0))
                throw std::invalid_argument("sweep distances must be positive");
        if (cfg.trials < 1)
            throw std::invalid_argument("need at least one trial");

        const std::size_t n_books = codebooks.size();
        const std::size_t per_cell = n_books;
        std::vector<RatePoint> out(cfg.distances_m.size() * cfg.trials * per_cell);

        const std::size_t n_cells = cfg.distances_m.size() * static_cast<std::size_t>(cfg.trials);
        parallel_for(n_cells, cfg.threads, [&](std::size_t cell) {
            const std::size_t di = cell / cfg.trials;
            const std::size_t trial = cell % cfg.trials;
            const double dist = cfg.distances_m[di];

            const std::uint64_t scatter_seed =
                derive_seed(cfg.base_seed, "codebook.scatterers", cell);
            const auto set = draw_scatterers(cfg.spectrum, dist, cfg.scatterer, scatter_seed);
            const auto ch = synthesize_nearfield_greens(set, geometry, carrier, cfg.spectrum.normalization);

            // One estimate error per trial, shared by all codebooks so the
            // comparison is paired.
            Rng csi_rng(derive_seed(cfg.base_seed, "codebook.csi", cell));
            const arma::cx_vec noisy = noisy_channel_estimate(ch.samples, cfg.csi_error_std, csi_rng);

            for (std::size_t b = 0; b < n_books; b++)
            {
                const Basis &book = *codebooks[b];
                const arma::uword sel = select_beam_from_estimate(noisy, book);
                RatePoint p;
                p.distance_m = dist;
                p.rate_bps_hz = achievable_rate(ch.samples, book.atoms.col(sel), cfg.snr_linear);
                p.selected_codeword_index = sel;
                p.codebook_kind = book.kind;
                p.trial = trial;
                p.selected_propagating = book.meta[sel].is_propagating;
                out[cell * per_cell + b] = p;
            }
        });
        return out;
    }

    std::vector<RateSummaryRow> summarize_rate_points(const std::vector<RatePoint> &points)
    {
        // Keyed by (first appearance of distance, codebook kind); input order is
        // distance-major so a stable map keeps the sweep order.
        std::vector<RateSummaryRow> rows;
        std::map<std::pair<double, int>, std::size_t> slot;
        std::map<std::size_t, std::vector<double>> rates;
        std::map<std::size_t, int> invalid;

        for (const auto &p : points)
        {
            const auto key = std::make_pair(p.distance_m, static_cast<int>(p.codebook_kind));
            auto it = slot.find(key);
            std::size_t s;
            if (it == slot.end())
            {
                s = rows.size();
                slot[key] = s;
                RateSummaryRow r;
                r.distance_m = p.distance_m;
                r.codebook_kind = p.codebook_kind;
                rows.push_back(r);
            }
            else
                s = it->second;
            rates[s].push_back(p.rate_bps_hz);
            invalid[s] += p.selected_propagating ? 0 : 1;
        }

        for (std::size_t s = 0; s < rows.size(); s++)
        {
            const arma::vec v(rates[s]);
            rows[s].mean_rate = arma::mean(v);
            rows[s].std_rate = v.n_elem > 1 ? arma::stddev(v) : 0.0;
            rows[s].invalid_beam_fraction = static_cast<double>(invalid[s]) / v.n_elem;
        }
        return rows;
    }
}
