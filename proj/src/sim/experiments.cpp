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

#include "sim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include <json.hpp>

#include "bases/basis.hpp"
#include "channel/generators.hpp"
#include "codebook/codebook.hpp"
#include "core/errors.hpp"
#include "estimation/mrf.hpp"
#include "estimation/omp.hpp"
#include "sim/channel_io.hpp"
#include "sim/csv.hpp"
#include "sim/parallel.hpp"

namespace hmwn
{
    namespace fs = std::filesystem;
    using nlohmann::json;

    const char *artifact_version()
    {
        return "0.1.0";
    }

    double median_of(std::vector<double> values)
    {
        return quantile_of(std::move(values), 0.5);
    }

    double quantile_of(std::vector<double> values, double p)
    {
        if (values.empty())
            throw std::invalid_argument("quantile of an empty sample");
        std::sort(values.begin(), values.end());
        const double pos = p * (values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - lo;
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    }

    // Tracks files written by one runner invocation: writes the per-file sidecar,
    // and removes everything already written if the run aborts.
    class ArtifactWriter
    {
      public:
        ArtifactWriter(const ExperimentConfig &cfg, std::string subcommand, std::string out_dir)
            : cfg_(cfg), subcommand_(std::move(subcommand)), out_dir_(std::move(out_dir))
        {
            std::error_code ec;
            fs::create_directories(out_dir_, ec);
            if (ec)
                throw io_error("cannot create output directory: " + out_dir_);
            sidecar_ = json{{"artifact", "hmwn"},
                            {"artifact_version", artifact_version()},
                            {"subcommand", subcommand_},
                            {"base_seed", cfg.base_seed},
                            {"resolved_config", json::parse(resolved_config_json(cfg))}}
                           .dump(2);
        }

        ~ArtifactWriter()
        {
            if (!committed_)
                for (const auto &p : written_)
                {
                    std::error_code ec;
                    fs::remove(p, ec);
                }
        }

        std::string path(const std::string &name)
        {
            const std::string p = (fs::path(out_dir_) / name).string();
            written_.push_back(p);
            return p;
        }

        void commit()
        {
            // Sidecars are artifacts too and share the cleanup list.
            const auto data_files = written_;
            for (const auto &p : data_files)
            {
                const std::string side = p + ".meta.json";
                written_.push_back(side);
                std::ofstream out(side, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw io_error("cannot write sidecar: " + side);
                out << sidecar_ << '\n';
                if (!out)
                    throw io_error("write failed: " + side);
            }
            committed_ = true;
        }

      private:
        const ExperimentConfig &cfg_;
        std::string subcommand_;
        std::string out_dir_;
        std::string sidecar_;
        std::vector<std::string> written_;
        bool committed_ = false;
    };

    static const char *atom_kind_name(AtomKind k)
    {
        return k == AtomKind::fh ? "fh" : "dft";
    }

    // ------------------------------------------------------------------ lattice

    void run_lattice(const ExperimentConfig &cfg, const std::string &out_dir, int threads)
    {
        (void)threads;
        ArtifactWriter w(cfg, "lattice", out_dir);
        const auto carrier = cfg.carrier();
        const auto geometry = cfg.geometry();
        const auto lattice = build_lattice(geometry, carrier, cfg.evanescent_margin);

        CsvFile csv(w.path("lattice.csv"), "l,m,kappa_x,kappa_y,gamma_re,gamma_im,is_propagating");
        for (const auto &p : lattice.points)
            csv.row(p.l, p.m, p.kappa_x, p.kappa_y, p.gamma.real(), p.gamma.imag(),
                    p.is_propagating ? 1 : 0);
        csv.close();
        w.commit();
    }

    // ----------------------------------------------------------------- spectrum

    static LatticeVariances override_variances(const std::vector<VarianceOverrideEntry> &entries,
                                               const WavenumberLattice &lattice)
    {
        LatticeVariances v;
        v.variance.zeros(lattice.points.size());
        std::map<std::pair<int, int>, arma::uword> by_index;
        for (arma::uword i = 0; i < lattice.points.size(); i++)
        {
            v.index.emplace_back(lattice.points[i].l, lattice.points[i].m);
            by_index[v.index.back()] = i;
        }
        for (const auto &e : entries)
        {
            auto it = by_index.find({e.l, e.m});
            if (it == by_index.end())
                throw config_error("variance override names a point outside the lattice: (" +
                                   std::to_string(e.l) + ", " + std::to_string(e.m) + ")");
            v.variance[it->second] = e.variance;
        }
        return v;
    }

    static void write_spectrum_csv(const std::string &path, const Basis &basis, const arma::vec &mean_power)
    {
        CsvFile csv(path, "atom_kind,l_or_p,m_or_q,kappa_x,kappa_y,is_propagating,power");
        for (arma::uword a = 0; a < basis.atom_count(); a++)
        {
            const auto &m = basis.meta[a];
            csv.row(atom_kind_name(m.kind), m.u, m.v, m.kappa_x, m.kappa_y, m.is_propagating ? 1 : 0,
                    mean_power[a]);
        }
        csv.close();
    }

    void run_spectrum(const ExperimentConfig &cfg, const std::string &out_dir, int threads)
    {
        ArtifactWriter w(cfg, "spectrum", out_dir);
        const auto carrier = cfg.carrier();
        const auto geometry = cfg.geometry();
        const double target = static_cast<double>(geometry.element_count());
        const double rayleigh = rayleigh_distance(geometry, carrier);

        const auto far_lattice = build_lattice(geometry, carrier, cfg.evanescent_margin);
        const auto near_lattice = build_lattice(geometry, carrier, cfg.spectrum.near_evanescent_margin);
        const auto fh_far = build_fh_basis(far_lattice, geometry);
        const auto fh_near = build_fh_basis(near_lattice, geometry);
        const auto dft = build_dft_basis(geometry, carrier);

        const auto aps = cfg.spectrum_model(cfg.clusters);
        const bool use_series = cfg.spectrum.far_generator == "fourier_series";
        LatticeVariances variances;
        if (!cfg.spectrum.variance_override.empty())
            variances = override_variances(cfg.spectrum.variance_override, far_lattice);
        else if (use_series)
            variances = build_vmf_spectrum(aps, far_lattice, carrier);

        const double far_distance = cfg.spectrum.far_distance_rayleigh * rayleigh;
        const double near_distance = cfg.spectrum.near_distance_rayleigh * rayleigh;
        const ScattererDrawConfig scat{cfg.spectrum.scatterers_per_cluster,
                                       cfg.spectrum.shell_relative_halfwidth};
        const int trials = cfg.spectrum_trials();

        struct TrialOut
        {
            arma::vec p_far_fh, p_far_dft, p_near_fh, p_near_dft;
            arma::uword n95_far_fh, n95_far_dft, n95_near_fh, n95_near_dft;
        };
        std::vector<TrialOut> per_trial(trials);

        auto make_far = [&](int t) {
            if (use_series || !cfg.spectrum.variance_override.empty())
                return synthesize_farfield(variances, fh_far,
                                           derive_seed(cfg.base_seed, "spectrum.far.series", t));
            const auto set = draw_scatterers(aps, far_distance, scat,
                                             derive_seed(cfg.base_seed, "spectrum.far.scatterers", t));
            return synthesize_nearfield_greens(set, geometry, carrier, target);
        };
        auto make_near = [&](int t) {
            const auto set = draw_scatterers(aps, near_distance, scat,
                                             derive_seed(cfg.base_seed, "spectrum.near.scatterers", t));
            return synthesize_nearfield_greens(set, geometry, carrier, target);
        };

        parallel_for(trials, threads, [&](std::size_t t) {
            const auto far_ch = make_far(static_cast<int>(t));
            const auto near_ch = make_near(static_cast<int>(t));
            const auto far_fh_r = project(fh_far, far_ch.samples, ProjectionMode::least_squares);
            const auto far_dft_r = project(dft, far_ch.samples, ProjectionMode::adjoint);
            const auto near_fh_r = project(fh_near, near_ch.samples, ProjectionMode::least_squares);
            const auto near_dft_r = project(dft, near_ch.samples, ProjectionMode::adjoint);
            per_trial[t] = TrialOut{far_fh_r.power, far_dft_r.power, near_fh_r.power, near_dft_r.power,
                                    far_fh_r.n95, far_dft_r.n95, near_fh_r.n95, near_dft_r.n95};
        });

        // Reduce in trial order so the output is independent of scheduling.
        arma::vec mean_far_fh(fh_far.atom_count(), arma::fill::zeros);
        arma::vec mean_far_dft(dft.atom_count(), arma::fill::zeros);
        arma::vec mean_near_fh(fh_near.atom_count(), arma::fill::zeros);
        arma::vec mean_near_dft(dft.atom_count(), arma::fill::zeros);
        std::vector<double> n95_far_fh, n95_far_dft, n95_near_fh, n95_near_dft;
        for (const auto &t : per_trial)
        {
            mean_far_fh += t.p_far_fh;
            mean_far_dft += t.p_far_dft;
            mean_near_fh += t.p_near_fh;
            mean_near_dft += t.p_near_dft;
            n95_far_fh.push_back(static_cast<double>(t.n95_far_fh));
            n95_far_dft.push_back(static_cast<double>(t.n95_far_dft));
            n95_near_fh.push_back(static_cast<double>(t.n95_near_fh));
            n95_near_dft.push_back(static_cast<double>(t.n95_near_dft));
        }
        mean_far_fh /= trials;
        mean_far_dft /= trials;
        mean_near_fh /= trials;
        mean_near_dft /= trials;

        write_spectrum_csv(w.path("spectrum_far_fh.csv"), fh_far, mean_far_fh);
        write_spectrum_csv(w.path("spectrum_far_dft.csv"), dft, mean_far_dft);
        write_spectrum_csv(w.path("spectrum_near_fh.csv"), fh_near, mean_near_fh);
        write_spectrum_csv(w.path("spectrum_near_dft.csv"), dft, mean_near_dft);

        CsvFile summary(w.path("leakage_summary.csv"),
                        "scenario,basis_kind,projection,trials,median_n95,median_normalized_n95");
        auto summary_row = [&](const char *scenario, const char *basis_kind, const char *proj,
                               const std::vector<double> &n95, arma::uword atoms) {
            const double med = median_of(n95);
            summary.row(scenario, basis_kind, proj, trials, med, med / static_cast<double>(atoms));
        };
        summary_row("far", "fh", "least_squares", n95_far_fh, fh_far.atom_count());
        summary_row("far", "dft", "adjoint", n95_far_dft, dft.atom_count());
        summary_row("near", "fh", "least_squares", n95_near_fh, fh_near.atom_count());
        summary_row("near", "dft", "adjoint", n95_near_dft, dft.atom_count());
        summary.close();

        // One sample realization of each scenario for waveform-level consumers.
        const auto far0 = make_far(0);
        const auto near0 = make_near(0);
        save_channel_binary(w.path("channel_far.hmwc"), far0);
        save_channel_csv(w.path("channel_far.csv"), far0);
        save_channel_binary(w.path("channel_near.hmwc"), near0);
        save_channel_csv(w.path("channel_near.csv"), near0);

        w.commit();
    }

    // ----------------------------------------------------------------- estimate

    void run_estimate(const ExperimentConfig &cfg, const std::string &out_dir, int threads)
    {
        ArtifactWriter w(cfg, "estimate", out_dir);
        const auto carrier = cfg.carrier();
        const auto geometry = cfg.geometry();
        const double target = static_cast<double>(geometry.element_count());

        const auto lattice = build_lattice(geometry, carrier, cfg.evanescent_margin);
        const auto fh = build_fh_basis(lattice, geometry);
        const auto variances = build_vmf_spectrum(cfg.spectrum_model(cfg.clusters), lattice, carrier);

        std::vector<const Basis *> bases;
        Basis dft;
        for (const auto &name : cfg.estimation.bases)
        {
            if (name == "fh")
                bases.push_back(&fh);
            else
            {
                if (dft.atoms.n_elem == 0)
                    dft = build_dft_basis(geometry, carrier);
                bases.push_back(&dft);
            }
        }

        std::vector<MrfGraph> graphs;
        for (const Basis *b : bases)
            graphs.push_back(build_mrf_graph(*b));

        const auto &snrs = cfg.estimation.snr_grid_db;
        const int trials = cfg.estimation_trials();
        const std::size_t n_bases = bases.size();

        // result slot: [basis][snr][trial] -> (omp_db, mrf_db)
        std::vector<std::vector<std::vector<std::pair<double, double>>>> out(
            n_bases, std::vector<std::vector<std::pair<double, double>>>(
                         snrs.size(), std::vector<std::pair<double, double>>(trials)));

        parallel_for(trials, threads, [&](std::size_t t) {
            const auto ch = synthesize_farfield(variances, fh, derive_seed(cfg.base_seed, "estimate.channel", t));
            const std::uint64_t sensing_seed = derive_seed(cfg.base_seed, "estimate.sensing", t);

            for (std::size_t b = 0; b < n_bases; b++)
            {
                const Basis &basis = *bases[b];
                // one sensing matrix and combined dictionary per (trial, basis);
                // only the noise level changes across the snr grid
                auto model = build_measurement(geometry, basis, cfg.estimation.compression_ratio,
                                               snrs[0], target, sensing_seed);
                for (std::size_t s = 0; s < snrs.size(); s++)
                {
                    model.noise_variance =
                        noise_variance_for(target, static_cast<arma::uword>(geometry.element_count()), snrs[s]);
                    const std::string noise_purpose = "estimate.noise." + std::to_string(s);
                    const arma::cx_vec y = apply_measurement(model, ch.samples,
                                                             derive_seed(cfg.base_seed, noise_purpose, t));

                    const arma::uword m_rows = model.sensing.n_rows;
                    OmpStop stop;
                    stop.max_atoms = cfg.estimation.omp.max_atoms
                                         ? static_cast<arma::uword>(*cfg.estimation.omp.max_atoms)
                                         : std::max<arma::uword>(1, m_rows / 4);
                    if (cfg.estimation.omp.power_threshold)
                        stop.power_threshold = *cfg.estimation.omp.power_threshold;
                    else
                    {
                        const double y_energy = arma::accu(arma::square(arma::abs(y)));
                        stop.power_threshold =
                            std::max(1.1 * m_rows * model.noise_variance / std::max(y_energy, 1e-300), 1e-12);
                    }

                    const auto omp_res = omp_estimate(y, model, stop);
                    const auto mrf_res = mrf_estimate(y, model, graphs[b], cfg.estimation.mrf);
                    const arma::cx_vec h_omp = basis.atoms * omp_res.coefficients;
                    const arma::cx_vec h_mrf = basis.atoms * mrf_res.coefficients;
                    out[b][s][t] = {to_db(nmse(h_omp, ch.samples)), to_db(nmse(h_mrf, ch.samples))};
                }
            }
        });

        CsvFile sweep(w.path("nmse_sweep.csv"), "snr_db,algorithm,basis_kind,trial,nmse_db");
        CsvFile summary(w.path("nmse_summary.csv"),
                        "snr_db,algorithm,basis_kind,median_nmse_db,q25_nmse_db,q75_nmse_db");
        for (std::size_t b = 0; b < n_bases; b++)
        {
            const char *bk = atom_kind_name(bases[b]->kind);
            for (std::size_t s = 0; s < snrs.size(); s++)
            {
                std::vector<double> omp_db(trials), mrf_db(trials);
                for (int t = 0; t < trials; t++)
                {
                    omp_db[t] = out[b][s][t].first;
                    mrf_db[t] = out[b][s][t].second;
                    sweep.row(snrs[s], "omp", bk, t, omp_db[t]);
                }
                for (int t = 0; t < trials; t++)
                    sweep.row(snrs[s], "mrf", bk, t, mrf_db[t]);
                summary.row(snrs[s], "omp", bk, median_of(omp_db), quantile_of(omp_db, 0.25),
                            quantile_of(omp_db, 0.75));
                summary.row(snrs[s], "mrf", bk, median_of(mrf_db), quantile_of(mrf_db, 0.25),
                            quantile_of(mrf_db, 0.75));
            }
        }
        sweep.close();
        summary.close();
        w.commit();
    }

    // ----------------------------------------------------------------- codebook

    void run_codebook(const ExperimentConfig &cfg, const std::string &out_dir, int threads)
    {
        ArtifactWriter w(cfg, "codebook", out_dir);
        const auto carrier = cfg.carrier();
        const auto geometry = cfg.geometry();

        const auto lattice = build_lattice(geometry, carrier, cfg.codebook.evanescent_margin);
        const auto fh = build_fh_basis(lattice, geometry);
        const auto dft = build_dft_basis(geometry, carrier);

        DistanceSweepConfig sweep;
        sweep.spectrum = cfg.spectrum_model(cfg.codebook.clusters);
        sweep.distances_m = cfg.codebook_distances();
        sweep.snr_linear = std::pow(10.0, cfg.codebook.snr_db / 10.0);
        sweep.csi_error_std = cfg.codebook.csi_error_std;
        sweep.trials = cfg.codebook_trials();
        sweep.scatterer = {cfg.codebook.scatterers_per_cluster, cfg.codebook.shell_relative_halfwidth};
        sweep.base_seed = cfg.base_seed;
        sweep.threads = threads;

        const auto points = distance_sweep(sweep, geometry, carrier, {&fh, &dft});
        const auto rows = summarize_rate_points(points);

        CsvFile csv(w.path("rate_sweep.csv"),
                    "distance_m,codebook_kind,mean_rate,std_rate,invalid_beam_fraction");
        for (const auto &r : rows)
            csv.row(r.distance_m, atom_kind_name(r.codebook_kind), r.mean_rate, r.std_rate,
                    r.invalid_beam_fraction);
        csv.close();
        w.commit();
    }

    // ----------------------------------------------------------------- validate

    int run_validate(const ExperimentConfig &cfg, const std::string &out_dir, int threads)
    {
        (void)threads;
        ArtifactWriter w(cfg, "validate", out_dir);
        std::vector<std::string> lines;
        int failed = 0;

        auto check = [&](const char *name, bool ok, const std::string &detail = "") {
            std::string line = std::string(ok ? "PASS: " : "FAIL: ") + name;
            if (!ok && !detail.empty())
                line += " (" + detail + ")";
            std::cout << line << '\n';
            lines.push_back(line);
            if (!ok)
                failed++;
        };

        try
        {
            const auto carrier = carrier_from_frequency(30e9);
            check("carrier identity k*lambda = 2*pi",
                  std::abs(carrier.wavenumber_rad_per_m * carrier.wavelength_m - 2.0 * std::numbers::pi) <
                      1e-12 * 2.0 * std::numbers::pi);

            // Independent brute-force enumeration against the lattice builder.
            auto brute_count = [&](int n, double spacing_wl) {
                const double a = n * spacing_wl;
                int cnt = 0;
                for (int l = -4 * n; l <= 4 * n; l++)
                    for (int m = -4 * n; m <= 4 * n; m++)
                        if ((l / a) * (l / a) + (m / a) * (m / a) <= 1.0 + 1e-9)
                            cnt++;
                return cnt;
            };
            {
                const auto g = make_planar_array(4, 4, 0.5 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                check("lattice count 4x4 half-wavelength",
                      lat.propagating_count == 13 && brute_count(4, 0.5) == 13);
                const auto lat2 = build_lattice(g, carrier, 0);
                check("lattice determinism", lat.points.size() == lat2.points.size());
            }
            {
                const auto g = make_planar_array(32, 32, 0.25 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                check("lattice count 32x32 quarter-wavelength",
                      lat.propagating_count == 197 && brute_count(32, 0.25) == 197);
            }

            {
                const auto g = make_planar_array(8, 8, 0.25 * carrier.wavelength_m);
                const auto dft = build_dft_basis(g, carrier);
                const arma::mat err = arma::abs(dft.atoms.t() * dft.atoms -
                                                arma::eye<arma::cx_mat>(dft.atom_count(), dft.atom_count()));
                check("DFT basis is unitary", err.max() < 1e-12);

                Rng rng(derive_seed(cfg.base_seed, "validate.parseval", 0));
                bool parseval = true;
                for (int t = 0; t < 10 && parseval; t++)
                {
                    arma::cx_vec h(dft.atoms.n_rows);
                    for (auto &v : h)
                        v = rng.cgaussian();
                    const auto r = project(dft, h, ProjectionMode::adjoint);
                    const double he = arma::accu(arma::square(arma::abs(h)));
                    parseval = std::abs(arma::accu(r.power) - he) < 1e-12 * he;
                }
                check("Parseval under the adjoint DFT projection", parseval);
            }
            {
                const auto g = make_planar_array(16, 16, 0.25 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                const auto fh = build_fh_basis(lat, g);
                arma::mat err = arma::abs(fh.atoms.t() * fh.atoms -
                                          arma::eye<arma::cx_mat>(fh.atom_count(), fh.atom_count()));
                check("harmonic basis orthonormal at quarter-wavelength", err.max() < 1e-12);
            }

            {
                bool ok = true;
                const auto g = make_planar_array(16, 16, 0.25 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                for (const auto &p : lat.points)
                {
                    const auto dir = wavenumber_to_direction(p, carrier);
                    if (!p.is_propagating)
                        continue;
                    if (!dir)
                    {
                        ok = false;
                        break;
                    }
                    const auto [kx, ky] = direction_to_wavenumber(*dir, carrier);
                    if (std::abs(kx - p.kappa_x) > 1e-9 * carrier.wavenumber_rad_per_m ||
                        std::abs(ky - p.kappa_y) > 1e-9 * carrier.wavenumber_rad_per_m)
                    {
                        ok = false;
                        break;
                    }
                }
                check("direction round trip on the visible region", ok);

                check("Dirichlet probe peak and first null",
                      std::abs(dirichlet_probe(g, 1.0, 1.0) - 1.0) < 1e-12 &&
                          dirichlet_probe(g, 2.0 * std::numbers::pi / (16.0 * g.spacing_m) + 0.0, 0.0) < 1e-9);
            }

            {
                arma::cx_vec a(8, arma::fill::ones), b(8, arma::fill::ones);
                check("nmse identities", nmse(a, b) == 0.0 && std::abs(nmse(0.0 * a, b) - 1.0) < 1e-15);

                arma::cx_mat c(3, 3, arma::fill::eye), l(3, 3, arma::fill::eye), r(3, 3, arma::fill::eye);
                const arma::cx_mat s = apply_impairment_matrices(c, 2.0 * l, r);
                check("impairment sandwich scales linearly", arma::abs(arma::cx_mat(s - 2.0 * c)).max() < 1e-15);
            }

            {
                // One-sparse noiseless recovery.
                const auto g = make_planar_array(8, 8, 0.25 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                const auto fh = build_fh_basis(lat, g);
                const auto model = build_measurement(g, fh, 0.5, arma::datum::inf, 64.0,
                                                     derive_seed(cfg.base_seed, "validate.omp", 0));
                arma::cx_vec x(fh.atom_count(), arma::fill::zeros);
                x[3] = 3.0;
                const arma::cx_vec y = model.dictionary * x;
                const auto res = omp_estimate(y, model, OmpStop{1e-10, 8});
                check("greedy pursuit recovers a planted atom",
                      res.iterations == 1 && res.support[3] == 1 && std::abs(res.coefficients[3] - 3.0) < 1e-8);
            }

            {
                // Spherical-wave inverse-square law, small far array.
                const auto g = make_planar_array(4, 4, 0.25 * carrier.wavelength_m);
                ClusterScattererSet set;
                Scatterer sc;
                sc.position = {0.0, 0.0, 50.0};
                sc.gain = 1.0;
                sc.gain_variance = 1.0;
                set.scatterers.push_back(sc);
                const auto h1 = synthesize_nearfield_greens(set, g, carrier);
                set.scatterers[0].position[2] = 100.0;
                const auto h2 = synthesize_nearfield_greens(set, g, carrier);
                const double ratio = arma::accu(arma::square(arma::abs(h1.samples))) /
                                     arma::accu(arma::square(arma::abs(h2.samples)));
                check("inverse-square law at doubled distance", std::abs(ratio - 4.0) < 0.04);
            }

            {
                const auto g = make_planar_array(8, 8, 0.25 * carrier.wavelength_m);
                const auto lat = build_lattice(g, carrier, 0);
                const auto fh = build_fh_basis(lat, g);
                Rng rng(derive_seed(cfg.base_seed, "validate.rate", 0));
                arma::cx_vec h(g.element_count());
                for (auto &v : h)
                    v = rng.cgaussian();
                const arma::cx_vec wv = fh.atoms.col(2);
                const double r1 = achievable_rate(h, wv, 10.0);
                const double r2 = achievable_rate(h * std::polar(1.0, 1.234), wv, 10.0);
                check("rate is invariant to a global channel phase", std::abs(r1 - r2) < 1e-9);
                check("rate is monotone in snr", achievable_rate(h, wv, 20.0) >= r1);
            }

            {
                // Channel container round trip through the binary format.
                ChannelVector ch;
                ch.samples = arma::cx_vec(5);
                Rng rng(derive_seed(cfg.base_seed, "validate.io", 0));
                for (auto &v : ch.samples)
                    v = rng.cgaussian();
                const std::string p = w.path("validate_roundtrip.hmwc");
                save_channel_binary(p, ch);
                const auto back = load_channel_binary(p);
                check("channel binary round trip", arma::abs(back - ch.samples).max() == 0.0);
            }
        }
        catch (const std::exception &e)
        {
            check("validation suite completed", false, e.what());
        }

        std::ofstream report(w.path("validate_report.txt"), std::ios::binary | std::ios::trunc);
        if (!report)
            throw io_error("cannot write validation report");
        for (const auto &l : lines)
            report << l << '\n';
        report.close();
        w.commit();
        return failed;
    }
}
