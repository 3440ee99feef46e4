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

#include "estimation/mrf.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace hmwn
{
    MrfGraph build_mrf_graph(const Basis &basis)
    {
        MrfGraph g;
        g.n_nodes = basis.atom_count();
        std::map<std::pair<int, int>, arma::uword> by_index;
        for (arma::uword a = 0; a < basis.atom_count(); a++)
            by_index[{basis.meta[a].u, basis.meta[a].v}] = a;
        for (arma::uword a = 0; a < basis.atom_count(); a++)
        {
            const int u = basis.meta[a].u;
            const int v = basis.meta[a].v;
            if (auto it = by_index.find({u + 1, v}); it != by_index.end())
                g.edges.push_back({a, it->second});
            if (auto it = by_index.find({u, v + 1}); it != by_index.end())
                g.edges.push_back({a, it->second});
        }
        return g;
    }

    namespace detail
    {
        BgStageResult bg_linear_stage(const arma::cx_vec &y, const arma::cx_mat &dict,
                                      const arma::vec &activity_prior, double tau,
                                      double noise_variance)
        {
            const arma::uword m = dict.n_rows;
            const arma::uword n_atoms = dict.n_cols;

            arma::vec v = arma::clamp(activity_prior, 1e-6, 1.0 - 1e-6) * tau; // prior variance per atom

            // C = D V D^H + sigma^2 I, with a small floor keeping the solve well
            // posed for noiseless measurements.
            arma::cx_mat c = dict * arma::diagmat(arma::cx_vec(v, arma::vec(n_atoms, arma::fill::zeros))) * dict.t();
            double tr = arma::accu(arma::real(c.diag()));
            const double sigma_eff = noise_variance + 1e-12 * std::max(tr / m, 1e-30);
            c.diag() += sigma_eff;

            const arma::cx_mat cinv_d = arma::solve(c, dict, arma::solve_opts::likely_sympd);
            const arma::cx_vec cinv_y = arma::solve(c, y, arma::solve_opts::likely_sympd);

            BgStageResult r;
            r.posterior_mean = v % (dict.t() * cinv_y);
            arma::vec quad(n_atoms);
            for (arma::uword a = 0; a < n_atoms; a++)
                quad[a] = std::real(arma::cdot(dict.col(a), cinv_d.col(a)));
            r.posterior_variance = v - arma::square(v) % quad;
            r.posterior_variance = arma::clamp(r.posterior_variance, 1e-30, arma::datum::inf);

            // Equivalent scalar observation r_a = x_a + w_a with variance rho:
            //   1/rho = 1/posterior_var - 1/prior_var.
            r.extrinsic_llr.set_size(n_atoms);
            for (arma::uword a = 0; a < n_atoms; a++)
            {
                const double inv_rho = std::max(1.0 / r.posterior_variance[a] - 1.0 / v[a], 1e-12);
                const double rho = 1.0 / inv_rho;
                const std::complex<double> robs = r.posterior_mean[a] * (v[a] + rho) / v[a];
                const double p2 = std::norm(robs);
                r.extrinsic_llr[a] = std::log(rho / (tau + rho)) + p2 * (1.0 / rho - 1.0 / (tau + rho));
            }
            return r;
        }

        arma::vec ising_bp(const arma::vec &theta, double beta, const MrfGraph &graph,
                           double damping, double tol, arma::uword max_sweeps)
        {
            const arma::uword n_edges = graph.edges.size();
            arma::vec msg_fwd(n_edges, arma::fill::zeros); // i -> j
            arma::vec msg_bwd(n_edges, arma::fill::zeros); // j -> i
            arma::vec incoming(theta.n_elem, arma::fill::zeros);

            const double tb = std::tanh(beta);
            if (tb == 0.0 || n_edges == 0)
                return incoming;

            auto recompute_incoming = [&]() {
                incoming.zeros();
                for (arma::uword e = 0; e < n_edges; e++)
                {
                    incoming[graph.edges[e][1]] += msg_fwd[e];
                    incoming[graph.edges[e][0]] += msg_bwd[e];
                }
            };

            for (arma::uword sweep = 0; sweep < max_sweeps; sweep++)
            {
                recompute_incoming();
                double delta = 0.0;
                for (arma::uword e = 0; e < n_edges; e++)
                {
                    const arma::uword i = graph.edges[e][0];
                    const arma::uword j = graph.edges[e][1];
                    const double cav_i = theta[i] + incoming[i] - msg_bwd[e];
                    const double cav_j = theta[j] + incoming[j] - msg_fwd[e];
                    const double new_fwd = std::atanh(std::clamp(tb * std::tanh(cav_i), -0.999999999999, 0.999999999999));
                    const double new_bwd = std::atanh(std::clamp(tb * std::tanh(cav_j), -0.999999999999, 0.999999999999));
                    const double f = (1.0 - damping) * new_fwd + damping * msg_fwd[e];
                    const double b = (1.0 - damping) * new_bwd + damping * msg_bwd[e];
                    delta = std::max({delta, std::abs(f - msg_fwd[e]), std::abs(b - msg_bwd[e])});
                    msg_fwd[e] = f;
                    msg_bwd[e] = b;
                }
                if (delta < tol)
                    break;
            }
            recompute_incoming();
            return incoming;
        }
    }

    static double sigmoid(double x)
    {
        return 1.0 / (1.0 + std::exp(-x));
    }

    EstimationResult mrf_estimate(const arma::cx_vec &y, const MeasurementModel &model,
                                  const MrfGraph &graph, const MrfPrior &prior)
    {
        const arma::cx_mat &dict = model.dictionary;
        if (dict.n_cols == 0)
            throw std::invalid_argument("dictionary is empty");
        if (y.n_elem != dict.n_rows)
            throw std::invalid_argument("measurement length does not match the dictionary");
        if (graph.n_nodes != dict.n_cols)
            throw std::invalid_argument("prior graph does not match the dictionary atoms");

        const arma::uword n_atoms = dict.n_cols;
        const arma::uword m = dict.n_rows;

        EstimationResult res;
        res.coefficients.zeros(n_atoms);
        res.support.zeros(n_atoms);
        res.support_probability.zeros(n_atoms);

        const double y_energy = arma::accu(arma::square(arma::abs(y)));
        if (!(y_energy > 0.0))
        {
            res.converged = true;
            return res;
        }

        // Active-coefficient variance from the measurement energy. Each round
        // re-spreads the estimated signal energy over the expected support size;
        // unlike a posterior-weighted EM update this cannot enter the shrinking
        // support / growing variance spiral that collapses the recursion at low
        // SNR.
        const double pi0 = sigmoid(2.0 * prior.sparsity_bias);
        arma::vec activity(n_atoms, arma::fill::value(pi0));
        const double n_over_m = static_cast<double>(model.sensing.n_cols) / static_cast<double>(m);
        const double signal_energy =
            std::max((y_energy - m * model.noise_variance) * n_over_m, 1e-9 * y_energy);
        double tau = signal_energy / std::max(pi0 * n_atoms, 1.0);

        arma::vec posterior(n_atoms, arma::fill::value(pi0));
        arma::vec best_posterior = posterior;
        double best_tau = tau;
        double best_residual = arma::datum::inf;
        bool converged = false;
        arma::uword rounds = 0;

        for (arma::uword it = 0; it < prior.max_turbo_iterations; it++)
        {
            rounds = it + 1;
            const auto stage = detail::bg_linear_stage(y, dict, activity, tau, model.noise_variance);

            arma::vec theta = prior.sparsity_bias + 0.5 * stage.extrinsic_llr;
            const arma::vec incoming = detail::ising_bp(theta, prior.edge_coupling, graph,
                                                        prior.damping, prior.convergence_tol, 100);

            arma::vec new_posterior(n_atoms);
            for (arma::uword a = 0; a < n_atoms; a++)
            {
                new_posterior[a] = sigmoid(2.0 * (theta[a] + incoming[a]));
                activity[a] = sigmoid(2.0 * (prior.sparsity_bias + incoming[a])); // extrinsic back to the linear stage
            }

            tau = signal_energy / std::max(arma::accu(new_posterior), 1.0);

            // Track the best iterate by measurement-domain residual.
            arma::cx_vec cand(n_atoms, arma::fill::zeros);
            for (arma::uword a = 0; a < n_atoms; a++)
                if (new_posterior[a] > 0.5)
                    cand[a] = stage.posterior_mean[a];
            const double resid = arma::accu(arma::square(arma::abs(y - dict * cand)));
            if (resid < best_residual)
            {
                best_residual = resid;
                best_posterior = new_posterior;
                best_tau = tau;
            }

            const double delta = arma::abs(new_posterior - posterior).max();
            posterior = new_posterior;
            if (delta < prior.convergence_tol)
            {
                converged = true;
                break;
            }
        }

        // Final linear pass under the converged activity posterior. Re-running
        // the stage removes the shrinkage that the sparse pre-decision prior
        // imposed on atoms whose activity was only settled by the field.
        res.support_probability = best_posterior;
        const auto final_stage =
            detail::bg_linear_stage(y, dict, best_posterior, best_tau, model.noise_variance);
        res.coefficients.zeros(n_atoms);
        for (arma::uword a = 0; a < n_atoms; a++)
            if (best_posterior[a] > 0.5)
                res.coefficients[a] = final_stage.posterior_mean[a];

        // Power threshold on the decided support: atoms carrying less than the
        // configured fraction of the recovered energy are dropped, which pins the
        // high-SNR error floor to the threshold rather than the noise.
        arma::vec power = arma::square(arma::abs(res.coefficients));
        const double total = arma::accu(power);
        for (arma::uword a = 0; a < n_atoms; a++)
        {
            const bool keep = res.support_probability[a] > 0.5 &&
                              (total <= 0.0 || power[a] >= prior.prune_power_fraction * total);
            if (!keep)
                res.coefficients[a] = 0.0;
            res.support[a] = keep ? 1 : 0;
        }

        res.iterations = rounds;
        res.converged = converged;
        return res;
    }
}
