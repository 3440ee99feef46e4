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

#include <array>
#include <vector>

#include "estimation/measurement.hpp"

namespace hmwn
{
    // Ising support prior over the atom index grid:
    //   p(s) proportional to exp( sum_edges beta s_i s_j + sum_i alpha_bias s_i ),
    // s_i in {-1, +1}, with 4-connected edges between atoms whose index pairs
    // differ by one in exactly one coordinate.
    struct MrfPrior
    {
        double edge_coupling = 0.8;   // beta >= 0
        double sparsity_bias = -0.3;  // alpha_bias (negative favors empty support)
        arma::uword max_turbo_iterations = 30;
        double damping = 0.5;            // applied to belief-propagation messages, [0, 1)
        double convergence_tol = 1e-4;   // on the support-probability change between turbo rounds
        double prune_power_fraction = 3e-4; // final power threshold: atoms below this fraction
                                            // of the recovered coefficient energy are dropped
    };

    struct MrfGraph
    {
        arma::uword n_nodes = 0;
        std::vector<std::array<arma::uword, 2>> edges; // i < j, each undirected edge once
    };

    // 4-connected neighborhoods over the (u, v) indices of the basis atoms.
    MrfGraph build_mrf_graph(const Basis &basis);

    namespace detail
    {
        struct BgStageResult
        {
            arma::cx_vec posterior_mean;  // per atom, under the Gaussian approximation
            arma::vec posterior_variance;
            arma::vec extrinsic_llr;      // log p(r|s=1)/p(r|s=0) from the linear stage
        };

        // LMMSE stage under independent CN(0, pi_a * tau) priors, followed by the
        // extrinsic conversion to an equivalent scalar AWGN observation per atom.
        BgStageResult bg_linear_stage(const arma::cx_vec &y, const arma::cx_mat &dict,
                                      const arma::vec &activity_prior, double tau,
                                      double noise_variance);

        // Loopy sum-product on the Ising field with local fields theta (half
        // log-odds per node). Returns the incoming neighbor message sum per node.
        arma::vec ising_bp(const arma::vec &theta, double beta, const MrfGraph &graph,
                           double damping, double tol, arma::uword max_sweeps);
    }

    // Turbo recovery: the linear stage exchanges extrinsic support information
    // with belief propagation on the Ising prior until the support probabilities
    // stabilize. Non-convergence is not an error; the best iterate (smallest
    // residual) is returned with converged = false.
    EstimationResult mrf_estimate(const arma::cx_vec &y, const MeasurementModel &model,
                                  const MrfGraph &graph, const MrfPrior &prior);
}
