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

#include "estimation/omp.hpp"

#include <stdexcept>
#include <vector>

namespace hmwn
{
    EstimationResult omp_estimate(const arma::cx_vec &y, const MeasurementModel &model, const OmpStop &stop)
    {
        const arma::cx_mat &dict = model.dictionary;
        if (dict.n_cols == 0)
            throw std::invalid_argument("dictionary is empty");
        if (y.n_elem != dict.n_rows)
            throw std::invalid_argument("measurement length does not match the dictionary");

        const arma::uword n_atoms = dict.n_cols;
        const arma::uword cap = std::min({stop.max_atoms == 0 ? dict.n_rows : stop.max_atoms,
                                          dict.n_rows, n_atoms});

        EstimationResult res;
        res.coefficients.zeros(n_atoms);
        res.support.zeros(n_atoms);
        res.support_probability.zeros(n_atoms);

        const double y_energy = arma::accu(arma::square(arma::abs(y)));
        if (!(y_energy > 0.0))
        {
            res.converged = true; // nothing to explain
            return res;
        }

        arma::vec col_norm(n_atoms);
        for (arma::uword a = 0; a < n_atoms; a++)
            col_norm[a] = std::max(arma::norm(dict.col(a)), 1e-300);

        arma::cx_vec residual = y;
        std::vector<arma::uword> selected;
        arma::cx_vec fit;

        while (selected.size() < cap)
        {
            if (arma::accu(arma::square(arma::abs(residual))) < stop.power_threshold * y_energy)
                break;

            arma::vec corr = arma::abs(dict.t() * residual) / col_norm;
            for (arma::uword s : selected)
                corr[s] = -1.0;
            const arma::uword best = corr.index_max();
            if (!(corr[best] > 0.0))
                break; // residual orthogonal to every remaining atom

            selected.push_back(best);
            arma::cx_mat sub(dict.n_rows, selected.size());
            for (std::size_t i = 0; i < selected.size(); i++)
                sub.col(i) = dict.col(selected[i]);
            fit = arma::solve(sub, y);
            residual = y - sub * fit;
        }

        for (std::size_t i = 0; i < selected.size(); i++)
        {
            res.coefficients[selected[i]] = fit[i];
            res.support[selected[i]] = 1;
            res.support_probability[selected[i]] = 1.0;
        }
        res.iterations = selected.size();
        res.converged = arma::accu(arma::square(arma::abs(residual))) < stop.power_threshold * y_energy;
        return res;
    }
}
