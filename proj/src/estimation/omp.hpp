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

#include "estimation/measurement.hpp"

namespace hmwn
{
    struct OmpStop
    {
        double power_threshold = 1e-10; // stop when ||r||^2 < threshold * ||y||^2
        arma::uword max_atoms = 0;      // hard cap on the support size
    };

    // Greedy pursuit: each iteration selects the dictionary column with the
    // largest normalized correlation against the residual, then re-fits all
    // selected coefficients by least squares. An atom is never selected twice and
    // the residual norm is non-increasing across iterations.
    EstimationResult omp_estimate(const arma::cx_vec &y, const MeasurementModel &model, const OmpStop &stop);
}
