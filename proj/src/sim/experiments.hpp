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

#include <string>

#include "sim/config.hpp"

namespace hmwn
{
    const char *artifact_version();

    // Every runner writes its data files plus one ".meta.json" sidecar per file
    // (artifact version, subcommand, seed, full resolved config). Partial outputs
    // are removed if the run fails. Outputs are a pure function of
    // (config, seed, version); the thread count only affects wall time.
    void run_lattice(const ExperimentConfig &cfg, const std::string &out_dir, int threads);
    void run_spectrum(const ExperimentConfig &cfg, const std::string &out_dir, int threads);
    void run_estimate(const ExperimentConfig &cfg, const std::string &out_dir, int threads);
    void run_codebook(const ExperimentConfig &cfg, const std::string &out_dir, int threads);

    // Quick self-check suite; prints one PASS/FAIL line per check to stdout and
    // writes the same lines to validate_report.txt. Returns the failure count.
    int run_validate(const ExperimentConfig &cfg, const std::string &out_dir, int threads);

    // Deterministic statistics helpers shared by runners and tests.
    double median_of(std::vector<double> values);
    double quantile_of(std::vector<double> values, double p); // linear interpolation
}
