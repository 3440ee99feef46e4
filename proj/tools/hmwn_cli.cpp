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
//
// Command-line front end. Talks to the core exclusively through the public C
// interface in hmwn.h.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmwn.h"

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_config = 2;
    constexpr int exit_runtime = 3;

    struct CommonOptions
    {
        std::string config_path;
        std::vector<std::string> overrides;
        std::string out_dir = "out";
        std::string seed;
        std::string trials;
        int threads = 1;
    };

    void add_common_options(CLI::App *cmd, CommonOptions &opt)
    {
        cmd->add_option("-c,--config", opt.config_path, "JSON config file (defaults apply when omitted)");
        cmd->add_option("-s,--set", opt.overrides, "dotted-path override, e.g. geometry.n_x=64")
            ->type_name("KEY=VALUE");
        cmd->add_option("-o,--out", opt.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--seed", opt.seed, "base seed for all random streams");
        cmd->add_option("--trials", opt.trials, "Monte-Carlo trial count");
        cmd->add_option("-t,--threads", opt.threads, "worker threads (outputs do not depend on this)")
            ->capture_default_str();
    }

    int status_to_exit(hmwn_status s)
    {
        switch (s)
        {
        case HMWN_OK:
            return exit_ok;
        case HMWN_ERROR_CONFIG:
        case HMWN_ERROR_INVALID_ARGUMENT:
            return exit_config;
        default:
            return exit_runtime;
        }
    }

    int report(hmwn_status s)
    {
        if (s != HMWN_OK)
            std::fprintf(stderr, "error: %s\n", hmwn_last_error());
        return status_to_exit(s);
    }

    using experiment_ptr = std::unique_ptr<hmwn_experiment, decltype(&hmwn_experiment_destroy)>;

    int make_experiment(const CommonOptions &opt, experiment_ptr &out)
    {
        std::string config_text;
        if (!opt.config_path.empty())
        {
            std::ifstream in(opt.config_path, std::ios::binary);
            if (!in)
            {
                std::fprintf(stderr, "error: cannot read config file: %s\n", opt.config_path.c_str());
                return exit_config;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            config_text = ss.str();
        }

        hmwn_experiment *raw = nullptr;
        if (const int rc = report(hmwn_experiment_create(config_text.c_str(), &raw)); rc != exit_ok)
            return rc;
        out = experiment_ptr(raw, &hmwn_experiment_destroy);

        for (const auto &kv : opt.overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
            {
                std::fprintf(stderr, "error: --set expects KEY=VALUE, got '%s'\n", kv.c_str());
                return exit_config;
            }
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            if (const int rc = report(hmwn_experiment_set(out.get(), key.c_str(), value.c_str())); rc != exit_ok)
                return rc;
        }
        if (!opt.seed.empty())
            if (const int rc = report(hmwn_experiment_set(out.get(), "base_seed", opt.seed.c_str())); rc != exit_ok)
                return rc;
        if (!opt.trials.empty())
            if (const int rc = report(hmwn_experiment_set(out.get(), "trials", opt.trials.c_str())); rc != exit_ok)
                return rc;
        return report(hmwn_experiment_set_threads(out.get(), opt.threads));
    }

    int run_subcommand(const CommonOptions &opt, const char *name)
    {
        experiment_ptr exp(nullptr, &hmwn_experiment_destroy);
        if (const int rc = make_experiment(opt, exp); rc != exit_ok)
            return rc;
        return report(hmwn_experiment_run(exp.get(), name, opt.out_dir.c_str()));
    }

    int run_validate(const CommonOptions &opt)
    {
        experiment_ptr exp(nullptr, &hmwn_experiment_destroy);
        if (const int rc = make_experiment(opt, exp); rc != exit_ok)
            return rc;
        int failed = 0;
        if (const int rc = report(hmwn_experiment_validate(exp.get(), opt.out_dir.c_str(), &failed));
            rc != exit_ok)
            return rc;
        if (failed > 0)
        {
            std::fprintf(stderr, "error: %d validation check(s) failed\n", failed);
            return exit_runtime;
        }
        return exit_ok;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{std::string("hmwn ") + hmwn_version() +
                 " - wavenumber-domain toolkit for holographic MIMO arrays"};
    app.require_subcommand(1);

    CommonOptions opt;
    const char *description[] = {
        "write the spatial-frequency lattice as CSV",
        "project far- and near-field channels onto the DFT and harmonic bases (heatmap CSVs)",
        "sparse-recovery NMSE sweep over the SNR grid (CSV)",
        "beam-codebook rate sweep over distance (CSV)",
        "run the built-in invariant suite",
    };
    CLI::App *cmd_lattice = app.add_subcommand("lattice", description[0]);
    CLI::App *cmd_spectrum = app.add_subcommand("spectrum", description[1]);
    CLI::App *cmd_estimate = app.add_subcommand("estimate", description[2]);
    CLI::App *cmd_codebook = app.add_subcommand("codebook", description[3]);
    CLI::App *cmd_validate = app.add_subcommand("validate", description[4]);
    for (CLI::App *cmd : {cmd_lattice, cmd_spectrum, cmd_estimate, cmd_codebook, cmd_validate})
        add_common_options(cmd, opt);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e); // prints help or the parse error
        return rc == 0 ? exit_ok : exit_config;
    }

    if (cmd_lattice->parsed())
        return run_subcommand(opt, "lattice");
    if (cmd_spectrum->parsed())
        return run_subcommand(opt, "spectrum");
    if (cmd_estimate->parsed())
        return run_subcommand(opt, "estimate");
    if (cmd_codebook->parsed())
        return run_subcommand(opt, "codebook");
    return run_validate(opt);
}
