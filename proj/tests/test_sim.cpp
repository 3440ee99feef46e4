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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "sim/channel_io.hpp"
#include "sim/config.hpp"
#include "sim/csv.hpp"
#include "sim/experiments.hpp"

using namespace hmwn;
namespace fs = std::filesystem;

namespace
{
    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    int count_data_rows(const std::string &csv)
    {
        int lines = 0;
        for (char c : csv)
            if (c == '\n')
                lines++;
        return lines - 1; // minus header
    }

    struct TempDir
    {
        fs::path path;
        explicit TempDir(const std::string &tag)
        {
            path = fs::temp_directory_path() / ("hmwn_test_" + tag + "_" + std::to_string(::getpid()));
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };
}

TEST_CASE("seed derivation separates streams")
{
    const auto a = derive_seed(1, "alpha", 0);
    CHECK(derive_seed(1, "alpha", 0) == a);     // reproducible
    CHECK(derive_seed(1, "alpha", 1) != a);     // index separation
    CHECK(derive_seed(1, "beta", 0) != a);      // purpose separation
    CHECK(derive_seed(2, "alpha", 0) != a);     // base-seed separation
    CHECK(derive_seed(1, "alpha", 0) != 0);     // never the forbidden all-zero state

    Rng r1(a), r2(a);
    for (int i = 0; i < 100; i++)
        CHECK(r1.next_u64() == r2.next_u64());
}

TEST_CASE("generator moments are sane")
{
    Rng rng(derive_seed(3, "test.rng.moments", 0));
    const int n = 200000;
    double mean = 0.0, var = 0.0, cmean = 0.0;
    for (int i = 0; i < n; i++)
    {
        const double g = rng.gaussian();
        mean += g;
        var += g * g;
        cmean += std::norm(rng.cgaussian());
    }
    CHECK(std::abs(mean / n) < 0.01);
    CHECK(std::abs(var / n - 1.0) < 0.02);
    CHECK(std::abs(cmean / n - 1.0) < 0.02);
}

TEST_CASE("config parsing")
{
    SUBCASE("empty text yields defaults")
    {
        const auto cfg = parse_config("");
        CHECK(cfg.n_x == 32);
        CHECK(cfg.n_y == 32);
        CHECK(cfg.spacing_wavelengths == 0.25);
        CHECK(cfg.clusters.size() == 4);
        CHECK(cfg.trials == 100);
    }

    SUBCASE("unknown keys are rejected with a path")
    {
        CHECK_THROWS_WITH_AS(parse_config(R"({"geometry": {"n_z": 3}})"),
                             doctest::Contains("unknown key 'n_z'"), config_error);
        CHECK_THROWS_AS(parse_config(R"({"geomtry": {}})"), config_error);
        CHECK_THROWS_AS(parse_config(R"({"estimation": {"mrf": {"beta": 1}}})"), config_error);
    }

    SUBCASE("invalid values are rejected")
    {
        CHECK_THROWS_AS(parse_config(R"({"geometry": {"n_x": 0}})"), config_error);
        CHECK_THROWS_AS(parse_config(R"({"carrier": {"frequency_hz": -1}})"), config_error);
        CHECK_THROWS_AS(parse_config(R"({"estimation": {"compression_ratio": 2.0}})"), config_error);
        CHECK_THROWS_AS(parse_config(R"({"spectrum": {"far_generator": "magic"}})"), config_error);
        CHECK_THROWS_AS(parse_config("not json"), config_error);
        CHECK_THROWS_AS(
            parse_config(R"({"spectrum": {"clusters": [{"theta_deg": 10, "weight": 0.5}]}})"),
            config_error); // weights must sum to 1
    }

    SUBCASE("resolved config round-trips to an identical run")
    {
        const auto cfg = parse_config(R"({"geometry": {"n_x": 8, "n_y": 4}, "trials": 7})");
        const std::string resolved = resolved_config_json(cfg);
        const auto back = parse_config(resolved);
        CHECK(resolved_config_json(back) == resolved);
        CHECK(back.n_x == 8);
        CHECK(back.n_y == 4);
        CHECK(back.trials == 7);
    }

    SUBCASE("sidecar documents load directly")
    {
        const auto cfg = parse_config(R"({"geometry": {"n_x": 6, "n_y": 6}})");
        nlohmann::json side = {{"artifact", "hmwn"},
                               {"resolved_config", nlohmann::json::parse(resolved_config_json(cfg))}};
        const auto back = parse_config(side.dump());
        CHECK(back.n_x == 6);
    }

    SUBCASE("dotted overrides")
    {
        std::string text = "{}";
        text = apply_config_override(text, "geometry.n_x", "64");
        text = apply_config_override(text, "estimation.mrf.edge_coupling", "0.7");
        text = apply_config_override(text, "output_dir", "results");
        const auto cfg = parse_config(text);
        CHECK(cfg.n_x == 64);
        CHECK(cfg.estimation.mrf.edge_coupling == 0.7);
        CHECK(cfg.output_dir == "results");

        CHECK_THROWS_AS(parse_config(apply_config_override("{}", "geometry.bogus", "1")), config_error);
        CHECK_THROWS_AS(apply_config_override("{}", "", "1"), config_error);
    }
}

TEST_CASE("deterministic number formatting")
{
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-3.5e-9) == "-3.5e-09");
    CHECK(format_double(1.0 / 3.0, 17) == format_double(1.0 / 3.0, 17));
}

TEST_CASE("channel vector files")
{
    TempDir tmp("chanio");
    ChannelVector ch;
    ch.samples.set_size(7);
    Rng rng(derive_seed(5, "test.chanio", 0));
    for (auto &v : ch.samples)
        v = rng.cgaussian();
    ch.provenance = Provenance::exact_greens;

    const std::string bin = (tmp.path / "ch.hmwc").string();
    save_channel_binary(bin, ch);

    SUBCASE("binary header bytes")
    {
        const std::string raw = slurp(bin);
        REQUIRE(raw.size() == 16 + 7 * 16);
        CHECK(raw.compare(0, 4, "HMWC") == 0);
        CHECK(static_cast<unsigned char>(raw[4]) == 7); // little-endian length
        CHECK(raw[5] == 0);
        CHECK(raw[8] == 0); // reserved
    }

    SUBCASE("round trip is bit exact")
    {
        const auto back = load_channel_binary(bin);
        REQUIRE(back.n_elem == 7);
        CHECK(arma::abs(back - ch.samples).max() == 0.0);
    }

    SUBCASE("corrupt files are rejected")
    {
        const std::string bad = (tmp.path / "bad.hmwc").string();
        std::ofstream out(bad, std::ios::binary);
        out << "NOPE";
        out.close();
        CHECK_THROWS_AS(load_channel_binary(bad), io_error);
    }

    SUBCASE("CSV companion carries full precision")
    {
        const std::string csv_path = (tmp.path / "ch.csv").string();
        save_channel_csv(csv_path, ch);
        const std::string text = slurp(csv_path);
        CHECK(text.rfind("index,re,im\n", 0) == 0);
        CHECK(count_data_rows(text) == 7);

        std::istringstream ss(text);
        std::string line;
        std::getline(ss, line);
        std::getline(ss, line);
        const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        CHECK(std::stod(line.substr(c1 + 1, c2 - c1 - 1)) == ch.samples[0].real());
        CHECK(std::stod(line.substr(c2 + 1)) == ch.samples[0].imag());
    }
}

TEST_CASE("lattice runner writes the announced artifact")
{
    TempDir tmp("lattice");
    const auto cfg = parse_config(
        R"({"geometry": {"n_x": 4, "n_y": 4, "spacing_wavelengths": 0.5}})");
    run_lattice(cfg, tmp.path.string(), 1);

    const std::string csv = slurp(tmp.path / "lattice.csv");
    CHECK(csv.rfind("l,m,kappa_x,kappa_y,gamma_re,gamma_im,is_propagating\n", 0) == 0);
    CHECK(count_data_rows(csv) == 13);

    SUBCASE("sidecar carries the resolved config and reloads identically")
    {
        const std::string side = slurp(tmp.path / "lattice.csv.meta.json");
        const auto doc = nlohmann::json::parse(side);
        CHECK(doc.at("artifact") == "hmwn");
        CHECK(doc.at("artifact_version") == artifact_version());
        CHECK(doc.at("subcommand") == "lattice");
        CHECK(doc.at("base_seed").get<std::uint64_t>() == cfg.base_seed);
        const auto back = parse_config(side);
        CHECK(resolved_config_json(back) == resolved_config_json(cfg));
    }

    SUBCASE("second run is byte identical")
    {
        TempDir tmp2("lattice2");
        run_lattice(cfg, tmp2.path.string(), 1);
        CHECK(slurp(tmp2.path / "lattice.csv") == csv);
    }
}

TEST_CASE("spectrum runner emits heatmaps, summary, and sample channels")
{
    TempDir tmp("spectrum");
    const auto cfg = parse_config(R"({
        "geometry": {"n_x": 8, "n_y": 8},
        "spectrum": {"trials": 4, "scatterers_per_cluster": 5}
    })");
    run_spectrum(cfg, tmp.path.string(), 2);

    for (const char *name : {"spectrum_far_fh.csv", "spectrum_far_dft.csv", "spectrum_near_fh.csv",
                             "spectrum_near_dft.csv", "leakage_summary.csv", "channel_far.hmwc",
                             "channel_near.csv"})
        CHECK(fs::exists(tmp.path / name));

    const std::string far_fh = slurp(tmp.path / "spectrum_far_fh.csv");
    CHECK(far_fh.rfind("atom_kind,l_or_p,m_or_q,kappa_x,kappa_y,is_propagating,power\n", 0) == 0);

    const std::string far_dft = slurp(tmp.path / "spectrum_far_dft.csv");
    CHECK(count_data_rows(far_dft) == 64);

    SUBCASE("a single-harmonic variance map lights exactly one harmonic atom")
    {
        TempDir tmp2("spectrum_single");
        const auto single = parse_config(R"({
            "geometry": {"n_x": 8, "n_y": 8},
            "spectrum": {"trials": 2,
                          "far_generator": "fourier_series",
                          "variance_override": [{"l": 1, "m": 1, "variance": 1.0}]}
        })");
        run_spectrum(single, tmp2.path.string(), 1);
        const std::string text = slurp(tmp2.path / "spectrum_far_fh.csv");
        std::istringstream ss(text);
        std::string line;
        std::getline(ss, line); // header
        int hot = 0;
        while (std::getline(ss, line))
        {
            const auto last = line.rfind(',');
            if (std::stod(line.substr(last + 1)) > 1e-10)
                hot++;
        }
        CHECK(hot == 1);
    }
}

TEST_CASE("estimate and codebook runners are thread-invariant")
{
    const std::string small_cfg = R"({
        "geometry": {"n_x": 16, "n_y": 16},
        "estimation": {"trials": 4, "snr_grid_db": [0, 10], "bases": ["fh"]},
        "codebook": {"trials": 4, "distance_points": 3},
        "trials": 4
    })";
    const auto cfg = parse_config(small_cfg);

    TempDir a("est_a"), b("est_b");
    run_estimate(cfg, a.path.string(), 1);
    run_estimate(cfg, b.path.string(), 2);
    CHECK(slurp(a.path / "nmse_sweep.csv") == slurp(b.path / "nmse_sweep.csv"));
    CHECK(slurp(a.path / "nmse_summary.csv") == slurp(b.path / "nmse_summary.csv"));

    const std::string sweep = slurp(a.path / "nmse_sweep.csv");
    CHECK(sweep.rfind("snr_db,algorithm,basis_kind,trial,nmse_db\n", 0) == 0);
    CHECK(count_data_rows(sweep) == 2 * 2 * 4); // snr x algorithm x trial

    TempDir c("cb_a"), d("cb_b");
    run_codebook(cfg, c.path.string(), 1);
    run_codebook(cfg, d.path.string(), 2);
    CHECK(slurp(c.path / "rate_sweep.csv") == slurp(d.path / "rate_sweep.csv"));
    const std::string rates = slurp(c.path / "rate_sweep.csv");
    CHECK(rates.rfind("distance_m,codebook_kind,mean_rate,std_rate,invalid_beam_fraction\n", 0) == 0);
    CHECK(count_data_rows(rates) == 3 * 2); // distances x codebooks
}

TEST_CASE("runners clean up partial outputs on failure")
{
    // An unwritable output directory path triggers the failure before commit.
    const auto cfg = parse_config(R"({"geometry": {"n_x": 4, "n_y": 4}})");
    CHECK_THROWS_AS(run_lattice(cfg, "/proc/definitely/not/writable", 1), io_error);

    // A config that fails mid-run: variance override outside the lattice.
    TempDir tmp("cleanup");
    const auto bad = parse_config(R"({
        "geometry": {"n_x": 4, "n_y": 4},
        "spectrum": {"trials": 2, "far_generator": "fourier_series",
                      "variance_override": [{"l": 99, "m": 0, "variance": 1.0}]}
    })");
    CHECK_THROWS_AS(run_spectrum(bad, tmp.path.string(), 1), config_error);
    CHECK(fs::is_empty(tmp.path));
}

TEST_CASE("validate runner reports all checks green")
{
    TempDir tmp("validate");
    const auto cfg = parse_config("");
    CHECK(run_validate(cfg, tmp.path.string(), 1) == 0);
    CHECK(fs::exists(tmp.path / "validate_report.txt"));
    const std::string report = slurp(tmp.path / "validate_report.txt");
    CHECK(report.find("FAIL") == std::string::npos);
    CHECK(report.find("PASS") != std::string::npos);
}

TEST_CASE("statistics helpers")
{
    CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median_of({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK(quantile_of({1.0, 2.0, 3.0, 4.0, 5.0}, 0.25) == 2.0);
    CHECK_THROWS_AS(median_of({}), std::invalid_argument);
}
