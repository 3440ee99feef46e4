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
// Exercises the shared-library surface only: this translation unit includes
// nothing from the C++ core.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hmwn.h"

namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        explicit TempDir(const std::string &tag)
        {
            path = fs::temp_directory_path() / ("hmwn_capi_" + tag + "_" + std::to_string(::getpid()));
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

TEST_CASE("version and error strings are always available")
{
    REQUIRE(hmwn_version() != nullptr);
    CHECK(std::strlen(hmwn_version()) >= 5);
    REQUIRE(hmwn_last_error() != nullptr);
}

TEST_CASE("scene handle lifecycle and lattice queries")
{
    hmwn_scene *scene = nullptr;
    REQUIRE(hmwn_scene_create(30e9, 4, 4, 0.5, 0, &scene) == HMWN_OK);
    REQUIRE(scene != nullptr);

    int size = 0, prop = 0;
    CHECK(hmwn_scene_lattice_size(scene, &size) == HMWN_OK);
    CHECK(hmwn_scene_propagating_count(scene, &prop) == HMWN_OK);
    CHECK(size == 13);
    CHECK(prop == 13);

    double rayleigh = 0.0;
    CHECK(hmwn_scene_rayleigh_distance(scene, &rayleigh) == HMWN_OK);
    CHECK(rayleigh > 0.0);

    hmwn_lattice_point p{};
    CHECK(hmwn_scene_lattice_point(scene, 0, &p) == HMWN_OK);
    CHECK(p.l == -2); // lexicographic order starts at the most negative index
    CHECK(p.is_propagating == 1);

    // gamma^2 + kappa^2 = k^2 must survive the C ABI copy
    const double k = 2.0 * 3.14159265358979323846 * 30e9 / 299792458.0;
    const double lhs = p.kappa_x * p.kappa_x + p.kappa_y * p.kappa_y + p.gamma_re * p.gamma_re -
                       p.gamma_im * p.gamma_im;
    CHECK(std::abs(lhs - k * k) < 1e-6 * k * k);

    int has_dir = 0;
    double theta = 0.0, phi = 0.0;
    CHECK(hmwn_scene_point_direction(scene, 0, &has_dir, &theta, &phi) == HMWN_OK);
    CHECK(has_dir == 1);

    CHECK(hmwn_scene_lattice_point(scene, 999, &p) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(std::strlen(hmwn_last_error()) > 0);

    hmwn_scene_destroy(scene);
}

TEST_CASE("scene with evanescent margin exposes ring points without angles")
{
    hmwn_scene *scene = nullptr;
    REQUIRE(hmwn_scene_create(30e9, 8, 8, 0.25, 2, &scene) == HMWN_OK);
    int size = 0, prop = 0;
    CHECK(hmwn_scene_lattice_size(scene, &size) == HMWN_OK);
    CHECK(hmwn_scene_propagating_count(scene, &prop) == HMWN_OK);
    CHECK(size > prop);

    int ring_seen = 0;
    for (int i = 0; i < size; i++)
    {
        hmwn_lattice_point p{};
        REQUIRE(hmwn_scene_lattice_point(scene, i, &p) == HMWN_OK);
        if (!p.is_propagating)
        {
            ring_seen++;
            int has_dir = 1;
            double th = 0.0, ph = 0.0;
            CHECK(hmwn_scene_point_direction(scene, i, &has_dir, &th, &ph) == HMWN_OK);
            CHECK(has_dir == 0);
            CHECK(p.gamma_im > 0.0);
        }
    }
    CHECK(ring_seen == size - prop);
    hmwn_scene_destroy(scene);
}

TEST_CASE("invalid scene parameters are rejected through the ABI")
{
    hmwn_scene *scene = nullptr;
    CHECK(hmwn_scene_create(-1.0, 4, 4, 0.5, 0, &scene) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(scene == nullptr);
    CHECK(hmwn_scene_create(30e9, 0, 4, 0.5, 0, &scene) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(hmwn_scene_create(30e9, 4, 4, 0.5, -2, &scene) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(hmwn_scene_create(30e9, 4, 4, 0.5, 0, nullptr) == HMWN_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("experiment configuration through the ABI")
{
    hmwn_experiment *exp = nullptr;

    SUBCASE("defaults load with a null config")
    {
        REQUIRE(hmwn_experiment_create(nullptr, &exp) == HMWN_OK);
        char *json = nullptr;
        REQUIRE(hmwn_experiment_resolved_config(exp, &json) == HMWN_OK);
        REQUIRE(json != nullptr);
        const std::string text = json;
        hmwn_string_free(json);
        CHECK(text.find("\"n_x\": 32") != std::string::npos);
        hmwn_experiment_destroy(exp);
    }

    SUBCASE("bad json and unknown keys map to the config error code")
    {
        CHECK(hmwn_experiment_create("{", &exp) == HMWN_ERROR_CONFIG);
        CHECK(exp == nullptr);
        CHECK(std::strlen(hmwn_last_error()) > 0);
        CHECK(hmwn_experiment_create(R"({"nope": 1})", &exp) == HMWN_ERROR_CONFIG);
    }

    SUBCASE("overrides are validated before being accepted")
    {
        REQUIRE(hmwn_experiment_create(nullptr, &exp) == HMWN_OK);
        CHECK(hmwn_experiment_set(exp, "geometry.n_x", "8") == HMWN_OK);
        CHECK(hmwn_experiment_set(exp, "geometry.n_x", "0") == HMWN_ERROR_CONFIG);
        CHECK(hmwn_experiment_set(exp, "no.such.key", "1") == HMWN_ERROR_CONFIG);

        char *json = nullptr;
        REQUIRE(hmwn_experiment_resolved_config(exp, &json) == HMWN_OK);
        const std::string text = json;
        hmwn_string_free(json);
        CHECK(text.find("\"n_x\": 8") != std::string::npos); // last good value survives
        hmwn_experiment_destroy(exp);
    }

    SUBCASE("thread count must be positive")
    {
        REQUIRE(hmwn_experiment_create(nullptr, &exp) == HMWN_OK);
        CHECK(hmwn_experiment_set_threads(exp, 0) == HMWN_ERROR_INVALID_ARGUMENT);
        CHECK(hmwn_experiment_set_threads(exp, 2) == HMWN_OK);
        hmwn_experiment_destroy(exp);
    }
}

TEST_CASE("experiment run through the ABI")
{
    TempDir tmp("run");
    hmwn_experiment *exp = nullptr;
    REQUIRE(hmwn_experiment_create(
                R"({"geometry": {"n_x": 4, "n_y": 4, "spacing_wavelengths": 0.5}})", &exp) == HMWN_OK);

    SUBCASE("lattice subcommand writes 13 rows for the half-wavelength 4x4 array")
    {
        REQUIRE(hmwn_experiment_run(exp, "lattice", tmp.path.string().c_str()) == HMWN_OK);
        const std::string csv = slurp(tmp.path / "lattice.csv");
        int rows = -1;
        for (char ch : csv)
            if (ch == '\n')
                rows++;
        CHECK(rows == 13);
        CHECK(fs::exists(tmp.path / "lattice.csv.meta.json"));
    }

    SUBCASE("unknown subcommand is an argument error")
    {
        CHECK(hmwn_experiment_run(exp, "frobnicate", tmp.path.string().c_str()) ==
              HMWN_ERROR_INVALID_ARGUMENT);
    }

    SUBCASE("unwritable output maps to the io error code")
    {
        CHECK(hmwn_experiment_run(exp, "lattice", "/proc/definitely/not/writable") == HMWN_ERROR_IO);
    }

    hmwn_experiment_destroy(exp);
}

TEST_CASE("null handles never crash")
{
    int out = 0;
    double d = 0.0;
    CHECK(hmwn_scene_lattice_size(nullptr, &out) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(hmwn_scene_rayleigh_distance(nullptr, &d) == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(hmwn_experiment_set(nullptr, "a", "b") == HMWN_ERROR_INVALID_ARGUMENT);
    CHECK(hmwn_experiment_run(nullptr, "lattice", "x") == HMWN_ERROR_INVALID_ARGUMENT);
    hmwn_scene_destroy(nullptr);
    hmwn_experiment_destroy(nullptr);
    hmwn_string_free(nullptr);
}
