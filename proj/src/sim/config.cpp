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

#include "sim/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/lattice.hpp"

namespace hmwn
{
    using nlohmann::json;

    // ---------------------------------------------------------------- helpers

    static void require_keys(const json &j, const std::string &path, const std::set<std::string> &allowed)
    {
        if (!j.is_object())
            throw config_error(path + ": expected an object");
        for (const auto &el : j.items())
            if (!allowed.count(el.key()))
                throw config_error(path + ": unknown key '" + el.key() + "'");
    }

    static double get_number(const json &j, const std::string &path, const char *key, double fallback)
    {
        if (!j.contains(key))
            return fallback;
        const auto &v = j.at(key);
        if (!v.is_number())
            throw config_error(path + "." + key + ": expected a number");
        return v.get<double>();
    }

    static int get_int(const json &j, const std::string &path, const char *key, int fallback)
    {
        if (!j.contains(key))
            return fallback;
        const auto &v = j.at(key);
        if (!v.is_number_integer())
            throw config_error(path + "." + key + ": expected an integer");
        return v.get<int>();
    }

    static std::string get_string(const json &j, const std::string &path, const char *key,
                                  const std::string &fallback)
    {
        if (!j.contains(key))
            return fallback;
        const auto &v = j.at(key);
        if (!v.is_string())
            throw config_error(path + "." + key + ": expected a string");
        return v.get<std::string>();
    }

    static std::vector<ClusterConfig> parse_clusters(const json &arr, const std::string &path)
    {
        if (!arr.is_array() || arr.empty())
            throw config_error(path + ": expected a non-empty array of clusters");
        std::vector<ClusterConfig> out;
        double wsum = 0.0;
        for (std::size_t i = 0; i < arr.size(); i++)
        {
            const std::string p = path + "[" + std::to_string(i) + "]";
            require_keys(arr[i], p, {"theta_deg", "phi_deg", "concentration", "weight"});
            ClusterConfig c;
            c.theta_deg = get_number(arr[i], p, "theta_deg", 0.0);
            c.phi_deg = get_number(arr[i], p, "phi_deg", 0.0);
            c.concentration = get_number(arr[i], p, "concentration", 100.0);
            c.weight = get_number(arr[i], p, "weight", 1.0);
            if (c.theta_deg < 0.0 || c.theta_deg >= 90.0)
                throw config_error(p + ".theta_deg: must lie in [0, 90)");
            if (c.concentration < 0.0)
                throw config_error(p + ".concentration: must be non-negative");
            if (!(c.weight > 0.0))
                throw config_error(p + ".weight: must be positive");
            wsum += c.weight;
            out.push_back(c);
        }
        if (std::abs(wsum - 1.0) > 1e-9)
            throw config_error(path + ": cluster weights must sum to 1");
        return out;
    }

    static json clusters_to_json(const std::vector<ClusterConfig> &clusters)
    {
        json arr = json::array();
        for (const auto &c : clusters)
            arr.push_back({{"theta_deg", c.theta_deg},
                           {"phi_deg", c.phi_deg},
                           {"concentration", c.concentration},
                           {"weight", c.weight}});
        return arr;
    }

    // ------------------------------------------------------------- accessors

    CarrierConfig ExperimentConfig::carrier() const
    {
        return carrier_from_frequency(carrier_frequency_hz);
    }

    PlanarArrayGeometry ExperimentConfig::geometry() const
    {
        const double lambda = speed_of_light_m_s / carrier_frequency_hz;
        return make_planar_array(n_x, n_y, spacing_wavelengths * lambda);
    }

    AngularPowerSpectrum ExperimentConfig::spectrum_model(const std::vector<ClusterConfig> &cl) const
    {
        AngularPowerSpectrum aps;
        aps.normalization = static_cast<double>(n_x) * n_y;
        const double deg = std::numbers::pi / 180.0;
        for (const auto &c : cl)
            aps.clusters.push_back(make_vmf_cluster(c.theta_deg * deg, c.phi_deg * deg, c.concentration, c.weight));
        return aps;
    }

    std::vector<double> ExperimentConfig::codebook_distances() const
    {
        if (!codebook.distances_m.empty())
            return codebook.distances_m;
        std::vector<double> d(codebook.distance_points);
        const double lo = std::log(codebook.distance_min_m);
        const double hi = std::log(codebook.distance_max_m);
        for (int i = 0; i < codebook.distance_points; i++)
        {
            const double f = codebook.distance_points == 1
                                 ? 0.0
                                 : static_cast<double>(i) / (codebook.distance_points - 1);
            d[i] = std::exp(lo + f * (hi - lo));
        }
        return d;
    }

    // --------------------------------------------------------------- parsing

    ExperimentConfig parse_config(const std::string &json_text)
    {
        json root;
        const bool blank = json_text.find_first_not_of(" \t\r\n") == std::string::npos;
        if (blank)
            root = json::object();
        else
        {
            try
            {
                root = json::parse(json_text);
            }
            catch (const json::exception &e)
            {
                throw config_error(std::string("config is not valid JSON: ") + e.what());
            }
        }
        if (root.is_object() && root.contains("resolved_config"))
            root = root.at("resolved_config"); // accept a sidecar document directly

        ExperimentConfig cfg;
        require_keys(root, "config",
                     {"carrier", "geometry", "lattice", "spectrum", "estimation", "codebook", "trials",
                      "base_seed", "output_dir"});

        if (root.contains("carrier"))
        {
            const auto &c = root.at("carrier");
            require_keys(c, "carrier", {"frequency_hz"});
            cfg.carrier_frequency_hz = get_number(c, "carrier", "frequency_hz", cfg.carrier_frequency_hz);
            if (!(cfg.carrier_frequency_hz > 0.0))
                throw config_error("carrier.frequency_hz: must be positive");
        }
        if (root.contains("geometry"))
        {
            const auto &g = root.at("geometry");
            require_keys(g, "geometry", {"n_x", "n_y", "spacing_wavelengths"});
            cfg.n_x = get_int(g, "geometry", "n_x", cfg.n_x);
            cfg.n_y = get_int(g, "geometry", "n_y", cfg.n_y);
            cfg.spacing_wavelengths = get_number(g, "geometry", "spacing_wavelengths", cfg.spacing_wavelengths);
            if (cfg.n_x < 1 || cfg.n_y < 1)
                throw config_error("geometry: element counts must be positive");
            if (!(cfg.spacing_wavelengths > 0.0))
                throw config_error("geometry.spacing_wavelengths: must be positive");
        }
        if (root.contains("lattice"))
        {
            const auto &l = root.at("lattice");
            require_keys(l, "lattice", {"evanescent_margin"});
            cfg.evanescent_margin = get_int(l, "lattice", "evanescent_margin", cfg.evanescent_margin);
            if (cfg.evanescent_margin < 0)
                throw config_error("lattice.evanescent_margin: must be non-negative");
        }
        if (root.contains("spectrum"))
        {
            const auto &s = root.at("spectrum");
            require_keys(s, "spectrum",
                         {"clusters", "far_distance_rayleigh", "near_distance_rayleigh",
                          "near_evanescent_margin", "far_generator", "scatterers_per_cluster",
                          "shell_relative_halfwidth", "variance_override", "trials"});
            if (s.contains("clusters"))
                cfg.clusters = parse_clusters(s.at("clusters"), "spectrum.clusters");
            auto &sp = cfg.spectrum;
            sp.far_distance_rayleigh = get_number(s, "spectrum", "far_distance_rayleigh", sp.far_distance_rayleigh);
            sp.near_distance_rayleigh = get_number(s, "spectrum", "near_distance_rayleigh", sp.near_distance_rayleigh);
            sp.near_evanescent_margin = get_int(s, "spectrum", "near_evanescent_margin", sp.near_evanescent_margin);
            sp.far_generator = get_string(s, "spectrum", "far_generator", sp.far_generator);
            sp.scatterers_per_cluster = get_int(s, "spectrum", "scatterers_per_cluster", sp.scatterers_per_cluster);
            sp.shell_relative_halfwidth =
                get_number(s, "spectrum", "shell_relative_halfwidth", sp.shell_relative_halfwidth);
            if (!(sp.far_distance_rayleigh > 0.0) || !(sp.near_distance_rayleigh > 0.0))
                throw config_error("spectrum: distances must be positive");
            if (sp.near_evanescent_margin < 0)
                throw config_error("spectrum.near_evanescent_margin: must be non-negative");
            if (sp.far_generator != "greens" && sp.far_generator != "fourier_series")
                throw config_error("spectrum.far_generator: must be 'greens' or 'fourier_series'");
            if (sp.scatterers_per_cluster < 1)
                throw config_error("spectrum.scatterers_per_cluster: must be positive");
            if (sp.shell_relative_halfwidth < 0.0 || sp.shell_relative_halfwidth >= 1.0)
                throw config_error("spectrum.shell_relative_halfwidth: must lie in [0, 1)");
            if (s.contains("variance_override"))
            {
                const auto &vo = s.at("variance_override");
                if (!vo.is_array())
                    throw config_error("spectrum.variance_override: expected an array");
                for (std::size_t i = 0; i < vo.size(); i++)
                {
                    const std::string p = "spectrum.variance_override[" + std::to_string(i) + "]";
                    require_keys(vo[i], p, {"l", "m", "variance"});
                    VarianceOverrideEntry e;
                    e.l = get_int(vo[i], p, "l", 0);
                    e.m = get_int(vo[i], p, "m", 0);
                    e.variance = get_number(vo[i], p, "variance", 0.0);
                    if (e.variance < 0.0)
                        throw config_error(p + ".variance: must be non-negative");
                    sp.variance_override.push_back(e);
                }
            }
            if (s.contains("trials"))
                sp.trials = get_int(s, "spectrum", "trials", 0);
        }
        if (root.contains("estimation"))
        {
            const auto &e = root.at("estimation");
            require_keys(e, "estimation",
                         {"bases", "compression_ratio", "snr_grid_db", "omp", "mrf", "trials"});
            auto &es = cfg.estimation;
            if (e.contains("bases"))
            {
                const auto &b = e.at("bases");
                if (!b.is_array() || b.empty())
                    throw config_error("estimation.bases: expected a non-empty array");
                es.bases.clear();
                for (const auto &v : b)
                {
                    const std::string name = v.is_string() ? v.get<std::string>() : "";
                    if (name != "fh" && name != "dft")
                        throw config_error("estimation.bases: entries must be 'fh' or 'dft'");
                    if (std::find(es.bases.begin(), es.bases.end(), name) != es.bases.end())
                        throw config_error("estimation.bases: duplicate entry '" + name + "'");
                    es.bases.push_back(name);
                }
            }
            es.compression_ratio = get_number(e, "estimation", "compression_ratio", es.compression_ratio);
            if (!(es.compression_ratio > 0.0) || es.compression_ratio > 1.0)
                throw config_error("estimation.compression_ratio: must lie in (0, 1]");
            if (e.contains("snr_grid_db"))
            {
                const auto &g = e.at("snr_grid_db");
                if (!g.is_array() || g.empty())
                    throw config_error("estimation.snr_grid_db: expected a non-empty array");
                es.snr_grid_db.clear();
                for (const auto &v : g)
                {
                    if (!v.is_number())
                        throw config_error("estimation.snr_grid_db: entries must be numbers");
                    es.snr_grid_db.push_back(v.get<double>());
                }
            }
            if (e.contains("omp"))
            {
                const auto &o = e.at("omp");
                require_keys(o, "estimation.omp", {"power_threshold", "max_atoms"});
                if (o.contains("power_threshold") && !(o.at("power_threshold").is_string() &&
                                                       o.at("power_threshold") == "auto"))
                {
                    if (!o.at("power_threshold").is_number())
                        throw config_error("estimation.omp.power_threshold: expected a number or 'auto'");
                    es.omp.power_threshold = o.at("power_threshold").get<double>();
                    if (!(*es.omp.power_threshold >= 0.0))
                        throw config_error("estimation.omp.power_threshold: must be non-negative");
                }
                if (o.contains("max_atoms") && !(o.at("max_atoms").is_string() && o.at("max_atoms") == "auto"))
                {
                    if (!o.at("max_atoms").is_number_integer())
                        throw config_error("estimation.omp.max_atoms: expected an integer or 'auto'");
                    es.omp.max_atoms = o.at("max_atoms").get<int>();
                    if (*es.omp.max_atoms < 1)
                        throw config_error("estimation.omp.max_atoms: must be positive");
                }
            }
            if (e.contains("mrf"))
            {
                const auto &m = e.at("mrf");
                require_keys(m, "estimation.mrf",
                             {"edge_coupling", "sparsity_bias", "damping", "max_turbo_iterations",
                              "convergence_tol", "prune_power_fraction"});
                es.mrf.edge_coupling = get_number(m, "estimation.mrf", "edge_coupling", es.mrf.edge_coupling);
                es.mrf.sparsity_bias = get_number(m, "estimation.mrf", "sparsity_bias", es.mrf.sparsity_bias);
                es.mrf.damping = get_number(m, "estimation.mrf", "damping", es.mrf.damping);
                es.mrf.max_turbo_iterations = static_cast<arma::uword>(
                    get_int(m, "estimation.mrf", "max_turbo_iterations",
                            static_cast<int>(es.mrf.max_turbo_iterations)));
                es.mrf.convergence_tol = get_number(m, "estimation.mrf", "convergence_tol", es.mrf.convergence_tol);
                es.mrf.prune_power_fraction =
                    get_number(m, "estimation.mrf", "prune_power_fraction", es.mrf.prune_power_fraction);
                if (es.mrf.edge_coupling < 0.0)
                    throw config_error("estimation.mrf.edge_coupling: must be non-negative");
                if (es.mrf.damping < 0.0 || es.mrf.damping >= 1.0)
                    throw config_error("estimation.mrf.damping: must lie in [0, 1)");
                if (!(es.mrf.convergence_tol > 0.0))
                    throw config_error("estimation.mrf.convergence_tol: must be positive");
                if (es.mrf.prune_power_fraction < 0.0 || es.mrf.prune_power_fraction >= 1.0)
                    throw config_error("estimation.mrf.prune_power_fraction: must lie in [0, 1)");
            }
            if (e.contains("trials"))
                es.trials = get_int(e, "estimation", "trials", 0);
        }
        if (root.contains("codebook"))
        {
            const auto &c = root.at("codebook");
            require_keys(c, "codebook",
                         {"clusters", "distance_min_m", "distance_max_m", "distance_points", "distances_m",
                          "csi_error_std", "snr_db", "evanescent_margin", "scatterers_per_cluster",
                          "shell_relative_halfwidth", "trials"});
            auto &cb = cfg.codebook;
            if (c.contains("clusters"))
                cb.clusters = parse_clusters(c.at("clusters"), "codebook.clusters");
            cb.distance_min_m = get_number(c, "codebook", "distance_min_m", cb.distance_min_m);
            cb.distance_max_m = get_number(c, "codebook", "distance_max_m", cb.distance_max_m);
            cb.distance_points = get_int(c, "codebook", "distance_points", cb.distance_points);
            if (c.contains("distances_m"))
            {
                const auto &d = c.at("distances_m");
                if (!d.is_array())
                    throw config_error("codebook.distances_m: expected an array");
                for (const auto &v : d)
                {
                    if (!v.is_number() || !(v.get<double>() > 0.0))
                        throw config_error("codebook.distances_m: entries must be positive numbers");
                    cb.distances_m.push_back(v.get<double>());
                }
            }
            cb.csi_error_std = get_number(c, "codebook", "csi_error_std", cb.csi_error_std);
            cb.snr_db = get_number(c, "codebook", "snr_db", cb.snr_db);
            cb.evanescent_margin = get_int(c, "codebook", "evanescent_margin", cb.evanescent_margin);
            cb.scatterers_per_cluster = get_int(c, "codebook", "scatterers_per_cluster", cb.scatterers_per_cluster);
            cb.shell_relative_halfwidth =
                get_number(c, "codebook", "shell_relative_halfwidth", cb.shell_relative_halfwidth);
            if (!(cb.distance_min_m > 0.0) || !(cb.distance_max_m >= cb.distance_min_m))
                throw config_error("codebook: distance range must be positive and ordered");
            if (cb.distance_points < 1)
                throw config_error("codebook.distance_points: must be positive");
            if (cb.csi_error_std < 0.0)
                throw config_error("codebook.csi_error_std: must be non-negative");
            if (cb.evanescent_margin < 0)
                throw config_error("codebook.evanescent_margin: must be non-negative");
            if (cb.scatterers_per_cluster < 1)
                throw config_error("codebook.scatterers_per_cluster: must be positive");
            if (cb.shell_relative_halfwidth < 0.0 || cb.shell_relative_halfwidth >= 1.0)
                throw config_error("codebook.shell_relative_halfwidth: must lie in [0, 1)");
            if (c.contains("trials"))
                cb.trials = get_int(c, "codebook", "trials", 0);
        }
        if (root.contains("trials"))
        {
            cfg.trials = get_int(root, "config", "trials", cfg.trials);
            if (cfg.trials < 1)
                throw config_error("trials: must be positive");
        }
        if (root.contains("base_seed"))
        {
            const auto &s = root.at("base_seed");
            if (!s.is_number_integer() && !s.is_number_unsigned())
                throw config_error("base_seed: expected an integer");
            cfg.base_seed = s.get<std::uint64_t>();
        }
        cfg.output_dir = get_string(root, "config", "output_dir", cfg.output_dir);

        for (const auto &opt : {cfg.spectrum.trials, cfg.estimation.trials, cfg.codebook.trials})
            if (opt && *opt < 1)
                throw config_error("per-experiment trials must be positive");
        return cfg;
    }

    std::string resolved_config_json(const ExperimentConfig &cfg)
    {
        json root;
        root["carrier"] = {{"frequency_hz", cfg.carrier_frequency_hz}};
        root["geometry"] = {{"n_x", cfg.n_x}, {"n_y", cfg.n_y}, {"spacing_wavelengths", cfg.spacing_wavelengths}};
        root["lattice"] = {{"evanescent_margin", cfg.evanescent_margin}};

        json sp;
        sp["clusters"] = clusters_to_json(cfg.clusters);
        sp["far_distance_rayleigh"] = cfg.spectrum.far_distance_rayleigh;
        sp["near_distance_rayleigh"] = cfg.spectrum.near_distance_rayleigh;
        sp["near_evanescent_margin"] = cfg.spectrum.near_evanescent_margin;
        sp["far_generator"] = cfg.spectrum.far_generator;
        sp["scatterers_per_cluster"] = cfg.spectrum.scatterers_per_cluster;
        sp["shell_relative_halfwidth"] = cfg.spectrum.shell_relative_halfwidth;
        json vo = json::array();
        for (const auto &e : cfg.spectrum.variance_override)
            vo.push_back({{"l", e.l}, {"m", e.m}, {"variance", e.variance}});
        sp["variance_override"] = vo;
        sp["trials"] = cfg.spectrum_trials();
        root["spectrum"] = sp;

        json est;
        est["bases"] = cfg.estimation.bases;
        est["compression_ratio"] = cfg.estimation.compression_ratio;
        est["snr_grid_db"] = cfg.estimation.snr_grid_db;
        est["omp"] = {{"power_threshold",
                       cfg.estimation.omp.power_threshold ? json(*cfg.estimation.omp.power_threshold) : json("auto")},
                      {"max_atoms",
                       cfg.estimation.omp.max_atoms ? json(*cfg.estimation.omp.max_atoms) : json("auto")}};
        est["mrf"] = {{"edge_coupling", cfg.estimation.mrf.edge_coupling},
                      {"sparsity_bias", cfg.estimation.mrf.sparsity_bias},
                      {"damping", cfg.estimation.mrf.damping},
                      {"max_turbo_iterations", static_cast<int>(cfg.estimation.mrf.max_turbo_iterations)},
                      {"convergence_tol", cfg.estimation.mrf.convergence_tol},
                      {"prune_power_fraction", cfg.estimation.mrf.prune_power_fraction}};
        est["trials"] = cfg.estimation_trials();
        root["estimation"] = est;

        json cb;
        cb["clusters"] = clusters_to_json(cfg.codebook.clusters);
        cb["distance_min_m"] = cfg.codebook.distance_min_m;
        cb["distance_max_m"] = cfg.codebook.distance_max_m;
        cb["distance_points"] = cfg.codebook.distance_points;
        cb["distances_m"] = cfg.codebook.distances_m;
        cb["csi_error_std"] = cfg.codebook.csi_error_std;
        cb["snr_db"] = cfg.codebook.snr_db;
        cb["evanescent_margin"] = cfg.codebook.evanescent_margin;
        cb["scatterers_per_cluster"] = cfg.codebook.scatterers_per_cluster;
        cb["shell_relative_halfwidth"] = cfg.codebook.shell_relative_halfwidth;
        cb["trials"] = cfg.codebook_trials();
        root["codebook"] = cb;

        root["trials"] = cfg.trials;
        root["base_seed"] = cfg.base_seed;
        root["output_dir"] = cfg.output_dir;
        return root.dump(2);
    }

    std::string apply_config_override(const std::string &json_text, const std::string &dotted_key,
                                      const std::string &value)
    {
        json root;
        const bool blank = json_text.find_first_not_of(" \t\r\n") == std::string::npos;
        if (blank)
            root = json::object();
        else
        {
            try
            {
                root = json::parse(json_text);
            }
            catch (const json::exception &e)
            {
                throw config_error(std::string("config is not valid JSON: ") + e.what());
            }
        }
        if (root.is_object() && root.contains("resolved_config"))
            root = root.at("resolved_config");

        if (dotted_key.empty())
            throw config_error("override key must not be empty");

        json parsed_value;
        try
        {
            parsed_value = json::parse(value);
        }
        catch (const json::exception &)
        {
            parsed_value = value; // fall back to a string literal
        }

        json *node = &root;
        std::size_t start = 0;
        for (;;)
        {
            const std::size_t dot = dotted_key.find('.', start);
            const std::string part = dotted_key.substr(start, dot == std::string::npos ? dot : dot - start);
            if (part.empty())
                throw config_error("override key has an empty path segment: " + dotted_key);
            if (dot == std::string::npos)
            {
                (*node)[part] = parsed_value;
                break;
            }
            if (!node->contains(part) || !(*node)[part].is_object())
                (*node)[part] = json::object();
            node = &(*node)[part];
            start = dot + 1;
        }
        return root.dump();
    }
}
