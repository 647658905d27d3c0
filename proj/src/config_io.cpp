// SPDX-License-Identifier: Apache-2.0
//
// starris: statistical-CSI phase design for STAR-RIS assisted links
// Copyright (C) 2026 The starris authors
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

#include "starris/config_io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <numbers>
#include <set>
#include <sstream>

namespace starris {

namespace {

namespace pt = boost::property_tree;

constexpr double kPi = std::numbers::pi;

double to_deg(double rad) { return rad * 180.0 / kPi; }
double to_rad(double deg) { return deg * kPi / 180.0; }
double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

const std::map<std::string, std::set<std::string>>& schema()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"scenario",
         {"bs_antennas", "ris_rows", "ris_cols", "carrier_hz", "bs_spacing_wavelengths", "ris_spacing_wavelengths",
          "phi_br_deg", "psi_br_deg", "theta_bs_deg", "rician_bk_db", "rician_br_db", "rician_rk_db",
          "fading_bk_db", "fading_br_db", "fading_rk_db", "noise_power_w", "noise_psd_dbm_hz", "bandwidth_hz",
          "phase_noise_concentration"}},
        {"users", {"mode", "phi_bk_deg", "phi_rk_deg", "psi_rk_deg"}},
        {"solver", {"tolerance", "max_iterations", "init"}},
        {"experiment", {"seed", "trials", "mc_trials", "gradient_points", "sweep_n", "output"}},
    };
    return keys;
}

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        items.push_back(trim(item));
    if (items.size() == 1 && items[0].empty())
        items.clear();
    return items;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text)
{
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof())
        throw ConfigError("cannot parse '" + text + "' for key " + key);
    return value;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree)
        : tree_(tree)
    {
    }

    template <typename T>
    void get(const std::string& section, const std::string& key, T& target) const
    {
        if (const auto raw = raw_value(section, key))
            target = parse_number<T>(section + "." + key, *raw);
    }

    std::optional<std::string> raw_value(const std::string& section, const std::string& key) const
    {
        const auto sec = tree_.get_child_optional(section);
        if (!sec)
            return std::nullopt;
        const auto value = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!value)
            return std::nullopt;
        return trim(*value);
    }

    std::optional<std::vector<double>> list(const std::string& section, const std::string& key) const
    {
        const auto raw = raw_value(section, key);
        if (!raw)
            return std::nullopt;
        std::vector<double> values;
        for (const std::string& item : split_list(*raw))
            values.push_back(parse_number<double>(section + "." + key, item));
        return values;
    }

private:
    const pt::ptree& tree_;
};

void check_schema(const pt::ptree& tree)
{
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end())
            throw ConfigError("unknown section [" + section + "]");
        if (!body.data().empty())
            throw ConfigError("key '" + section + "' outside of a section");
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key))
                throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
        }
    }
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& render)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += render(items[i]);
    }
    return out;
}

} // namespace

GridShape parse_grid(std::string_view text)
{
    const std::string t = trim(text);
    const auto x = t.find('x');
    if (x != std::string::npos) {
        const int rows = parse_number<int>("sweep_n", t.substr(0, x));
        const int cols = parse_number<int>("sweep_n", t.substr(x + 1));
        if (rows < 1 || cols < 1)
            throw ConfigError("grid '" + t + "' must have positive dimensions");
        return {rows, cols};
    }
    const int n = parse_number<int>("sweep_n", t);
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (n < 1 || side * side != n)
        throw ConfigError("sweep value " + t + " is not a perfect square; give it as ROWSxCOLS");
    return {side, side};
}

ExperimentConfig parse_config(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    check_schema(tree);
    const Reader r(tree);

    ExperimentConfig cfg;
    SystemConfig& s = cfg.scenario;

    r.get("scenario", "bs_antennas", s.bs_antennas);
    r.get("scenario", "ris_rows", s.ris_rows);
    r.get("scenario", "ris_cols", s.ris_cols);

    double carrier = kSpeedOfLight / s.wavelength;
    double bs_spacing = s.bs_spacing / s.wavelength;
    double ris_spacing = s.ris_spacing / s.wavelength;
    r.get("scenario", "carrier_hz", carrier);
    r.get("scenario", "bs_spacing_wavelengths", bs_spacing);
    r.get("scenario", "ris_spacing_wavelengths", ris_spacing);
    if (!(carrier > 0.0))
        throw ConfigError("scenario.carrier_hz must be positive");
    s.wavelength = kSpeedOfLight / carrier;
    s.bs_spacing = bs_spacing * s.wavelength;
    s.ris_spacing = ris_spacing * s.wavelength;

    auto angle = [&r](const char* key, double& target) {
        double deg = to_deg(target);
        r.get("scenario", key, deg);
        target = to_rad(deg);
    };
    angle("phi_br_deg", s.phi_br);
    angle("psi_br_deg", s.psi_br);
    angle("theta_bs_deg", s.theta_bs);

    auto decibel = [&r](const char* key, double& target) {
        double db = to_db(target);
        r.get("scenario", key, db);
        target = from_db(db);
    };
    decibel("rician_bk_db", s.beta_bk);
    decibel("rician_br_db", s.beta_br);
    decibel("rician_rk_db", s.beta_rk);
    decibel("fading_bk_db", s.alpha_bk);
    decibel("fading_br_db", s.alpha_br);
    decibel("fading_rk_db", s.alpha_rk);

    if (r.raw_value("scenario", "noise_power_w")) {
        if (r.raw_value("scenario", "noise_psd_dbm_hz") || r.raw_value("scenario", "bandwidth_hz"))
            throw ConfigError("give either scenario.noise_power_w or the PSD/bandwidth pair, not both");
        r.get("scenario", "noise_power_w", s.noise_power);
    } else {
        double psd = -174.0, bandwidth = 10e6;
        r.get("scenario", "noise_psd_dbm_hz", psd);
        r.get("scenario", "bandwidth_hz", bandwidth);
        s.noise_power = noise_power_watts(psd, bandwidth);
    }
    r.get("scenario", "phase_noise_concentration", s.phase_noise_concentration);

    if (tree.get_child_optional("users")) {
        const auto modes = r.raw_value("users", "mode");
        const auto phi_bk = r.list("users", "phi_bk_deg");
        const auto phi_rk = r.list("users", "phi_rk_deg");
        const auto psi_rk = r.list("users", "psi_rk_deg");
        if (!modes || !phi_bk || !phi_rk || !psi_rk)
            throw ConfigError("[users] needs mode, phi_bk_deg, phi_rk_deg and psi_rk_deg together");
        const std::vector<std::string> mode_list = split_list(*modes);
        const std::size_t k = mode_list.size();
        if (k == 0 || phi_bk->size() != k || phi_rk->size() != k || psi_rk->size() != k)
            throw ConfigError("[users] lists must be nonempty and of equal length");
        s.users.clear();
        for (std::size_t i = 0; i < k; ++i) {
            UserGeometry u;
            try {
                u.mode = parse_mode(mode_list[i]);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            u.phi_bk = to_rad((*phi_bk)[i]);
            u.phi_rk = to_rad((*phi_rk)[i]);
            u.psi_rk = to_rad((*psi_rk)[i]);
            s.users.push_back(u);
        }
    }

    r.get("solver", "tolerance", s.solver.tolerance);
    r.get("solver", "max_iterations", s.solver.max_iterations);
    if (const auto init = r.raw_value("solver", "init")) {
        if (*init == "ones")
            s.solver.random_init = false;
        else if (*init == "random")
            s.solver.random_init = true;
        else
            throw ConfigError("solver.init must be 'ones' or 'random'");
    }

    r.get("experiment", "seed", s.solver.seed);
    r.get("experiment", "trials", cfg.trials);
    r.get("experiment", "mc_trials", cfg.mc_trials);
    r.get("experiment", "gradient_points", cfg.gradient_points);
    if (const auto sweep = r.raw_value("experiment", "sweep_n")) {
        cfg.sweep.clear();
        for (const std::string& item : split_list(*sweep))
            cfg.sweep.push_back(parse_grid(item));
        if (cfg.sweep.empty())
            throw ConfigError("experiment.sweep_n must list at least one surface size");
    }
    if (const auto out = r.raw_value("experiment", "output"))
        cfg.output = *out;

    if (cfg.trials < 1)
        throw ConfigError("experiment.trials must be >= 1");
    try {
        validate(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_ini(const ExperimentConfig& cfg)
{
    const SystemConfig& s = cfg.scenario;
    std::string out;
    out += "[scenario]\n";
    out += fmt::format("bs_antennas = {}\n", s.bs_antennas);
    out += fmt::format("ris_rows = {}\n", s.ris_rows);
    out += fmt::format("ris_cols = {}\n", s.ris_cols);
    out += fmt::format("carrier_hz = {}\n", num(kSpeedOfLight / s.wavelength));
    out += fmt::format("bs_spacing_wavelengths = {}\n", num(s.bs_spacing / s.wavelength));
    out += fmt::format("ris_spacing_wavelengths = {}\n", num(s.ris_spacing / s.wavelength));
    out += fmt::format("phi_br_deg = {}\n", num(to_deg(s.phi_br)));
    out += fmt::format("psi_br_deg = {}\n", num(to_deg(s.psi_br)));
    out += fmt::format("theta_bs_deg = {}\n", num(to_deg(s.theta_bs)));
    out += fmt::format("rician_bk_db = {}\n", num(to_db(s.beta_bk)));
    out += fmt::format("rician_br_db = {}\n", num(to_db(s.beta_br)));
    out += fmt::format("rician_rk_db = {}\n", num(to_db(s.beta_rk)));
    out += fmt::format("fading_bk_db = {}\n", num(to_db(s.alpha_bk)));
    out += fmt::format("fading_br_db = {}\n", num(to_db(s.alpha_br)));
    out += fmt::format("fading_rk_db = {}\n", num(to_db(s.alpha_rk)));
    out += fmt::format("noise_power_w = {}\n", num(s.noise_power));
    out += fmt::format("phase_noise_concentration = {}\n", num(s.phase_noise_concentration));
    out += "\n[users]\n";
    out += "mode = " + join(s.users, [](const UserGeometry& u) { return std::string(to_string(u.mode)); }) + "\n";
    out += "phi_bk_deg = " + join(s.users, [](const UserGeometry& u) { return num(to_deg(u.phi_bk)); }) + "\n";
    out += "phi_rk_deg = " + join(s.users, [](const UserGeometry& u) { return num(to_deg(u.phi_rk)); }) + "\n";
    out += "psi_rk_deg = " + join(s.users, [](const UserGeometry& u) { return num(to_deg(u.psi_rk)); }) + "\n";
    out += "\n[solver]\n";
    out += fmt::format("tolerance = {}\n", num(s.solver.tolerance));
    out += fmt::format("max_iterations = {}\n", s.solver.max_iterations);
    out += fmt::format("init = {}\n", s.solver.random_init ? "random" : "ones");
    out += "\n[experiment]\n";
    out += fmt::format("seed = {}\n", s.solver.seed);
    out += fmt::format("trials = {}\n", cfg.trials);
    out += fmt::format("mc_trials = {}\n", cfg.mc_trials);
    out += fmt::format("gradient_points = {}\n", cfg.gradient_points);
    out += "sweep_n = " + join(cfg.sweep, [](const GridShape& g) { return fmt::format("{}x{}", g.rows, g.cols); }) +
           "\n";
    if (!cfg.output.empty())
        out += "output = " + cfg.output + "\n";
    return out;
}

std::string config_hash(const ExperimentConfig& config)
{
    ExperimentConfig canonical = config;
    canonical.output.clear(); // where results go does not change them
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_ini(canonical)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

} // namespace starris
