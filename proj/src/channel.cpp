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

#include "starris/channel.hpp"

#include "starris/circular.hpp"
#include "starris/phase_profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starris {

namespace {

constexpr double kPi = std::numbers::pi;

double deg(double degrees) { return degrees * kPi / 180.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void require(bool condition, const std::string& message)
{
    if (!condition)
        throw std::invalid_argument("invalid SystemConfig: " + message);
}

} // namespace

const char* to_string(Mode mode) { return mode == Mode::tr ? "tr" : "re"; }

Mode parse_mode(const std::string& text)
{
    if (text == "tr")
        return Mode::tr;
    if (text == "re")
        return Mode::re;
    throw std::invalid_argument("unknown mode '" + text + "' (expected tr or re)");
}

double SystemConfig::a_rk(int k) const { return std::sin(users.at(k).phi_rk) * std::sin(users.at(k).psi_rk); }
double SystemConfig::b_rk(int k) const { return std::cos(users.at(k).phi_rk) * std::sin(users.at(k).psi_rk); }
double SystemConfig::a_br() const { return std::sin(phi_br) * std::sin(psi_br); }
double SystemConfig::b_br() const { return std::cos(phi_br) * std::sin(psi_br); }

double noise_power_watts(double psd_dbm_per_hz, double bandwidth_hz)
{
    return std::pow(10.0, (psd_dbm_per_hz - 30.0) / 10.0) * bandwidth_hz;
}

SystemConfig default_config()
{
    SystemConfig c;
    c.bs_antennas = 8;
    c.ris_rows = 8;
    c.ris_cols = 8;
    c.wavelength = kSpeedOfLight / 28e9;
    c.bs_spacing = 0.5 * c.wavelength;
    c.ris_spacing = 0.5 * c.wavelength;
    c.phi_br = deg(30.0);
    c.psi_br = deg(55.0);
    c.theta_bs = deg(60.0);
    c.beta_bk = c.beta_br = c.beta_rk = db_to_linear(10.0);
    c.alpha_bk = c.alpha_br = c.alpha_rk = db_to_linear(-10.0);
    c.noise_power = noise_power_watts(-174.0, 10e6);
    c.phase_noise_concentration = 10.0;
    c.users = {
        {deg(-45.0), deg(-50.0), deg(35.0), Mode::tr},
        {deg(-15.0), deg(20.0), deg(60.0), Mode::re},
        {deg(20.0), deg(-25.0), deg(50.0), Mode::tr},
        {deg(50.0), deg(55.0), deg(40.0), Mode::re},
    };
    return c;
}

void validate(const SystemConfig& c)
{
    require(c.bs_antennas >= 1, "bs_antennas must be >= 1");
    require(c.ris_rows >= 1 && c.ris_cols >= 1, "surface grid must be at least 1 x 1");
    require(!c.users.empty(), "at least one user is required");
    require(c.wavelength > 0.0, "wavelength must be positive");
    require(c.bs_spacing > 0.0 && c.ris_spacing > 0.0, "spacings must be positive");
    for (double beta : {c.beta_bk, c.beta_br, c.beta_rk})
        require(beta >= 0.0 && std::isfinite(beta), "Rician factors must be finite and >= 0");
    for (double alpha : {c.alpha_bk, c.alpha_br, c.alpha_rk})
        require(alpha > 0.0 && std::isfinite(alpha), "large-scale gains must be positive");
    require(c.noise_power > 0.0, "noise power must be positive");
    require(c.phase_noise_concentration >= 0.0, "phase-noise concentration must be >= 0");
    require(c.solver.tolerance > 0.0, "solver tolerance must be positive");
    require(c.solver.max_iterations >= 0, "max_iterations must be >= 0");
}

cvec ula_steering(int antennas, double spacing, double wavelength, double phi)
{
    if (antennas < 1 || !(spacing > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument("ula_steering: need antennas >= 1, spacing > 0, wavelength > 0");
    const double step = 2.0 * kPi / wavelength * spacing * std::sin(phi);
    cvec v(antennas);
    for (int m = 0; m < antennas; ++m)
        v[m] = std::polar(1.0, step * m);
    return v;
}

cvec upa_steering(const SystemConfig& config, double a_cos, double b_cos)
{
    const double kd = 2.0 * kPi / config.wavelength * config.ris_spacing;
    const int n_elements = config.ris_elements();
    cvec v(n_elements);
    for (int n = 0; n < n_elements; ++n)
        v[n] = std::polar(1.0, kd * (config.element_x(n) * a_cos + config.element_z(n) * b_cos));
    return v;
}

cvec bs_array_response(const SystemConfig& config)
{
    const double step = 2.0 * kPi / config.wavelength * config.bs_spacing * std::cos(config.theta_bs);
    cvec v(config.bs_antennas);
    for (int m = 0; m < config.bs_antennas; ++m)
        v[m] = std::polar(1.0, step * m);
    return v;
}

cvec ris_array_response(const SystemConfig& config) { return upa_steering(config, config.a_br(), config.b_br()); }

cmat bs_ris_los(const SystemConfig& config)
{
    return bs_array_response(config) * ris_array_response(config).transpose();
}

std::complex<double> sample_complex_normal(Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

namespace {

cvec complex_normal_vector(Eigen::Index size, Rng& rng)
{
    cvec v(size);
    for (Eigen::Index i = 0; i < size; ++i)
        v[i] = sample_complex_normal(rng);
    return v;
}

// sqrt(alpha) (sqrt(beta/(beta+1)) los + sqrt(1/(beta+1)) nlos)
template <typename T>
T rician_mix(const T& los, const T& nlos, double alpha, double beta)
{
    const double los_weight = std::sqrt(alpha * beta / (beta + 1.0));
    const double nlos_weight = std::sqrt(alpha / (beta + 1.0));
    return los_weight * los + nlos_weight * nlos;
}

} // namespace

ChannelSet sample_rician(const SystemConfig& config, Rng& rng)
{
    validate(config);
    const int m_ant = config.bs_antennas;
    const int n_el = config.ris_elements();
    const int k_users = config.num_users();

    ChannelSet ch;
    ch.bs_ris_los = bs_ris_los(config);
    ch.bs_ris_nlos.resize(m_ant, n_el);
    // Column-major fill order keeps draws tied to (m, n) for a fixed seed.
    for (int n = 0; n < n_el; ++n)
        for (int m = 0; m < m_ant; ++m)
            ch.bs_ris_nlos(m, n) = sample_complex_normal(rng);
    ch.bs_ris = rician_mix<cmat>(ch.bs_ris_los, ch.bs_ris_nlos, config.alpha_br, config.beta_br);

    for (int k = 0; k < k_users; ++k) {
        const UserGeometry& u = config.users[k];
        ch.direct_los.push_back(ula_steering(m_ant, config.bs_spacing, config.wavelength, u.phi_bk));
        ch.direct_nlos.push_back(complex_normal_vector(m_ant, rng));
        ch.direct.push_back(rician_mix<cvec>(ch.direct_los[k], ch.direct_nlos[k], config.alpha_bk, config.beta_bk));

        ch.ris_user_los.push_back(upa_steering(config, config.a_rk(k), config.b_rk(k)));
        ch.ris_user_nlos.push_back(complex_normal_vector(n_el, rng));
        ch.ris_user.push_back(
            rician_mix<cvec>(ch.ris_user_los[k], ch.ris_user_nlos[k], config.alpha_rk, config.beta_rk));
    }
    return ch;
}

PhaseNoiseRealization sample_phase_noise(const SystemConfig& config, Rng& rng)
{
    const VonMisesParams params = make_von_mises(0.0, config.phase_noise_concentration);
    const int n_el = config.ris_elements();
    PhaseNoiseRealization noise;
    for (Mode mode : kModes) {
        noise[mode].resize(n_el);
        for (int n = 0; n < n_el; ++n)
            noise[mode][n] = sample_von_mises(params, rng);
    }
    return noise;
}

PhaseNoiseRealization zero_phase_noise(const SystemConfig& config)
{
    PhaseNoiseRealization noise;
    for (Mode mode : kModes)
        noise[mode] = Eigen::VectorXd::Zero(config.ris_elements());
    return noise;
}

PhaseProfile PhaseProfile::ones(int elements)
{
    PhaseProfile p;
    for (Mode mode : kModes)
        p[mode] = cvec::Ones(elements);
    return p;
}

PhaseProfile PhaseProfile::from_angles(const Eigen::VectorXd& tr, const Eigen::VectorXd& re)
{
    if (tr.size() != re.size())
        throw std::invalid_argument("PhaseProfile: tr and re profiles differ in length");
    PhaseProfile p;
    p[Mode::tr] = tr.unaryExpr([](double t) { return std::polar(1.0, t); });
    p[Mode::re] = re.unaryExpr([](double t) { return std::polar(1.0, t); });
    return p;
}

Eigen::VectorXd PhaseProfile::angles(Mode mode) const
{
    return (*this)[mode].unaryExpr([](const std::complex<double>& z) { return wrap_angle(std::arg(z)); });
}

cvec PhaseProfile::stacked() const
{
    cvec s(2 * elements());
    s << values[0], values[1];
    return s;
}

PhaseProfile PhaseProfile::unstack(const cvec& stacked)
{
    if (stacked.size() % 2 != 0)
        throw std::invalid_argument("PhaseProfile::unstack: odd length");
    const Eigen::Index n = stacked.size() / 2;
    PhaseProfile p;
    p.values[0] = stacked.head(n);
    p.values[1] = stacked.tail(n);
    return p;
}

} // namespace starris
