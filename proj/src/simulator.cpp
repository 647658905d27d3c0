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

#include "starris/simulator.hpp"

#include "starris/circular.hpp"
#include "starris/statcsi.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace starris {

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x)
    {
        sum += x;
        sum_sq += x * x;
    }
    double mean(std::size_t n) const { return sum / static_cast<double>(n); }
    double se(std::size_t n) const
    {
        if (n < 2)
            return 0.0;
        const double m = mean(n);
        const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

SchemeSummary run_trials(const SystemConfig& config, std::size_t trials, std::uint64_t seed,
                         const std::function<PhaseProfile(Rng&)>& profile_for_trial, const Precoder* fixed_precoder)
{
    if (trials < 1)
        throw std::invalid_argument("evaluate_scheme: trials must be >= 1");
    const int k_users = config.num_users();
    Accumulator rate, interference;
    std::vector<Accumulator> per_user(k_users);

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_stream(seed, t);
        const ChannelSet channels = sample_rician(config, rng);
        const PhaseNoiseRealization noise = sample_phase_noise(config, rng);
        const PhaseProfile theta = profile_for_trial(rng);
        const Precoder precoder = fixed_precoder ? *fixed_precoder : mrt_precoder(config, theta);

        const EffectiveChannel g = effective_matrix(config, channels, theta, noise, precoder);
        const std::vector<double> gammas = sinr(g, config.noise_power);
        rate.add(achievable_rate(gammas));
        interference.add(interference_power(g));
        for (int k = 0; k < k_users; ++k)
            per_user[k].add(gammas[k]);
    }

    SchemeSummary s;
    s.trials = trials;
    s.mean_rate = rate.mean(trials);
    s.rate_se = rate.se(trials);
    s.mean_interference = interference.mean(trials);
    s.interference_se = interference.se(trials);
    for (const Accumulator& a : per_user) {
        s.mean_sinr.push_back(a.mean(trials));
        s.sinr_se.push_back(a.se(trials));
    }
    return s;
}

} // namespace

cvec composite_row(const ChannelSet& channels, const PhaseProfile& theta, const PhaseNoiseRealization& noise, int k,
                   Mode mode)
{
    const cvec& h_bk = channels.direct.at(k);
    const cvec& h_rk = channels.ris_user.at(k);
    const cvec& p = theta[mode];
    const Eigen::VectorXd& dtheta = noise[mode];
    if (h_rk.size() != p.size() || p.size() != dtheta.size() || channels.bs_ris.cols() != p.size() ||
        channels.bs_ris.rows() != h_bk.size())
        throw std::invalid_argument("composite_row: dimension mismatch");

    cvec weighted(p.size());
    for (Eigen::Index n = 0; n < p.size(); ++n)
        weighted[n] = std::conj(h_rk[n]) * p[n] * std::polar(1.0, dtheta[n]);
    // (weighted^T H_br^H)^T = conj(H_br) weighted
    return h_bk.conjugate() + channels.bs_ris.conjugate() * weighted;
}

EffectiveChannel effective_matrix(const SystemConfig& config, const ChannelSet& channels, const PhaseProfile& theta,
                                  const PhaseNoiseRealization& noise, const Precoder& precoder)
{
    const int k_users = config.num_users();
    if (precoder.columns.cols() != k_users || precoder.columns.rows() != config.bs_antennas)
        throw std::invalid_argument("effective_matrix: precoder shape does not match the scenario");
    EffectiveChannel g;
    g.entries.resize(k_users, k_users);
    for (int k = 0; k < k_users; ++k) {
        const cvec row = composite_row(channels, theta, noise, k, config.users[k].mode);
        g.entries.row(k) = row.transpose() * precoder.columns;
    }
    return g;
}

cvec expected_row(const SystemConfig& config, const PhaseProfile& theta, int k)
{
    const UserGeometry& u = config.users.at(k);
    const cvec los = ula_steering(config.bs_antennas, config.bs_spacing, config.wavelength, u.phi_bk);
    const double direct_weight = std::sqrt(config.alpha_bk * config.beta_bk / (config.beta_bk + 1.0));
    const std::complex<double> cascade = expected_cascaded(config, theta, k, u.mode);
    return direct_weight * los.conjugate() +
           (cascade / static_cast<double>(config.bs_antennas)) * bs_array_response(config).conjugate();
}

Precoder mrt_precoder(const SystemConfig& config, const PhaseProfile& theta)
{
    Precoder w;
    w.columns.resize(config.bs_antennas, config.num_users());
    for (int k = 0; k < config.num_users(); ++k) {
        const cvec row = expected_row(config, theta, k);
        const double norm = row.norm();
        if (!(norm > 0.0))
            throw std::domain_error("mrt_precoder: expected channel of user " + std::to_string(k) + " is zero");
        w.columns.col(k) = row.conjugate() / norm;
    }
    return w;
}

std::vector<double> sinr(const EffectiveChannel& g, double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::invalid_argument("sinr: noise power must be positive");
    const Eigen::Index k_users = g.entries.rows();
    std::vector<double> gammas(k_users);
    for (Eigen::Index k = 0; k < k_users; ++k) {
        double leak = 0.0;
        for (Eigen::Index j = 0; j < k_users; ++j)
            if (j != k)
                leak += std::norm(g.entries(k, j));
        gammas[k] = std::norm(g.entries(k, k)) / (leak + noise_power);
    }
    return gammas;
}

double achievable_rate(const std::vector<double>& gammas)
{
    double rate = 0.0;
    for (double gamma : gammas) {
        if (gamma < 0.0)
            throw std::invalid_argument("achievable_rate: negative SINR");
        rate += std::log2(1.0 + gamma);
    }
    return rate;
}

double interference_power(const EffectiveChannel& g)
{
    return g.entries.cwiseAbs2().sum() - g.entries.diagonal().cwiseAbs2().sum();
}

PhaseProfile random_phase_baseline(const SystemConfig& config, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n_el = config.ris_elements();
    Eigen::VectorXd tr(n_el), re(n_el);
    for (int n = 0; n < n_el; ++n)
        tr[n] = wrap_angle(std::numbers::pi * (2.0 * unit(rng) - 1.0));
    for (int n = 0; n < n_el; ++n)
        re[n] = wrap_angle(std::numbers::pi * (2.0 * unit(rng) - 1.0));
    return PhaseProfile::from_angles(tr, re);
}

SchemeSummary evaluate_scheme(const SystemConfig& config, const PhaseProfile& theta, std::size_t trials,
                              std::uint64_t seed)
{
    const Precoder precoder = mrt_precoder(config, theta);
    return run_trials(
        config, trials, seed, [&theta](Rng&) { return theta; }, &precoder);
}

SchemeSummary evaluate_random_baseline(const SystemConfig& config, std::size_t trials, std::uint64_t seed)
{
    return run_trials(
        config, trials, seed, [&config](Rng& rng) { return random_phase_baseline(config, rng); }, nullptr);
}

} // namespace starris
