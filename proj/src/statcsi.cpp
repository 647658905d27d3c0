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

#include "starris/statcsi.hpp"

#include "starris/circular.hpp"

#include <cmath>
#include <numbers>

namespace starris {

namespace {

constexpr double kPi = std::numbers::pi;

void check_user(const SystemConfig& config, int k)
{
    if (k < 0 || k >= config.num_users())
        throw std::out_of_range("user index " + std::to_string(k) + " out of range");
}

// Running mean and variance (Welford).
struct Moments {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;

    void add(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }
    double standard_error() const
    {
        if (count < 2)
            return 0.0;
        return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
    }
};

} // namespace

double lambda_m(const SystemConfig& config, int k)
{
    check_user(config, k);
    const double step = 2.0 * kPi / config.wavelength * config.bs_spacing * std::sin(config.users[k].phi_bk);
    double sum = 0.0;
    for (int m = 0; m < config.bs_antennas; ++m)
        sum += std::cos(step * m);
    return sum;
}

std::complex<double> xi_m(const SystemConfig& config, int k)
{
    check_user(config, k);
    return {0.0, 0.0};
}

std::complex<double> xi_m(const SystemConfig& config, const ChannelSet& channels, int k)
{
    check_user(config, k);
    return channels.direct_nlos.at(k).conjugate().sum();
}

double lambda_mn(const SystemConfig& config, const PhaseProfile& theta, int k, Mode mode)
{
    check_user(config, k);
    const int n_el = config.ris_elements();
    if (theta[mode].size() != n_el)
        throw std::invalid_argument("lambda_mn: phase profile length does not match the surface");

    const double chi = concentration_factor(config.phase_noise_concentration);
    const double mn = static_cast<double>(config.bs_antennas) * n_el;
    if (chi == 0.0)
        return mn;

    const Eigen::VectorXd angles = theta.angles(mode);
    const double kd = 2.0 * kPi / config.wavelength * config.ris_spacing;
    const double ka = 2.0 * kPi / config.wavelength * config.bs_spacing;
    const double a_rk = config.a_rk(k), b_rk = config.b_rk(k);
    const double a_br = config.a_br(), b_br = config.b_br();

    double pair_sum = 0.0;
    for (int n = 0; n < n_el; ++n) {
        for (int q = 0; q < n; ++q) {
            const double dx = config.element_x(n) - config.element_x(q);
            const double dz = config.element_z(n) - config.element_z(q);
            pair_sum += std::cos(angles[n] - angles[q] + kd * (dx * a_rk + dz * b_rk));
        }
    }

    double denominator = 0.0;
    for (int m = 0; m < config.bs_antennas; ++m) {
        for (int n = 0; n < n_el; ++n) {
            const double dx = config.element_x(n) - m;
            const double dz = config.element_z(n);
            denominator += std::cos(angles[n] + ka * (dx * a_br + dz * b_br));
        }
    }
    if (std::abs(denominator) < kDenominatorFloor)
        throw DegenerateDenominator("lambda_mn: BS-surface cosine sum vanishes");

    return mn - 2.0 * chi * pair_sum / denominator;
}

std::complex<double> expected_direct(const SystemConfig& config, int k)
{
    const double beta = config.beta_bk;
    return (std::sqrt(config.alpha_bk) * std::sqrt(beta) * lambda_m(config, k) + xi_m(config, k)) /
           std::sqrt(beta + 1.0);
}

std::complex<double> expected_cascaded(const SystemConfig& config, const PhaseProfile& theta, int k, Mode mode)
{
    const double sb_br = std::sqrt(config.beta_br), sb_rk = std::sqrt(config.beta_rk);
    const double gain = std::sqrt(config.alpha_br) * std::sqrt(config.alpha_rk);
    const double norm = std::sqrt((config.beta_br + 1.0) * (config.beta_rk + 1.0));
    return gain * (sb_br * sb_rk * lambda_mn(config, theta, k, mode) + sb_br + sb_rk + 1.0) / norm;
}

std::complex<double> expected_effective_entry(const SystemConfig& config, const PhaseProfile& theta, int k)
{
    check_user(config, k);
    return expected_direct(config, k) + expected_cascaded(config, theta, k, config.users[k].mode);
}

ClosedFormTerms closed_form_terms(const SystemConfig& config, const PhaseProfile& theta)
{
    ClosedFormTerms terms;
    terms.chi = concentration_factor(config.phase_noise_concentration);
    for (int k = 0; k < config.num_users(); ++k) {
        terms.lambda_m.push_back(lambda_m(config, k));
        terms.xi_m.push_back(xi_m(config, k));
        terms.lambda_mn.push_back({lambda_mn(config, theta, k, Mode::tr), lambda_mn(config, theta, k, Mode::re)});
    }
    return terms;
}

RealizedEntry realized_entry(const ChannelSet& channels, const PhaseProfile& theta,
                             const PhaseNoiseRealization& noise, int k, Mode mode)
{
    const cvec& h_rk = channels.ris_user.at(k);
    const cvec& p = theta[mode];
    const Eigen::VectorXd& dtheta = noise[mode];
    // h_rk^H Theta Phi as a length-N row, kept as a column vector.
    cvec weighted(h_rk.size());
    for (Eigen::Index n = 0; n < h_rk.size(); ++n)
        weighted[n] = std::conj(h_rk[n]) * p[n] * std::polar(1.0, dtheta[n]);

    RealizedEntry e;
    e.direct = channels.direct.at(k).conjugate().sum();
    // (weighted^T H_br^H) 1_M = sum_n weighted_n * sum_m conj(H_br(m, n))
    const cvec column_sums = channels.bs_ris.conjugate().colwise().sum().transpose();
    e.cascaded = weighted.cwiseProduct(column_sums).sum();
    return e;
}

MonteCarloEstimate monte_carlo_effective_entry(const SystemConfig& config, const PhaseProfile& theta, int k,
                                               std::size_t trials, std::uint64_t seed)
{
    check_user(config, k);
    if (trials < 100)
        throw std::invalid_argument("monte_carlo_effective_entry: need at least 100 trials");
    const Mode mode = config.users[k].mode;

    Moments re, im;
    std::complex<double> direct_sum = 0.0, cascaded_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_stream(seed, t);
        const ChannelSet channels = sample_rician(config, rng);
        const PhaseNoiseRealization noise = sample_phase_noise(config, rng);
        const RealizedEntry e = realized_entry(channels, theta, noise, k, mode);
        re.add(e.total().real());
        im.add(e.total().imag());
        direct_sum += e.direct;
        cascaded_sum += e.cascaded;
    }

    MonteCarloEstimate est;
    est.trials = trials;
    est.mean = {re.mean, im.mean};
    est.se_real = re.standard_error();
    est.se_imag = im.standard_error();
    est.direct_mean = direct_sum / static_cast<double>(trials);
    est.cascaded_mean = cascaded_sum / static_cast<double>(trials);
    return est;
}

} // namespace starris
