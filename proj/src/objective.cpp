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

#include "starris/objective.hpp"

#include "starris/circular.hpp"

#include <cmath>
#include <numbers>

namespace starris {

namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kJ{0.0, 1.0};

} // namespace

ObjectiveContext::ObjectiveContext(SystemConfig config)
    : config_(std::move(config))
{
    validate(config_);
    elements_ = config_.ris_elements();
    chi_ = concentration_factor(config_.phase_noise_concentration);
    mn_ = static_cast<double>(config_.bs_antennas) * elements_;

    const double ka = 2.0 * kPi / config_.wavelength * config_.bs_spacing;
    const double a_br = config_.a_br(), b_br = config_.b_br();
    bs_sum_ = 0.0;
    for (int m = 0; m < config_.bs_antennas; ++m)
        bs_sum_ += std::polar(1.0, -ka * m * a_br);
    ris_phasor_.resize(elements_);
    for (int n = 0; n < elements_; ++n)
        ris_phasor_[n] = std::polar(1.0, ka * (config_.element_x(n) * a_br + config_.element_z(n) * b_br));

    const double sb_br = std::sqrt(config_.beta_br), sb_rk = std::sqrt(config_.beta_rk);
    for (int k = 0; k < config_.num_users(); ++k) {
        User u;
        u.direct = expected_direct(config_, k);
        u.cascade_gain = std::sqrt(config_.alpha_br) * std::sqrt(config_.alpha_rk) /
                         std::sqrt((config_.beta_br + 1.0) * (config_.beta_rk + 1.0));
        u.los_weight = sb_br * sb_rk;
        u.offset = sb_br + sb_rk + 1.0;
        u.phasor = upa_steering(config_, config_.a_rk(k), config_.b_rk(k));
        u.mode = config_.users[k].mode;
        users_.push_back(std::move(u));
    }
}

void ObjectiveContext::check(const PhaseProfile& p) const
{
    if (p[Mode::tr].size() != elements_ || p[Mode::re].size() != elements_)
        throw std::invalid_argument("phase profile length does not match the surface");
}

ObjectiveContext::ModeSums ObjectiveContext::mode_sums(const cvec& p) const
{
    const std::complex<double> t = p.cwiseProduct(ris_phasor_).sum();
    const double denominator = (bs_sum_ * t).real();
    if (std::abs(denominator) < kDenominatorFloor)
        throw DegenerateDenominator("BS-surface cosine sum vanishes");
    return {denominator, bs_sum_};
}

double ObjectiveContext::array_gain(const PhaseProfile& p, int k) const
{
    check(p);
    if (chi_ == 0.0)
        return mn_;
    const User& u = users_.at(k);
    const cvec& pm = p[u.mode];
    const ModeSums sums = mode_sums(pm);
    const double pair_sum = 0.5 * (std::norm(pm.cwiseProduct(u.phasor).sum()) - elements_);
    return mn_ - 2.0 * chi_ * pair_sum / sums.denominator;
}

std::complex<double> ObjectiveContext::effective_entry(const PhaseProfile& p, int k) const
{
    const User& u = users_.at(k);
    return u.direct + u.cascade_gain * (u.los_weight * array_gain(p, k) + u.offset);
}

double ObjectiveContext::cost(const PhaseProfile& p) const
{
    double total = 0.0;
    for (int k = 0; k < static_cast<int>(users_.size()); ++k)
        total += std::norm(effective_entry(p, k));
    return total;
}

Eigen::VectorXd ObjectiveContext::phase_gradient(const PhaseProfile& p) const
{
    check(p);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * elements_);
    if (chi_ == 0.0)
        return grad;

    for (Mode mode : kModes) {
        const cvec& pm = p[mode];
        bool any_user = false;
        for (const User& u : users_)
            any_user = any_user || u.mode == mode;
        if (!any_user)
            continue;

        const ModeSums sums = mode_sums(pm);
        const double den = sums.denominator;
        // d den / d theta_n = Re(bs_sum * j p_n w_n)
        const Eigen::VectorXd d_den = (kJ * sums.bs_weighted * pm.cwiseProduct(ris_phasor_)).real();
        auto block = grad.segment(static_cast<int>(mode) * elements_, elements_);

        for (int k = 0; k < static_cast<int>(users_.size()); ++k) {
            const User& u = users_[k];
            if (u.mode != mode)
                continue;
            const cvec c = pm.cwiseProduct(u.phasor);
            const std::complex<double> s = c.sum();
            const double pair_sum = 0.5 * (std::norm(s) - elements_);
            const double gain = mn_ - 2.0 * chi_ * pair_sum / den;
            const std::complex<double> entry = u.direct + u.cascade_gain * (u.los_weight * gain + u.offset);

            // d pair_sum / d theta_n = Re(conj(S) j c_n)
            const Eigen::VectorXd d_pair = (kJ * std::conj(s) * c).real();
            // quotient rule on pair_sum / den
            const Eigen::VectorXd d_gain = -2.0 * chi_ * (d_pair * den - pair_sum * d_den) / (den * den);
            // d|e|^2 = 2 Re(conj(e) de), de = cascade_gain * los_weight * d_gain (real)
            block += 2.0 * entry.real() * u.cascade_gain * u.los_weight * d_gain;
        }
    }
    return grad;
}

cvec ObjectiveContext::euclidean_gradient(const PhaseProfile& p) const
{
    const Eigen::VectorXd g = phase_gradient(p);
    const cvec stacked = p.stacked();
    return kJ * stacked.cwiseProduct(g.cast<std::complex<double>>());
}

Eigen::VectorXd central_difference(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h)
{
    if (!(h >= 1e-8 && h <= 1e-4))
        throw std::invalid_argument("central_difference: step must lie in [1e-8, 1e-4]");
    Eigen::VectorXd grad(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = f(probe);
        probe[i] = x[i] - h;
        const double down = f(probe);
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

Eigen::VectorXd finite_difference_gradient(const ObjectiveContext& ctx, const PhaseProfile& p, double h)
{
    const int n = ctx.elements();
    Eigen::VectorXd angles(2 * n);
    angles << p.angles(Mode::tr), p.angles(Mode::re);
    auto f = [&ctx, n](const Eigen::VectorXd& a) {
        return ctx.cost(PhaseProfile::from_angles(a.head(n), a.tail(n)));
    };
    return central_difference(f, angles, h);
}

} // namespace starris
