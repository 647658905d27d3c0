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

#include "starris/circular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starris {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this the power series is used, above it the Hankel expansion.
constexpr double kAsymptoticSwitch = 15.0;

void check_args(int order, double x)
{
    if (order != 0 && order != 1)
        throw std::domain_error("bessel_i: unsupported order " + std::to_string(order));
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i: argument must be nonnegative");
}

// sum_k (x/2)^(2k+order) / (k! (k+order)!)
double power_series(int order, double x)
{
    const double q = 0.25 * x * x;
    double term = order == 0 ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term <= 1e-17 * sum)
            break;
    }
    return sum;
}

// exp(-x) I_order(x) ~ 1/sqrt(2 pi x) * sum_k (-1)^k a_k(order) / x^k
double asymptotic_scaled(int order, double x)
{
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term))
            break; // series is past its smallest term
        term = next;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
            break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

} // namespace

VonMisesParams make_von_mises(double mean, double concentration)
{
    if (!(concentration >= 0.0) || !std::isfinite(concentration))
        throw std::domain_error("Von Mises concentration must be finite and nonnegative");
    if (!std::isfinite(mean))
        throw std::domain_error("Von Mises mean must be finite");
    return {wrap_angle(mean), concentration};
}

double wrap_angle(double angle)
{
    double r = std::remainder(angle, 2.0 * kPi); // [-pi, pi]
    if (r <= -kPi)
        r += 2.0 * kPi;
    return r;
}

double bessel_i(int order, double x)
{
    check_args(order, x);
    if (x < kAsymptoticSwitch)
        return power_series(order, x);
    // Split the exponential so that x close to 709 does not overflow early.
    const double half = std::exp(0.5 * x);
    return asymptotic_scaled(order, x) * half * half;
}

double bessel_i_scaled(int order, double x)
{
    check_args(order, x);
    if (x < kAsymptoticSwitch)
        return power_series(order, x) * std::exp(-x);
    return asymptotic_scaled(order, x);
}

double concentration_factor(double epsilon)
{
    if (!(epsilon >= 0.0))
        throw std::domain_error("concentration_factor: epsilon must be nonnegative");
    if (epsilon == 0.0)
        return 0.0;
    if (std::isinf(epsilon))
        return std::nextafter(1.0, 0.0);
    return bessel_i_scaled(1, epsilon) / bessel_i_scaled(0, epsilon);
}

double sample_von_mises(const VonMisesParams& params, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double kappa = params.concentration;
    if (kappa < 1e-8)
        return wrap_angle(kPi * (2.0 * unit(rng) - 1.0));

    if (kappa > 1e6) {
        // Wrapped-normal limit; the envelope constant below loses all precision here.
        std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(kappa));
        return wrap_angle(params.mean + normal(rng));
    }

    double s;
    if (kappa < 1e-5) {
        s = 1.0 / kappa + kappa;
    } else {
        const double r = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (r - std::sqrt(2.0 * r)) / (2.0 * kappa);
        s = (1.0 + rho * rho) / (2.0 * rho);
    }

    double w;
    for (;;) {
        const double z = std::cos(kPi * unit(rng));
        w = (1.0 + s * z) / (s + z);
        const double y = kappa * (s - w);
        const double v = unit(rng);
        if (y * (2.0 - y) - v >= 0.0 || std::log(y / v) + 1.0 - y >= 0.0)
            break;
    }
    double angle = std::acos(std::clamp(w, -1.0, 1.0));
    if (unit(rng) < 0.5)
        angle = -angle;
    return wrap_angle(params.mean + angle);
}

} // namespace starris
