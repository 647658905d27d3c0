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

#pragma once

#include "starris/channel.hpp"
#include "starris/phase_profile.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace starris {

/// Raised when the BS-surface cosine sum in the denominator of the cascaded
/// array gain is (numerically) zero.
class DegenerateDenominator : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |denominator| below this is rejected.
constexpr double kDenominatorFloor = 1e-9;

/// Closed-form ingredients of the expected effective channel.
struct ClosedFormTerms {
    std::vector<double> lambda_m;               ///< per user
    std::vector<std::complex<double>> xi_m;     ///< per user
    std::vector<std::array<double, 2>> lambda_mn; ///< per user, indexed by Mode
    double chi = 0.0;
};

/// sum_{m=0}^{M-1} cos(2 pi / lambda * a * m * sin(phi_bk)).
double lambda_m(const SystemConfig& config, int k);

/// Expected NLoS sum of the direct link: zero.
std::complex<double> xi_m(const SystemConfig& config, int k);

/// Realized NLoS sum sum_m conj(g~_bk[m]) of one channel draw.
std::complex<double> xi_m(const SystemConfig& config, const ChannelSet& channels, int k);

/// Cascaded array gain under phase noise:
///
///   MN - 2 chi * sum_{q<n} cos(theta_n - theta_q + kd((x_n-x_q) A_rk + (z_n-z_q) B_rk))
///              / sum_{m,n} cos(theta_n + ka((x_n-x_m) A_br + (z_n-z_m) B_br))
///
/// evaluated by literal summation. BS antennas sit at (x_m, z_m) = (m, 0)
/// and carry no phase shift. O(N^2 + MN); the objective uses an O(M + N)
/// factorization of the same sums.
double lambda_mn(const SystemConfig& config, const PhaseProfile& theta, int k, Mode mode);

/// (sqrt(alpha_bk) sqrt(beta_bk) Lambda_m + xi_m) / sqrt(beta_bk + 1).
std::complex<double> expected_direct(const SystemConfig& config, int k);

/// sqrt(alpha_br alpha_rk) (sqrt(beta_br beta_rk) Lambda_mn + sqrt(beta_br) + sqrt(beta_rk) + 1)
///   / sqrt((beta_br + 1)(beta_rk + 1)).
std::complex<double> expected_cascaded(const SystemConfig& config, const PhaseProfile& theta, int k, Mode mode);

/// expected_direct + expected_cascaded under user k's own mode.
std::complex<double> expected_effective_entry(const SystemConfig& config, const PhaseProfile& theta, int k);

ClosedFormTerms closed_form_terms(const SystemConfig& config, const PhaseProfile& theta);

/// Realized counterpart of the closed form for one draw: the direct scalar
/// h_bk^H 1_M and the cascaded scalar h_rk^H Theta Phi H_br^H 1_M.
struct RealizedEntry {
    std::complex<double> direct;
    std::complex<double> cascaded;
    std::complex<double> total() const { return direct + cascaded; }
};

RealizedEntry realized_entry(const ChannelSet& channels, const PhaseProfile& theta,
                             const PhaseNoiseRealization& noise, int k, Mode mode);

struct MonteCarloEstimate {
    std::complex<double> mean;
    double se_real = 0.0;
    double se_imag = 0.0;
    std::complex<double> direct_mean;
    std::complex<double> cascaded_mean;
    std::size_t trials = 0;
};

/// Empirical mean and componentwise standard error of realized_entry over
/// independent channel and phase-noise draws. Trial t uses
/// make_stream(seed, t), so the estimate does not depend on evaluation order.
MonteCarloEstimate monte_carlo_effective_entry(const SystemConfig& config, const PhaseProfile& theta, int k,
                                               std::size_t trials, std::uint64_t seed);

} // namespace starris
