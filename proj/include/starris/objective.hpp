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
#include "starris/statcsi.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace starris {

/// Precomputed, immutable data for the interference cost
///
///   f(theta) = sum_k | E_direct(k) + E_cascaded(k, theta^{mode_k}) |^2.
///
/// Both cosine sums inside the cascaded array gain are evaluated through
/// phasor sums, which makes one cost or gradient evaluation O(K (M + N)):
///
///   sum_{q<n} cos(theta_n - theta_q + phase_kn - phase_kq) = (|S_k|^2 - N) / 2,
///       S_k = sum_n p_n exp(j phase_kn)
///   sum_{m,n} cos(theta_n + ka((x_n - m) A_br + z_n B_br)) = Re(bs_sum * T),
///       T = sum_n p_n exp(j ka (x_n A_br + z_n B_br)), bs_sum = sum_m exp(-j ka m A_br)
class ObjectiveContext {
public:
    explicit ObjectiveContext(SystemConfig config);

    const SystemConfig& config() const { return config_; }
    int elements() const { return elements_; }
    double chi() const { return chi_; }

    double cost(const PhaseProfile& p) const;

    /// d f / d theta, [tr; re] stacked, length 2N.
    Eigen::VectorXd phase_gradient(const PhaseProfile& p) const;

    /// Ambient gradient on C^{2N}: entry n is j p_n (d f / d theta_n). It is
    /// tangent at p, and Re<G, xi> is the directional derivative along xi.
    cvec euclidean_gradient(const PhaseProfile& p) const;

    /// Cascaded array gain for user k under its own mode, same value as
    /// lambda_mn() in statcsi.
    double array_gain(const PhaseProfile& p, int k) const;

    /// Expected effective entry of user k, same value as expected_effective_entry().
    std::complex<double> effective_entry(const PhaseProfile& p, int k) const;

private:
    struct User {
        std::complex<double> direct; // expected direct term
        double cascade_gain;         // sqrt(alpha_br alpha_rk) / sqrt((beta_br+1)(beta_rk+1))
        double los_weight;           // sqrt(beta_br beta_rk)
        double offset;               // sqrt(beta_br) + sqrt(beta_rk) + 1
        cvec phasor;                 // exp(j kd (x_n A_rk + z_n B_rk))
        Mode mode;
    };

    struct ModeSums {
        double denominator;
        std::complex<double> bs_weighted; // bs_sum, kept for the derivative
    };

    ModeSums mode_sums(const cvec& p) const;
    void check(const PhaseProfile& p) const;

    SystemConfig config_;
    int elements_;
    double chi_;
    double mn_;
    std::complex<double> bs_sum_;
    cvec ris_phasor_;
    std::vector<User> users_;
};

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h. h must lie in [1e-8, 1e-4].
Eigen::VectorXd central_difference(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h);

/// Central-difference gradient of the cost with respect to the phase angles,
/// [tr; re] stacked.
Eigen::VectorXd finite_difference_gradient(const ObjectiveContext& ctx, const PhaseProfile& p, double h);

} // namespace starris
