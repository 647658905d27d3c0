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

#include <cstdint>
#include <vector>

namespace starris {

/// G_eff(k, j): coupling of stream j into user k.
struct EffectiveChannel {
    cmat entries;
};

/// Unit-norm precoding vectors, one column per user.
struct Precoder {
    cmat columns;
};

/// g_k^H = h_bk^H + h_rk^H diag(p) diag(exp(j dtheta)) H_br^H under user k's
/// mode, returned as a length-M vector holding the row.
cvec composite_row(const ChannelSet& channels, const PhaseProfile& theta, const PhaseNoiseRealization& noise, int k,
                   Mode mode);

/// G_eff(k, j) = g_k^H w_j, with each user's row built under its own mode.
EffectiveChannel effective_matrix(const SystemConfig& config, const ChannelSet& channels, const PhaseProfile& theta,
                                  const PhaseNoiseRealization& noise, const Precoder& precoder);

/// Expected composite row from statistical CSI:
///   sqrt(alpha_bk beta_bk / (beta_bk + 1)) conj(gbar_bk) + E_cascaded(k) / M * conj(bs_response)
cvec expected_row(const SystemConfig& config, const PhaseProfile& theta, int k);

/// Statistical MRT: w_k = conj(expected_row(k)) / ||expected_row(k)||.
/// Throws std::domain_error for a zero expected row.
Precoder mrt_precoder(const SystemConfig& config, const PhaseProfile& theta);

/// gamma_k = |G(k,k)|^2 / (sum_{j != k} |G(k,j)|^2 + sigma^2)
std::vector<double> sinr(const EffectiveChannel& g, double noise_power);

/// sum_k log2(1 + gamma_k) in bit/s/Hz.
double achievable_rate(const std::vector<double>& gammas);

/// sum_k sum_{j != k} |G(k,j)|^2
double interference_power(const EffectiveChannel& g);

/// Independent uniform phases on (-pi, pi] for every element and mode.
PhaseProfile random_phase_baseline(const SystemConfig& config, Rng& rng);

struct SchemeSummary {
    std::size_t trials = 0;
    double mean_rate = 0.0;
    double rate_se = 0.0;
    double mean_interference = 0.0;
    double interference_se = 0.0;
    std::vector<double> mean_sinr;
    std::vector<double> sinr_se;
};

/// Monte Carlo average over channel and phase-noise draws. Trial t draws from
/// make_stream(seed, t), so two schemes evaluated with the same seed see the
/// same channels.
SchemeSummary evaluate_scheme(const SystemConfig& config, const PhaseProfile& theta, std::size_t trials,
                              std::uint64_t seed);

/// Random-phase baseline averaged over trials: each trial draws its own
/// uniform profile, after the same channel draws evaluate_scheme uses for
/// that seed and trial.
SchemeSummary evaluate_random_baseline(const SystemConfig& config, std::size_t trials, std::uint64_t seed);

} // namespace starris
