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

#include "starris/random.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace starris {

using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;

/// Transmission ("tr") or reflection ("re") side of the surface.
enum class Mode { tr = 0, re = 1 };

constexpr std::array<Mode, 2> kModes{Mode::tr, Mode::re};

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct UserGeometry {
    double phi_bk = 0.0; ///< BS departure angle towards the user [rad]
    double phi_rk = 0.0; ///< surface azimuth towards the user [rad]
    double psi_rk = 0.0; ///< surface elevation towards the user [rad]
    Mode mode = Mode::tr;
};

struct SolverSettings {
    double tolerance = 1e-3;
    int max_iterations = 200;
    std::uint64_t seed = 1;
    bool random_init = false; ///< all-ones start unless set
};

/// Full scenario description. Angles are radians, gains and Rician factors
/// are linear, lengths are meters.
struct SystemConfig {
    int bs_antennas = 8; ///< M
    int ris_rows = 8;    ///< N_x
    int ris_cols = 8;    ///< N_z
    double wavelength = 0.0;
    double bs_spacing = 0.0;  ///< a
    double ris_spacing = 0.0; ///< d

    double phi_br = 0.0;   ///< surface azimuth towards the BS
    double psi_br = 0.0;   ///< surface elevation towards the BS
    double theta_bs = 0.0; ///< BS departure angle towards the surface

    double beta_bk = 10.0, beta_br = 10.0, beta_rk = 10.0;
    double alpha_bk = 0.1, alpha_br = 0.1, alpha_rk = 0.1;
    double noise_power = 0.0; ///< sigma^2 [W]
    double phase_noise_concentration = 10.0;

    std::vector<UserGeometry> users;
    SolverSettings solver;

    int ris_elements() const { return ris_rows * ris_cols; }
    int num_users() const { return static_cast<int>(users.size()); }

    /// x_n: row index of element n on the row-major grid.
    int element_x(int n) const { return n / ris_cols; }
    /// z_n: column index of element n.
    int element_z(int n) const { return n % ris_cols; }

    // Composite direction cosines: A = sin(phi) sin(psi), B = cos(phi) sin(psi).
    double a_rk(int k) const;
    double b_rk(int k) const;
    double a_br() const;
    double b_br() const;
};

/// Reference scenario: M = 8, K = 4, N = 8 x 8, 28 GHz, half-wavelength
/// spacings, 10 dB Rician factors, -10 dB large-scale gains, phase-noise
/// concentration 10, noise PSD -174 dBm/Hz over 10 MHz.
SystemConfig default_config();

/// Throws std::invalid_argument when an invariant of SystemConfig is violated.
void validate(const SystemConfig& config);

/// Speed of light, m/s.
constexpr double kSpeedOfLight = 299792458.0;

/// Thermal noise power for a PSD in dBm/Hz over a bandwidth in Hz, in watts.
double noise_power_watts(double psd_dbm_per_hz, double bandwidth_hz);

/// ULA response: element m is exp(j 2 pi / lambda * a * m * sin(phi)).
cvec ula_steering(int antennas, double spacing, double wavelength, double phi);

/// UPA response on the surface grid: element n is
/// exp(j 2 pi / lambda * d * (x_n * A + z_n * B)).
cvec upa_steering(const SystemConfig& config, double a_cos, double b_cos);

/// BS side factor of the BS-surface LoS: element m is
/// exp(j 2 pi / lambda * a * m * cos(theta_bs)).
cvec bs_array_response(const SystemConfig& config);

/// Surface side factor of the BS-surface LoS, i.e. upa_steering at (A_br, B_br).
cvec ris_array_response(const SystemConfig& config);

/// Rank-one M x N LoS matrix with entry (m, n) = bs_response[m] * ris_response[n].
cmat bs_ris_los(const SystemConfig& config);

/// One draw of every small- and large-scale channel.
struct ChannelSet {
    std::vector<cvec> direct;   ///< h_bk, K vectors of length M
    cmat bs_ris;                ///< H_br, M x N
    std::vector<cvec> ris_user; ///< h_rk, K vectors of length N

    // LoS and NLoS building blocks, unscaled.
    std::vector<cvec> direct_los;
    cmat bs_ris_los;
    std::vector<cvec> ris_user_los;
    std::vector<cvec> direct_nlos;
    cmat bs_ris_nlos;
    std::vector<cvec> ris_user_nlos;
};

/// Rician draw: sqrt(alpha) * (sqrt(beta/(beta+1)) LoS + sqrt(1/(beta+1)) NLoS)
/// with i.i.d. CN(0, 1) NLoS entries.
ChannelSet sample_rician(const SystemConfig& config, Rng& rng);

/// Phase errors of the surface elements, one angle per element and mode.
struct PhaseNoiseRealization {
    std::array<Eigen::VectorXd, 2> angles;

    const Eigen::VectorXd& operator[](Mode mode) const { return angles[static_cast<int>(mode)]; }
    Eigen::VectorXd& operator[](Mode mode) { return angles[static_cast<int>(mode)]; }
};

/// 2N independent zero-mean Von Mises draws with the configured concentration.
PhaseNoiseRealization sample_phase_noise(const SystemConfig& config, Rng& rng);

/// Noise-free realization (all angles zero).
PhaseNoiseRealization zero_phase_noise(const SystemConfig& config);

/// CN(0, 1) sample: independent real and imaginary parts of variance 1/2.
std::complex<double> sample_complex_normal(Rng& rng);

} // namespace starris
