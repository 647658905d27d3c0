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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace starris;

TEST(ConfigIo, EmptyTextGivesDefaults)
{
    ExperimentConfig cfg = parse_config("");
    SystemConfig d = default_config();
    EXPECT_EQ(cfg.scenario.bs_antennas, d.bs_antennas);
    EXPECT_NEAR(cfg.scenario.phi_br, d.phi_br, 1e-15);
    EXPECT_EQ(cfg.trials, 500u);
    EXPECT_EQ(cfg.mc_trials, 100000u);
    ASSERT_EQ(cfg.sweep.size(), 3u);
    EXPECT_EQ(cfg.sweep[2].elements(), 64);
}

TEST(ConfigIo, ParsesEverySection)
{
    ExperimentConfig cfg = parse_config(R"(
[scenario]
bs_antennas = 4
ris_rows = 2
ris_cols = 5
carrier_hz = 3.5e9
phi_br_deg = 90
rician_br_db = 20
fading_rk_db = -20
noise_power_w = 1e-12
phase_noise_concentration = 50

[users]
mode = tr, re
phi_bk_deg = 0, 30
phi_rk_deg = 10, -10
psi_rk_deg = 45, 45

[solver]
tolerance = 1e-6
max_iterations = 17
init = random

[experiment]
seed = 99
trials = 12
sweep_n = 16, 4x8
output = out.csv
)");
    const SystemConfig& s = cfg.scenario;
    EXPECT_EQ(s.bs_antennas, 4);
    EXPECT_EQ(s.ris_elements(), 10);
    EXPECT_NEAR(s.wavelength, kSpeedOfLight / 3.5e9, 1e-15);
    EXPECT_NEAR(s.bs_spacing, 0.5 * s.wavelength, 1e-15);
    EXPECT_NEAR(s.phi_br, std::numbers::pi / 2, 1e-15);
    EXPECT_NEAR(s.beta_br, 100.0, 1e-9);
    EXPECT_NEAR(s.alpha_rk, 0.01, 1e-15);
    EXPECT_EQ(s.noise_power, 1e-12);
    EXPECT_EQ(s.phase_noise_concentration, 50.0);
    ASSERT_EQ(s.num_users(), 2);
    EXPECT_EQ(s.users[1].mode, Mode::re);
    EXPECT_NEAR(s.users[1].phi_bk, std::numbers::pi / 6, 1e-15);
    EXPECT_EQ(s.solver.max_iterations, 17);
    EXPECT_TRUE(s.solver.random_init);
    EXPECT_EQ(s.solver.seed, 99u);
    EXPECT_EQ(cfg.trials, 12u);
    ASSERT_EQ(cfg.sweep.size(), 2u);
    EXPECT_EQ(cfg.sweep[1].rows, 4);
    EXPECT_EQ(cfg.sweep[1].cols, 8);
    EXPECT_EQ(cfg.output, "out.csv");
}

TEST(ConfigIo, NoisePowerFromPsdPair)
{
    ExperimentConfig cfg = parse_config("[scenario]\nnoise_psd_dbm_hz = -170\nbandwidth_hz = 1e6\n");
    EXPECT_NEAR(cfg.scenario.noise_power, 1e-20 * 1e6, 1e-30);
}

TEST(ConfigIo, RejectsUnknownOrMalformedInput)
{
    EXPECT_THROW(parse_config("[scenery]\nx = 1\n"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nantennas = 4\n"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nbs_antennas = four\n"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nbs_antennas = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nnoise_power_w = 1e-12\nnoise_psd_dbm_hz = -174\n"), ConfigError);
    EXPECT_THROW(parse_config("[users]\nmode = tr, re\nphi_bk_deg = 0\nphi_rk_deg = 0, 1\npsi_rk_deg = 1, 2\n"),
                 ConfigError);
    EXPECT_THROW(parse_config("[users]\nmode = tr\n"), ConfigError);
    EXPECT_THROW(parse_config("[users]\nmode = up\nphi_bk_deg = 0\nphi_rk_deg = 0\npsi_rk_deg = 0\n"),
                 ConfigError);
    EXPECT_THROW(parse_config("[solver]\ninit = zeros\n"), ConfigError);
    EXPECT_THROW(parse_config("[experiment]\ntrials = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("[experiment]\nsweep_n = 15\n"), ConfigError);
    EXPECT_THROW(parse_config("[scenario\nbs_antennas = 4\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/dir/x.ini"), ConfigError);
}

TEST(ConfigIo, CanonicalTextRoundTrips)
{
    ExperimentConfig cfg = parse_config("[scenario]\nris_rows = 3\nphase_noise_concentration = 7.5\n"
                                        "[experiment]\nseed = 4\nsweep_n = 9, 2x8\n");
    std::string text = to_ini(cfg);
    ExperimentConfig again = parse_config(text);
    EXPECT_EQ(to_ini(again), text);
    EXPECT_EQ(config_hash(again), config_hash(cfg));
    EXPECT_EQ(again.scenario.ris_rows, 3);
    EXPECT_EQ(again.scenario.users.size(), cfg.scenario.users.size());
    EXPECT_EQ(again.scenario.phi_br, cfg.scenario.phi_br);
}

TEST(ConfigIo, HashIgnoresOutputButTracksContent)
{
    ExperimentConfig a;
    ExperimentConfig b = a;
    b.output = "elsewhere.csv";
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.scenario.solver.seed = 2;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Grid, ParsesSquareAndPairs)
{
    GridShape g = parse_grid("64");
    EXPECT_EQ(g.rows, 8);
    EXPECT_EQ(g.cols, 8);
    g = parse_grid(" 4x8 ");
    EXPECT_EQ(g.rows, 4);
    EXPECT_EQ(g.cols, 8);
    EXPECT_THROW(parse_grid("10"), ConfigError);
    EXPECT_THROW(parse_grid("0x3"), ConfigError);
    EXPECT_THROW(parse_grid("ax3"), ConfigError);
}
