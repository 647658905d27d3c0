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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace starris {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridShape {
    int rows = 0;
    int cols = 0;
    int elements() const { return rows * cols; }
};

/// Everything a CLI run needs. The seed lives in scenario.solver.seed.
struct ExperimentConfig {
    SystemConfig scenario = default_config();
    std::vector<GridShape> sweep{{4, 4}, {6, 6}, {8, 8}};
    std::size_t trials = 500;        ///< Monte Carlo trials per scheme in sweep-n
    std::size_t mc_trials = 100000;  ///< Monte Carlo trials of the closed-form check in validate
    std::size_t gradient_points = 20;
    std::string output;              ///< empty: stdout
};

/// Parses the INI configuration format documented in the README. Every key is
/// optional and falls back to the default scenario; unknown sections or keys
/// raise ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical INI rendering of a fully resolved configuration. Parsing the
/// result reproduces the configuration.
std::string to_ini(const ExperimentConfig& config);

/// 16 hex digits, FNV-1a over to_ini(config).
std::string config_hash(const ExperimentConfig& config);

/// "64" -> 8 x 8, "4x8" -> 4 x 8. Non-square counts must be given as pairs.
GridShape parse_grid(std::string_view text);

} // namespace starris
