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

#include "starris/config_io.hpp"
#include "starris/manifold.hpp"
#include "starris/objective.hpp"
#include "starris/phase_profile.hpp"
#include "starris/simulator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace starris {

/// Library version embedded in every output file.
const char* version();

struct SolveOutcome {
    PhaseProfile profile;
    manifold::SolverTrace trace;
};

/// Starting point: all ones, or uniform random phases from the configured
/// seed when solver.random_init is set.
PhaseProfile initial_profile(const SystemConfig& config);

/// Minimizes the interference cost with Riemannian conjugate gradient.
SolveOutcome optimize_phases(const SystemConfig& config);
SolveOutcome optimize_phases(const ObjectiveContext& ctx, const PhaseProfile& start);

/// Per-iteration CSV:
///   iteration,objective,normalized_objective,grad_norm,step
/// preceded by '#'-prefixed metadata lines.
manifold::SolverTrace run_convergence(const ExperimentConfig& cfg, std::ostream& out);

struct SweepRow {
    int elements = 0;
    std::string scheme; ///< "proposed" or "random"
    SchemeSummary summary;
    int iterations = 0; ///< solver iterations, zero for the baseline
};

/// CSV:
///   n,rows,cols,scheme,mean_rate,rate_se,mean_interference,interference_se,iterations
std::vector<SweepRow> run_sweep_n(const ExperimentConfig& cfg, std::ostream& out);

struct CheckResult {
    std::string name;
    bool hard = true;   ///< soft checks are reported only
    bool passed = true;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ValidateOptions {
    /// Test hook: negate the analytic gradient before the finite-difference check.
    bool inject_gradient_fault = false;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Runs the oracle suite and writes a JSON report.
ValidationReport run_validate(const ExperimentConfig& cfg, std::ostream& out, const ValidateOptions& options = {});

/// Writes the optimized profile as JSON (angles per mode, final objective,
/// iterations, wall time).
SolveOutcome run_solve(const ExperimentConfig& cfg, std::ostream& out);

/// Scenario with the surface resized to the given grid.
SystemConfig with_grid(const SystemConfig& config, const GridShape& grid);

} // namespace starris
