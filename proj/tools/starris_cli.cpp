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

// Command-line driver: convergence, sweep-n, validate and solve experiments.

#include "starris/experiments.hpp"
#include "starris/manifold.hpp"
#include "starris/statcsi.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kConfigError = 2,
    kValidationFailed = 3,
    kSolverDegenerate = 4,
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::string out;
    bool inject_gradient_fault = false;
};

starris::ExperimentConfig resolve(const Options& opts)
{
    starris::ExperimentConfig cfg =
        opts.config_path.empty() ? starris::ExperimentConfig{} : starris::load_config(opts.config_path);
    if (opts.seed)
        cfg.scenario.solver.seed = *opts.seed;
    if (opts.trials) {
        if (*opts.trials < 1)
            throw starris::ConfigError("--trials must be >= 1");
        cfg.trials = *opts.trials;
    }
    if (!opts.out.empty())
        cfg.output = opts.out;
    return cfg;
}

template <typename Fn>
int with_output(const starris::ExperimentConfig& cfg, Fn&& body)
{
    if (cfg.output.empty())
        return body(std::cout);
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file)
        throw IoError("cannot open output file " + cfg.output);
    const int code = body(file);
    file.close();
    if (!file)
        throw IoError("failed writing output file " + cfg.output);
    return code;
}

void add_common(CLI::App* sub, Options& opts)
{
    sub->add_option("--config", opts.config_path, "INI configuration file (defaults to the reference scenario)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "root random seed (overrides the config)");
    sub->add_option("--out", opts.out, "output file (stdout when omitted)");
    sub->add_option("--trials", opts.trials, "Monte Carlo trials per scheme (overrides the config)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"starris: statistical-CSI phase design for STAR-RIS multiuser links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(starris::version()));

    Options opts;
    CLI::App* convergence = app.add_subcommand("convergence", "per-iteration solver trace as CSV");
    CLI::App* sweep = app.add_subcommand("sweep-n", "sum rate versus surface size as CSV");
    CLI::App* validate = app.add_subcommand("validate", "run the oracle suite, JSON report");
    CLI::App* solve = app.add_subcommand("solve", "optimized phase profile as JSON");
    for (CLI::App* sub : {convergence, sweep, validate, solve})
        add_common(sub, opts);
    validate->add_flag("--inject-gradient-fault", opts.inject_gradient_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        const starris::ExperimentConfig cfg = resolve(opts);
        if (*convergence) {
            return with_output(cfg, [&](std::ostream& out) {
                starris::run_convergence(cfg, out);
                return kOk;
            });
        }
        if (*sweep) {
            return with_output(cfg, [&](std::ostream& out) {
                starris::run_sweep_n(cfg, out);
                return kOk;
            });
        }
        if (*validate) {
            return with_output(cfg, [&](std::ostream& out) {
                starris::ValidateOptions vopts;
                vopts.inject_gradient_fault = opts.inject_gradient_fault;
                const starris::ValidationReport report = starris::run_validate(cfg, out, vopts);
                return report.passed() ? kOk : kValidationFailed;
            });
        }
        return with_output(cfg, [&](std::ostream& out) {
            starris::run_solve(cfg, out);
            return kOk;
        });
    } catch (const starris::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const starris::DegenerateDenominator& e) {
        std::cerr << "solver degeneracy: " << e.what() << '\n';
        return kSolverDegenerate;
    } catch (const starris::manifold::AntipodalRetraction& e) {
        std::cerr << "solver degeneracy: " << e.what() << '\n';
        return kSolverDegenerate;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
}
