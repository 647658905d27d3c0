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

#include "starris/experiments.hpp"

#include "starris/circular.hpp"
#include "starris/statcsi.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>

namespace starris {

namespace {

using json = nlohmann::json;

constexpr double kPi = std::numbers::pi;

// Stream indices carved out of the root seed for the different consumers.
constexpr std::uint64_t kInitStream = 0xA11CE;
constexpr std::uint64_t kGradientPointsStream = 0x6AD;
constexpr std::uint64_t kSamplerStream = 0x5A3;
constexpr std::uint64_t kManifoldStream = 0x3A2;
constexpr std::uint64_t kMonteCarloSeedOffset = 0x3C0000;

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_metadata(std::ostream& out, const ExperimentConfig& cfg)
{
    out << "# starris " << version() << '\n';
    out << "# config_hash=" << config_hash(cfg) << '\n';
    out << "# seed=" << cfg.scenario.solver.seed << '\n';
}

json metadata_json(const ExperimentConfig& cfg)
{
    return json{{"artifact_version", version()}, {"config_hash", config_hash(cfg)}, {"seed", cfg.scenario.solver.seed}};
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

PhaseProfile random_profile(const SystemConfig& config, Rng& rng) { return random_phase_baseline(config, rng); }

CheckResult upper_bound(std::string name, double measured, double threshold, bool hard = true,
                        std::string detail = {})
{
    return {std::move(name), hard, !hard || measured <= threshold, measured, threshold, std::move(detail)};
}

SystemConfig los_limit_config(const SystemConfig& base, int antennas, double theta_bs)
{
    SystemConfig c = base;
    c.bs_antennas = antennas;
    c.ris_rows = c.ris_cols = 1;
    c.phi_br = c.psi_br = 0.0;
    c.theta_bs = theta_bs;
    for (UserGeometry& u : c.users)
        u.phi_bk = u.phi_rk = u.psi_rk = 0.0;
    c.beta_bk = c.beta_br = c.beta_rk = 1e12;
    c.phase_noise_concentration = 1e6;
    return c;
}

// Deterministic channels in the beta -> infinity limit: sqrt(alpha) * LoS.
ChannelSet los_channels(const SystemConfig& c)
{
    ChannelSet ch;
    ch.bs_ris_los = bs_ris_los(c);
    ch.bs_ris = std::sqrt(c.alpha_br) * ch.bs_ris_los;
    for (int k = 0; k < c.num_users(); ++k) {
        ch.direct_los.push_back(ula_steering(c.bs_antennas, c.bs_spacing, c.wavelength, c.users[k].phi_bk));
        ch.direct.push_back(std::sqrt(c.alpha_bk) * ch.direct_los.back());
        ch.ris_user_los.push_back(upa_steering(c, c.a_rk(k), c.b_rk(k)));
        ch.ris_user.push_back(std::sqrt(c.alpha_rk) * ch.ris_user_los.back());
    }
    return ch;
}

double relative_gap(std::complex<double> a, std::complex<double> b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace

const char* version() { return STARRIS_VERSION; }

bool ValidationReport::passed() const
{
    for (const CheckResult& c : checks)
        if (c.hard && !c.passed)
            return false;
    return true;
}

SystemConfig with_grid(const SystemConfig& config, const GridShape& grid)
{
    SystemConfig c = config;
    c.ris_rows = grid.rows;
    c.ris_cols = grid.cols;
    return c;
}

PhaseProfile initial_profile(const SystemConfig& config)
{
    if (!config.solver.random_init)
        return PhaseProfile::ones(config.ris_elements());
    Rng rng = make_stream(config.solver.seed, kInitStream);
    return random_profile(config, rng);
}

SolveOutcome optimize_phases(const ObjectiveContext& ctx, const PhaseProfile& start)
{
    const SystemConfig& config = ctx.config();
    manifold::SolverOptions options;
    options.tolerance = config.solver.tolerance;
    options.max_iterations = config.solver.max_iterations;

    auto cost = [&ctx](const cvec& p) { return ctx.cost(PhaseProfile::unstack(p)); };
    auto grad = [&ctx](const cvec& p) { return ctx.euclidean_gradient(PhaseProfile::unstack(p)); };
    manifold::SolverResult result = manifold::solve_rcg(cost, grad, start.stacked(), options);
    return {PhaseProfile::unstack(result.point), std::move(result.trace)};
}

SolveOutcome optimize_phases(const SystemConfig& config)
{
    const ObjectiveContext ctx(config);
    return optimize_phases(ctx, initial_profile(config));
}

manifold::SolverTrace run_convergence(const ExperimentConfig& cfg, std::ostream& out)
{
    SolveOutcome outcome = optimize_phases(cfg.scenario);
    const auto& records = outcome.trace.records;
    const double f0 = records.front().objective;

    write_metadata(out, cfg);
    out << "iteration,objective,normalized_objective,grad_norm,step\n";
    for (const manifold::IterationRecord& r : records) {
        const double normalized = f0 > 0.0 ? r.objective / f0 : 1.0;
        out << r.iteration << ',' << num(r.objective) << ',' << num(normalized) << ',' << num(r.grad_norm) << ','
            << num(r.step) << '\n';
    }
    return std::move(outcome.trace);
}

std::vector<SweepRow> run_sweep_n(const ExperimentConfig& cfg, std::ostream& out)
{
    if (cfg.sweep.empty())
        throw ConfigError("sweep-n needs at least one surface size");
    const std::uint64_t seed = cfg.scenario.solver.seed;

    std::vector<SweepRow> rows;
    for (const GridShape& grid : cfg.sweep) {
        const SystemConfig scenario = with_grid(cfg.scenario, grid);
        const SolveOutcome outcome = optimize_phases(scenario);
        rows.push_back({grid.elements(), "proposed", evaluate_scheme(scenario, outcome.profile, cfg.trials, seed),
                        outcome.trace.iterations});
        rows.push_back({grid.elements(), "random", evaluate_random_baseline(scenario, cfg.trials, seed), 0});
    }

    write_metadata(out, cfg);
    out << "n,rows,cols,scheme,mean_rate,rate_se,mean_interference,interference_se,iterations\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        const GridShape& grid = cfg.sweep[i / 2];
        out << r.elements << ',' << grid.rows << ',' << grid.cols << ',' << r.scheme << ','
            << num(r.summary.mean_rate) << ',' << num(r.summary.rate_se) << ',' << num(r.summary.mean_interference)
            << ',' << num(r.summary.interference_se) << ',' << r.iterations << '\n';
    }
    return rows;
}

ValidationReport run_validate(const ExperimentConfig& cfg, std::ostream& out, const ValidateOptions& options)
{
    const SystemConfig& scenario = cfg.scenario;
    const std::uint64_t seed = scenario.solver.seed;
    ValidationReport report;
    auto& checks = report.checks;

    // Bessel functions against the standard library implementation.
    {
        double worst = 0.0;
        for (double x : {0.1, 1.0, 10.0, 100.0})
            for (int order : {0, 1}) {
                const double ref = std::cyl_bessel_i(static_cast<double>(order), x);
                worst = std::max(worst, std::abs(bessel_i(order, x) - ref) / ref);
            }
        checks.push_back(upper_bound("bessel_i_relative_error", worst, 1e-12));
    }

    // Concentration factor: zero at zero, strictly increasing and below one.
    {
        bool ok = concentration_factor(0.0) == 0.0;
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double chi = concentration_factor(0.5 * i);
            ok = ok && chi > prev && chi < 1.0;
            prev = chi;
        }
        checks.push_back({"concentration_factor_shape", true, ok, ok ? 0.0 : 1.0, 0.0,
                          "chi(0) = 0, strictly increasing on 0:0.5:50, below 1"});
    }

    // Von Mises sampler: mean resultant length vs. the Bessel ratio.
    for (double eps : {1.0, 5.0, 10.0}) {
        Rng rng = make_stream(seed, kSamplerStream + static_cast<std::uint64_t>(eps));
        const VonMisesParams params = make_von_mises(0.0, eps);
        const int draws = 100000;
        std::complex<double> sum = 0.0;
        double sum_cos = 0.0, sum_cos_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double a = sample_von_mises(params, rng);
            sum += std::polar(1.0, a);
            sum_cos += std::cos(a);
            sum_cos_sq += std::cos(a) * std::cos(a);
        }
        const double resultant = std::abs(sum) / draws;
        const double mean_cos = sum_cos / draws;
        const double se = std::sqrt((sum_cos_sq / draws - mean_cos * mean_cos) / draws);
        checks.push_back(upper_bound(fmt::format("von_mises_resultant_eps_{}", eps),
                                     std::abs(resultant - concentration_factor(eps)) / se, 3.0, true,
                                     "standard errors between sample resultant length and I1/I0"));
    }

    // Analytic phase gradient vs. central differences at random points.
    const ObjectiveContext ctx(scenario);
    {
        Rng rng = make_stream(seed, kGradientPointsStream);
        double worst_cosine = 1.0, worst_relative = 0.0, worst_two_route = 0.0;
        for (std::size_t i = 0; i < cfg.gradient_points; ++i) {
            const PhaseProfile p = random_profile(scenario, rng);
            Eigen::VectorXd analytic = ctx.phase_gradient(p);
            if (options.inject_gradient_fault)
                analytic = -analytic;
            const Eigen::VectorXd fd = finite_difference_gradient(ctx, p, 1e-6);
            const double cosine = analytic.dot(fd) / std::max(analytic.norm() * fd.norm(), 1e-300);
            const double relative = (analytic - fd).cwiseAbs().maxCoeff() / std::max(fd.cwiseAbs().maxCoeff(), 1e-300);
            worst_cosine = std::min(worst_cosine, cosine);
            worst_relative = std::max(worst_relative, relative);
            for (int k = 0; k < scenario.num_users(); ++k) {
                const double literal = lambda_mn(scenario, p, k, scenario.users[k].mode);
                worst_two_route =
                    std::max(worst_two_route, std::abs(literal - ctx.array_gain(p, k)) / std::max(std::abs(literal), 1.0));
            }
        }
        checks.push_back({"gradient_cosine_similarity", true, worst_cosine > 0.999, worst_cosine, 0.999,
                          "minimum cosine between analytic and central-difference gradients"});
        checks.push_back(upper_bound("gradient_max_relative_error", worst_relative, 1e-5, true,
                                     "max |analytic - fd| / max |fd| over coordinates"));
        checks.push_back(upper_bound("array_gain_two_routes", worst_two_route, 1e-9, true,
                                     "literal pair sums vs. phasor factorization"));
    }

    // Deterministic LoS limit on a single-element surface. The closed form
    // gives the BS antennas no phase progression, so for M > 1 it only
    // describes the LoS channel when cos(theta_bs) = 0.
    {
        auto los_gap = [&](int antennas, double theta_bs) {
            const SystemConfig c = los_limit_config(scenario, antennas, theta_bs);
            const PhaseProfile theta = PhaseProfile::ones(1);
            const ChannelSet ch = los_channels(c);
            const PhaseNoiseRealization noise = zero_phase_noise(c);
            double worst = 0.0;
            for (int k = 0; k < c.num_users(); ++k) {
                const RealizedEntry direct = realized_entry(ch, theta, noise, k, c.users[k].mode);
                worst = std::max(worst, relative_gap(expected_effective_entry(c, theta, k), direct.total()));
            }
            return worst;
        };
        double worst = los_gap(1, 0.0);
        for (int antennas : {2, 4, 8})
            worst = std::max(worst, los_gap(antennas, kPi / 2));
        checks.push_back(upper_bound("closed_form_los_limit", worst, 1e-4, true,
                                     "N = 1, beta = 1e12, eps = 1e6; M = 1 at zero angles, M in {2, 4, 8} at theta_bs = 90 deg"));
        double endfire = 0.0;
        for (int antennas : {2, 4, 8})
            endfire = std::max(endfire, los_gap(antennas, 0.0));
        checks.push_back(upper_bound("closed_form_los_gap_theta_bs_zero", endfire, 0.0, false,
                                     "N = 1, M in {2, 4, 8}, all angles zero, relative gap, reported only"));
    }

    // Same limit at the configured geometry; the closed form is an approximation there.
    {
        SystemConfig c = scenario;
        c.beta_bk = c.beta_br = c.beta_rk = 1e12;
        c.phase_noise_concentration = 1e6;
        const PhaseProfile theta = PhaseProfile::ones(c.ris_elements());
        const ChannelSet ch = los_channels(c);
        const PhaseNoiseRealization noise = zero_phase_noise(c);
        double worst = 0.0;
        for (int k = 0; k < c.num_users(); ++k) {
            const RealizedEntry direct = realized_entry(ch, theta, noise, k, c.users[k].mode);
            worst = std::max(worst, relative_gap(expected_effective_entry(c, theta, k), direct.total()));
        }
        checks.push_back(upper_bound("closed_form_los_gap_configured_geometry", worst, 0.0, false,
                                     "relative gap, reported only"));
    }

    // No phase noise coherence (chi = 0): constant cost, immediate stop.
    {
        SystemConfig c = scenario;
        c.phase_noise_concentration = 0.0;
        Rng rng = make_stream(seed, kGradientPointsStream + 1);
        const PhaseProfile p = random_profile(c, rng);
        bool exact = true;
        const double mn = static_cast<double>(c.bs_antennas) * c.ris_elements();
        for (int k = 0; k < c.num_users(); ++k)
            exact = exact && lambda_mn(c, p, k, c.users[k].mode) == mn;
        const SolveOutcome outcome = optimize_phases(c);
        const bool stopped = outcome.trace.iterations == 0 && outcome.trace.records.front().grad_norm == 0.0;
        checks.push_back({"chi_zero_limit", true, exact && stopped, outcome.trace.records.front().grad_norm, 0.0,
                          "Lambda_mn = MN exactly and the solver stops at iteration 0"});
    }

    // Closed form vs. Monte Carlo at the configured scenario (reported only).
    {
        const PhaseProfile theta = PhaseProfile::ones(scenario.ris_elements());
        double worst = 0.0;
        for (int k = 0; k < scenario.num_users(); ++k) {
            const MonteCarloEstimate est =
                monte_carlo_effective_entry(scenario, theta, k, cfg.mc_trials, seed + kMonteCarloSeedOffset);
            const std::complex<double> closed = expected_effective_entry(scenario, theta, k);
            worst = std::max(worst, std::abs(closed.real() - est.mean.real()) / est.se_real);
            worst = std::max(worst, std::abs(closed.imag() - est.mean.imag()) / est.se_imag);
        }
        checks.push_back(upper_bound("closed_form_vs_monte_carlo", worst, 0.0, false,
                                     "max |closed - MC| in standard errors, reported only"));
    }

    // Manifold projection idempotence.
    {
        Rng rng = make_stream(seed, kManifoldStream);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const cvec p = random_profile(scenario, rng).stacked();
            cvec v(p.size());
            for (Eigen::Index n = 0; n < v.size(); ++n)
                v[n] = sample_complex_normal(rng);
            const cvec once = manifold::project_to_tangent(p, v);
            worst = std::max(worst, (manifold::project_to_tangent(p, once) - once).cwiseAbs().maxCoeff());
        }
        checks.push_back(upper_bound("projection_idempotence", worst, 1e-12));
    }

    // Solver invariants on the configured scenario.
    {
        const SolveOutcome outcome = optimize_phases(ctx, initial_profile(scenario));
        double modulus = 0.0, tangency = 0.0;
        bool monotone = true;
        const auto& records = outcome.trace.records;
        for (std::size_t i = 0; i < records.size(); ++i) {
            modulus = std::max(modulus, records[i].modulus_deviation);
            tangency = std::max(tangency, records[i].tangency_residual);
            if (i > 0 && records[i].objective > records[i - 1].objective)
                monotone = false;
        }
        checks.push_back(upper_bound("solver_unit_modulus", modulus, 1e-12));
        checks.push_back(upper_bound("solver_tangency", tangency, 1e-10));
        checks.push_back({"solver_monotone_objective", true, monotone, monotone ? 0.0 : 1.0, 0.0,
                          "objective nonincreasing at every iteration"});
    }

    json j = metadata_json(cfg);
    j["passed"] = report.passed();
    j["checks"] = json::array();
    for (const CheckResult& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"hard", c.hard},
                               {"passed", c.passed},
                               {"measured", c.measured},
                               {"threshold", c.threshold},
                               {"detail", c.detail}});
    out << j.dump(2) << '\n';
    return report;
}

SolveOutcome run_solve(const ExperimentConfig& cfg, std::ostream& out)
{
    const ObjectiveContext ctx(cfg.scenario);
    SolveOutcome outcome = optimize_phases(ctx, initial_profile(cfg.scenario));
    const auto& trace = outcome.trace;

    json j = metadata_json(cfg);
    j["initial_objective"] = trace.records.front().objective;
    j["final_objective"] = trace.records.back().objective;
    j["final_grad_norm"] = trace.records.back().grad_norm;
    j["iterations"] = trace.iterations;
    j["termination"] = manifold::to_string(trace.termination);
    j["wall_time_s"] = trace.wall_seconds;
    j["phases_rad"] = {{"tr", to_std(outcome.profile.angles(Mode::tr))},
                       {"re", to_std(outcome.profile.angles(Mode::re))}};
    out << j.dump(2) << '\n';
    return outcome;
}

} // namespace starris
