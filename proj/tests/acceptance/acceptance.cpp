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

// Acceptance suite. One [PASS]/[FAIL] line per criterion; pass a criterion id
// (C1..C9) to run a single one, or nothing to run all of them.

#include "starris/circular.hpp"
#include "starris/experiments.hpp"
#include "starris/statcsi.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace starris;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool passed;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

PhaseProfile random_profile(int n, Rng& rng)
{
    std::uniform_real_distribution<double> u(-kPi, kPi);
    Eigen::VectorXd tr(n), re(n);
    for (int i = 0; i < n; ++i)
        tr[i] = u(rng);
    for (int i = 0; i < n; ++i)
        re[i] = u(rng);
    return PhaseProfile::from_angles(tr, re);
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------

Outcome convergence_speed()
{
    const auto t0 = Clock::now();
    const SolveOutcome outcome = optimize_phases(default_config());
    const double elapsed = seconds_since(t0);
    const auto& rec = outcome.trace.records;
    const double f0 = rec.front().objective;
    bool monotone = true;
    for (std::size_t i = 1; i < rec.size(); ++i)
        monotone = monotone && rec[i].objective <= rec[i - 1].objective;
    // a run that stops early keeps its last value as the floor
    const double n10 = rec[std::min<std::size_t>(10, rec.size() - 1)].objective / f0;
    const double floor = rec[std::min<std::size_t>(200, rec.size() - 1)].objective / f0;
    const bool pass = n10 - floor <= 0.05 && monotone && elapsed < 30.0;
    return {pass, fmt::format("normalized f(10) = {:.4f}, floor = {:.3e}, gap = {:.4f} (<= 0.05), monotone = {}, "
                              "{} iterations ({}), {:.2f} s",
                              n10, floor, n10 - floor, monotone, outcome.trace.iterations,
                              manifold::to_string(outcome.trace.termination), elapsed)};
}

Outcome gradient_correctness()
{
    const auto t0 = Clock::now();
    const SystemConfig config = default_config();
    const ObjectiveContext ctx(config);
    Rng rng(2024);
    double worst_cos = 1.0, worst_rel = 0.0;
    for (int i = 0; i < 20; ++i) {
        const PhaseProfile p = random_profile(config.ris_elements(), rng);
        const Eigen::VectorXd g = ctx.phase_gradient(p);
        const Eigen::VectorXd fd = finite_difference_gradient(ctx, p, 1e-6);
        worst_cos = std::min(worst_cos, g.dot(fd) / (g.norm() * fd.norm()));
        worst_rel = std::max(worst_rel, (g - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff());
    }
    const double elapsed = seconds_since(t0);
    return {worst_cos > 0.999 && worst_rel < 1e-5 && elapsed < 60.0,
            fmt::format("min cosine = {:.12f} (> 0.999), max rel. coordinate error = {:.3e} (< 1e-5), {:.2f} s",
                        worst_cos, worst_rel, elapsed)};
}

Outcome manifold_invariants()
{
    const SolveOutcome outcome = optimize_phases(default_config());
    double modulus = 0.0, tangency = 0.0;
    for (const auto& r : outcome.trace.records) {
        modulus = std::max(modulus, r.modulus_deviation);
        tangency = std::max(tangency, r.tangency_residual);
    }
    Rng rng(77);
    double idem = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cvec p = random_profile(64, rng).stacked();
        cvec v(p.size());
        for (Eigen::Index n = 0; n < v.size(); ++n)
            v[n] = sample_complex_normal(rng);
        const cvec once = manifold::project_to_tangent(p, v);
        idem = std::max(idem, (manifold::project_to_tangent(p, once) - once).cwiseAbs().maxCoeff());
    }
    return {modulus < 1e-12 && tangency < 1e-10 && idem < 1e-12,
            fmt::format("modulus dev. = {:.2e} (< 1e-12), tangency = {:.2e} (< 1e-10), idempotence = {:.2e} "
                        "(< 1e-12) over {} iterations",
                        modulus, tangency, idem, outcome.trace.iterations)};
}

// Closed form against the noise-free LoS cascade of a one-element surface.
double los_gap(int antennas, double theta_bs)
{
    SystemConfig c = default_config();
    c.bs_antennas = antennas;
    c.ris_rows = c.ris_cols = 1;
    c.phi_br = c.psi_br = 0.0;
    c.theta_bs = theta_bs;
    for (UserGeometry& u : c.users)
        u.phi_bk = u.phi_rk = u.psi_rk = 0.0;
    c.beta_bk = c.beta_br = c.beta_rk = 1e12;
    c.phase_noise_concentration = 1e6;
    const PhaseProfile theta = PhaseProfile::ones(1);
    double worst = 0.0;
    for (int k = 0; k < c.num_users(); ++k) {
        // h^H 1 with h = sqrt(alpha) * LoS, written out by hand
        std::complex<double> direct = 0.0, bs_side = 0.0;
        const double ka = 2 * kPi / c.wavelength * c.bs_spacing;
        for (int m = 0; m < antennas; ++m) {
            direct += std::conj(std::polar(std::sqrt(c.alpha_bk), ka * m * std::sin(c.users[k].phi_bk)));
            bs_side += std::conj(std::polar(std::sqrt(c.alpha_br), ka * m * std::cos(theta_bs)));
        }
        const std::complex<double> exact = direct + std::sqrt(c.alpha_rk) * bs_side;
        worst = std::max(worst, std::abs(expected_effective_entry(c, theta, k) - exact) / std::abs(exact));
    }
    return worst;
}

Outcome theorem_limits()
{
    double worst = los_gap(1, 0.0);
    for (int m : {2, 4, 8})
        worst = std::max(worst, los_gap(m, kPi / 2));
    double endfire = 0.0;
    for (int m : {2, 4, 8})
        endfire = std::max(endfire, los_gap(m, 0.0));

    SystemConfig c = default_config();
    c.phase_noise_concentration = 0.0;
    Rng rng(5);
    const PhaseProfile p = random_profile(c.ris_elements(), rng);
    bool exact = true;
    for (int k = 0; k < c.num_users(); ++k)
        for (Mode mode : kModes)
            exact = exact && lambda_mn(c, p, k, mode) == 64.0 * 8.0;
    const SolveOutcome outcome = optimize_phases(c);
    const bool stopped = outcome.trace.iterations == 0 && outcome.trace.records.front().grad_norm == 0.0;
    return {worst < 1e-4 && exact && stopped,
            fmt::format("LoS limit rel. gap = {:.2e} (< 1e-4; M = 1 at zero angles, M = 2, 4, 8 at theta_bs = 90 deg), "
                        "[info] theta_bs = 0 gap for M > 1 = {:.3f}; chi = 0: Lambda_mn == MN {}, solver stopped at "
                        "zero gradient {}",
                        worst, endfire, exact, stopped)};
}

// Worst |closed form - MC mean| over users and components, in standard errors.
double mc_discrepancy(const SystemConfig& c, std::size_t trials, std::string* per_user)
{
    const PhaseProfile theta = PhaseProfile::ones(c.ris_elements());
    double worst = 0.0;
    for (int k = 0; k < c.num_users(); ++k) {
        const MonteCarloEstimate est = monte_carlo_effective_entry(c, theta, k, trials, 1000 + k);
        const std::complex<double> closed = expected_effective_entry(c, theta, k);
        const double zr = std::abs(closed.real() - est.mean.real()) / est.se_real;
        const double zi = std::abs(closed.imag() - est.mean.imag()) / est.se_imag;
        worst = std::max({worst, zr, zi});
        *per_user += fmt::format(" u{}: closed {:.4g}{:+.4g}j, MC {:.4g}{:+.4g}j ({:.1f}/{:.1f} SE);", k,
                                 closed.real(), closed.imag(), est.mean.real(), est.mean.imag(), zr, zi);
    }
    return worst;
}

Outcome theorem_monte_carlo()
{
    SystemConfig strong = default_config();
    strong.beta_bk = strong.beta_br = strong.beta_rk = 100.0;
    strong.phase_noise_concentration = 50.0;
    std::string strong_detail, table_detail;
    const double worst = mc_discrepancy(strong, 100000, &strong_detail);
    const double table = mc_discrepancy(default_config(), 100000, &table_detail);
    return {worst <= 5.0, fmt::format("beta = 100, eps = 50: max {:.1f} SE (<= 5);{} [info] default scenario (beta = 10 dB, eps = 10): max {:.1f} SE;{}",
                                      worst, strong_detail, table, table_detail)};
}

double bessel_oracle(int order, double x)
{
    using big = boost::multiprecision::cpp_bin_float_50;
    big half = big(x) / 2;
    big term = order == 0 ? big(1) : half;
    big sum = term;
    for (int k = 1; k < 2000 && term > sum * big("1e-45"); ++k) {
        term *= half * half / (big(k) * big(k + order));
        sum += term;
    }
    return static_cast<double>(sum);
}

Outcome circular_statistics()
{
    std::string detail;
    bool pass = true;
    for (double eps : {1.0, 5.0, 10.0}) {
        Rng rng(31 + static_cast<int>(eps));
        const VonMisesParams params = make_von_mises(0.0, eps);
        double s = 0.0, s2 = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double c = std::cos(sample_von_mises(params, rng));
            s += c;
            s2 += c * c;
        }
        const double mean = s / n;
        const double se = std::sqrt((s2 / n - mean * mean) / (n - 1));
        const double z = std::abs(mean - concentration_factor(eps)) / se;
        pass = pass && z <= 3.0;
        detail += fmt::format("eps {}: {:.2f} SE; ", eps, z);
    }
    const bool zero = concentration_factor(0.0) == 0.0;
    double worst = 0.0;
    for (double x : {0.1, 1.0, 10.0, 100.0})
        for (int order : {0, 1})
            worst = std::max(worst, std::abs(bessel_i(order, x) / bessel_oracle(order, x) - 1.0));
    pass = pass && zero && worst < 1e-12;
    return {pass, detail + fmt::format("(<= 3 SE); chi(0) == 0 {}; Bessel rel. error {:.2e} (< 1e-12)", zero, worst)};
}

Outcome rate_trends()
{
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.sweep = {{4, 4}, {6, 6}, {8, 8}};
    cfg.trials = 500;
    std::ostringstream sink;
    const auto rows = run_sweep_n(cfg, sink);
    const double elapsed = seconds_since(t0);
    bool beats = true, grows = true;
    std::string detail;
    double prev = -1.0;
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        const double proposed = rows[i].summary.mean_rate, random = rows[i + 1].summary.mean_rate;
        beats = beats && proposed >= random;
        grows = grows && proposed >= prev;
        prev = proposed;
        detail += fmt::format("N = {}: proposed {:.3f} +- {:.3f}, random {:.3f} +- {:.3f}; ", rows[i].elements, proposed,
                              rows[i].summary.rate_se, random, rows[i + 1].summary.rate_se);
    }
    return {beats && grows && elapsed < 300.0,
            detail + fmt::format("proposed >= random {}, proposed nondecreasing {}, {:.1f} s", beats, grows, elapsed)};
}

// Median wall time of one solver iteration over a fixed iteration budget.
double per_iteration_seconds(int rows, int cols)
{
    SystemConfig c = with_grid(default_config(), {rows, cols});
    c.solver.tolerance = 1e-300;
    c.solver.max_iterations = 40;
    const ObjectiveContext ctx(c);
    std::vector<double> times;
    for (int rep = 0; rep < 5; ++rep) {
        const SolveOutcome outcome = optimize_phases(ctx, PhaseProfile::ones(c.ris_elements()));
        for (std::size_t i = 1; i < outcome.trace.records.size(); ++i)
            times.push_back(outcome.trace.records[i].wall_seconds);
    }
    return median(times);
}

Outcome complexity_scaling()
{
    per_iteration_seconds(8, 8); // warm-up
    const double t64 = per_iteration_seconds(8, 8);
    const double t128 = per_iteration_seconds(8, 16);
    const double ratio = t128 / t64;
    return {ratio >= 1.0 && ratio <= 3.0,
            fmt::format("median per-iteration time N = 64: {:.2f} us, N = 128: {:.2f} us, ratio {:.2f} (in [1, 3])",
                        t64 * 1e6, t128 * 1e6, ratio)};
}

std::string read_without_wall_time(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::string line, kept;
    while (std::getline(in, line))
        if (line.find("wall_time") == std::string::npos)
            kept += line + '\n';
    return kept;
}

Outcome determinism()
{
    const fs::path dir = fs::temp_directory_path() / ("starris_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / "det.ini") << "[experiment]\nseed = 7\ntrials = 50\nmc_trials = 2000\n";
    bool pass = true;
    std::string detail;
    for (const std::string sub : {"convergence", "sweep-n", "validate", "solve"}) {
        std::string outputs[2];
        int codes[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / fmt::format("{}_{}.out", sub, run);
            const std::string cmd = fmt::format("{} {} --config {} --seed 7 --out {} > /dev/null 2>&1", STARRIS_CLI,
                                                sub, (dir / "det.ini").string(), out.string());
            const int status = std::system(cmd.c_str());
            codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            outputs[run] = read_without_wall_time(out);
        }
        const bool same = codes[0] == codes[1] && !outputs[0].empty() && outputs[0] == outputs[1];
        pass = pass && same;
        detail += fmt::format("{} {} (exit {}, {} bytes); ", sub, same ? "identical" : "DIFFERS", codes[0],
                              outputs[0].size());
    }
    fs::remove_all(dir);
    return {pass, detail};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::pair<std::string, std::function<Outcome()>>>> criteria{
        {"C1", {"convergence speed", convergence_speed}},
        {"C2", {"gradient correctness", gradient_correctness}},
        {"C3", {"manifold invariants", manifold_invariants}},
        {"C4", {"closed-form limits", theorem_limits}},
        {"C5", {"closed form vs. Monte Carlo", theorem_monte_carlo}},
        {"C6", {"circular statistics", circular_statistics}},
        {"C7", {"rate trends", rate_trends}},
        {"C8", {"complexity scaling", complexity_scaling}},
        {"C9", {"determinism", determinism}},
    };
    const std::string only = argc > 1 ? argv[1] : "";
    bool all_passed = true, matched = false;
    for (const auto& [id, entry] : criteria) {
        if (!only.empty() && only != id)
            continue;
        matched = true;
        Outcome o;
        try {
            o = entry.second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s %s: %s\n", o.passed ? "PASS" : "FAIL", id.c_str(), entry.first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        all_passed = all_passed && o.passed;
    }
    if (!matched) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return all_passed ? 0 : 1;
}
