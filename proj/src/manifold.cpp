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

#include "starris/manifold.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace starris::manifold {

namespace {

constexpr double kAntipodalFloor = 1e-14;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

double inner(const cvec& a, const cvec& b) { return a.dot(b).real(); }

cvec project_to_tangent(const cvec& p, const cvec& v)
{
    const Eigen::VectorXd radial = v.cwiseProduct(p.conjugate()).real();
    return v - p.cwiseProduct(radial.cast<std::complex<double>>());
}

cvec riemannian_gradient(const cvec& p, const cvec& euclidean_grad) { return project_to_tangent(p, euclidean_grad); }

cvec transport(const cvec& /*p_from*/, const cvec& p_to, const cvec& t) { return project_to_tangent(p_to, t); }

double pr_beta(const cvec& grad_new, const cvec& grad_old, const cvec& grad_old_transported)
{
    const double denom = grad_old.squaredNorm();
    if (denom == 0.0)
        return 0.0;
    const double raw = inner(grad_new - grad_old_transported, grad_new) / denom;
    return std::max(raw, 0.0);
}

cvec conjugate_direction(const cvec& grad_new, double beta, const cvec& dir_old_transported)
{
    cvec dir = -grad_new + beta * dir_old_transported;
    if (grad_new.squaredNorm() > 0.0 && inner(dir, grad_new) >= 0.0)
        return -grad_new;
    return dir;
}

cvec retract(const cvec& p, const cvec& direction, double step)
{
    cvec q = p + step * direction;
    for (Eigen::Index n = 0; n < q.size(); ++n) {
        const double r = std::abs(q[n]);
        if (r < kAntipodalFloor)
            throw AntipodalRetraction("retract: element " + std::to_string(n) + " collapsed to zero");
        q[n] /= r;
    }
    return q;
}

double modulus_deviation(const cvec& p)
{
    if (p.size() == 0)
        return 0.0;
    return (p.cwiseAbs().array() - 1.0).abs().maxCoeff();
}

double tangency_residual(const cvec& p, const cvec& v)
{
    if (p.size() == 0)
        return 0.0;
    return v.cwiseProduct(p.conjugate()).real().cwiseAbs().maxCoeff();
}

std::optional<ArmijoResult> armijo_step(const CostFn& cost, const cvec& p, double cost_at_p, const cvec& direction,
                                        const cvec& grad, const ArmijoOptions& options)
{
    const double slope = inner(grad, direction);
    double step = options.initial_step;
    for (int m = 0; m <= options.max_backtracks; ++m, step *= options.shrink) {
        double trial;
        try {
            trial = cost(retract(p, direction, step));
        } catch (const std::runtime_error&) {
            continue;
        }
        if (std::isfinite(trial) && trial <= cost_at_p + options.sufficient_decrease * step * slope)
            return ArmijoResult{step, trial, m};
    }
    return std::nullopt;
}

const char* to_string(Termination t)
{
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::max_iterations:
        return "max_iterations";
    case Termination::line_search_failed:
        return "line_search_failed";
    }
    return "unknown";
}

SolverResult solve_rcg(const CostFn& cost, const GradFn& grad, const cvec& p0, const SolverOptions& options)
{
    const auto solve_start = Clock::now();
    auto iter_start = solve_start;

    SolverResult result;
    cvec p = p0;
    double f = cost(p);
    cvec g = riemannian_gradient(p, grad(p));
    double g_norm = g.norm();

    SolverTrace& trace = result.trace;
    trace.records.push_back({0, f, g_norm, 0.0, 0.0, modulus_deviation(p), tangency_residual(p, g),
                             seconds_since(iter_start)});

    cvec dir = -g;
    double f_prev = std::numeric_limits<double>::quiet_NaN();
    int t = 0;
    trace.termination = Termination::max_iterations;
    while (true) {
        if (g_norm < options.tolerance) {
            trace.termination = Termination::converged;
            break;
        }
        if (t >= options.max_iterations)
            break;
        iter_start = Clock::now();

        if (inner(dir, g) >= 0.0)
            dir = -g;
        ArmijoOptions armijo = options.armijo;
        if (options.adaptive_initial_step && std::isfinite(f_prev)) {
            // Expect the same decrease as last iteration along the new slope.
            const double guess = 1.01 * 2.0 * (f_prev - f) / -inner(g, dir);
            if (guess > 0.0 && std::isfinite(guess))
                armijo.initial_step = std::min(armijo.initial_step, guess);
        }
        auto accepted = armijo_step(cost, p, f, dir, g, armijo);
        if (!accepted && inner(dir + g, dir + g) > 0.0) {
            // conjugate direction failed, retry along steepest descent
            dir = -g;
            accepted = armijo_step(cost, p, f, dir, g, armijo);
        }
        if (!accepted && armijo.initial_step < options.armijo.initial_step) {
            dir = -g;
            accepted = armijo_step(cost, p, f, dir, g, options.armijo);
        }
        if (!accepted) {
            trace.termination = Termination::line_search_failed;
            break;
        }

        const cvec p_new = retract(p, dir, accepted->step);
        const cvec g_new = riemannian_gradient(p_new, grad(p_new));
        const cvec g_old_transported = transport(p, p_new, g);
        const cvec dir_transported = transport(p, p_new, dir);
        double beta = pr_beta(g_new, g, g_old_transported);
        if (std::abs(inner(g_new, g_old_transported)) >= options.restart_threshold * g_new.squaredNorm())
            beta = 0.0;
        dir = conjugate_direction(g_new, beta, dir_transported);

        f_prev = f;
        p = p_new;
        g = g_new;
        f = accepted->cost;
        g_norm = g.norm();
        ++t;
        trace.records.push_back({t, f, g_norm, accepted->step, beta, modulus_deviation(p), tangency_residual(p, g),
                                 seconds_since(iter_start)});
    }

    trace.iterations = t;
    trace.wall_seconds = seconds_since(solve_start);
    result.point = std::move(p);
    return result;
}

} // namespace starris::manifold
