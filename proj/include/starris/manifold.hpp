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

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace starris::manifold {

using cvec = Eigen::VectorXcd;

/// Real inner product Re(a^H b) on C^n.
double inner(const cvec& a, const cvec& b);

/// v - Re(v .* conj(p)) .* p
cvec project_to_tangent(const cvec& p, const cvec& v);

/// Same as project_to_tangent applied to the Euclidean gradient.
cvec riemannian_gradient(const cvec& p, const cvec& euclidean_grad);

/// Vector transport by projection onto the tangent space at p_to.
cvec transport(const cvec& p_from, const cvec& p_to, const cvec& t);

/// Polak-Ribiere parameter
///   Re<g_new - T(g_old), g_new> / ||g_old||^2, clamped below at zero.
double pr_beta(const cvec& grad_new, const cvec& grad_old, const cvec& grad_old_transported);

/// -grad_new + beta * dir_old_transported; falls back to -grad_new when the
/// result is not a descent direction.
cvec conjugate_direction(const cvec& grad_new, double beta, const cvec& dir_old_transported);

/// Raised when p_n + step * d_n is too close to zero to normalize.
class AntipodalRetraction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (p + step d) ./ |p + step d|
cvec retract(const cvec& p, const cvec& direction, double step);

/// max_n | |p_n| - 1 |
double modulus_deviation(const cvec& p);

/// max_n | Re(v_n conj(p_n)) |
double tangency_residual(const cvec& p, const cvec& v);

using CostFn = std::function<double(const cvec&)>;
using GradFn = std::function<cvec(const cvec&)>;

struct ArmijoOptions {
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
    int max_backtracks = 50;
};

struct ArmijoResult {
    double step = 0.0;
    double cost = 0.0;
    int backtracks = 0;
};

/// Largest step initial_step * shrink^m (m = 0..max_backtracks) with
///   f(retract(p, d, step)) <= f(p) + c * step * Re<grad, d>.
/// Returns nullopt when no trial step is accepted. Trial points where the cost
/// throws std::runtime_error count as rejected.
std::optional<ArmijoResult> armijo_step(const CostFn& cost, const cvec& p, double cost_at_p, const cvec& direction,
                                        const cvec& grad, const ArmijoOptions& options = {});

enum class Termination { converged, max_iterations, line_search_failed };

const char* to_string(Termination t);

struct IterationRecord {
    int iteration = 0;
    double objective = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
    double beta = 0.0;
    double modulus_deviation = 0.0;
    double tangency_residual = 0.0;
    double wall_seconds = 0.0; ///< time spent producing this record
};

struct SolverTrace {
    std::vector<IterationRecord> records;
    int iterations = 0;
    double wall_seconds = 0.0;
    Termination termination = Termination::max_iterations;
};

struct SolverOptions {
    double tolerance = 1e-3;
    int max_iterations = 200;
    ArmijoOptions armijo; ///< armijo.initial_step caps the first trial step
    /// Start each line search at min(initial_step, 2.02 (f_prev - f) / -<g, d>)
    /// instead of initial_step. With a fixed unit start the search keeps
    /// accepting steps that jump across a minimum for a marginal decrease.
    bool adaptive_initial_step = true;
    /// Powell restart: beta = 0 when |<g_new, T(g_old)>| >= threshold ||g_new||^2.
    double restart_threshold = 0.1;
};

struct SolverResult {
    cvec point;
    SolverTrace trace;
};

/// Riemannian conjugate gradient on the product of complex circles.
///
/// grad must return the Euclidean (ambient) gradient; it is projected onto
/// the tangent space before use. Stops when ||grad_R f|| < tolerance or after
/// max_iterations. Records one trace entry per accepted iterate, starting
/// with the initial point as iteration 0.
SolverResult solve_rcg(const CostFn& cost, const GradFn& grad, const cvec& p0, const SolverOptions& options);

} // namespace starris::manifold
