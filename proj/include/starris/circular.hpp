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

namespace starris {

/// Parameters of a Von Mises distribution on the circle.
struct VonMisesParams {
    double mean = 0.0;          ///< reduced to (-pi, pi] on construction through make_von_mises
    double concentration = 0.0; ///< >= 0; zero is the uniform distribution
};

/// Validates the concentration and wraps the mean. Throws std::domain_error
/// for a negative or non-finite concentration.
VonMisesParams make_von_mises(double mean, double concentration);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// Modified Bessel function of the first kind, I_0 or I_1.
///
/// Power series below x = 15, Hankel asymptotic expansion above. Relative
/// accuracy is better than 1e-12 on [0, 700]; the result overflows to +inf
/// beyond ~709. Throws std::domain_error for x < 0 or order outside {0, 1}.
double bessel_i(int order, double x);

/// exp(-x) * I_order(x). Finite for every x >= 0.
double bessel_i_scaled(int order, double x);

/// Mean resultant length I_1(eps)/I_0(eps) of a zero-mean Von Mises phase
/// error with concentration eps. In [0, 1), nondecreasing.
double concentration_factor(double epsilon);

/// Draws one angle in (-pi, pi]. Best-Fisher rejection sampler with a
/// wrapped-Cauchy envelope.
double sample_von_mises(const VonMisesParams& params, Rng& rng);

} // namespace starris
