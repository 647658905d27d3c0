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

#include <array>

namespace starris {

/// Unit-modulus phase-shift coefficients of the surface, one N-vector per mode.
struct PhaseProfile {
    std::array<cvec, 2> values;

    const cvec& operator[](Mode mode) const { return values[static_cast<int>(mode)]; }
    cvec& operator[](Mode mode) { return values[static_cast<int>(mode)]; }

    Eigen::Index elements() const { return values[0].size(); }

    /// theta = 0 in both modes.
    static PhaseProfile ones(int elements);
    static PhaseProfile from_angles(const Eigen::VectorXd& tr, const Eigen::VectorXd& re);

    /// Phase angles in (-pi, pi].
    Eigen::VectorXd angles(Mode mode) const;

    /// [tr; re] as one 2N vector, the layout the manifold solver works on.
    cvec stacked() const;
    static PhaseProfile unstack(const cvec& stacked);
};

} // namespace starris
