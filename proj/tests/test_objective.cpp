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

#include "starris/objective.hpp"
#include "starris/statcsi.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace starris;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseProfile random_profile(int n, std::uint64_t seed)
{
    Rng rng(seed);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    Eigen::VectorXd tr(n), re(n);
    for (int i = 0; i < n; ++i) {
        tr[i] = u(rng);
        re[i] = u(rng);
    }
    return PhaseProfile::from_angles(tr, re);
}

// Cost through the literal closed form, one user at a time.
double literal_cost(const SystemConfig& c, const PhaseProfile& p)
{
    double f = 0.0;
    for (int k = 0; k < c.num_users(); ++k)
        f += std::norm(expected_effective_entry(c, p, k));
    return f;
}

// Five-point stencil on the literal cost; O(h^4) truncation.
Eigen::VectorXd literal_gradient(const SystemConfig& c, const PhaseProfile& p)
{
    const int n = c.ris_elements();
    Eigen::VectorXd a(2 * n), g(2 * n);
    a << p.angles(Mode::tr), p.angles(Mode::re);
    auto f = [&](const Eigen::VectorXd& x) { return literal_cost(c, PhaseProfile::from_angles(x.head(n), x.tail(n))); };
    const double h = 1e-4;
    for (int i = 0; i < 2 * n; ++i) {
        Eigen::VectorXd x = a;
        auto at = [&](double s) {
            x[i] = a[i] + s * h;
            return f(x);
        };
        g[i] = (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
    }
    return g;
}

SystemConfig small_config()
{
    SystemConfig c = default_config();
    c.bs_antennas = 4;
    c.ris_rows = 3;
    c.ris_cols = 3;
    return c;
}

} // namespace

TEST(Objective, CostMatchesLiteralClosedForm)
{
    SystemConfig c = default_config();
    ObjectiveContext ctx(c);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PhaseProfile p = random_profile(c.ris_elements(), seed);
        double want = literal_cost(c, p);
        EXPECT_NEAR(ctx.cost(p), want, 1e-9 * want);
    }
    PhaseProfile ones = PhaseProfile::ones(64);
    EXPECT_NEAR(ctx.cost(ones), literal_cost(c, ones), 1e-9 * literal_cost(c, ones));
}

TEST(Objective, ArrayGainAndEntryAgreeWithStatcsi)
{
    SystemConfig c = small_config();
    ObjectiveContext ctx(c);
    PhaseProfile p = random_profile(c.ris_elements(), 31);
    for (int k = 0; k < c.num_users(); ++k) {
        double want = lambda_mn(c, p, k, c.users[k].mode);
        EXPECT_NEAR(ctx.array_gain(p, k), want, 1e-9 * std::max(1.0, std::abs(want)));
        EXPECT_NEAR(std::abs(ctx.effective_entry(p, k) - expected_effective_entry(c, p, k)), 0.0,
                    1e-9 * std::abs(expected_effective_entry(c, p, k)));
    }
}

TEST(Objective, PhaseGradientMatchesFivePointStencil)
{
    SystemConfig c = small_config();
    ObjectiveContext ctx(c);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PhaseProfile p = random_profile(c.ris_elements(), seed);
        Eigen::VectorXd g = ctx.phase_gradient(p);
        Eigen::VectorXd want = literal_gradient(c, p);
        ASSERT_EQ(g.size(), 18);
        EXPECT_LT((g - want).cwiseAbs().maxCoeff(), 1e-6 * want.cwiseAbs().maxCoeff()) << "seed " << seed;
    }
}

TEST(Objective, PhaseGradientMatchesCentralDifferenceOnDefaultScenario)
{
    SystemConfig c = default_config();
    ObjectiveContext ctx(c);
    PhaseProfile p = random_profile(c.ris_elements(), 77);
    Eigen::VectorXd g = ctx.phase_gradient(p);
    Eigen::VectorXd fd = finite_difference_gradient(ctx, p, 1e-6);
    EXPECT_GT(g.dot(fd) / (g.norm() * fd.norm()), 0.999999);
    EXPECT_LT((g - fd).cwiseAbs().maxCoeff(), 1e-5 * fd.cwiseAbs().maxCoeff());
}

TEST(Objective, EuclideanGradientIsTangentLift)
{
    SystemConfig c = small_config();
    ObjectiveContext ctx(c);
    PhaseProfile p = random_profile(c.ris_elements(), 4);
    cvec G = ctx.euclidean_gradient(p);
    Eigen::VectorXd g = ctx.phase_gradient(p);
    cvec s = p.stacked();
    const std::complex<double> j{0.0, 1.0};
    for (Eigen::Index n = 0; n < s.size(); ++n) {
        EXPECT_NEAR(std::abs(G[n] - j * s[n] * g[n]), 0.0, 1e-12 * (1 + std::abs(g[n])));
        EXPECT_NEAR((G[n] * std::conj(s[n])).real(), 0.0, 1e-9 * (1 + std::abs(g[n])));
    }
}

TEST(Objective, ChiZeroMakesCostConstant)
{
    SystemConfig c = small_config();
    c.phase_noise_concentration = 0.0;
    ObjectiveContext ctx(c);
    double f1 = ctx.cost(random_profile(9, 1)), f2 = ctx.cost(random_profile(9, 2));
    EXPECT_EQ(f1, f2);
    EXPECT_EQ(ctx.phase_gradient(random_profile(9, 3)).norm(), 0.0);
}

TEST(Objective, RejectsWrongLength)
{
    ObjectiveContext ctx(small_config());
    EXPECT_THROW(ctx.cost(PhaseProfile::ones(4)), std::invalid_argument);
}

TEST(CentralDifference, ExactOnQuadratics)
{
    Eigen::MatrixXd a(3, 3);
    a << 4, 1, 0, 1, 3, -1, 0, -1, 2;
    Eigen::VectorXd b(3);
    b << 1, -2, 0.5;
    auto f = [&](const Eigen::VectorXd& x) { return 0.5 * x.dot(a * x) + b.dot(x); };
    Eigen::VectorXd x(3);
    x << 0.3, -0.7, 1.1;
    Eigen::VectorXd g = central_difference(f, x, 1e-4);
    EXPECT_LT((g - (a * x + b)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(CentralDifference, RejectsStepOutsideRange)
{
    auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
    Eigen::VectorXd x = Eigen::VectorXd::Ones(2);
    EXPECT_THROW(central_difference(f, x, 1e-3), std::invalid_argument);
    EXPECT_THROW(central_difference(f, x, 1e-9), std::invalid_argument);
    EXPECT_NO_THROW(central_difference(f, x, 1e-8));
}
