// SPDX-License-Identifier: Apache-2.0
//
// masec - ergodic secrecy rate analysis and optimization for movable-antenna arrays
// Copyright (C) 2026 The masec authors
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


#include <gtest/gtest.h>

#include "support.hpp"

using namespace masec;

TEST(SystemConfig, DefaultsAreValid)
{
    SystemConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_DOUBLE_EQ(cfg.wavelength, 299792458.0 / 28e9);
    EXPECT_DOUBLE_EQ(cfg.box_half_x, 50.0 * cfg.wavelength);
}

TEST(SystemConfig, RejectsMoreStreamsThanAntennas)
{
    SystemConfig cfg;
    cfg.n_eves = 9;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = SystemConfig{};
    cfg.n_paths = 3;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = SystemConfig{};
    cfg.min_spacing = 2.0 * cfg.box_half_x;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(FieldResponse, KnownPhase)
{
    const double lam = 0.01;
    const Direction d{Vec2(0.5, 0.4)};
    // phase = 2 pi / lam * (0.5 lam * 0.5 + 0.25 lam * 0.4) = 0.7 pi
    const cd a = field_response(Vec2(0.5 * lam, 0.25 * lam), d, lam);
    EXPECT_NEAR(a.real(), -0.587785252292473, 1e-14);
    EXPECT_NEAR(a.imag(), 0.8090169943749475, 1e-14);
}

TEST(FieldResponse, DerivativesMatchDifferences)
{
    const double lam = 0.0107;
    const Direction d = Direction::from_angles(0.3, 0.7);
    const Vec2 t(0.013, -0.004);
    const double h = 1e-7 * lam;
    for (int i = 0; i < 2; ++i)
    {
        Vec2 e = Vec2::Zero();
        e(i) = h;
        const cd fd = (field_response(t + e, d, lam) - field_response(t - e, d, lam)) / (2.0 * h);
        EXPECT_LT(std::abs(fd - field_response_derivative(t, d, lam, i)), 1e-6 * 2 * kPi / lam);
        for (int j = 0; j < 2; ++j)
        {
            Vec2 f = Vec2::Zero();
            f(j) = h;
            const cd fd2 = (field_response_derivative(t + f, d, lam, i) - field_response_derivative(t - f, d, lam, i)) /
                           (2.0 * h);
            EXPECT_LT(std::abs(fd2 - field_response_second_derivative(t, d, lam, i, j)),
                      1e-5 * std::pow(2 * kPi / lam, 2));
        }
    }
}

TEST(Direction, FromAngles)
{
    const Direction d = Direction::from_angles(kPi / 6, kPi / 3);
    EXPECT_NEAR(d.rho(0), 0.25, 1e-15);
    EXPECT_NEAR(d.rho(1), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(PathLoss, FortyMeters)
{
    EXPECT_NEAR(path_loss_db(40.0, PathLossModel{}), 93.44119982655926, 1e-11);
    EXPECT_NEAR(path_loss_db(40.0, PathLossModel{}, 2.5), 95.94119982655926, 1e-11);
    EXPECT_THROW(path_loss_db(0.0, PathLossModel{}), ConfigError);
}

TEST(PathLoss, ShadowingMoments)
{
    Rng rng(5);
    const PathLossModel m;
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k)
    {
        const double e = path_loss_db(1.0, m, rng) - m.intercept_db;
        s += e;
        s2 += e * e;
    }
    EXPECT_NEAR(s / n, 0.0, 5.0 * 5.8 / std::sqrt(n));
    EXPECT_NEAR(std::sqrt(s2 / n), 5.8, 0.05);
}

TEST(LosFraction, Values)
{
    EXPECT_DOUBLE_EQ(los_fraction(4.0), 0.8);
    EXPECT_DOUBLE_EQ(los_fraction(0.0), 0.0);
    EXPECT_DOUBLE_EQ(los_fraction(kPureLosK), 1.0);
}

TEST(ReceiveSteering, HalfWavelengthUla)
{
    const CVec b = receive_steering(kPi / 6, 3);
    EXPECT_NEAR(std::abs(b(0) - cd(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b(1) - cd(0, 1)), 0.0, 1e-15); // e^{j pi / 2}
    EXPECT_NEAR(std::abs(b(2) - cd(-1, 0)), 0.0, 1e-15);
}

TEST(BobChannel, EntriesFollowTheMultipathSum)
{
    const auto in = fixture::make_instance(4, 2, 3, 11);
    for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 3; ++k)
        {
            cd ref = 0.0;
            for (int l = 0; l < 3; ++l)
                ref += field_response(in.layout.at(n), in.paths.tx_direction[l], in.cfg.wavelength) * in.paths.gain(l) *
                       std::conj(std::polar(1.0, kPi * k * std::sin(in.paths.rx_angle(l))));
            EXPECT_LT(std::abs(in.H(n, k) - ref), 1e-12 * std::abs(ref) + 1e-25);
        }
}

TEST(EveStatistics, DiagonalsFromKFactor)
{
    const auto in = fixture::make_instance(4, 2, 3, 12);
    for (int m = 0; m < 2; ++m)
    {
        const double beta = in.eves.path_loss(m);
        EXPECT_DOUBLE_EQ(in.stats.lambda_los(m), 0.8 * beta);
        EXPECT_NEAR(in.stats.d_nlos(m), 2.0 * 0.2 * beta, 1e-15 * beta);
        for (int n = 0; n < 4; ++n)
            EXPECT_NEAR(std::abs(in.stats.g_los(n, m)), 1.0, 1e-15);
    }
}

TEST(EveChannel, SampleMoments)
{
    auto in = fixture::make_instance(2, 1, 1, 13);
    Rng rng(3);
    const int n = 100000;
    CVec mean = CVec::Zero(2);
    double var = 0.0;
    std::vector<CMat> draws;
    for (int k = 0; k < n; ++k)
    {
        const CMat G = sample_eve_channel(in.stats, in.eves, rng);
        mean += G.col(0);
        const CVec dev = G.col(0) - std::sqrt(in.stats.lambda_los(0)) * in.stats.g_los.col(0);
        var += dev.squaredNorm() / 2.0;
    }
    mean /= n;
    var /= n;
    const double beta = in.eves.path_loss(0);
    const CVec expected = std::sqrt(in.stats.lambda_los(0)) * in.stats.g_los.col(0);
    EXPECT_LT((mean - expected).norm(), 0.02 * std::sqrt(beta));
    EXPECT_NEAR(var / (0.2 * beta), 1.0, 0.02);
}

TEST(FpaLayout, CenteredHalfWavelength)
{
    SystemConfig cfg;
    const AntennaLayout l = fpa_layout(cfg);
    ASSERT_EQ(l.size(), 8);
    EXPECT_NEAR(l.positions.row(0).sum(), 0.0, 1e-15);
    EXPECT_NEAR(min_pairwise_distance(l), 0.5 * cfg.wavelength, 1e-15);
    EXPECT_LE(layout_violation(l, cfg), 1e-15);
    cfg.box_half_x = cfg.box_half_y = 1.0 * cfg.wavelength;
    EXPECT_THROW(fpa_layout(cfg), ConfigError);
}

TEST(LayoutViolation, BoxAndSpacing)
{
    SystemConfig cfg;
    cfg.n_tx = 2;
    AntennaLayout l{RMat::Zero(2, 2)};
    l.positions(0, 1) = 0.25 * cfg.wavelength;
    EXPECT_NEAR(layout_violation(l, cfg), 0.25 * cfg.wavelength, 1e-15);
    l.positions(0, 1) = cfg.box_half_x + 1e-3;
    EXPECT_NEAR(layout_violation(l, cfg), 1e-3, 1e-12);
}

TEST(Scenario, SeedDeterminesEverything)
{
    SystemConfig cfg;
    const Scenario a = sample_scenario(cfg, ScenarioRanges{}, std::uint64_t{42});
    const Scenario b = sample_scenario(cfg, ScenarioRanges{}, std::uint64_t{42});
    const Scenario c = sample_scenario(cfg, ScenarioRanges{}, std::uint64_t{43});
    EXPECT_EQ(a.bob_gain, b.bob_gain);
    EXPECT_EQ(a.eve_path_loss, b.eve_path_loss);
    EXPECT_NE(a.bob_gain, c.bob_gain);
    EXPECT_EQ(a.bob_gain.size(), cfg.n_paths);
    EXPECT_EQ(a.eve_k_factor.size(), cfg.n_eves);
    for (Eigen::Index l = 0; l < a.bob_elevation.size(); ++l)
    {
        EXPECT_GE(a.bob_elevation(l), 10.0 * kPi / 180.0);
        EXPECT_LE(a.bob_elevation(l), 30.0 * kPi / 180.0);
        EXPECT_GE(a.bob_rx_angle(l), 40.0 * kPi / 180.0);
        EXPECT_LE(a.bob_rx_angle(l), 70.0 * kPi / 180.0);
    }
}

TEST(Scenario, ValidationErrors)
{
    EveSpec e;
    e.k_factor = RVec::Constant(2, -1.0);
    e.path_loss = RVec::Ones(2);
    e.direction.resize(2);
    EXPECT_THROW(e.validate(), ConfigError);
    ScenarioRanges r;
    r.elevation = {1.0, 0.5};
    EXPECT_THROW(r.validate(), ConfigError);
}
