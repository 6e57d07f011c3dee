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

#include "masec/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace masec
{

namespace
{

void require(bool cond, const std::string &msg)
{
    if (!cond)
        throw ConfigError(msg);
}

double uniform_in(const AngleRange &r, Rng &rng)
{
    std::uniform_real_distribution<double> u(r.lo, r.hi);
    return u(rng);
}

} // namespace

void SystemConfig::validate() const
{
    require(n_tx >= 1 && n_eves >= 1 && n_paths >= 1, "SystemConfig: counts must be positive");
    require(n_eves <= n_tx, "SystemConfig: requires M <= N");
    require(n_eves <= n_paths, "SystemConfig: requires M <= L");
    require(wavelength > 0.0 && noise_power > 0.0 && power_budget > 0.0,
            "SystemConfig: wavelength, noise power and power budget must be positive");
    require(box_half_x > 0.0 && box_half_y > 0.0 && min_spacing > 0.0,
            "SystemConfig: box and spacing must be positive");
    require(min_spacing < 2.0 * std::min(box_half_x, box_half_y),
            "SystemConfig: min_spacing must be below 2 min(D_x, D_y)");
}

Direction Direction::from_angles(double elevation, double azimuth)
{
    return Direction{Vec2(std::sin(elevation) * std::cos(azimuth), std::cos(elevation))};
}

double min_pairwise_distance(const AntennaLayout &layout)
{
    double best = std::numeric_limits<double>::infinity();
    for (int n = 0; n < layout.size(); ++n)
        for (int m = n + 1; m < layout.size(); ++m)
            best = std::min(best, (layout.at(n) - layout.at(m)).norm());
    return best;
}

double layout_violation(const AntennaLayout &layout, const SystemConfig &cfg)
{
    double worst = 0.0;
    for (int n = 0; n < layout.size(); ++n)
    {
        const Vec2 t = layout.at(n);
        worst = std::max(worst, std::abs(t(0)) - cfg.box_half_x);
        worst = std::max(worst, std::abs(t(1)) - cfg.box_half_y);
    }
    if (layout.size() > 1)
        worst = std::max(worst, cfg.min_spacing - min_pairwise_distance(layout));
    return worst;
}

void EveSpec::validate() const
{
    require(path_loss.size() == k_factor.size() && direction.size() == static_cast<size_t>(k_factor.size()),
            "EveSpec: per-eavesdropper lists must have equal length");
    for (Eigen::Index m = 0; m < k_factor.size(); ++m)
    {
        require(k_factor(m) >= 0.0, "EveSpec: K-factor must be non-negative");
        require(path_loss(m) > 0.0, "EveSpec: path loss must be positive");
    }
}

void BobPaths::validate() const
{
    require(rx_angle.size() == gain.size() && tx_direction.size() == static_cast<size_t>(gain.size()),
            "BobPaths: per-path lists must have equal length");
}

double los_fraction(double k_factor)
{
    if (k_factor >= kPureLosK)
        return 1.0;
    return k_factor / (k_factor + 1.0);
}

cd field_response(const Vec2 &t, const Direction &dir, double wavelength)
{
    const double phase = 2.0 * kPi / wavelength * t.dot(dir.rho);
    return std::polar(1.0, phase);
}

CVec field_response_vector(const AntennaLayout &layout, const Direction &dir, double wavelength)
{
    CVec a(layout.size());
    for (int n = 0; n < layout.size(); ++n)
        a(n) = field_response(layout.at(n), dir, wavelength);
    return a;
}

cd field_response_derivative(const Vec2 &t, const Direction &dir, double wavelength, int i)
{
    const double k = 2.0 * kPi / wavelength;
    return cd(0.0, k * dir.rho(i)) * field_response(t, dir, wavelength);
}

cd field_response_second_derivative(const Vec2 &t, const Direction &dir, double wavelength,
                                    int i, int j)
{
    const double k = 2.0 * kPi / wavelength;
    return -k * k * dir.rho(i) * dir.rho(j) * field_response(t, dir, wavelength);
}

CVec receive_steering(double rx_angle, int size)
{
    CVec b(size);
    const double s = std::sin(rx_angle);
    for (int k = 0; k < size; ++k)
        b(k) = std::polar(1.0, kPi * k * s);
    return b;
}

CMat receive_steering_matrix(const BobPaths &paths)
{
    const int L = paths.size();
    CMat AR(L, L);
    for (int l = 0; l < L; ++l)
        AR.col(l) = receive_steering(paths.rx_angle(l), L);
    return AR;
}

CMat build_bob_channel(const AntennaLayout &layout, const BobPaths &paths, const SystemConfig &cfg)
{
    paths.validate();
    if (layout.positions.rows() != 2 || layout.size() != cfg.n_tx)
        throw ConfigError("build_bob_channel: layout does not match n_tx");
    if (paths.size() != cfg.n_paths)
        throw ConfigError("build_bob_channel: path count does not match n_paths");

    const int L = paths.size();
    CMat AT(layout.size(), L);
    for (int l = 0; l < L; ++l)
        AT.col(l) = field_response_vector(layout, paths.tx_direction[l], cfg.wavelength);
    return AT * paths.gain.asDiagonal() * receive_steering_matrix(paths).adjoint();
}

EveStatistics build_eve_statistics(const AntennaLayout &layout, const EveSpec &eves,
                                   const SystemConfig &cfg)
{
    eves.validate();
    if (layout.positions.rows() != 2 || layout.size() != cfg.n_tx)
        throw ConfigError("build_eve_statistics: layout does not match n_tx");
    if (eves.size() != cfg.n_eves)
        throw ConfigError("build_eve_statistics: eavesdropper count does not match n_eves");

    const int M = eves.size();
    EveStatistics stats;
    stats.g_los.resize(layout.size(), M);
    stats.lambda_los.resize(M);
    stats.d_nlos.resize(M);
    for (int m = 0; m < M; ++m)
    {
        stats.g_los.col(m) = field_response_vector(layout, eves.direction[m], cfg.wavelength);
        const double los = los_fraction(eves.k_factor(m));
        stats.lambda_los(m) = los * eves.path_loss(m);
        stats.d_nlos(m) = M * (1.0 - los) * eves.path_loss(m);
    }
    return stats;
}

CMat sample_eve_channel(const EveStatistics &stats, const EveSpec &eves, Rng &rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const Eigen::Index N = stats.g_los.rows();
    const Eigen::Index M = stats.g_los.cols();
    CMat G(N, M);
    for (Eigen::Index m = 0; m < M; ++m)
    {
        const double nlos_power = (1.0 - los_fraction(eves.k_factor(m))) * eves.path_loss(m);
        const double los_amp = std::sqrt(stats.lambda_los(m));
        const double nlos_amp = std::sqrt(nlos_power);
        for (Eigen::Index n = 0; n < N; ++n)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            G(n, m) = los_amp * stats.g_los(n, m) + nlos_amp * cd(re, im);
        }
    }
    return G;
}

double path_loss_db(double distance, const PathLossModel &model, double shadowing_db)
{
    if (!(distance > 0.0))
        throw ConfigError("path_loss_db: distance must be positive");
    return model.intercept_db + 10.0 * model.exponent * std::log10(distance) + shadowing_db;
}

double path_loss_db(double distance, const PathLossModel &model, Rng &rng)
{
    double eps = 0.0;
    if (model.shadowing_std_db > 0.0)
    {
        std::normal_distribution<double> shadow(0.0, model.shadowing_std_db);
        eps = shadow(rng);
    }
    return path_loss_db(distance, model, eps);
}

AntennaLayout fpa_layout(const SystemConfig &cfg)
{
    const double spacing = 0.5 * cfg.wavelength;
    const double half_span = 0.5 * (cfg.n_tx - 1) * spacing;
    if (half_span > cfg.box_half_x)
        throw ConfigError("fpa_layout: half-wavelength ULA does not fit in the box");
    AntennaLayout layout{RMat::Zero(2, cfg.n_tx)};
    for (int n = 0; n < cfg.n_tx; ++n)
        layout.positions(0, n) = -half_span + n * spacing;
    return layout;
}

void ScenarioRanges::validate() const
{
    for (const AngleRange *r : {&elevation, &azimuth, &rx_angle})
        require(r->hi > r->lo, "ScenarioRanges: empty angle range");
    require(bob_distance > 0.0 && eve_distance > 0.0, "ScenarioRanges: distances must be positive");
    require(k_factor >= 0.0, "ScenarioRanges: K-factor must be non-negative");
    require(path_loss.exponent > 0.0, "ScenarioRanges: path-loss exponent must be positive");
}

BobPaths Scenario::bob_paths() const
{
    BobPaths p;
    p.gain = bob_gain;
    p.rx_angle = bob_rx_angle;
    p.tx_direction.reserve(bob_gain.size());
    for (Eigen::Index l = 0; l < bob_gain.size(); ++l)
        p.tx_direction.push_back(Direction::from_angles(bob_elevation(l), bob_azimuth(l)));
    return p;
}

EveSpec Scenario::eve_spec() const
{
    EveSpec e;
    e.k_factor = eve_k_factor;
    e.path_loss = eve_path_loss;
    e.direction.reserve(eve_k_factor.size());
    for (Eigen::Index m = 0; m < eve_k_factor.size(); ++m)
        e.direction.push_back(Direction::from_angles(eve_elevation(m), eve_azimuth(m)));
    return e;
}

Scenario sample_scenario(const SystemConfig &cfg, const ScenarioRanges &ranges, Rng &rng)
{
    cfg.validate();
    ranges.validate();
    const int L = cfg.n_paths;
    const int M = cfg.n_eves;

    Scenario s;
    s.bob_distance = ranges.bob_distance;
    s.bob_gain.resize(L);
    s.bob_elevation.resize(L);
    s.bob_azimuth.resize(L);
    s.bob_rx_angle.resize(L);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (int l = 0; l < L; ++l)
    {
        s.bob_elevation(l) = uniform_in(ranges.elevation, rng);
        s.bob_azimuth(l) = uniform_in(ranges.azimuth, rng);
        s.bob_rx_angle(l) = uniform_in(ranges.rx_angle, rng);
        const double var = std::pow(10.0, -0.1 * path_loss_db(ranges.bob_distance, ranges.path_loss, rng));
        const double re = normal(rng);
        const double im = normal(rng);
        s.bob_gain(l) = std::sqrt(var) * cd(re, im);
    }

    s.eve_k_factor = RVec::Constant(M, ranges.k_factor);
    s.eve_path_loss.resize(M);
    s.eve_elevation.resize(M);
    s.eve_azimuth.resize(M);
    s.eve_distance = RVec::Constant(M, ranges.eve_distance);
    for (int m = 0; m < M; ++m)
    {
        s.eve_elevation(m) = uniform_in(ranges.elevation, rng);
        s.eve_azimuth(m) = uniform_in(ranges.azimuth, rng);
        s.eve_path_loss(m) = std::pow(10.0, -0.1 * path_loss_db(ranges.eve_distance, ranges.path_loss, rng));
    }
    return s;
}

Scenario sample_scenario(const SystemConfig &cfg, const ScenarioRanges &ranges, std::uint64_t seed)
{
    Rng rng(mix_seed(seed, 0));
    Scenario s = sample_scenario(cfg, ranges, rng);
    s.seed = seed;
    return s;
}

} // namespace masec
