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

#pragma once

#include <vector>

#include "masec/types.hpp"

namespace masec
{

enum class LogBase
{
    nats,
    bits
};

/*!
# SystemConfig
Scalar system parameters shared by every module.

- `n_tx` transmit movable antennas N
- `n_eves` data streams M, also the number of cooperating single-antenna eavesdroppers
- `n_paths` Bob's receive antennas L, equal to the number of Bob propagation paths
- geometry in meters; powers in watts (linear)
- the movement region of every antenna is the box [-box_half_x, box_half_x] x [-box_half_y, box_half_y]
*/
struct SystemConfig
{
    int n_tx = 8;
    int n_eves = 4;
    int n_paths = 16;
    double wavelength = kSpeedOfLight / 28e9;
    double noise_power = 1e-12; // -90 dBm
    double power_budget = 0.01; // 10 dBm
    double box_half_x = 50.0 * wavelength;
    double box_half_y = 50.0 * wavelength;
    double min_spacing = 0.5 * wavelength;
    LogBase log_base = LogBase::bits;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    double wavenumber() const { return 2.0 * kPi / wavelength; }
};

/// Direction cosines rho = [sin(theta) cos(phi), cos(theta)].
struct Direction
{
    Vec2 rho = Vec2::Zero();

    static Direction from_angles(double elevation, double azimuth);
};

/// Columns are antenna coordinates t_n in meters.
struct AntennaLayout
{
    RMat positions; // 2 x N

    int size() const { return static_cast<int>(positions.cols()); }
    Vec2 at(int n) const { return positions.col(n); }
};

/// Largest violation of the box and spacing constraints (0 when feasible).
double layout_violation(const AntennaLayout &layout, const SystemConfig &cfg);

/// Smallest pairwise distance between distinct antennas (+inf for N < 2).
double min_pairwise_distance(const AntennaLayout &layout);

struct EveSpec
{
    RVec k_factor;                  // K_{e,m} >= 0
    RVec path_loss;                 // beta_{e,m} > 0, linear power gain
    std::vector<Direction> direction;

    int size() const { return static_cast<int>(k_factor.size()); }
    void validate() const;
};

struct BobPaths
{
    CVec gain; // complex beta_{b,l}
    std::vector<Direction> tx_direction;
    RVec rx_angle; // radians, AoA at Bob's ULA

    int size() const { return static_cast<int>(gain.size()); }
    void validate() const;
};

struct EveStatistics
{
    CMat g_los;      // N x M, unit-modulus entries
    RVec lambda_los; // diag of Lambda: K beta / (K + 1)
    RVec d_nlos;     // diag of D: M beta / (K + 1)
};

struct PathLossModel
{
    double intercept_db = 61.4;
    double exponent = 2.0;
    double shadowing_std_db = 5.8;
};

/// K-factors at or above this are treated as pure line of sight.
inline constexpr double kPureLosK = 1e12;

/// Fraction of the eavesdropper power in the LoS component, K / (K + 1).
double los_fraction(double k_factor);

/// exp(j 2pi/lambda t^T rho).
cd field_response(const Vec2 &t, const Direction &dir, double wavelength);

/// a(T, rho): one field response per antenna.
CVec field_response_vector(const AntennaLayout &layout, const Direction &dir, double wavelength);

/// d/dt_i of field_response: j (2pi/lambda) rho_i exp(j 2pi/lambda t^T rho).
cd field_response_derivative(const Vec2 &t, const Direction &dir, double wavelength, int i);

/// d^2/(dt_i dt_j): -(2pi/lambda)^2 rho_i rho_j exp(j 2pi/lambda t^T rho).
cd field_response_second_derivative(const Vec2 &t, const Direction &dir, double wavelength,
                                    int i, int j);

/// Half-wavelength ULA steering vector with `size` elements.
CVec receive_steering(double rx_angle, int size);

/// A_R = [b_1, ..., b_L] for Bob's ULA.
CMat receive_steering_matrix(const BobPaths &paths);

/// H = A_T diag(beta_b) A_R^H, N x L.
CMat build_bob_channel(const AntennaLayout &layout, const BobPaths &paths, const SystemConfig &cfg);

EveStatistics build_eve_statistics(const AntennaLayout &layout, const EveSpec &eves,
                                   const SystemConfig &cfg);

/// One Rician draw of the eavesdropper channel G (N x M).
CMat sample_eve_channel(const EveStatistics &stats, const EveSpec &eves, Rng &rng);

/// theta(d) = a + 10 b log10(d) + eps, with eps given explicitly.
double path_loss_db(double distance, const PathLossModel &model, double shadowing_db = 0.0);

/// Same, with eps ~ N(0, shadowing_std_db^2) drawn from `rng`.
double path_loss_db(double distance, const PathLossModel &model, Rng &rng);

/// Half-wavelength ULA along x, centered at the origin.
AntennaLayout fpa_layout(const SystemConfig &cfg);

struct AngleRange
{
    double lo = 0.0;
    double hi = 0.0;
};

/// Sampling ranges for one scenario (angles in radians).
struct ScenarioRanges
{
    AngleRange elevation{10.0 * kPi / 180.0, 30.0 * kPi / 180.0};
    AngleRange azimuth{10.0 * kPi / 180.0, 30.0 * kPi / 180.0};
    AngleRange rx_angle{40.0 * kPi / 180.0, 70.0 * kPi / 180.0};
    double bob_distance = 40.0;
    double eve_distance = 40.0;
    double k_factor = 4.0;
    PathLossModel path_loss;

    void validate() const;
};

/// One realized propagation environment. Angles are the source of truth;
/// directions are derived on demand.
struct Scenario
{
    std::uint64_t seed = 0;

    CVec bob_gain;
    RVec bob_elevation;
    RVec bob_azimuth;
    RVec bob_rx_angle;
    double bob_distance = 0.0;

    RVec eve_k_factor;
    RVec eve_path_loss;
    RVec eve_elevation;
    RVec eve_azimuth;
    RVec eve_distance;

    BobPaths bob_paths() const;
    EveSpec eve_spec() const;
};

Scenario sample_scenario(const SystemConfig &cfg, const ScenarioRanges &ranges, Rng &rng);

/// Deterministic scenario for a seed: the engine is seeded with mix_seed(seed, 0).
Scenario sample_scenario(const SystemConfig &cfg, const ScenarioRanges &ranges, std::uint64_t seed);

} // namespace masec
