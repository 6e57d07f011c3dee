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

#include <functional>
#include <vector>

#include "masec/channel.hpp"

namespace masec
{

struct AmsGradOptions
{
    double beta1 = 0.9;
    double lambda1 = 0.99;
    double beta2 = 0.9;
    double alpha = 0.5;     // in wavelengths
    double eps_v = 1e-12;   // floor on v_hat
    bool running_max = true; // false: v_hat = v (no running maximum)

    void validate() const;
};

struct AmsGradState
{
    Vec2 m_hat = Vec2::Zero();
    Vec2 v_raw = Vec2::Zero();
    Vec2 v_hat = Vec2::Zero();
    int t = 1;
};

struct AmsGradStep
{
    Vec2 offset;       // -alpha_t m_hat / sqrt(v_hat), the unconstrained move
    Vec2 v_weight;     // floored v_hat, the QP metric
    double alpha_t = 0.0;
};

/// One moment update at iteration state.t, which is then incremented.
AmsGradStep amsgrad_step(AmsGradState &state, const Vec2 &grad, const AmsGradOptions &opts);

/// a^T t >= b
struct HalfPlane
{
    Vec2 a;
    double b = 0.0;
};

/// min t^T diag(v) t + 2 f^T t over the box [-bx, bx] x [-by, by] and the half-planes.
struct QpProblem
{
    Vec2 v_diag = Vec2::Ones();
    Vec2 f_lin = Vec2::Zero();
    double box_x = 1.0;
    double box_y = 1.0;
    std::vector<HalfPlane> halfplanes;
};

/// Exact minimizer by enumerating active sets of size 0, 1 and 2.
/// Throws NumericalError when no candidate is feasible.
Vec2 project_qp(const QpProblem &qp);

/// Supporting half-planes u^T (t - t_m) >= min_spacing with u = (t_n - t_m) / ||t_n - t_m||.
std::vector<HalfPlane> linearize_spacing(int n, const AntennaLayout &layout, double min_spacing);

/// Objective to minimize over the position of one antenna, with its gradient (meters).
struct PositionObjective
{
    std::function<double(const Vec2 &)> value;
    std::function<Vec2(const Vec2 &)> gradient;
};

struct PositionOptOptions
{
    AmsGradOptions amsgrad;
    int inner_iter = 50;
};

struct PositionIterate
{
    int iter = 0;
    int antenna = 0;
    double objective = 0.0; // minimization objective, nats
    double step_norm = 0.0; // meters
    bool feasible = true;
};

struct PositionResult
{
    Vec2 position;          // best iterate
    double objective = 0.0; // at `position`
    std::vector<PositionIterate> trace; // row 0 is the starting point
};

/*!
Position optimizer for antenna n: gradient, AMSGrad moments, QP projection onto the box and the
linearized spacing constraints, for opts.inner_iter iterations. The iteration runs in
wavelength units, so alpha is a distance in wavelengths. Returns the best iterate seen,
which includes the starting point.
*/
PositionResult optimize_position(int n, const AntennaLayout &layout, const PositionObjective &objective,
                                 const SystemConfig &cfg, const PositionOptOptions &opts = {});

struct RegretConstants
{
    double d_inf = 0.0; // 2 sqrt(D_x^2 + D_y^2), meters
    double g_inf = 0.0; // 8 pi sqrt(M) / lambda, 1/meters
    double gamma = 0.0; // beta1 / sqrt(beta2)
    AmsGradOptions amsgrad;
    double wavelength = 1.0;

    /// Regret bound after T iterations, with D_inf and G_inf in wavelength units to match alpha.
    double bound(double T) const;
};

RegretConstants regret_constants(const SystemConfig &cfg, const AmsGradOptions &opts = {});

struct RegretReport
{
    std::vector<double> objective;   // L(t_t), t = 1..T
    double reference = 0.0;          // L(t_ref)
    std::vector<double> regret;      // R_T
    std::vector<double> avg_regret;  // R_T / T
};

/// R_T = sum_{t <= T} [L(t_t) - L(t_ref)].
RegretReport empirical_regret(const std::vector<double> &objective, double reference);

/// Best value of the objective on a uniform grid over the box, skipping points that violate
/// the spacing to the other antennas.
std::pair<Vec2, double> grid_reference(int n, const AntennaLayout &layout, const PositionObjective &objective,
                                       const SystemConfig &cfg, double grid_step);

} // namespace masec
