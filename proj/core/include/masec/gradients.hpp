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

#include "masec/deterministic_equivalent.hpp"

namespace masec
{

/*!
# Gradient conventions
Precoder gradients are conjugate-coordinate derivatives g_ij = d f / d conj(F_ij). For a real
objective, d f / d Re F_ij = 2 Re g_ij and d f / d Im F_ij = 2 Im g_ij, and the first-order
change is df = 2 Re tr(g^H dF). Position gradients are ordinary real 2-vectors d f / d t_n.
All rates are in nats.
*/

/// Implicit-function gradient of det_equiv_eve_rate w.r.t. conj(F). Each entry solves the exact
/// 2 x 2 sensitivity system for (d delta, d delta~).
CMat grad_eve_wrt_precoder_implicit(const CMat &F, const EveStatistics &stats,
                                    const FixedPointSolution &sol, double noise_power);

/// Partial derivative at fixed (delta, delta~). Equal to the implicit gradient at the fixed point.
CMat grad_eve_wrt_precoder_envelope(const CMat &F, const EveStatistics &stats,
                                    const FixedPointSolution &sol, double noise_power);

/// sigma^-2 H (I + sigma^-2 H^H F F^H H)^{-1} H^H F.
CMat grad_bob_wrt_precoder(const CMat &H, const CMat &F, double noise_power);

/// d rate_bob / d t_n.
Vec2 grad_bob_wrt_position(int n, const AntennaLayout &layout, const BobPaths &paths,
                           const CMat &F, const SystemConfig &cfg);

/// d det_equiv_eve_rate / d t_n through the LoS mean; D and D~ do not depend on positions.
Vec2 grad_eve_wrt_position_implicit(int n, const AntennaLayout &layout, const EveSpec &eves,
                                    const EveStatistics &stats, const CMat &F,
                                    const FixedPointSolution &sol, const SystemConfig &cfg);

Vec2 grad_eve_wrt_position_envelope(int n, const AntennaLayout &layout, const EveSpec &eves,
                                    const EveStatistics &stats, const CMat &F,
                                    const FixedPointSolution &sol, const SystemConfig &cfg);

struct FdConfig
{
    double step = 1e-6; // h_i = step * max(|x_i|, scale), or step * scale when not relative
    double scale = 1.0;
    bool relative = true;
};

/// Central differences, one coordinate at a time.
RVec fd_gradient(const std::function<double(const RVec &)> &objective, const RVec &x,
                 const FdConfig &fd = {});

/// [Re F(:); Im F(:)], column-major.
RVec flatten_complex(const CMat &F);
CMat unflatten_complex(const RVec &x, Eigen::Index rows, Eigen::Index cols);

/// A conjugate-coordinate gradient in the real coordinates of flatten_complex: [2 Re g; 2 Im g].
RVec wirtinger_to_real(const CMat &g);

/// max_k |a_k - b_k| / max(||b||_inf, floor).
double gradient_rel_error(const RVec &a, const RVec &b, double floor = 1e-300);

} // namespace masec
