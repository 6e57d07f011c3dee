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

#include <utility>
#include <vector>

#include "masec/channel.hpp"

namespace masec
{

/// Inputs of the fixed point: B = Lambda^{1/2} G_LoS^H F U, D, D~, sigma^2.
///
/// U (`frame`) is a unitary that makes the column correlation U^H F^H F U diagonal, and
/// D~ holds that diagonal. With orthogonal precoder columns U = I and D~ = diag(||f_n||^2).
/// Inputs built by hand may leave `frame` empty.
struct FixedPointInput
{
    CMat b_mean; // M x M
    RVec d_row;  // diag D
    RVec d_col;  // diag D~
    double noise_power = 1.0;
    CMat frame;  // U, M x M

    int size() const { return static_cast<int>(b_mean.rows()); }
    void validate() const;
};

FixedPointInput make_fixed_point_input(const CMat &F, const EveStatistics &stats, double noise_power);

struct SolverOptions
{
    double tol = 1e-10;
    int max_iter = 500;
    double damping = 0.5;
    /// Try a Newton step on the 2-D residual before each damped step; it is kept only when it
    /// lowers the residual. Off gives the plain damped iteration.
    bool accelerate = true;
    bool record_history = false;
};

/*!
# FixedPointSolution
Physical-unit solution (delta, delta~, Gamma, Gamma~, Phi, Phi~).

The iteration itself runs on rescaled scalars delta_n = delta / delta_unit and
delta~_n = delta~ / delta_tilde_unit, where the units are chosen so that D and D~ have
comparable magnitude and sigma^2 becomes 1. `residual` is the max-abs fixed-point
residual in those rescaled coordinates, measured at the returned point.
*/
struct FixedPointSolution
{
    double delta = 0.0;
    double delta_tilde = 0.0;
    CMat gamma;
    CMat gamma_tilde;
    RVec phi;
    RVec phi_tilde;
    int iterations = 0;
    double residual = 0.0;
    double delta_unit = 1.0;
    double delta_tilde_unit = 1.0;
    std::vector<double> residual_history;
};

/// Damped fixed-point iteration from delta = delta~ = 1 (rescaled), optionally Newton-accelerated.
/// Throws ConvergenceError after max_iter, NumericalError on a failed factorization.
FixedPointSolution solve_fixed_point(const FixedPointInput &in, const SolverOptions &opts = {});

/// Rebuilds Phi, Phi~, Gamma, Gamma~ at arbitrary (delta, delta~) in physical units.
/// `residual` is the rescaled residual of the map at that point; iterations = 0.
FixedPointSolution evaluate_fixed_point(const FixedPointInput &in, double delta, double delta_tilde);

/// Unit choice used by solve_fixed_point: {delta_unit, delta_tilde_unit}.
std::pair<double, double> fixed_point_units(const FixedPointInput &in);

/// -log|sigma^2 Gamma| + log|I + delta D~| - sigma^2 M delta delta~, in nats.
double det_equiv_eve_rate(const FixedPointSolution &sol, const FixedPointInput &in);

/// log|I + sigma^-2 H^H F F^H H| in nats.
double rate_bob(const CMat &H, const CMat &F, double noise_power);

struct RateReport
{
    double rate_bob = 0.0;
    double rate_eve_de = 0.0;
    double esr = 0.0; // max(0, rate_bob - rate_eve_de), nats
    double esr_bits = 0.0;

    double signed_gap() const { return rate_bob - rate_eve_de; }
};

RateReport esr(const CMat &H, const CMat &F, const EveStatistics &stats, double noise_power,
               const SolverOptions &opts = {});

} // namespace masec
