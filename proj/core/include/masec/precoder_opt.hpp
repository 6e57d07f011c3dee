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
#include <string>
#include <vector>

#include "masec/deterministic_equivalent.hpp"

namespace masec
{

struct PrecoderOptOptions
{
    int max_iter = 2000;
    double grad_tol = 1e-4;   // on the projected gradient, real coordinates
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    int armijo_max_backtracks = 30;
    double initial_step = 0.0; // 0: sqrt(P) / ||g|| on the first iteration
    bool bb_step = true;       // Barzilai-Borwein trial step after the first iteration
    SolverOptions solver;

    void validate() const;
};

struct PrecoderIterate
{
    int iter = 0;
    double objective = 0.0; // nats
    double step = 0.0;      // accepted step that produced this iterate (0 for the start)
    double grad_norm = 0.0; // projected gradient norm at this iterate
    bool feasible = true;
};

struct PrecoderTrace
{
    std::vector<PrecoderIterate> rows;
    bool line_search_failed = false;
    std::string termination; // "grad_tol", "max_iter" or "line_search"
};

struct PrecoderResult
{
    CMat F;
    double objective = 0.0;
    PrecoderTrace trace;
};

/// Objective to maximize and its conjugate-coordinate gradient.
struct PrecoderObjective
{
    std::function<double(const CMat &)> value;
    std::function<std::pair<double, CMat>(const CMat &)> value_and_gradient;
};

/// R_b - R_e^DE (unclamped) and the gradient grad_bob - grad_eve.
PrecoderObjective secrecy_objective(const CMat &H, const EveStatistics &stats, double noise_power,
                                    const SolverOptions &solver = {});

/// F if ||F||_F^2 <= P, else sqrt(P) F / ||F||_F.
CMat retract_trace_ball(const CMat &F_raw, double power);

/// Norm of the gradient with the outward radial part removed on the ball boundary, in real
/// coordinates (2 ||g_t||_F).
double projected_gradient_norm(const CMat &F, const CMat &g, double power);

struct ArmijoResult
{
    double step = 0.0;
    double objective = 0.0;
    CMat F;
    int backtracks = 0;
    bool accepted = false;
};

/*!
Backtracking along the projection arc F(a) = retract(F + a dir), a = initial_step * shrink^k.
Accepts the first a with

    objective(F(a)) >= objective(F) + c <grad, F(a) - F>,

where <x, y> = 2 Re tr(x^H y). Without retraction the right side is the usual c a <grad, dir>.
*/
ArmijoResult armijo_search(const std::function<double(const CMat &)> &objective, const CMat &F,
                           double f0, const CMat &grad, const CMat &direction, double power,
                           double initial_step, const PrecoderOptOptions &opts);

/// Projected-gradient ascent on a generic objective over the trace ball.
/// A start outside the ball is retracted onto it first.
PrecoderResult maximize_on_trace_ball(const PrecoderObjective &objective, const CMat &F0,
                                      double power, const PrecoderOptOptions &opts = {});

PrecoderResult optimize_precoder(const CMat &H, const EveStatistics &stats, const CMat &F0,
                                 double power, double noise_power, const PrecoderOptOptions &opts = {});

/// First M columns of pinv([H, G_LoS Lambda^{1/2}]^H), scaled to ||F||_F^2 = P.
CMat zf_precoder(const CMat &H, const EveStatistics &stats, double power, double rel_tol = 1e-10);

/// sqrt(P) H_c / ||H_c||_F with H_c the first M columns of H.
CMat default_precoder(const CMat &H, int n_streams, double power);

} // namespace masec
