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


#include "masec/precoder_opt.hpp"

#include <algorithm>
#include <cmath>

#include "masec/gradients.hpp"
#include "masec/linalg.hpp"

namespace masec
{

void PrecoderOptOptions::validate() const
{
    if (max_iter < 0 || armijo_max_backtracks < 0)
        throw ConfigError("PrecoderOptOptions: iteration counts must be non-negative");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0))
        throw ConfigError("PrecoderOptOptions: armijo_shrink must lie in (0, 1)");
    if (!(armijo_c > 0.0 && armijo_c <= 0.5))
        throw ConfigError("PrecoderOptOptions: armijo_c must lie in (0, 0.5]");
    if (!(grad_tol >= 0.0) || !(initial_step >= 0.0))
        throw ConfigError("PrecoderOptOptions: tolerances and steps must be non-negative");
}

PrecoderObjective secrecy_objective(const CMat &H, const EveStatistics &stats, double noise_power,
                                    const SolverOptions &solver)
{
    PrecoderObjective obj;
    obj.value = [=](const CMat &F) {
        const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
        return rate_bob(H, F, noise_power) - det_equiv_eve_rate(solve_fixed_point(in, solver), in);
    };
    obj.value_and_gradient = [=](const CMat &F) {
        const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
        const FixedPointSolution sol = solve_fixed_point(in, solver);
        const double value = rate_bob(H, F, noise_power) - det_equiv_eve_rate(sol, in);
        CMat g = grad_bob_wrt_precoder(H, F, noise_power) -
                 grad_eve_wrt_precoder_envelope(F, stats, sol, noise_power);
        return std::make_pair(value, std::move(g));
    };
    return obj;
}

CMat retract_trace_ball(const CMat &F_raw, double power)
{
    const double n2 = F_raw.squaredNorm();
    if (n2 <= power)
        return F_raw;
    return F_raw * std::sqrt(power / n2);
}

double projected_gradient_norm(const CMat &F, const CMat &g, double power)
{
    const double n2 = F.squaredNorm();
    if (n2 >= power * (1.0 - 1e-10) && n2 > 0.0)
    {
        const double radial = (F.array().conjugate() * g.array()).sum().real();
        if (radial > 0.0)
            return 2.0 * (g - (radial / n2) * F).norm();
    }
    return 2.0 * g.norm();
}

ArmijoResult armijo_search(const std::function<double(const CMat &)> &objective, const CMat &F,
                           double f0, const CMat &grad, const CMat &direction, double power,
                           double initial_step, const PrecoderOptOptions &opts)
{
    if (real_inner(grad, direction) <= 0.0)
        throw ConfigError("armijo_search: direction is not an ascent direction");
    if (!(initial_step > 0.0))
        throw ConfigError("armijo_search: initial step must be positive");

    ArmijoResult r;
    double step = initial_step;
    for (int k = 0; k <= opts.armijo_max_backtracks; ++k, step *= opts.armijo_shrink)
    {
        CMat trial = retract_trace_ball(F + step * direction, power);
        double f;
        try
        {
            f = objective(trial);
        }
        catch (const NumericalError &)
        {
            continue;
        }
        if (std::isfinite(f) && f >= f0 + opts.armijo_c * real_inner(grad, trial - F))
        {
            r.step = step;
            r.objective = f;
            r.F = std::move(trial);
            r.backtracks = k;
            r.accepted = true;
            return r;
        }
    }
    r.F = F;
    r.objective = f0;
    r.backtracks = opts.armijo_max_backtracks;
    return r;
}

PrecoderResult maximize_on_trace_ball(const PrecoderObjective &objective, const CMat &F0,
                                      double power, const PrecoderOptOptions &opts)
{
    opts.validate();
    if (!(power > 0.0))
        throw ConfigError("maximize_on_trace_ball: power budget must be positive");

    PrecoderResult res;
    CMat F = retract_trace_ball(F0, power);
    auto [f, g] = objective.value_and_gradient(F);
    CMat F_prev, g_prev;
    double last_step = 0.0;
    const double sqrt_p = std::sqrt(power);

    for (int k = 0;; ++k)
    {
        const double pg = projected_gradient_norm(F, g, power);
        res.trace.rows.push_back({k, f, last_step, pg, F.squaredNorm() <= power * (1.0 + 1e-12)});
        if (pg <= opts.grad_tol)
        {
            res.trace.termination = "grad_tol";
            break;
        }
        if (k == opts.max_iter)
        {
            res.trace.termination = "max_iter";
            break;
        }

        const double gnorm = g.norm();
        const double max_step = 2.0 * sqrt_p / gnorm; // one ball diameter
        double step0 = opts.initial_step > 0.0 ? opts.initial_step : sqrt_p / gnorm;
        if (opts.bb_step && k > 0)
        {
            const CMat s = F - F_prev;
            const double sy = -(s.array().conjugate() * (g - g_prev).array()).sum().real();
            if (sy > 0.0)
                step0 = s.squaredNorm() / sy;
            else
                step0 = std::max(2.0 * last_step, step0);
        }
        step0 = std::clamp(step0, 1e-12 * max_step, max_step);

        ArmijoResult ar = armijo_search(objective.value, F, f, g, g, power, step0, opts);
        if (!ar.accepted)
        {
            res.trace.line_search_failed = true;
            res.trace.termination = "line_search";
            break;
        }
        F_prev = std::move(F);
        g_prev = std::move(g);
        F = std::move(ar.F);
        std::tie(f, g) = objective.value_and_gradient(F);
        last_step = ar.step;
    }
    res.F = std::move(F);
    res.objective = f;
    return res;
}

PrecoderResult optimize_precoder(const CMat &H, const EveStatistics &stats, const CMat &F0,
                                 double power, double noise_power, const PrecoderOptOptions &opts)
{
    return maximize_on_trace_ball(secrecy_objective(H, stats, noise_power, opts.solver), F0, power, opts);
}

CMat zf_precoder(const CMat &H, const EveStatistics &stats, double power, double rel_tol)
{
    const Eigen::Index N = H.rows();
    const Eigen::Index M = stats.g_los.cols();
    if (stats.g_los.rows() != N)
        throw ConfigError("zf_precoder: H and G_LoS must have N rows");
    if (H.cols() < M)
        throw ConfigError("zf_precoder: requires L >= M");
    CMat all(N, H.cols() + M);
    all << H, stats.g_los * stats.lambda_los.cwiseSqrt().cast<cd>().asDiagonal();
    const CMat F = pseudo_inverse(all.adjoint(), rel_tol).leftCols(M);
    const double n = F.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericalError("zf_precoder: degenerate pseudo-inverse");
    return F * (std::sqrt(power) / n);
}

CMat default_precoder(const CMat &H, int n_streams, double power)
{
    if (H.cols() < n_streams)
        throw ConfigError("default_precoder: requires L >= M");
    const CMat Hc = H.leftCols(n_streams);
    const double n = Hc.norm();
    if (!(n > 0.0))
        throw NumericalError("default_precoder: zero channel");
    return Hc * (std::sqrt(power) / n);
}

} // namespace masec
