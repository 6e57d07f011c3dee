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


#include "masec/alternating.hpp"

#include <chrono>
#include <cmath>

namespace masec
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class Fn>
auto annotated(const std::string &stage, int outer, Fn &&fn)
{
    const std::string where = "ao " + stage + " stage, outer iteration " + std::to_string(outer) + ": ";
    try
    {
        return fn();
    }
    catch (const ConvergenceError &e)
    {
        throw ConvergenceError(where + e.what(), e.residual(), e.iterations());
    }
    catch (const NumericalError &e)
    {
        throw NumericalError(where + e.what());
    }
}

AoIteration record(int outer, const RateReport &r)
{
    AoIteration it;
    it.outer = outer;
    it.objective = r.signed_gap();
    it.objective_bits = nats_to_bits(it.objective);
    it.esr_bits = r.esr_bits;
    return it;
}

} // namespace

void AoOptions::validate() const
{
    if (max_outer < 0)
        throw ConfigError("AoOptions: max_outer must be non-negative");
    if (!(outer_tol > 0.0))
        throw ConfigError("AoOptions: outer_tol must be positive");
    precoder.validate();
    position.amsgrad.validate();
}

AoResult alternating_optimize(const SecrecyProblem &problem, const AntennaLayout &init_layout,
                              const CMat &F0, const AoOptions &opts)
{
    opts.validate();
    const SystemConfig &cfg = problem.config();
    if (layout_violation(init_layout, cfg) > 1e-10)
        throw ConfigError("alternating_optimize: initial layout is infeasible");

    AoResult res;
    res.layout = init_layout;
    res.F = retract_trace_ball(F0, cfg.power_budget);
    res.report = annotated("initial", 0, [&] { return problem.evaluate(res.layout, res.F); });
    res.history.push_back(record(0, res.report));
    res.termination = "max_outer";

    for (int k = 1; k <= opts.max_outer; ++k)
    {
        auto t0 = Clock::now();
        annotated("precoder", k, [&] {
            const PrecoderResult pr = optimize_precoder(problem.bob_channel(res.layout), problem.eve_statistics(res.layout),
                                                        res.F, cfg.power_budget, cfg.noise_power, opts.precoder);
            res.F = pr.F;
            return 0;
        });
        const double precoder_ms = ms_since(t0);

        t0 = Clock::now();
        if (opts.optimize_positions)
        {
            annotated("position", k, [&] {
                for (int n = 0; n < res.layout.size(); ++n)
                {
                    const PositionObjective obj = problem.position_objective(n, res.layout, res.F);
                    const PositionResult pr = optimize_position(n, res.layout, obj, cfg, opts.position);
                    res.layout.positions.col(n) = pr.position;
                }
                return 0;
            });
        }
        const double position_ms = ms_since(t0);

        res.report = annotated("evaluation", k, [&] { return problem.evaluate(res.layout, res.F); });
        AoIteration it = record(k, res.report);
        it.precoder_ms = precoder_ms;
        it.position_ms = position_ms;
        const double change = std::abs(it.objective - res.history.back().objective);
        res.history.push_back(it);
        if (change < opts.outer_tol)
        {
            res.termination = "outer_tol";
            break;
        }
    }
    return res;
}

AoResult alternating_optimize(const SecrecyProblem &problem, const AoOptions &opts)
{
    const AntennaLayout layout = fpa_layout(problem.config());
    return alternating_optimize(problem, layout, problem.initial_precoder(layout), opts);
}

nlohmann::json to_json(const AoResult &r, LogBase base)
{
    nlohmann::json hist = nlohmann::json::array();
    for (const auto &it : r.history)
        hist.push_back({{"outer", it.outer},
                        {"objective_nats", it.objective},
                        {"objective_bits", it.objective_bits},
                        {"esr_bits", it.esr_bits}});
    nlohmann::json layout = nlohmann::json::array();
    for (int n = 0; n < r.layout.size(); ++n)
        layout.push_back({r.layout.positions(0, n), r.layout.positions(1, n)});
    nlohmann::json F = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.F.rows(); ++i)
    {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < r.F.cols(); ++j)
            row.push_back({r.F(i, j).real(), r.F(i, j).imag()});
        F.push_back(row);
    }
    nlohmann::json out = {{"termination", r.termination},
                          {"history", hist},
                          {"layout_m", layout},
                          {"precoder", F},
                          {"rates", to_json(r.report)}};
    out["esr"] = base == LogBase::bits ? r.report.esr_bits : r.report.esr;
    out["esr_unit"] = base == LogBase::bits ? "bits" : "nats";
    return out;
}

ConfigurationReport evaluate_configuration(const SecrecyProblem &problem, const CMat &F,
                                           const AntennaLayout &layout, const std::optional<CrossCheck> &mc)
{
    ConfigurationReport out;
    out.rates = problem.evaluate(layout, F);
    if (mc)
        out.crosscheck = compare_de_mc(F, problem.eve_statistics(layout), problem.eve_spec(),
                                       problem.config().noise_power, mc->trials, mc->seed, mc->threads,
                                       problem.solver());
    return out;
}

nlohmann::json to_json(const RateReport &r)
{
    return {{"rate_bob_nats", r.rate_bob},
            {"rate_eve_de_nats", r.rate_eve_de},
            {"esr_nats", r.esr},
            {"esr_bits", r.esr_bits},
            {"signed_gap_nats", r.signed_gap()}};
}

nlohmann::json to_json(const ConfigurationReport &r)
{
    nlohmann::json out = {{"rates", to_json(r.rates)}};
    if (r.crosscheck)
        out["crosscheck"] = to_json(*r.crosscheck);
    return out;
}

} // namespace masec
