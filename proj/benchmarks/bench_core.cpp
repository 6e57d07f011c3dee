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


#include <benchmark/benchmark.h>

#include "masec/gradients.hpp"
#include "masec/monte_carlo.hpp"
#include "masec/position_opt.hpp"

using namespace masec;

namespace
{

struct Setup
{
    SystemConfig cfg;
    EveSpec eves;
    EveStatistics stats;
    CMat H;
    CMat F;
    AntennaLayout layout;

    Setup(int N, int M, int L)
    {
        cfg.n_tx = N;
        cfg.n_eves = M;
        cfg.n_paths = L;
        const Scenario sc = sample_scenario(cfg, ScenarioRanges{}, 7);
        layout = fpa_layout(cfg);
        eves = sc.eve_spec();
        stats = build_eve_statistics(layout, eves, cfg);
        H = build_bob_channel(layout, sc.bob_paths(), cfg);
        Rng rng(3);
        std::normal_distribution<double> g(0.0, 1.0);
        F = CMat::NullaryExpr(N, M, [&] { return cd(g(rng), g(rng)); });
        F *= std::sqrt(cfg.power_budget) / F.norm();
    }
};

void BM_FixedPoint(benchmark::State &state)
{
    const int M = static_cast<int>(state.range(0));
    const Setup s(8, M, 16);
    const FixedPointInput in = make_fixed_point_input(s.F, s.stats, s.cfg.noise_power);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fixed_point(in).delta);
}
BENCHMARK(BM_FixedPoint)->Arg(2)->Arg(4)->Arg(8);

void BM_EvePrecoderGradient(benchmark::State &state)
{
    const Setup s(8, 4, 16);
    const FixedPointSolution sol = solve_fixed_point(make_fixed_point_input(s.F, s.stats, s.cfg.noise_power));
    const bool implicit = state.range(0) != 0;
    for (auto _ : state)
    {
        const CMat g = implicit ? grad_eve_wrt_precoder_implicit(s.F, s.stats, sol, s.cfg.noise_power)
                                : grad_eve_wrt_precoder_envelope(s.F, s.stats, sol, s.cfg.noise_power);
        benchmark::DoNotOptimize(g.data());
    }
}
BENCHMARK(BM_EvePrecoderGradient)->ArgName("implicit")->Arg(0)->Arg(1);

void BM_EvePositionGradient(benchmark::State &state)
{
    const Setup s(8, 4, 16);
    const FixedPointSolution sol = solve_fixed_point(make_fixed_point_input(s.F, s.stats, s.cfg.noise_power));
    for (auto _ : state)
        benchmark::DoNotOptimize(grad_eve_wrt_position_envelope(3, s.layout, s.eves, s.stats, s.F, sol, s.cfg));
}
BENCHMARK(BM_EvePositionGradient);

void BM_MonteCarlo(benchmark::State &state)
{
    const Setup s(8, 4, 16);
    const int trials = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(empirical_eve_rate(s.F, s.stats, s.eves, s.cfg.noise_power, trials, 1).mean);
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_MonteCarlo)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ProjectQp(benchmark::State &state)
{
    SystemConfig cfg;
    cfg.n_tx = 8;
    const AntennaLayout layout{fpa_layout(cfg).positions / cfg.wavelength};
    QpProblem qp;
    qp.v_diag = Vec2(0.4, 1.3);
    qp.f_lin = Vec2(-0.7, 0.2);
    qp.box_x = cfg.box_half_x / cfg.wavelength;
    qp.box_y = cfg.box_half_y / cfg.wavelength;
    qp.halfplanes = linearize_spacing(3, layout, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(project_qp(qp));
}
BENCHMARK(BM_ProjectQp);

} // namespace

BENCHMARK_MAIN();
