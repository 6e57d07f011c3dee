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


#include "masec/problem.hpp"

#include "masec/gradients.hpp"

namespace masec
{

SecrecyProblem::SecrecyProblem(const SystemConfig &cfg, const Scenario &scenario, const SolverOptions &solver)
    : cfg_(cfg), scenario_(scenario), bob_(scenario.bob_paths()), eves_(scenario.eve_spec()), solver_(solver)
{
    cfg_.validate();
    bob_.validate();
    eves_.validate();
    if (bob_.size() != cfg_.n_paths || eves_.size() != cfg_.n_eves)
        throw ConfigError("SecrecyProblem: scenario does not match the system configuration");
}

CMat SecrecyProblem::bob_channel(const AntennaLayout &layout) const
{
    return build_bob_channel(layout, bob_, cfg_);
}

EveStatistics SecrecyProblem::eve_statistics(const AntennaLayout &layout) const
{
    return build_eve_statistics(layout, eves_, cfg_);
}

double SecrecyProblem::objective(const AntennaLayout &layout, const CMat &F) const
{
    return evaluate(layout, F).signed_gap();
}

RateReport SecrecyProblem::evaluate(const AntennaLayout &layout, const CMat &F) const
{
    return esr(bob_channel(layout), F, eve_statistics(layout), cfg_.noise_power, solver_);
}

PositionObjective SecrecyProblem::position_objective(int n, const AntennaLayout &layout, const CMat &F) const
{
    if (n < 0 || n >= layout.size())
        throw ConfigError("position_objective: antenna index out of range");
    auto moved = [layout, n](const Vec2 &t) {
        AntennaLayout l = layout;
        l.positions.col(n) = t;
        return l;
    };
    PositionObjective obj;
    obj.value = [this, moved, F](const Vec2 &t) { return -objective(moved(t), F); };
    obj.gradient = [this, moved, F, n](const Vec2 &t) {
        const AntennaLayout l = moved(t);
        const EveStatistics stats = eve_statistics(l);
        const FixedPointInput in = make_fixed_point_input(F, stats, cfg_.noise_power);
        const FixedPointSolution sol = solve_fixed_point(in, solver_);
        const Vec2 gb = grad_bob_wrt_position(n, l, bob_, F, cfg_);
        const Vec2 ge = grad_eve_wrt_position_envelope(n, l, eves_, stats, F, sol, cfg_);
        return Vec2(-gb + ge);
    };
    return obj;
}

CMat SecrecyProblem::initial_precoder(const AntennaLayout &layout) const
{
    return default_precoder(bob_channel(layout), cfg_.n_eves, cfg_.power_budget);
}

CMat SecrecyProblem::zf(const AntennaLayout &layout) const
{
    return zf_precoder(bob_channel(layout), eve_statistics(layout), cfg_.power_budget);
}

} // namespace masec
