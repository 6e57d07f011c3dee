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

#include "masec/position_opt.hpp"
#include "masec/precoder_opt.hpp"

namespace masec
{

/*!
# SecrecyProblem
One scenario bound to a system configuration. Evaluates the deterministic-equivalent
secrecy objective R_b - R_e^DE (nats, unclamped) for any layout and precoder, and builds
the per-antenna position objectives used by the position optimizer.
*/
class SecrecyProblem
{
public:
    SecrecyProblem(const SystemConfig &cfg, const Scenario &scenario, const SolverOptions &solver = {});

    const SystemConfig &config() const { return cfg_; }
    const Scenario &scenario() const { return scenario_; }
    const BobPaths &bob_paths() const { return bob_; }
    const EveSpec &eve_spec() const { return eves_; }
    const SolverOptions &solver() const { return solver_; }

    CMat bob_channel(const AntennaLayout &layout) const;
    EveStatistics eve_statistics(const AntennaLayout &layout) const;

    double objective(const AntennaLayout &layout, const CMat &F) const;
    RateReport evaluate(const AntennaLayout &layout, const CMat &F) const;

    /// L(t) = -(R_b - R_e^DE) with antenna n at t and everything else fixed.
    PositionObjective position_objective(int n, const AntennaLayout &layout, const CMat &F) const;

    /// Scaled first M columns of H.
    CMat initial_precoder(const AntennaLayout &layout) const;
    CMat zf(const AntennaLayout &layout) const;

private:
    SystemConfig cfg_;
    Scenario scenario_;
    BobPaths bob_;
    EveSpec eves_;
    SolverOptions solver_;
};

} // namespace masec
