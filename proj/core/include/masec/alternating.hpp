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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "masec/monte_carlo.hpp"
#include "masec/problem.hpp"

namespace masec
{

struct AoOptions
{
    int max_outer = 20;
    double outer_tol = 1e-4; // nats, change of the objective between outer iterations
    PrecoderOptOptions precoder;
    PositionOptOptions position;
    bool optimize_positions = true; // false keeps the initial layout (fixed-position baseline)

    void validate() const;
};

struct AoIteration
{
    int outer = 0;
    double objective = 0.0; // R_b - R_e^DE, nats
    double objective_bits = 0.0;
    double esr_bits = 0.0;
    double precoder_ms = 0.0;
    double position_ms = 0.0;
};

struct AoResult
{
    CMat F;
    AntennaLayout layout;
    std::vector<AoIteration> history; // row 0 is the initial point
    std::string termination;          // "outer_tol", "max_outer"
    RateReport report;
};

/*!
Alternates precoder ascent on F (layout fixed) and one sequential sweep of the per-antenna
position optimizer (F fixed). Each block returns a point no worse than its start, so the
history is non-decreasing. Failures are rethrown with the stage and outer index prepended.
*/
AoResult alternating_optimize(const SecrecyProblem &problem, const AntennaLayout &init_layout,
                              const CMat &F0, const AoOptions &opts = {});

/// Starts from fpa_layout and the problem's initial precoder.
AoResult alternating_optimize(const SecrecyProblem &problem, const AoOptions &opts = {});

/// Deterministic serialization. Wall times are left out on purpose.
nlohmann::json to_json(const AoResult &r, LogBase base = LogBase::bits);

struct CrossCheck
{
    int trials = 1000;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct ConfigurationReport
{
    RateReport rates;
    std::optional<DeMcComparison> crosscheck;
};

ConfigurationReport evaluate_configuration(const SecrecyProblem &problem, const CMat &F,
                                           const AntennaLayout &layout,
                                           const std::optional<CrossCheck> &mc = std::nullopt);

nlohmann::json to_json(const RateReport &r);
nlohmann::json to_json(const ConfigurationReport &r);

} // namespace masec
