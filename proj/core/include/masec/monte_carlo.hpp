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

#include <json.hpp>

#include "masec/deterministic_equivalent.hpp"

namespace masec
{

struct McEstimate
{
    double mean = 0.0;      // nats
    double std_error = 0.0; // sample std / sqrt(trials)
    int trials = 0;
    std::uint64_t seed = 0;
};

/*!
Monte Carlo estimate of E_G log|I + sigma^-2 G^H F F^H G|.

Trial k draws G from an engine seeded with mix_seed(seed, k + 1), and the mean is reduced
in trial order, so the estimate does not depend on `threads`.
*/
McEstimate empirical_eve_rate(const CMat &F, const EveStatistics &stats, const EveSpec &eves,
                              double noise_power, int trials, std::uint64_t seed, int threads = 1);

inline constexpr double kRelErrFloor = 1e-9;

struct DeMcComparison
{
    double de = 0.0;
    McEstimate mc;
    double rel_err = 0.0; // |de - mc| / max(mc, kRelErrFloor)
};

DeMcComparison compare_de_mc(const CMat &F, const EveStatistics &stats, const EveSpec &eves,
                             double noise_power, int trials, std::uint64_t seed, int threads = 1,
                             const SolverOptions &opts = {});

nlohmann::json to_json(const McEstimate &e);
nlohmann::json to_json(const DeMcComparison &c);

} // namespace masec
