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

#include <string>
#include <vector>

#include <json.hpp>

#include "masec/harness/config.hpp"
#include "masec/harness/gradcheck.hpp"
#include "masec/harness/output.hpp"

namespace masec::harness
{

/*!
# Subcommands
Each writes its CSV files, `summary.json`, a `timing.csv` sidecar and `manifest.json` into
cfg.out_dir. Everything except timing.csv is a pure function of the config and seeds.

| command        | files                                             |
|----------------|---------------------------------------------------|
| validate-de    | de_vs_mc.csv                                      |
| convergence    | alg1_trace.csv, alg2_trace.csv, ao_trace.csv, ao_results.json |
| benchmark      | benchmark.csv                                     |
| gradcheck      | gradcheck.csv                                     |
*/
struct CommandResult
{
    std::vector<std::string> files; // written, relative to out_dir, manifest excluded
    nlohmann::json summary;
    bool pass = true; // false only for a failing gradcheck
};

CommandResult cmd_validate_de(const ExperimentConfig &cfg);
CommandResult cmd_convergence(const ExperimentConfig &cfg);
CommandResult cmd_benchmark(const ExperimentConfig &cfg);
CommandResult cmd_gradcheck(const ExperimentConfig &cfg, GradFault fault = GradFault::none);

/// Column lists of the CSV files, fixed per command.
const std::vector<std::string> &de_vs_mc_columns();
const std::vector<std::string> &alg1_columns();
const std::vector<std::string> &alg2_columns();
const std::vector<std::string> &ao_columns();
std::vector<std::string> benchmark_columns(bool crosscheck);
const std::vector<std::string> &gradcheck_columns();

/// Method tags used in benchmark rows.
inline const std::vector<std::string> kMethodTags = {"MA+GP", "MA+ZF", "FPA+GP", "FPA+ZF", "DE", "MC"};

/// Random precoder with i.i.d. CN(0,1) entries scaled to ||F||_F^2 = power.
CMat random_precoder(int n_tx, int n_streams, double power, std::uint64_t seed);

} // namespace masec::harness
