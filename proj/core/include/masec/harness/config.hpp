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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "masec/alternating.hpp"

namespace masec::harness
{

enum class SweepAxis
{
    none,
    n_tx,      // "N"
    n_eves,    // "M"
    n_paths,   // "L"
    k_factor,  // "K_e"
    trials,    // "trials"
    alpha      // "alpha"
};

std::string axis_name(SweepAxis a);
SweepAxis parse_axis(const std::string &s);

struct Sweep
{
    SweepAxis axis = SweepAxis::none;
    std::vector<double> values;
};

/*!
# ExperimentConfig
Everything a subcommand needs. Geometry is given in wavelengths, powers in dBm and angles in
degrees; conversion to SI units happens once, in system() / ranges() / ao_options().

Config files are flat `key = value` lines, `#` starts a comment. See `config_keys()` for the
full key list with defaults.
*/
struct ExperimentConfig
{
    std::map<std::string, std::string> values; // canonical textual form of every key
    std::string out_dir = "out";                // not part of the hash

    ExperimentConfig(); // all defaults

    void set(const std::string &key, const std::string &value); // throws ConfigError on unknown keys
    const std::string &get(const std::string &key) const;
    double number(const std::string &key) const;
    int integer(const std::string &key) const;
    bool flag(const std::string &key) const;
    std::vector<double> number_list(const std::string &key) const;
    std::vector<std::uint64_t> seeds() const;
    Sweep sweep() const;

    SystemConfig system() const;
    ScenarioRanges ranges() const;
    SolverOptions solver() const;
    AoOptions ao_options() const;

    /// Copy with the sweep axis set to `value`.
    ExperimentConfig at_sweep_value(SweepAxis axis, double value) const;

    /// Sorted `key=value` lines; the input of config_hash.
    std::string canonical_text() const;
    void validate() const;
};

struct ConfigKey
{
    std::string key;
    std::string default_value;
    std::string help;
};
const std::vector<ConfigKey> &config_keys();

ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig load_config_file(const std::string &path);

/// Applies one `key=value` override.
void apply_override(ExperimentConfig &cfg, const std::string &assignment);

/// 64-bit FNV-1a of canonical_text(), as 16 hex digits.
std::string config_hash(const ExperimentConfig &cfg);

} // namespace masec::harness
