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

// Small builders shared by the unit and acceptance tests.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <string>

#include "masec/alternating.hpp"
#include "masec/gradients.hpp"

namespace masec::fixture
{

inline CMat random_cmat(Eigen::Index rows, Eigen::Index cols, Rng &rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CMat A(rows, cols);
    for (Eigen::Index i = 0; i < A.size(); ++i)
    {
        const double re = g(rng);
        const double im = g(rng);
        A(i) = scale * cd(re, im);
    }
    return A;
}

inline CMat scaled_to_power(const CMat &F, double power)
{
    return F * (std::sqrt(power) / F.norm());
}

/// Random well-scaled fixed-point input of size M (sigma^2 = 1).
inline FixedPointInput random_fp_input(int M, Rng &rng)
{
    std::uniform_real_distribution<double> u(0.2, 2.0);
    FixedPointInput in;
    in.b_mean = random_cmat(M, M, rng);
    in.d_row = RVec::NullaryExpr(M, [&] { return u(rng); });
    in.d_col = RVec::NullaryExpr(M, [&] { return u(rng); });
    in.noise_power = 1.0;
    return in;
}

struct Instance
{
    SystemConfig cfg;
    Scenario scenario;
    AntennaLayout layout;
    CMat F;
    EveSpec eves;
    BobPaths paths;
    EveStatistics stats;
    CMat H;
};

/// Default physical scales, FPA layout, random precoder at full power.
inline Instance make_instance(int N, int M, int L, std::uint64_t seed, double fill = 1.0)
{
    Instance in;
    in.cfg.n_tx = N;
    in.cfg.n_eves = M;
    in.cfg.n_paths = L;
    in.scenario = sample_scenario(in.cfg, ScenarioRanges{}, seed);
    in.layout = fpa_layout(in.cfg);
    Rng rng(mix_seed(seed, 99));
    in.F = scaled_to_power(random_cmat(N, M, rng), fill * in.cfg.power_budget);
    in.eves = in.scenario.eve_spec();
    in.paths = in.scenario.bob_paths();
    in.stats = build_eve_statistics(in.layout, in.eves, in.cfg);
    in.H = build_bob_channel(in.layout, in.paths, in.cfg);
    return in;
}

inline std::string temp_dir(const std::string &name)
{
    const auto p = std::filesystem::temp_directory_path() / ("masec_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs the CLI with `args`; returns the exit status.
inline int run_cli(const std::string &args)
{
#ifdef MASEC_CLI
    const std::string cmd = std::string("\"") + MASEC_CLI + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
    (void)args;
    return -1;
#endif
}

} // namespace masec::fixture
