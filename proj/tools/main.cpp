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


// masec: batch experiments for the ergodic secrecy rate of movable-antenna MIMOME links.
//
//   masec validate-de  --config exp.cfg --seed 1-10 --out runs/de --sweep M=1,2,3,4,5,6
//   masec convergence  --seed 1,2,3 --out runs/conv
//   masec benchmark    --sweep N=4,6,8 --seed 1-30 --out runs/bench --mc-crosscheck
//   masec gradcheck    --out runs/grad
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure (including a failing gradcheck).

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "masec/harness/experiments.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags
{
    std::string config;
    std::string seeds;
    std::string out;
    int trials = 0;
    std::string sweep;
    bool mc_crosscheck = false;
    int threads = 0;
    std::vector<std::string> overrides;
    bool inject_sign_fault = false;
};

void add_common(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--config", f.config, "flat key = value config file");
    cmd->add_option("--seed", f.seeds, "seed list, e.g. 1,2,5-9");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials");
    cmd->add_option("--sweep", f.sweep, "AXIS=v1,v2,... (N, M, L, K_e, trials, alpha)");
    cmd->add_flag("--mc-crosscheck", f.mc_crosscheck, "add Monte Carlo columns to benchmark rows");
    cmd->add_option("--threads", f.threads, "worker threads across sweep cells");
    cmd->add_option("--set", f.overrides, "override any config key: --set key=value")->take_all();
}

masec::harness::ExperimentConfig build_config(const Flags &f)
{
    using namespace masec::harness;
    ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : load_config_file(f.config);
    for (const auto &o : f.overrides)
        apply_override(cfg, o);
    if (!f.seeds.empty())
        cfg.set("seeds", f.seeds);
    if (!f.out.empty())
        cfg.out_dir = f.out;
    if (f.trials > 0)
        cfg.set("trials", std::to_string(f.trials));
    if (!f.sweep.empty())
        cfg.set("sweep", f.sweep);
    if (f.mc_crosscheck)
        cfg.set("mc_crosscheck", "true");
    if (f.threads > 0)
        cfg.set("threads", std::to_string(f.threads));
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    using namespace masec::harness;

    CLI::App app{"masec: ergodic secrecy rate experiments for movable-antenna arrays"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version());

    Flags flags;
    auto *validate = app.add_subcommand("validate-de", "deterministic equivalent vs Monte Carlo");
    auto *convergence = app.add_subcommand("convergence", "optimizer convergence traces");
    auto *benchmark = app.add_subcommand("benchmark", "MA/FPA x GP/ZF comparison");
    auto *gradcheck = app.add_subcommand("gradcheck", "gradient verification suite");
    for (auto *cmd : {validate, convergence, benchmark, gradcheck})
        add_common(cmd, flags);
    gradcheck->add_flag("--inject-sign-fault", flags.inject_sign_fault, "negative control: flip one gradient")
        ->group("");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        const ExperimentConfig cfg = build_config(flags);
        CommandResult res;
        if (validate->parsed())
            res = cmd_validate_de(cfg);
        else if (convergence->parsed())
            res = cmd_convergence(cfg);
        else if (benchmark->parsed())
            res = cmd_benchmark(cfg);
        else
            res = cmd_gradcheck(cfg, flags.inject_sign_fault ? GradFault::flip_eve_precoder_sign : GradFault::none);
        std::cout << res.summary.dump(2) << "\n";
        if (!res.pass)
        {
            std::cerr << "masec: gradient check failed\n";
            return kExitNumerical;
        }
        return kExitOk;
    }
    catch (const masec::ConfigError &e)
    {
        std::cerr << "masec: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const masec::NumericalError &e)
    {
        std::cerr << "masec: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}
