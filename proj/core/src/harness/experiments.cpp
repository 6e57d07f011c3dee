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


#include "masec/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <map>
#include <thread>

namespace masec::harness
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string path_in(const ExperimentConfig &cfg, const std::string &name)
{
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

struct Cell
{
    SweepAxis axis = SweepAxis::none;
    double value = 0.0;
    std::uint64_t seed = 0;

    std::string label() const
    {
        return axis_name(axis) + "=" + fmt(value) + " seed=" + std::to_string(seed);
    }
};

std::vector<Cell> make_cells(const Sweep &sweep, const std::vector<std::uint64_t> &seeds)
{
    std::vector<Cell> cells;
    const std::vector<double> values = sweep.axis == SweepAxis::none ? std::vector<double>{0.0} : sweep.values;
    for (double v : values)
        for (auto s : seeds)
            cells.push_back({sweep.axis, v, s});
    return cells;
}

/// Runs fn(i) for every cell on `threads` workers. The first failure in cell order is rethrown
/// with the cell label prepended; the exception type is preserved.
template <class Fn>
void run_cells(const std::vector<Cell> &cells, int threads, Fn fn)
{
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < cells.size(); i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();

    for (size_t i = 0; i < cells.size(); ++i)
    {
        if (!errors[i])
            continue;
        const std::string where = cells[i].label() + ": ";
        try
        {
            std::rethrow_exception(errors[i]);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(where + e.what());
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
}

ExperimentConfig cell_config(const ExperimentConfig &cfg, const Cell &c)
{
    return cfg.at_sweep_value(c.axis, c.value);
}

Sweep sweep_or(const ExperimentConfig &cfg, SweepAxis axis, std::vector<double> values)
{
    Sweep s = cfg.sweep();
    if (s.axis == SweepAxis::none)
    {
        s.axis = axis;
        s.values = std::move(values);
    }
    return s;
}

void finish(const ExperimentConfig &cfg, const std::string &command, CommandResult &res,
            const CsvTable &timing)
{
    timing.write(path_in(cfg, "timing.csv"));
    write_json(path_in(cfg, "summary.json"), res.summary);
    res.files.push_back("summary.json");
    res.files.push_back("timing.csv");
    std::sort(res.files.begin(), res.files.end());
    write_manifest(cfg.out_dir, {command, cfg.seeds(), res.files}, cfg);
}

std::string axis_value(const Cell &c)
{
    return c.axis == SweepAxis::none ? "0" : fmt(c.value);
}

double mean(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

const std::vector<std::string> &de_vs_mc_columns()
{
    static const std::vector<std::string> c = {"axis", "value", "seed", "n_tx", "n_eves", "n_paths",
                                               "k_factor", "trials", "rate_bob_nats", "eve_de_nats",
                                               "eve_mc_nats", "eve_mc_se_nats", "rel_err", "esr_de_bits",
                                               "esr_mc_bits"};
    return c;
}

const std::vector<std::string> &alg1_columns()
{
    static const std::vector<std::string> c = {"n_tx", "seed", "iter", "objective_nats", "objective_bits",
                                               "step", "grad_norm", "feasible"};
    return c;
}

const std::vector<std::string> &alg2_columns()
{
    static const std::vector<std::string> c = {"alpha", "seed", "antenna_index", "iter", "global_iter",
                                               "objective_nats", "iterate_objective_nats", "step_norm",
                                               "feasible"};
    return c;
}

const std::vector<std::string> &ao_columns()
{
    static const std::vector<std::string> c = {"seed", "outer", "objective_nats", "objective_bits", "esr_bits"};
    return c;
}

std::vector<std::string> benchmark_columns(bool crosscheck)
{
    std::vector<std::string> c = {"axis", "value", "seed", "method", "esr_bits", "rate_bob_nats",
                                  "rate_eve_de_nats", "signed_gap_bits"};
    if (crosscheck)
        for (const char *extra : {"eve_mc_nats", "eve_mc_se_nats", "de_mc_rel_err"})
            c.push_back(extra);
    return c;
}

const std::vector<std::string> &gradcheck_columns()
{
    static const std::vector<std::string> c = {"operation", "max_rel_err", "tolerance", "instances", "pass"};
    return c;
}

CMat random_precoder(int n_tx, int n_streams, double power, std::uint64_t seed)
{
    Rng rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CMat F(n_tx, n_streams);
    for (Eigen::Index i = 0; i < F.size(); ++i)
    {
        const double re = g(rng);
        const double im = g(rng);
        F(i) = cd(re, im);
    }
    return F * (std::sqrt(power) / F.norm());
}

CommandResult cmd_validate_de(const ExperimentConfig &cfg)
{
    cfg.validate();
    ensure_directory(cfg.out_dir);
    const Sweep sweep = sweep_or(cfg, SweepAxis::n_eves, {1, 2, 3, 4, 5, 6});
    for (double v : sweep.values)
        cfg.at_sweep_value(sweep.axis, v).validate();
    const auto cells = make_cells(sweep, cfg.seeds());

    std::vector<std::vector<std::string>> rows(cells.size());
    std::vector<double> rel(cells.size()), runtime(cells.size());
    std::vector<int> n_eves(cells.size());
    run_cells(cells, cfg.integer("threads"), [&](size_t i) {
        const auto t0 = Clock::now();
        const ExperimentConfig c = cell_config(cfg, cells[i]);
        const SystemConfig sys = c.system();
        const Scenario sc = sample_scenario(sys, c.ranges(), cells[i].seed);
        const AntennaLayout layout = fpa_layout(sys);
        const EveSpec eves = sc.eve_spec();
        const EveStatistics stats = build_eve_statistics(layout, eves, sys);
        const CMat H = build_bob_channel(layout, sc.bob_paths(), sys);
        const CMat F = random_precoder(sys.n_tx, sys.n_eves, sys.power_budget, mix_seed(cells[i].seed, 101));
        const int trials = c.integer("trials");
        const DeMcComparison cmp = compare_de_mc(F, stats, eves, sys.noise_power, trials,
                                                 mix_seed(cells[i].seed, 202), 1, c.solver());
        const double rb = rate_bob(H, F, sys.noise_power);
        rows[i] = {axis_name(cells[i].axis), axis_value(cells[i]), std::to_string(cells[i].seed),
                   std::to_string(sys.n_tx), std::to_string(sys.n_eves), std::to_string(sys.n_paths),
                   fmt(c.number("k_factor")), std::to_string(trials), fmt(rb), fmt(cmp.de), fmt(cmp.mc.mean),
                   fmt(cmp.mc.std_error), fmt(cmp.rel_err), fmt(nats_to_bits(std::max(0.0, rb - cmp.de))),
                   fmt(nats_to_bits(std::max(0.0, rb - cmp.mc.mean)))};
        rel[i] = cmp.rel_err;
        n_eves[i] = sys.n_eves;
        runtime[i] = ms_since(t0);
    });

    CsvTable table(de_vs_mc_columns());
    CsvTable timing({"axis", "value", "seed", "runtime_ms"});
    double max_rel = 0.0, max_rel_m3 = 0.0;
    for (size_t i = 0; i < cells.size(); ++i)
    {
        table.add(rows[i]);
        timing.add({axis_name(cells[i].axis), axis_value(cells[i]), std::to_string(cells[i].seed), fmt(runtime[i])});
        max_rel = std::max(max_rel, rel[i]);
        if (n_eves[i] >= 3)
            max_rel_m3 = std::max(max_rel_m3, rel[i]);
    }
    table.sort_rows(3);
    timing.sort_rows(3);
    table.write(path_in(cfg, "de_vs_mc.csv"));

    CommandResult res;
    res.files = {"de_vs_mc.csv"};
    res.summary = {{"command", "validate-de"},
                   {"rows", table.rows.size()},
                   {"max_rel_err", max_rel},
                   {"max_rel_err_m_ge_3", max_rel_m3}};
    finish(cfg, "validate-de", res, timing);
    return res;
}

CommandResult cmd_convergence(const ExperimentConfig &cfg)
{
    cfg.validate();
    ensure_directory(cfg.out_dir);
    const auto seeds = cfg.seeds();
    const int threads = cfg.integer("threads");
    CsvTable timing({"trace", "key", "seed", "runtime_ms"});

    // Precoder ascent traces over n_list.
    Sweep s1{SweepAxis::n_tx, cfg.number_list("n_list")};
    const auto cells1 = make_cells(s1, seeds);
    std::vector<CsvTable> alg1(cells1.size(), CsvTable(alg1_columns()));
    std::vector<double> final1(cells1.size()), time1(cells1.size());
    run_cells(cells1, threads, [&](size_t i) {
        const auto t0 = Clock::now();
        const ExperimentConfig c = cell_config(cfg, cells1[i]);
        const SystemConfig sys = c.system();
        const SecrecyProblem problem(sys, sample_scenario(sys, c.ranges(), cells1[i].seed), c.solver());
        const AntennaLayout layout = fpa_layout(sys);
        const PrecoderResult pr = optimize_precoder(problem.bob_channel(layout), problem.eve_statistics(layout),
                                                    problem.initial_precoder(layout), sys.power_budget,
                                                    sys.noise_power, c.ao_options().precoder);
        for (const auto &r : pr.trace.rows)
            alg1[i].add({std::to_string(sys.n_tx), std::to_string(cells1[i].seed), std::to_string(r.iter),
                         fmt(r.objective), fmt(nats_to_bits(r.objective)), fmt(r.step), fmt(r.grad_norm),
                         fmt(r.feasible)});
        final1[i] = pr.objective;
        time1[i] = ms_since(t0);
    });

    // Position traces: one sequential sweep over antennas for each alpha.
    Sweep s2{SweepAxis::alpha, cfg.number_list("alpha_list")};
    const auto cells2 = make_cells(s2, seeds);
    std::vector<CsvTable> alg2(cells2.size(), CsvTable(alg2_columns()));
    std::vector<std::vector<double>> best2(cells2.size());
    std::vector<double> time2(cells2.size());
    run_cells(cells2, threads, [&](size_t i) {
        const auto t0 = Clock::now();
        const ExperimentConfig c = cell_config(cfg, cells2[i]);
        const SystemConfig sys = c.system();
        const AoOptions ao = c.ao_options();
        const SecrecyProblem problem(sys, sample_scenario(sys, c.ranges(), cells2[i].seed), c.solver());
        AntennaLayout layout = fpa_layout(sys);
        const CMat F = optimize_precoder(problem.bob_channel(layout), problem.eve_statistics(layout),
                                         problem.initial_precoder(layout), sys.power_budget, sys.noise_power,
                                         ao.precoder)
                           .F;
        double best = problem.objective(layout, F);
        int global = 0;
        for (int n = 0; n < sys.n_tx; ++n)
        {
            const PositionObjective obj = problem.position_objective(n, layout, F);
            const PositionResult pr = optimize_position(n, layout, obj, sys, ao.position);
            for (const auto &r : pr.trace)
            {
                if (r.iter > 0)
                    ++global;
                best = std::max(best, -r.objective);
                alg2[i].add({fmt(cells2[i].value), std::to_string(cells2[i].seed), std::to_string(n),
                             std::to_string(r.iter), std::to_string(global), fmt(best), fmt(-r.objective),
                             fmt(r.step_norm / sys.wavelength), fmt(r.feasible)});
                best2[i].push_back(best);
            }
            layout.positions.col(n) = pr.position;
        }
        time2[i] = ms_since(t0);
    });

    // Alternating optimization traces at the configured size.
    Sweep s3;
    const auto cells3 = make_cells(s3, seeds);
    std::vector<CsvTable> ao_rows(cells3.size(), CsvTable(ao_columns()));
    std::vector<nlohmann::json> ao_json(cells3.size());
    std::vector<AoResult> ao_res(cells3.size());
    std::vector<double> time3(cells3.size());
    run_cells(cells3, threads, [&](size_t i) {
        const auto t0 = Clock::now();
        const SystemConfig sys = cfg.system();
        const SecrecyProblem problem(sys, sample_scenario(sys, cfg.ranges(), cells3[i].seed), cfg.solver());
        ao_res[i] = alternating_optimize(problem, cfg.ao_options());
        for (const auto &h : ao_res[i].history)
            ao_rows[i].add({std::to_string(cells3[i].seed), std::to_string(h.outer), fmt(h.objective),
                            fmt(h.objective_bits), fmt(h.esr_bits)});
        ao_json[i] = {{"seed", cells3[i].seed}, {"result", to_json(ao_res[i], sys.log_base)}};
        time3[i] = ms_since(t0);
    });

    CsvTable t1(alg1_columns()), t2(alg2_columns()), t3(ao_columns());
    for (const auto &t : alg1)
        t1.append(t);
    for (const auto &t : alg2)
        t2.append(t);
    for (const auto &t : ao_rows)
        t3.append(t);
    t1.sort_rows(2);
    t2.sort_rows(2);
    t3.sort_rows(1);
    t1.write(path_in(cfg, "alg1_trace.csv"));
    t2.write(path_in(cfg, "alg2_trace.csv"));
    t3.write(path_in(cfg, "ao_trace.csv"));
    nlohmann::json all = nlohmann::json::array();
    for (const auto &j : ao_json)
        all.push_back(j);
    write_json(path_in(cfg, "ao_results.json"), all);

    for (size_t i = 0; i < cells1.size(); ++i)
        timing.add({"alg1", fmt(cells1[i].value), std::to_string(cells1[i].seed), fmt(time1[i])});
    for (size_t i = 0; i < cells2.size(); ++i)
        timing.add({"alg2", fmt(cells2[i].value), std::to_string(cells2[i].seed), fmt(time2[i])});
    for (size_t i = 0; i < cells3.size(); ++i)
        for (const auto &h : ao_res[i].history)
        {
            timing.add({"ao_precoder", std::to_string(h.outer), std::to_string(cells3[i].seed), fmt(h.precoder_ms)});
            timing.add({"ao_position", std::to_string(h.outer), std::to_string(cells3[i].seed), fmt(h.position_ms)});
        }
    timing.sort_rows(3);

    // Summary: mean final precoder objective per N, and for each alpha the mean first global
    // iteration at which the running best reaches 90% of the smallest final gain across alphas.
    nlohmann::json alg1_summary = nlohmann::json::object();
    for (double n : s1.values)
    {
        std::vector<double> v;
        for (size_t i = 0; i < cells1.size(); ++i)
            if (cells1[i].value == n)
                v.push_back(final1[i]);
        alg1_summary[fmt(n)] = mean(v);
    }
    std::map<double, std::vector<double>> reach;
    for (auto seed : seeds)
    {
        double gain = INFINITY;
        for (size_t i = 0; i < cells2.size(); ++i)
            if (cells2[i].seed == seed)
                gain = std::min(gain, best2[i].back() - best2[i].front());
        for (size_t i = 0; i < cells2.size(); ++i)
        {
            if (cells2[i].seed != seed)
                continue;
            const double target = best2[i].front() + 0.9 * gain;
            size_t k = 0;
            while (k + 1 < best2[i].size() && best2[i][k] < target)
                ++k;
            reach[cells2[i].value].push_back(static_cast<double>(k));
        }
    }
    nlohmann::json alg2_summary = nlohmann::json::object();
    for (const auto &[a, v] : reach)
        alg2_summary[fmt(a)] = mean(v);
    nlohmann::json ao_summary = nlohmann::json::array();
    for (size_t i = 0; i < cells3.size(); ++i)
        ao_summary.push_back({{"seed", cells3[i].seed},
                              {"outer_iterations", ao_res[i].history.size() - 1},
                              {"termination", ao_res[i].termination},
                              {"final_objective_nats", ao_res[i].history.back().objective}});

    CommandResult res;
    res.files = {"alg1_trace.csv", "alg2_trace.csv", "ao_trace.csv", "ao_results.json"};
    res.summary = {{"command", "convergence"},
                   {"alg1_mean_final_objective_nats_by_n_tx", alg1_summary},
                   {"alg2_mean_rows_to_reach_target_by_alpha", alg2_summary},
                   {"ao", ao_summary}};
    finish(cfg, "convergence", res, timing);
    return res;
}

CommandResult cmd_benchmark(const ExperimentConfig &cfg)
{
    cfg.validate();
    ensure_directory(cfg.out_dir);
    const Sweep sweep = sweep_or(cfg, SweepAxis::n_tx, {4, 6, 8});
    for (double v : sweep.values)
        cfg.at_sweep_value(sweep.axis, v).validate();
    const auto cells = make_cells(sweep, cfg.seeds());
    const bool cross = cfg.flag("mc_crosscheck");
    const std::vector<std::string> methods = {"MA+GP", "MA+ZF", "FPA+GP", "FPA+ZF"};

    std::vector<CsvTable> rows(cells.size(), CsvTable(benchmark_columns(cross)));
    std::vector<std::vector<double>> esr(cells.size());
    std::vector<double> runtime(cells.size());
    run_cells(cells, cfg.integer("threads"), [&](size_t i) {
        const auto t0 = Clock::now();
        const ExperimentConfig c = cell_config(cfg, cells[i]);
        const SystemConfig sys = c.system();
        const SecrecyProblem problem(sys, sample_scenario(sys, c.ranges(), cells[i].seed), c.solver());
        AoOptions ao = c.ao_options();
        const AoResult ma = alternating_optimize(problem, ao);
        ao.optimize_positions = false;
        const AoResult fpa = alternating_optimize(problem, ao);
        const AntennaLayout fpa_lay = fpa_layout(sys);

        const std::vector<std::pair<CMat, AntennaLayout>> configs = {
            {ma.F, ma.layout}, {problem.zf(ma.layout), ma.layout}, {fpa.F, fpa_lay}, {problem.zf(fpa_lay), fpa_lay}};
        std::optional<CrossCheck> mc;
        if (cross)
            mc = CrossCheck{c.integer("trials"), mix_seed(cells[i].seed, 303), 1};
        for (size_t k = 0; k < methods.size(); ++k)
        {
            const ConfigurationReport rep = evaluate_configuration(problem, configs[k].first, configs[k].second, mc);
            std::vector<std::string> row = {axis_name(cells[i].axis), axis_value(cells[i]),
                                            std::to_string(cells[i].seed), methods[k], fmt(rep.rates.esr_bits),
                                            fmt(rep.rates.rate_bob), fmt(rep.rates.rate_eve_de),
                                            fmt(nats_to_bits(rep.rates.signed_gap()))};
            if (rep.crosscheck)
                for (double x : {rep.crosscheck->mc.mean, rep.crosscheck->mc.std_error, rep.crosscheck->rel_err})
                    row.push_back(fmt(x));
            rows[i].add(row);
            esr[i].push_back(rep.rates.esr_bits);
        }
        runtime[i] = ms_since(t0);
    });

    CsvTable table(benchmark_columns(cross));
    CsvTable timing({"axis", "value", "seed", "runtime_ms"});
    for (size_t i = 0; i < cells.size(); ++i)
    {
        table.append(rows[i]);
        timing.add({axis_name(cells[i].axis), axis_value(cells[i]), std::to_string(cells[i].seed), fmt(runtime[i])});
    }
    table.sort_rows(4);
    timing.sort_rows(3);
    table.write(path_in(cfg, "benchmark.csv"));

    nlohmann::json means = nlohmann::json::object();
    for (double v : sweep.values)
    {
        nlohmann::json per = nlohmann::json::object();
        for (size_t k = 0; k < methods.size(); ++k)
        {
            std::vector<double> x;
            for (size_t i = 0; i < cells.size(); ++i)
                if (cells[i].value == v)
                    x.push_back(esr[i][k]);
            per[methods[k]] = mean(x);
        }
        means[fmt(v)] = per;
    }
    CommandResult res;
    res.files = {"benchmark.csv"};
    res.summary = {{"command", "benchmark"}, {"axis", axis_name(sweep.axis)}, {"mean_esr_bits", means}};
    finish(cfg, "benchmark", res, timing);
    return res;
}

CommandResult cmd_gradcheck(const ExperimentConfig &cfg, GradFault fault)
{
    cfg.validate();
    ensure_directory(cfg.out_dir);
    GradcheckOptions opts;
    opts.instances = cfg.integer("gradcheck_instances");
    opts.fd_tol = cfg.number("gradcheck_fd_tol");
    opts.envelope_tol = cfg.number("gradcheck_envelope_tol");
    opts.seed = cfg.seeds().front();
    opts.fault = fault;
    const auto t0 = Clock::now();
    const GradcheckReport rep = run_gradcheck(opts);

    CsvTable table(gradcheck_columns());
    nlohmann::json ops = nlohmann::json::object();
    for (const auto &r : rep.rows)
    {
        table.add({r.operation, fmt(r.max_rel_err), fmt(r.tolerance), std::to_string(r.instances), fmt(r.pass)});
        ops[r.operation] = {{"max_rel_err", r.max_rel_err}, {"tolerance", r.tolerance}, {"pass", r.pass}};
    }
    table.write(path_in(cfg, "gradcheck.csv"));
    CsvTable timing({"operation", "runtime_ms"});
    timing.add({"all", fmt(ms_since(t0))});

    CommandResult res;
    res.files = {"gradcheck.csv"};
    res.pass = rep.pass();
    res.summary = {{"command", "gradcheck"}, {"pass", res.pass}, {"operations", ops}};
    finish(cfg, "gradcheck", res, timing);
    return res;
}

} // namespace masec::harness
