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


#include "masec/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "masec/linalg.hpp"

namespace masec
{

McEstimate empirical_eve_rate(const CMat &F, const EveStatistics &stats, const EveSpec &eves,
                              double noise_power, int trials, std::uint64_t seed, int threads)
{
    if (trials < 2)
        throw ConfigError("empirical_eve_rate: need at least 2 trials");
    if (!(noise_power > 0.0))
        throw ConfigError("empirical_eve_rate: noise power must be positive");
    if (F.rows() != stats.g_los.rows() || eves.size() != stats.g_los.cols())
        throw ConfigError("empirical_eve_rate: inconsistent dimensions");

    std::vector<double> value(static_cast<size_t>(trials));
    const double scale = 1.0 / std::sqrt(noise_power);
    auto run = [&](int begin, int end) {
        for (int k = begin; k < end; ++k)
        {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k) + 1));
            const CMat Z = sample_eve_channel(stats, eves, rng).adjoint() * F * scale;
            CMat W = Z.adjoint() * Z;
            W.diagonal().array() += 1.0;
            value[static_cast<size_t>(k)] = logdet_hpd(W);
        }
    };

    const int workers = std::clamp(threads, 1, trials);
    if (workers == 1)
        run(0, trials);
    else
    {
        std::vector<std::thread> pool;
        const int chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w)
        {
            const int b = w * chunk;
            const int e = std::min(trials, b + chunk);
            if (b < e)
                pool.emplace_back(run, b, e);
        }
        for (auto &t : pool)
            t.join();
    }

    double sum = 0.0;
    for (double v : value)
        sum += v;
    const double mean = sum / trials;
    double ss = 0.0;
    for (double v : value)
        ss += (v - mean) * (v - mean);

    McEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(ss / (trials - 1)) / std::sqrt(static_cast<double>(trials));
    est.trials = trials;
    est.seed = seed;
    return est;
}

DeMcComparison compare_de_mc(const CMat &F, const EveStatistics &stats, const EveSpec &eves,
                             double noise_power, int trials, std::uint64_t seed, int threads,
                             const SolverOptions &opts)
{
    const FixedPointInput in = make_fixed_point_input(F, stats, noise_power);
    DeMcComparison c;
    c.de = det_equiv_eve_rate(solve_fixed_point(in, opts), in);
    c.mc = empirical_eve_rate(F, stats, eves, noise_power, trials, seed, threads);
    c.rel_err = std::abs(c.de - c.mc.mean) / std::max(c.mc.mean, kRelErrFloor);
    return c;
}

nlohmann::json to_json(const McEstimate &e)
{
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"trials", e.trials}, {"seed", e.seed}};
}

nlohmann::json to_json(const DeMcComparison &c)
{
    return {{"de", c.de}, {"mc", to_json(c.mc)}, {"rel_err", c.rel_err}};
}

} // namespace masec
