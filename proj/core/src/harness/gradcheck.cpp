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


#include "masec/harness/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "masec/gradients.hpp"

namespace masec::harness
{

bool GradcheckReport::pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.pass; });
}

namespace
{

struct Instance
{
    SystemConfig cfg;
    Scenario scenario;
    AntennaLayout layout;
    CMat F;
};

Instance make_instance(std::uint64_t seed)
{
    Rng rng(seed);
    auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    Instance in;
    in.cfg.n_tx = pick(2, 6);
    in.cfg.n_eves = pick(1, std::min(4, in.cfg.n_tx));
    in.cfg.n_paths = pick(in.cfg.n_eves, 6);
    in.scenario = sample_scenario(in.cfg, ScenarioRanges{}, rng);

    const double lam = in.cfg.wavelength;
    std::uniform_real_distribution<double> u(-2.0 * lam, 2.0 * lam);
    in.layout.positions = RMat::Zero(2, in.cfg.n_tx);
    for (int n = 0; n < in.cfg.n_tx; ++n)
    {
        Vec2 t;
        bool ok = false;
        while (!ok)
        {
            t = Vec2(u(rng), u(rng));
            ok = true;
            for (int m = 0; m < n && ok; ++m)
                ok = (t - in.layout.at(m)).norm() >= 1.2 * in.cfg.min_spacing;
        }
        in.layout.positions.col(n) = t;
    }

    std::normal_distribution<double> g(0.0, 1.0);
    in.F.resize(in.cfg.n_tx, in.cfg.n_eves);
    for (Eigen::Index i = 0; i < in.F.size(); ++i)
        in.F(i) = cd(g(rng), g(rng));
    const double fill = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    in.F *= std::sqrt(fill * in.cfg.power_budget) / in.F.norm();
    return in;
}

SolverOptions tight()
{
    SolverOptions s;
    s.tol = 1e-14;
    s.max_iter = 2000;
    return s;
}

double eve_rate(const CMat &F, const EveStatistics &stats, double noise)
{
    const FixedPointInput in = make_fixed_point_input(F, stats, noise);
    return det_equiv_eve_rate(solve_fixed_point(in, tight()), in);
}

} // namespace

GradcheckReport run_gradcheck(const GradcheckOptions &opts)
{
    GradcheckReport rep;
    rep.rows = {{"eve_precoder_implicit_vs_fd", 0, opts.fd_tol, 0, true},
                {"eve_precoder_envelope_vs_implicit", 0, opts.envelope_tol, 0, true},
                {"bob_precoder_vs_fd", 0, opts.fd_tol, 0, true},
                {"eve_position_implicit_vs_fd", 0, opts.fd_tol, 0, true},
                {"eve_position_envelope_vs_implicit", 0, opts.envelope_tol, 0, true},
                {"bob_position_vs_fd", 0, opts.fd_tol, 0, true}};
    auto record = [&rep](int k, double err) {
        auto &r = rep.rows[k];
        r.max_rel_err = std::max(r.max_rel_err, std::isfinite(err) ? err : INFINITY);
        r.instances += 1;
    };

    for (int k = 0; k < opts.instances; ++k)
    {
        const Instance in = make_instance(mix_seed(opts.seed, static_cast<std::uint64_t>(k)));
        const SystemConfig &cfg = in.cfg;
        const double noise = cfg.noise_power;
        const EveSpec eves = in.scenario.eve_spec();
        const BobPaths paths = in.scenario.bob_paths();
        const EveStatistics stats = build_eve_statistics(in.layout, eves, cfg);
        const CMat H = build_bob_channel(in.layout, paths, cfg);
        const FixedPointInput fin = make_fixed_point_input(in.F, stats, noise);
        const FixedPointSolution sol = solve_fixed_point(fin, tight());
        const Eigen::Index rows = in.F.rows(), cols = in.F.cols();

        const FdConfig fd_f{1e-5, std::sqrt(cfg.power_budget), false};
        const FdConfig fd_t{1e-4, cfg.wavelength, false};

        CMat gi = grad_eve_wrt_precoder_implicit(in.F, stats, sol, noise);
        if (opts.fault == GradFault::flip_eve_precoder_sign)
            gi = -gi;
        const CMat ge = grad_eve_wrt_precoder_envelope(in.F, stats, sol, noise);
        const RVec fd_e = fd_gradient(
            [&](const RVec &x) { return eve_rate(unflatten_complex(x, rows, cols), stats, noise); },
            flatten_complex(in.F), fd_f);
        record(0, gradient_rel_error(wirtinger_to_real(gi), fd_e));
        record(1, gradient_rel_error(wirtinger_to_real(ge), wirtinger_to_real(gi)));

        const CMat gb = grad_bob_wrt_precoder(H, in.F, noise);
        const RVec fd_b = fd_gradient(
            [&](const RVec &x) { return rate_bob(H, unflatten_complex(x, rows, cols), noise); },
            flatten_complex(in.F), fd_f);
        record(2, gradient_rel_error(wirtinger_to_real(gb), fd_b));

        for (int n = 0; n < cfg.n_tx; ++n)
        {
            auto moved = [&](const RVec &t) {
                AntennaLayout l = in.layout;
                l.positions.col(n) = t;
                return l;
            };
            const Vec2 pi = grad_eve_wrt_position_implicit(n, in.layout, eves, stats, in.F, sol, cfg);
            const Vec2 pe = grad_eve_wrt_position_envelope(n, in.layout, eves, stats, in.F, sol, cfg);
            const RVec fd_pe = fd_gradient(
                [&](const RVec &t) { return eve_rate(in.F, build_eve_statistics(moved(t), eves, cfg), noise); },
                in.layout.at(n), fd_t);
            record(3, gradient_rel_error(pi, fd_pe));
            record(4, gradient_rel_error(pe, pi));

            const Vec2 pb = grad_bob_wrt_position(n, in.layout, paths, in.F, cfg);
            const RVec fd_pb = fd_gradient(
                [&](const RVec &t) { return rate_bob(build_bob_channel(moved(t), paths, cfg), in.F, noise); },
                in.layout.at(n), fd_t);
            record(5, gradient_rel_error(pb, fd_pb));
        }
    }
    for (auto &r : rep.rows)
    {
        r.instances = opts.instances;
        r.pass = r.max_rel_err <= r.tolerance;
    }
    return rep;
}

} // namespace masec::harness
