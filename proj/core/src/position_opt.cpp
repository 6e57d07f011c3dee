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


#include "masec/position_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace masec
{

void AmsGradOptions::validate() const
{
    for (double p : {beta1, lambda1, beta2})
        if (!(p > 0.0 && p < 1.0))
            throw ConfigError("AmsGradOptions: beta1, lambda1 and beta2 must lie in (0, 1)");
    if (!(alpha > 0.0) || !(eps_v > 0.0))
        throw ConfigError("AmsGradOptions: alpha and eps_v must be positive");
}

AmsGradStep amsgrad_step(AmsGradState &state, const Vec2 &grad, const AmsGradOptions &opts)
{
    if (state.t < 1)
        throw ConfigError("amsgrad_step: iteration counter starts at 1");
    const double beta1_t = opts.beta1 * std::pow(opts.lambda1, state.t - 1);
    state.m_hat = beta1_t * state.m_hat + (1.0 - beta1_t) * grad;
    state.v_raw = opts.beta2 * state.v_raw + (1.0 - opts.beta2) * grad.cwiseAbs2();
    state.v_hat = opts.running_max ? state.v_hat.cwiseMax(state.v_raw) : state.v_raw;

    AmsGradStep s;
    s.v_weight = state.v_hat.cwiseMax(opts.eps_v);
    s.alpha_t = opts.alpha / std::sqrt(static_cast<double>(state.t));
    s.offset = -s.alpha_t * state.m_hat.cwiseQuotient(s.v_weight.cwiseSqrt());
    ++state.t;
    return s;
}

Vec2 project_qp(const QpProblem &qp)
{
    if ((qp.v_diag.array() <= 0.0).any())
        throw ConfigError("project_qp: metric must be positive definite");

    std::vector<HalfPlane> cons = qp.halfplanes;
    cons.push_back({Vec2(-1.0, 0.0), -qp.box_x});
    cons.push_back({Vec2(1.0, 0.0), -qp.box_x});
    cons.push_back({Vec2(0.0, -1.0), -qp.box_y});
    cons.push_back({Vec2(0.0, 1.0), -qp.box_y});

    const Vec2 vinv = qp.v_diag.cwiseInverse();
    auto cost = [&](const Vec2 &t) { return t.dot(qp.v_diag.cwiseProduct(t)) + 2.0 * qp.f_lin.dot(t); };
    auto feasible = [&](const Vec2 &t) {
        for (const auto &c : cons)
            if (c.a.dot(t) < c.b - 1e-10 * (1.0 + std::abs(c.b)))
                return false;
        return true;
    };

    Vec2 best = Vec2::Zero();
    double best_cost = std::numeric_limits<double>::infinity();
    auto consider = [&](const Vec2 &t) {
        if (!t.allFinite() || !feasible(t))
            return;
        const double c = cost(t);
        if (c < best_cost)
        {
            best_cost = c;
            best = t;
        }
    };

    const Vec2 t0 = -qp.f_lin.cwiseProduct(vinv);
    consider(t0);
    for (size_t i = 0; i < cons.size(); ++i)
    {
        const Vec2 w = vinv.cwiseProduct(cons[i].a);
        const double mu = (cons[i].b - cons[i].a.dot(t0)) / cons[i].a.dot(w);
        consider(t0 + mu * w);
        for (size_t j = i + 1; j < cons.size(); ++j)
        {
            Eigen::Matrix2d A;
            A << cons[i].a.transpose(), cons[j].a.transpose();
            const double det = A.determinant();
            if (std::abs(det) < 1e-14 * cons[i].a.norm() * cons[j].a.norm())
                continue;
            consider(A.inverse() * Vec2(cons[i].b, cons[j].b));
        }
    }
    if (!std::isfinite(best_cost))
        throw NumericalError("project_qp: empty feasible region");
    best(0) = std::clamp(best(0), -qp.box_x, qp.box_x);
    best(1) = std::clamp(best(1), -qp.box_y, qp.box_y);
    return best;
}

std::vector<HalfPlane> linearize_spacing(int n, const AntennaLayout &layout, double min_spacing)
{
    std::vector<HalfPlane> out;
    const Vec2 tn = layout.at(n);
    for (int m = 0; m < layout.size(); ++m)
    {
        if (m == n)
            continue;
        const Vec2 tm = layout.at(m);
        const double r = (tn - tm).norm();
        if (!(r > 0.0))
            throw ConfigError("linearize_spacing: coincident antennas");
        const Vec2 u = (tn - tm) / r;
        out.push_back({u, min_spacing + u.dot(tm)});
    }
    return out;
}

namespace
{

// Rounding can leave a projected point a hair inside a spacing disc; push it back out radially.
Vec2 repair(Vec2 t, int n, const AntennaLayout &layout, double spacing, double bx, double by)
{
    for (int m = 0; m < layout.size(); ++m)
    {
        if (m == n)
            continue;
        const Vec2 d = t - layout.at(m);
        const double r = d.norm();
        if (r < spacing && r > 0.0)
            t = layout.at(m) + d * (spacing * (1.0 + 1e-12) / r);
    }
    t(0) = std::clamp(t(0), -bx, bx);
    t(1) = std::clamp(t(1), -by, by);
    return t;
}

} // namespace

PositionResult optimize_position(int n, const AntennaLayout &layout, const PositionObjective &objective,
                                 const SystemConfig &cfg, const PositionOptOptions &opts)
{
    opts.amsgrad.validate();
    if (n < 0 || n >= layout.size())
        throw ConfigError("optimize_position: antenna index out of range");
    if (opts.inner_iter < 0)
        throw ConfigError("optimize_position: inner_iter must be non-negative");

    const double lam = cfg.wavelength;
    AntennaLayout scaled{layout.positions / lam}; // wavelength units
    const double bx = cfg.box_half_x / lam;
    const double by = cfg.box_half_y / lam;
    const double spacing = cfg.min_spacing / lam;

    auto feasible_m = [&](const AntennaLayout &lay) { return layout_violation(lay, cfg) <= 1e-10; };

    PositionResult res;
    Vec2 u = scaled.at(n);
    double f = objective.value(u * lam);
    res.position = u * lam;
    res.objective = f;
    res.trace.push_back({0, n, f, 0.0, feasible_m(layout)});

    AmsGradState state;
    AntennaLayout probe = layout;
    for (int it = 1; it <= opts.inner_iter; ++it)
    {
        const Vec2 g = objective.gradient(u * lam) * lam;
        if (!g.allFinite())
            throw NumericalError("optimize_position: non-finite gradient");
        const AmsGradStep step = amsgrad_step(state, g, opts.amsgrad);

        QpProblem qp;
        qp.v_diag = step.v_weight;
        qp.f_lin = -step.v_weight.cwiseProduct(u + step.offset);
        qp.box_x = bx;
        qp.box_y = by;
        qp.halfplanes = linearize_spacing(n, scaled, spacing);
        Vec2 next = repair(project_qp(qp), n, scaled, spacing, bx, by);

        const double step_norm = (next - u).norm() * lam;
        u = next;
        scaled.positions.col(n) = u;
        f = objective.value(u * lam);
        probe.positions.col(n) = u * lam;
        res.trace.push_back({it, n, f, step_norm, feasible_m(probe)});
        if (f < res.objective)
        {
            res.objective = f;
            res.position = u * lam;
        }
    }
    return res;
}

double RegretConstants::bound(double T) const
{
    const double b1 = amsgrad.beta1;
    const double D = d_inf / wavelength;
    const double G = g_inf * wavelength;
    const double a = amsgrad.alpha;
    const double sq = std::sqrt(T);
    return 2.0 * D * D * G * sq / (a * (1.0 - b1)) +
           b1 * D * D * G / ((1.0 - b1) * (1.0 - b1) * (1.0 - amsgrad.lambda1) * (1.0 - amsgrad.lambda1)) +
           2.0 * a * G * std::sqrt(1.0 + std::log(T)) * sq /
               ((1.0 - b1) * (1.0 - b1) * (1.0 - gamma) * std::sqrt(1.0 - amsgrad.beta2));
}

RegretConstants regret_constants(const SystemConfig &cfg, const AmsGradOptions &opts)
{
    opts.validate();
    RegretConstants c;
    c.d_inf = 2.0 * std::hypot(cfg.box_half_x, cfg.box_half_y);
    c.g_inf = 8.0 * kPi * std::sqrt(static_cast<double>(cfg.n_eves)) / cfg.wavelength;
    c.gamma = opts.beta1 / std::sqrt(opts.beta2);
    if (!(c.gamma < 1.0))
        throw ConfigError("regret_constants: beta1 / sqrt(beta2) must be below 1");
    c.amsgrad = opts;
    c.wavelength = cfg.wavelength;
    return c;
}

RegretReport empirical_regret(const std::vector<double> &objective, double reference)
{
    RegretReport r;
    r.objective = objective;
    r.reference = reference;
    double acc = 0.0;
    for (size_t t = 0; t < objective.size(); ++t)
    {
        acc += objective[t] - reference;
        r.regret.push_back(acc);
        r.avg_regret.push_back(acc / static_cast<double>(t + 1));
    }
    return r;
}

std::pair<Vec2, double> grid_reference(int n, const AntennaLayout &layout, const PositionObjective &objective,
                                       const SystemConfig &cfg, double grid_step)
{
    if (!(grid_step > 0.0))
        throw ConfigError("grid_reference: grid step must be positive");
    const int nx = static_cast<int>(std::floor(2.0 * cfg.box_half_x / grid_step + 1e-9));
    const int ny = static_cast<int>(std::floor(2.0 * cfg.box_half_y / grid_step + 1e-9));
    Vec2 best = layout.at(n);
    double best_f = objective.value(best);
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
        {
            const Vec2 t(-cfg.box_half_x + i * grid_step, -cfg.box_half_y + j * grid_step);
            bool ok = true;
            for (int m = 0; m < layout.size() && ok; ++m)
                ok = m == n || (t - layout.at(m)).norm() >= cfg.min_spacing;
            if (!ok)
                continue;
            const double f = objective.value(t);
            if (f < best_f)
            {
                best_f = f;
                best = t;
            }
        }
    return {best, best_f};
}

} // namespace masec
